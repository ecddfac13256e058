"""Command line: serialization, catalog emission, verdicts, CSV scans."""

import json
import math

import numpy as np
import pytest

from curvop import CurvatureOperator, identity_operator
from curvop.cli import main
from curvop.opfile import dump_operator, dumps_operator, load_operator, loads_operator
from curvop.verify import random_sym_operator


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestOperatorFiles:
    def test_roundtrip_bit_exact(self, tmp_path):
        rng = np.random.default_rng(0)
        for n in (2, 4, 6):
            op = random_sym_operator(rng, n)
            path = tmp_path / f"op{n}.json"
            dump_operator(path, op, metadata={"note": "test"})
            back, doc = load_operator(path)
            assert np.array_equal(back.mat, op.mat)
            assert doc["basis"] == "lex-wedge"
            assert doc["metadata"]["note"] == "test"

    def test_negative_zero_survives(self):
        op = CurvatureOperator(2, np.array([[-0.0]]))
        back, _ = loads_operator(dumps_operator(op))
        assert math.copysign(1.0, back.mat[0, 0]) == -1.0

    def test_rejects_wrong_shape_and_basis(self):
        text = dumps_operator(identity_operator(3))
        doc = json.loads(text)
        doc["basis"] = "other"
        with pytest.raises(ValueError):
            loads_operator(json.dumps(doc))
        doc = json.loads(text)
        doc["n"] = 4
        with pytest.raises(ValueError):
            loads_operator(json.dumps(doc))

    def test_rejects_asymmetric(self):
        doc = {"n": 2, "basis": "lex-wedge", "matrix": [[1.0]]}
        loads_operator(json.dumps(doc))
        doc3 = {
            "n": 3,
            "basis": "lex-wedge",
            "matrix": [[0.0, 1.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]],
        }
        with pytest.raises(ValueError):
            loads_operator(json.dumps(doc3))


class TestVerifyCommand:
    def test_single_suite_passes(self, capsys):
        code, out, err = run(capsys, "verify", "--suite", "exact-values", "--seed", "42")
        assert code == 0
        doc = json.loads(out)
        assert doc[0]["suite"] == "exact-values"
        assert doc[0]["failures"] == []

    def test_unknown_suite_exits_two(self, capsys):
        code, _, err = run(capsys, "verify", "--suite", "nosuch")
        assert code == 2
        assert "unknown suite" in err

    def test_deterministic_reports(self, capsys):
        args = ("verify", "--suite", "prop-1.1", "--trials", "40", "--seed", "7")
        code1, out1, _ = run(capsys, *args)
        code2, out2, _ = run(capsys, *args)
        assert code1 == code2 == 0
        doc1 = json.loads(out1)
        doc2 = json.loads(out2)
        for d in (doc1, doc2):
            for entry in d:
                entry.pop("wall-time")
        assert doc1 == doc2


class TestCatalogCommand:
    def test_cp2_file(self, capsys, tmp_path):
        path = tmp_path / "cp2.json"
        code, _, _ = run(capsys, "catalog", "--name", "cp2", "--out", str(path))
        assert code == 0
        op, doc = load_operator(path)
        assert np.allclose(doc["metadata"]["eigenvalues"], [0, 0, 2, 2, 2, 6], atol=1e-12)

    def test_sphere_product_metadata(self, capsys, tmp_path):
        path = tmp_path / "sp.json"
        code, _, _ = run(
            capsys, "catalog", "--name", "sphere-product", "--p", "2", "--n", "5",
            "--out", str(path),
        )
        assert code == 0
        _, doc = load_operator(path)
        assert doc["metadata"]["hat_norm_sq"] == pytest.approx(12.0, abs=1e-12)

    def test_negative_term_entry(self, capsys, tmp_path):
        path = tmp_path / "neg.json"
        code, _, _ = run(
            capsys, "catalog", "--name", "example-4.7", "--n", "4", "--lambda", "1",
            "--out", str(path),
        )
        assert code == 0
        _, doc = load_operator(path)
        assert doc["metadata"]["curvature_term"] == pytest.approx(-8.0, rel=1e-12)
        assert "two_form" in doc["companions"]

    def test_singer_thorpe_entry(self, capsys, tmp_path):
        path = tmp_path / "st.json"
        code, _, _ = run(
            capsys, "catalog", "--name", "singer-thorpe", "--lambdas", "0,0,6,2,2,2",
            "--out", str(path),
        )
        assert code == 0
        _, doc = load_operator(path)
        assert doc["metadata"]["bianchi"] is True
        assert len(doc["companions"]["basis"]) == 6

    def test_remark_entry(self, capsys, tmp_path):
        path = tmp_path / "r.json"
        code, _, _ = run(
            capsys, "catalog", "--name", "remark-3.6", "--n", "6", "--K", "1",
            "--K1n", "-3", "--out", str(path),
        )
        assert code == 0
        _, doc = load_operator(path)
        assert doc["metadata"]["curvature_term"] == pytest.approx(-8.0, rel=1e-12)

    def test_extremal_pform_entry(self, capsys, tmp_path):
        path = tmp_path / "ext.json"
        code, _, _ = run(capsys, "catalog", "--name", "extremal-pform", "--p", "3", "--out", str(path))
        assert code == 0
        doc = json.loads(path.read_text())
        assert doc["n"] == 6
        assert sum(1 for c in doc["omega1"]["comps"] if c != 0) == 4
        assert sum(1 for c in doc["omega2"]["comps"] if c != 0) == 4

    def test_s2_products_entry(self, capsys, tmp_path):
        path = tmp_path / "s2.json"
        code, _, _ = run(capsys, "catalog", "--name", "s2-products", "--k", "2", "--n", "6", "--out", str(path))
        assert code == 0
        _, doc = load_operator(path)
        assert doc["metadata"]["hat_norm_sq"] == pytest.approx(32.0, abs=1e-12)

    def test_unknown_name_exits_two(self, capsys):
        code, _, err = run(capsys, "catalog", "--name", "nosuch")
        assert code == 2

    def test_missing_params_exit_two(self, capsys):
        code, _, err = run(capsys, "catalog", "--name", "sphere-product")
        assert code == 2
        assert "--" in err

    def test_stdout_when_no_out(self, capsys):
        code, out, _ = run(capsys, "catalog", "--name", "cp2")
        assert code == 0
        doc = json.loads(out)
        assert doc["basis"] == "lex-wedge"


class TestSpectrumCommand:
    def test_prints_eigenvalues(self, capsys, tmp_path):
        path = tmp_path / "id.json"
        dump_operator(path, identity_operator(4))
        code, out, _ = run(capsys, "spectrum", str(path))
        assert code == 0
        doc = json.loads(out)
        assert doc["eigenvalues"] == [1.0] * 6

    def test_missing_file_exits_one(self, capsys):
        code, _, err = run(capsys, "spectrum", "/nonexistent/file.json")
        assert code == 1


class TestBochnerCommand:
    def test_cp2_middle_degree(self, capsys, tmp_path):
        path = tmp_path / "cp2.json"
        run(capsys, "catalog", "--name", "cp2", "--out", str(path))
        code, out, _ = run(
            capsys, "bochner", str(path), "--kind", "pform", "--p", "2", "--kappa", "0",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["vanishing"] is False
        assert doc["parallel_only"] is True
        assert doc["holds"] is True

    def test_identity_vanishes(self, capsys, tmp_path):
        path = tmp_path / "id.json"
        dump_operator(path, identity_operator(4))
        code, out, _ = run(capsys, "bochner", str(path), "--kind", "pform", "--p", "1")
        assert code == 0
        assert json.loads(out)["vanishing"] is True

    def test_negative_term_not_vanishing(self, capsys, tmp_path):
        path = tmp_path / "neg5.json"
        run(capsys, "catalog", "--name", "example-4.7", "--n", "5", "--lambda", "1", "--out", str(path))
        code, out, _ = run(capsys, "bochner", str(path), "--kind", "pform", "--p", "2")
        assert code == 0
        assert json.loads(out)["vanishing"] is False

    def test_bound_value(self, capsys, tmp_path):
        path = tmp_path / "id.json"
        dump_operator(path, identity_operator(4))
        code, out, _ = run(
            capsys, "bochner", str(path), "--kind", "pform", "--p", "2",
            "--kappa", "-1", "--diameter", "1", "--c-const", "1",
        )
        assert code == 0
        assert json.loads(out)["bound"] == pytest.approx(6.0 * math.exp(2.0), rel=1e-12)

    def test_bad_kind_exits_two(self, capsys, tmp_path):
        path = tmp_path / "id.json"
        dump_operator(path, identity_operator(4))
        code, _, _ = run(capsys, "bochner", str(path), "--kind", "nosuch")
        assert code == 2


class TestWarpedCommand:
    def test_round_scan_all_ones(self, capsys, tmp_path):
        path = tmp_path / "flat.csv"
        code, _, _ = run(
            capsys, "warped", "--p", "2", "--q", "2", "--amp", "0",
            "--samples", "50", "--out", str(path),
        )
        assert code == 0
        lines = path.read_text().strip().splitlines()
        header = lines[0].split(",")
        assert header[:6] == ["r", "radial_p", "radial_q", "plane_p", "plane_q", "mixed"]
        assert header[6:] == ["low1", "low2", "low3", "low4", "low5"]
        for line in lines[1:]:
            vals = [float(v) for v in line.split(",")]
            assert np.allclose(vals[1:6], 1.0, atol=1e-12)
            assert np.allclose(vals[6:], [1, 2, 3, 4, 5], atol=1e-12)

    def test_bump_drives_radial_negative(self, capsys, tmp_path):
        path = tmp_path / "bump.csv"
        code, _, _ = run(
            capsys, "warped", "--p", "2", "--q", "2", "--amp", "3", "--center", "0.8",
            "--width", "0.2", "--samples", "200", "--out", str(path),
        )
        assert code == 0
        radial = [
            float(line.split(",")[1]) for line in path.read_text().strip().splitlines()[1:]
        ]
        assert min(radial) < 0.0

    def test_bad_support_exits_two(self, capsys):
        code, _, _ = run(
            capsys, "warped", "--p", "2", "--q", "2", "--amp", "1",
            "--center", "0.05", "--width", "0.2",
        )
        assert code == 2


class TestOdeCommand:
    def test_crossing_row_and_scal_column(self, capsys, tmp_path):
        path = tmp_path / "orbit.csv"
        code, _, err = run(
            capsys, "ode", "--n", "4", "--x0", "0.5", "--step", "1e-3", "--out", str(path),
        )
        assert code == 0
        lines = path.read_text().strip().splitlines()
        final = [float(v) for v in lines[-1].split(",")]
        assert final[1] > 1.0  # crossing radius
        assert abs(final[2]) <= 1e-10
        scal = [float(line.split(",")[3]) for line in lines[1:]]
        assert max(abs(s - 6.0) for s in scal) <= 1e-6

    def test_no_crossing_exits_one(self, capsys):
        code, _, err = run(capsys, "ode", "--n", "4", "--x0", "1.0", "--tmax", "0.5", "--step", "1e-3")
        assert code == 1
        assert "without a crossing" in err

    def test_bad_start_exits_two(self, capsys):
        code, _, _ = run(capsys, "ode", "--n", "4", "--x0", "5.0")
        assert code == 2

    def test_stdout_emission(self, capsys):
        code, out, _ = run(capsys, "ode", "--n", "4", "--x0", "0.7", "--step", "0.01")
        assert code == 0
        assert out.startswith("t,x,y,scal")


class TestUsage:
    def test_no_command_exits_two(self, capsys):
        assert run(capsys, )[0] == 2

    def test_unknown_flag_exits_two(self, capsys):
        assert run(capsys, "verify", "--nope")[0] == 2
