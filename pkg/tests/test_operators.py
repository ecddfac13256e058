"""Curvature operators: conversions, splits, decomposition, spectra."""

import numpy as np
import pytest

from curvop import (
    CurvatureOperator,
    CurvTensor,
    Sym2,
    alternation,
    bianchi_split,
    complex_sectional,
    cp2_op,
    decompose,
    identity_operator,
    identity_sym2,
    jacobi_eigh,
    jacobi_eigh_batch,
    k_nonnegative,
    k_positive,
    kulkarni_nomizu,
    lowest_sum,
    negative_2form_term_op,
    op_from_tensor,
    ricci_contract,
    singer_thorpe_op,
    spectrum,
    sphere_product_op,
    tensor_from_op,
    wedge_count,
)
from curvop.verify import random_bianchi_operator, random_sym_operator


class TestConversions:
    def test_half_gg_is_identity(self):
        g = identity_sym2(4)
        half = CurvTensor(kulkarni_nomizu(g, g).array / 2.0)
        op = op_from_tensor(half)
        assert np.array_equal(op.mat, np.eye(6))
        assert op.bianchi_certified is True

    def test_norm_factor_four(self):
        g = identity_sym2(3)
        gg = kulkarni_nomizu(g, g)
        op = op_from_tensor(gg)
        assert gg.norm_sq() == pytest.approx(48.0)
        assert op.norm_sq() == pytest.approx(12.0)

    def test_roundtrip(self):
        rng = np.random.default_rng(0)
        for n in (3, 4, 6):
            r = random_sym_operator(rng, n)
            back = op_from_tensor(tensor_from_op(r))
            assert np.allclose(back.mat, r.mat, atol=1e-13)
        op, _ = singer_thorpe_op((1.0, 2.0, 3.0, 4.0, 5.0, 6.0))
        again = op_from_tensor(tensor_from_op(op))
        assert np.allclose(again.mat, op.mat, atol=1e-13)

    def test_rejects_missing_symmetries(self):
        with pytest.raises(ValueError):
            op_from_tensor(CurvTensor(np.ones((3, 3, 3, 3))))

    def test_operator_requires_symmetry(self):
        with pytest.raises(ValueError):
            CurvatureOperator(3, np.array([[0, 1, 0], [0, 0, 0], [0, 0, 0.0]]))


class TestBianchiSplit:
    def test_identity_has_no_alternating_part(self):
        _, lam4 = bianchi_split(identity_operator(4))
        assert lam4.norm_sq() == pytest.approx(0.0, abs=1e-24)

    def test_split_st_ones_and_zeros(self):
        op, _ = singer_thorpe_op((1.0, 1.0, 1.0, 0.0, 0.0, 0.0))
        assert op.bianchi_certified is False
        rb, lam4 = bianchi_split(op)
        assert lam4.norm_sq() > 0.1
        assert rb.bianchi_certified is True
        total = tensor_from_op(rb).array + lam4.array
        assert np.allclose(total, tensor_from_op(op).array, atol=1e-13)

    def test_projector_idempotent(self):
        rng = np.random.default_rng(1)
        r = random_sym_operator(rng, 5)
        rb, _ = bianchi_split(r)
        _, lam4_again = bianchi_split(rb)
        assert lam4_again.norm_sq() == pytest.approx(0.0, abs=1e-20)

    def test_alternating_part_is_alternating(self):
        rng = np.random.default_rng(2)
        r = random_sym_operator(rng, 4)
        arr = alternation(tensor_from_op(r).array)
        assert np.allclose(arr, -np.transpose(arr, (1, 0, 2, 3)), atol=1e-14)
        assert np.allclose(arr, -np.transpose(arr, (0, 2, 1, 3)), atol=1e-14)

    def test_dimension_three_is_automatically_bianchi(self):
        # no alternating 4-tensors exist on three coordinates, so every
        # symmetric operator certifies
        rng = np.random.default_rng(8)
        for _ in range(20):
            r = random_sym_operator(rng, 3)
            assert r.certify_bianchi() is True


class TestRicciContract:
    def test_half_gg(self):
        for n in (3, 5):
            g = identity_sym2(n)
            op = op_from_tensor(CurvTensor(kulkarni_nomizu(g, g).array / 2.0))
            ric, scal = ricci_contract(op)
            assert np.allclose(ric.mat, (n - 1) * np.eye(n), atol=1e-13)
            assert scal == pytest.approx(n * (n - 1))

    def test_sphere_product_blocks(self):
        op = sphere_product_op(2, 5)
        ric, scal = ricci_contract(op)
        assert np.allclose(ric.mat, np.diag([1.0, 1.0, 0, 0, 0]), atol=1e-13)
        assert scal == pytest.approx(2.0)

    def test_alternating_part_has_zero_ricci(self):
        rng = np.random.default_rng(3)
        r = random_sym_operator(rng, 4)
        lam4 = bianchi_split(r)[1]
        ric = np.einsum("iaja->ij", lam4.array)
        assert np.abs(ric).max() < 1e-13


class TestDecompose:
    def test_half_gg_pure_scalar(self):
        g = identity_sym2(4)
        op = op_from_tensor(CurvTensor(kulkarni_nomizu(g, g).array / 2.0))
        dec = decompose(op)
        assert dec.scal == pytest.approx(12.0)
        assert dec.ric0.norm_sq() == pytest.approx(0.0, abs=1e-20)
        assert dec.weyl.norm_sq() == pytest.approx(0.0, abs=1e-20)

    def test_cp2_is_einstein_with_weyl(self):
        dec = decompose(cp2_op())
        assert dec.ric0.norm_sq() == pytest.approx(0.0, abs=1e-18)
        assert dec.weyl.norm_sq() > 1.0

    def test_sphere_product_reassembles(self):
        op = sphere_product_op(2, 4)
        dec = decompose(op)
        assert dec.ric0.norm_sq() > 0.1
        assert dec.weyl.norm_sq() > 0.01
        g = identity_sym2(4)
        back = (
            dec.scal / (2 * 3 * 4) * kulkarni_nomizu(g, g).array
            + kulkarni_nomizu(g, dec.ric0).array / 2.0
            + dec.weyl.array
        )
        assert np.allclose(back, tensor_from_op(op).array, atol=1e-13)

    def test_schouten_relation(self):
        rng = np.random.default_rng(4)
        rb = random_bianchi_operator(rng, 5)
        dec = decompose(rb)
        back = kulkarni_nomizu(dec.schouten, identity_sym2(5)).array + dec.weyl.array
        assert np.allclose(back, tensor_from_op(rb).array, atol=1e-12)

    def test_rejects_small_dimension_and_non_bianchi(self):
        with pytest.raises(ValueError):
            decompose(identity_operator(2))
        op, _ = singer_thorpe_op((1.0, 1.0, 1.0, 0.0, 0.0, 0.0))
        with pytest.raises(ValueError):
            decompose(op)


class TestSpectrum:
    def test_identity(self):
        s = spectrum(identity_operator(4))
        assert np.array_equal(s.eigenvalues, np.ones(6))
        assert np.array_equal(s.eigenvectors, np.eye(6))

    def test_cp2_eigenvalues(self):
        s = spectrum(cp2_op())
        assert np.allclose(s.eigenvalues, [0, 0, 2, 2, 2, 6], atol=1e-12)

    def test_sphere_product_multiplicities(self):
        s = spectrum(sphere_product_op(2, 5))
        assert np.allclose(s.eigenvalues, [0.0] * 9 + [1.0], atol=1e-13)

    def test_residual_and_orthogonality(self):
        rng = np.random.default_rng(5)
        for n in (4, 6, 8):
            r = random_sym_operator(rng, n)
            s = spectrum(r)
            scale = np.sqrt(r.norm_sq())
            res = np.abs(r.mat @ s.eigenvectors - s.eigenvectors * s.eigenvalues[None, :]).max()
            assert res <= 1e-10 * max(1.0, scale)
            orth = np.abs(s.eigenvectors.T @ s.eigenvectors - np.eye(r.N)).max()
            assert orth <= 1e-10

    def test_conjugation_invariance(self):
        rng = np.random.default_rng(6)
        r = random_sym_operator(rng, 5)
        q, rr = np.linalg.qr(rng.normal(size=(r.N, r.N)))
        q = q * np.sign(np.diag(rr))
        s1 = spectrum(r)
        s2 = spectrum(CurvatureOperator(5, q.T @ r.mat @ q))
        assert np.allclose(s1.eigenvalues, s2.eigenvalues, atol=1e-9 * max(1, np.abs(s1.eigenvalues).max()))

    def test_batch_matches_single_bitwise(self):
        rng = np.random.default_rng(7)
        mats = []
        for _ in range(6):
            m = rng.normal(size=(10, 10))
            mats.append((m + m.T) / 2)
        vals, vecs = jacobi_eigh_batch(np.array(mats))
        for i, m in enumerate(mats):
            sv, sw = jacobi_eigh(m)
            assert np.array_equal(vals[i], sv)
            assert np.array_equal(vecs[i], sw)

    def test_zero_matrix(self):
        vals, vecs = jacobi_eigh(np.zeros((4, 4)))
        assert np.array_equal(vals, np.zeros(4))
        assert np.array_equal(vecs, np.eye(4))

    def test_against_independent_eigensolver(self):
        rng = np.random.default_rng(10)
        for n in (4, 6, 8):
            r = random_sym_operator(rng, n)
            vals, _ = jacobi_eigh(r.mat)
            scale = max(1.0, float(np.abs(vals).max()))
            assert np.abs(vals - np.linalg.eigvalsh(r.mat)).max() <= 1e-12 * scale


class TestKPositivity:
    def test_identity_sums(self):
        s = spectrum(identity_operator(4))
        assert lowest_sum(s, 3) == pytest.approx(3.0)
        assert k_positive(s, 3)

    def test_cp2_boundary(self):
        s = spectrum(cp2_op())
        assert lowest_sum(s, 3) == pytest.approx(2.0, abs=1e-12)
        assert k_positive(s, 3)
        assert not k_positive(s, 2)
        assert k_nonnegative(s, 2)

    def test_negative_term_operator_sums(self):
        op, _ = negative_2form_term_op(5, 1.0)
        s = spectrum(op)
        # brute-force oracle: the constructed eigenvalue list
        want = sorted([-2.0, -2.0] + [2.0] * 7 + [10.0])
        assert np.allclose(s.eigenvalues, want, atol=1e-12)
        assert lowest_sum(s, 9) == pytest.approx(sum(want[:9]), abs=1e-12)
        assert lowest_sum(s, 4) == pytest.approx(0.0, abs=1e-12)

    def test_out_of_range(self):
        s = spectrum(identity_operator(3))
        with pytest.raises(ValueError):
            lowest_sum(s, 0)
        with pytest.raises(ValueError):
            lowest_sum(s, 4)


class TestComplexSectional:
    def test_identity_positive(self):
        rng = np.random.default_rng(8)
        ident = identity_operator(4)
        z = rng.normal(size=4) + 1j * rng.normal(size=4)
        w = rng.normal(size=4) + 1j * rng.normal(size=4)
        assert complex_sectional(ident, z, w) > 0.0

    def test_real_pair_is_sectional_entry(self):
        rng = np.random.default_rng(9)
        r = random_sym_operator(rng, 4)
        e = np.eye(4)
        assert complex_sectional(r, e[:, 0], e[:, 2]) == pytest.approx(r.mat[1, 1])

    def test_cp2_isotropic_value(self):
        z = np.array([1.0, 1.0j, 0.0, 0.0]) / np.sqrt(2.0)
        w = np.array([0.0, 0.0, 1.0, 1.0j]) / np.sqrt(2.0)
        got = complex_sectional(cp2_op(), z, w)
        assert got == pytest.approx(3.0, rel=1e-12)
        assert got >= 0.0

    def test_zero_wedge_rejected(self):
        with pytest.raises(ValueError):
            complex_sectional(identity_operator(3), np.ones(3), 2.0 * np.ones(3))
