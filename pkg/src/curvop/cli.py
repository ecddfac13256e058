"""Command-line front end.

Subcommands: verify (randomized/exact suites), catalog (write named example
operators), spectrum, bochner (verdicts on an operator file), warped and ode
(CSV profiles).  Machine output goes to stdout as JSON or CSV files,
diagnostics to stderr.  Exit codes: 0 success, 1 runtime or data failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import catalog as cat
from .action import curvature_term, hat_norm_sq
from .bochner import TensorKind, betti_bound, betti_verdict, estimate_constant, lemma21_verdict
from .opfile import _emit, dump_operator, load_operator
from .operators import spectrum
from .verify import SUITES, run_suite
from .warped import dwp_eigenvalue_list, dwp_eigenvalues, ode_shoot, perturbed_profile, trajectory_scal


class UsageError(Exception):
    """Bad names or parameter combinations; maps to exit code 2."""


def _print_json(doc):
    sys.stdout.write(_emit(doc) + "\n")


# -- verify -------------------------------------------------------------------

def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        if name not in SUITES:
            raise UsageError(f"unknown suite {name!r}; known: {', '.join(SUITES)} or all")
    reports = [
        run_suite(name, trials=args.trials, seed=args.seed, tol=args.tol) for name in names
    ]
    _print_json([r.to_document() for r in reports])
    bad = sum(len(r.failures) for r in reports)
    if bad:
        print(f"{bad} failure(s) across {len(reports)} suite(s)", file=sys.stderr)
        return 1
    return 0


# -- catalog ------------------------------------------------------------------

_FLAG_OF = {"lam": "lambda"}


def _need(args, *names):
    missing = [_FLAG_OF.get(name, name) for name in names if getattr(args, name) is None]
    if missing:
        raise UsageError(
            f"catalog entry {args.name!r} needs --" + ", --".join(missing)
        )


def _form_document(form) -> dict:
    return {"n": form.n, "p": form.p, "comps": list(form.comps)}


def _sym2_document(h) -> dict:
    return {"n": h.n, "matrix": [list(row) for row in h.mat]}


def _build_catalog_entry(args):
    name = args.name
    if name == "sphere-product":
        _need(args, "p", "n")
        op = cat.sphere_product_op(args.p, args.n)
        meta = {
            "entry": name,
            "p": args.p,
            "hat_norm_sq": hat_norm_sq(op),
            "eigenvalues": list(spectrum(op).eigenvalues),
        }
        return op, meta, None
    if name == "s2-products":
        _need(args, "k", "n")
        op = cat.product_of_spheres_op(args.k, args.n)
        meta = {
            "entry": name,
            "k": args.k,
            "hat_norm_sq": hat_norm_sq(op),
            "eigenvalues": list(spectrum(op).eigenvalues),
        }
        return op, meta, None
    if name == "cp2":
        op = cat.cp2_op()
        meta = {"entry": name, "eigenvalues": list(spectrum(op).eigenvalues)}
        return op, meta, None
    if name == "singer-thorpe":
        if args.lambdas is None:
            raise UsageError("catalog entry 'singer-thorpe' needs --lambdas l1,..,l6")
        lams = [float(x) for x in args.lambdas.split(",")]
        op, basis = cat.singer_thorpe_op(lams)
        meta = {
            "entry": name,
            "lambdas": lams,
            "bianchi": bool(op.bianchi_certified),
            "eigenvalues": list(spectrum(op).eigenvalues),
        }
        companions = {
            "basis": [{"comps": list(xi.comps)} for xi in basis]
        }
        return op, meta, companions
    if name == "example-4.7":
        _need(args, "n", "lam")
        op, form = cat.negative_2form_term_op(args.n, args.lam)
        meta = {
            "entry": name,
            "lambda": args.lam,
            "curvature_term": curvature_term(op, form, form),
            "form_norm_sq": form.norm_sq(),
            "eigenvalues": list(spectrum(op).eigenvalues),
        }
        return op, meta, {"two_form": _form_document(form)}
    if name == "remark-3.6":
        _need(args, "n", "K", "K1n")
        op, h = cat.negative_sym2_term_op(args.n, args.K, args.K1n)
        from .bochner import normal_h_term

        meta = {
            "entry": name,
            "K": args.K,
            "K1n": args.K1n,
            "curvature_term": normal_h_term(op, h.mat),
            "eigenvalues": list(spectrum(op).eigenvalues),
        }
        return op, meta, {"sym2": _sym2_document(h)}
    raise UsageError(
        "unknown catalog entry "
        f"{name!r}; known: sphere-product, s2-products, cp2, singer-thorpe, "
        "example-4.7, remark-3.6, extremal-pform"
    )


def cmd_catalog(args) -> int:
    if args.name == "extremal-pform":
        # form-only entry: no operator file, write the pair document directly
        _need(args, "p")
        w1, w2, lam = cat.extremal_pform(args.p)
        doc = {
            "entry": args.name,
            "p": args.p,
            "n": w1.n,
            "omega1": _form_document(w1),
            "omega2": _form_document(w2),
            "rotation": {"comps": list(lam.comps)},
        }
        text = _emit(doc) + "\n"
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0
    op, meta, companions = _build_catalog_entry(args)
    if args.out:
        dump_operator(args.out, op, metadata=meta, companions=companions)
    else:
        from .opfile import dumps_operator

        sys.stdout.write(dumps_operator(op, metadata=meta, companions=companions))
    return 0


# -- spectrum / bochner -------------------------------------------------------

def cmd_spectrum(args) -> int:
    op, _ = load_operator(args.file)
    s = spectrum(op)
    _print_json(
        {
            "file": args.file,
            "n": op.n,
            "eigenvalues": list(s.eigenvalues),
            "lowest_sums": list(np.cumsum(s.eigenvalues)),
        }
    )
    return 0


def cmd_bochner(args) -> int:
    op, _ = load_operator(args.file)
    n = op.n
    s = spectrum(op)
    try:
        if args.kind == "pform":
            if args.p is None:
                raise ValueError("kind 'pform' needs --p")
            kind = TensorKind.pform(args.p)
        elif args.kind == "sym2":
            kind = TensorKind.sym2()
        elif args.kind == "curvature-einstein":
            kind = TensorKind.curvature_einstein()
        elif args.kind == "weyl":
            kind = TensorKind.weyl()
        else:
            raise ValueError(
                f"unknown kind {args.kind!r}; known: pform, sym2, "
                "curvature-einstein, weyl"
            )
        constant = estimate_constant(kind, n)
        doc = {
            "file": args.file,
            "n": n,
            "kind": args.kind,
            "C": constant,
            "floor_C": math.floor(constant),
            "lowest_sum": s.lowest_sum(math.floor(constant)),
        }
        if args.p is not None:
            verdict = betti_verdict(s, n, args.p)
            doc["p"] = args.p
            doc["lowest_sum_n_minus_p"] = s.lowest_sum(n - args.p)
            doc["vanishing"] = verdict.vanishing
            doc["parallel_only"] = verdict.parallel_only
        if args.kappa is not None:
            lemma = lemma21_verdict(s, constant, args.kappa)
            doc["kappa"] = args.kappa
            doc["holds"] = lemma.holds
            doc["term_vanishing"] = lemma.vanishing
        if args.kappa is not None and args.diameter is not None and args.c_const is not None:
            if args.p is None:
                raise ValueError("the bound needs --p")
            doc["bound"] = betti_bound(n, args.p, args.kappa, args.diameter, args.c_const)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _print_json(doc)
    return 0


# -- warped / ode -------------------------------------------------------------

def _write_rows(path, header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format(v, ".17g") for v in row))
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_warped(args) -> int:
    try:
        profile = perturbed_profile(args.p, args.q, args.amp, args.center, args.width)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.samples < 1:
        raise UsageError("samples must be positive")
    rs = np.linspace(0.0, math.pi / 2.0, args.samples + 2)[1:-1]
    header = ["r", "radial_p", "radial_q", "plane_p", "plane_q", "mixed"] + [
        f"low{k}" for k in range(1, 6)
    ]
    rows = []
    for r in rs:
        jet = profile(float(r))
        fams = dwp_eigenvalues(args.p, args.q, jet)
        evs = dwp_eigenvalue_list(args.p, args.q, jet)
        sums = np.cumsum(evs)[:5]
        rows.append([r] + [v for v, _, _ in fams] + list(sums))
    _write_rows(args.out, header, rows)
    return 0


def cmd_ode(args) -> int:
    try:
        result = ode_shoot(args.n, args.x0, step=args.step, t_max=args.tmax)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if result.status != "crossed":
        print(f"integration ended without a crossing: {result.status}", file=sys.stderr)
        return 1
    scal = trajectory_scal(args.n, result.states)
    header = ["t", "x", "y", "scal"]
    rows = [
        [state.t, state.x, state.y, scal[i]] for i, state in enumerate(result.states)
    ]
    _write_rows(args.out, header, rows)
    t_cross, x1 = result.crossing
    print(f"crossing at t = {t_cross:.6f}, x = {x1:.12g}", file=sys.stderr)
    return 0


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvop",
        description="Curvature operator algebra: verification suites, example "
        "catalog, spectra, eigenvalue-sum verdicts, warped profiles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run verification suites")
    p_verify.add_argument("--suite", default="all", help="suite name or 'all'")
    p_verify.add_argument("--trials", type=int, default=None, help="override the per-suite trial count")
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.add_argument("--tol", type=float, default=None, help="override the suite tolerance")
    p_verify.set_defaults(func=cmd_verify)

    p_cat = sub.add_parser("catalog", help="write a named example operator")
    p_cat.add_argument("--name", required=True)
    p_cat.add_argument("--out", default=None, help="output path (stdout when omitted)")
    p_cat.add_argument("--n", type=int, default=None)
    p_cat.add_argument("--p", type=int, default=None)
    p_cat.add_argument("--k", type=int, default=None)
    p_cat.add_argument("--lambda", dest="lam", type=float, default=None)
    p_cat.add_argument("--lambdas", default=None, help="six comma-separated eigenvalues")
    p_cat.add_argument("--K", type=float, default=None)
    p_cat.add_argument("--K1n", type=float, default=None)
    p_cat.set_defaults(func=cmd_catalog)

    p_spec = sub.add_parser("spectrum", help="eigenvalues of an operator file")
    p_spec.add_argument("file")
    p_spec.set_defaults(func=cmd_spectrum)

    p_boch = sub.add_parser("bochner", help="eigenvalue-sum verdicts for an operator file")
    p_boch.add_argument("file")
    p_boch.add_argument("--kind", default="pform")
    p_boch.add_argument("--p", type=int, default=None)
    p_boch.add_argument("--kappa", type=float, default=None)
    p_boch.add_argument("--diameter", type=float, default=None)
    p_boch.add_argument("--c-const", dest="c_const", type=float, default=None)
    p_boch.set_defaults(func=cmd_bochner)

    p_warp = sub.add_parser("warped", help="doubly warped eigenvalue scan as CSV")
    p_warp.add_argument("--p", type=int, required=True)
    p_warp.add_argument("--q", type=int, required=True)
    p_warp.add_argument("--amp", type=float, default=0.0)
    p_warp.add_argument("--center", type=float, default=0.8)
    p_warp.add_argument("--width", type=float, default=0.1)
    p_warp.add_argument("--samples", type=int, default=100)
    p_warp.add_argument("--out", default=None)
    p_warp.set_defaults(func=cmd_warped)

    p_ode = sub.add_parser("ode", help="shoot the constant-curvature profile ODE")
    p_ode.add_argument("--n", type=int, required=True)
    p_ode.add_argument("--x0", type=float, required=True)
    p_ode.add_argument("--step", type=float, default=1e-4)
    p_ode.add_argument("--tmax", type=float, default=20.0)
    p_ode.add_argument("--out", default=None)
    p_ode.set_defaults(func=cmd_ode)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"cannot read {exc.filename}", file=sys.stderr)
        return 1
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def cli_entry():
    sys.exit(main())


if __name__ == "__main__":
    cli_entry()
