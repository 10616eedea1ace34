"""Command-line front end: transforms, operator application, verification suites.

All vector input/output uses the JSON pair format (arrays of [re, im]); CSV
output uses index,re,im rows for vectors and row,col,re,im for matrices,
both with round-trip-exact floats.  The default truncation degree is 64 and
can be overridden per call with --degree or globally with FOCKDICT_DEGREE.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import bargmann as bg
from . import gabor as gb
from . import hermite as hm
from . import operators as op
from . import quantize as qz
from . import singular as sg
from . import uncertainty as uc
from .fock import FockVector
from .report import SuiteConfig, run_suite
from .serialize import (
    matrix_to_csv,
    matrix_to_json,
    vector_from_json,
    vector_to_csv,
    vector_to_json,
)


def _default_degree(args) -> int:
    if getattr(args, "degree", None):
        return args.degree
    return int(os.environ.get("FOCKDICT_DEGREE", "64"))


def _write(text: str, out: str | None) -> None:
    if out:
        try:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text if text.endswith("\n") else text + "\n")
        except OSError as exc:
            raise SystemExit(f"cannot write {out}: {exc}")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _read_vector(path: str, kind: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return vector_from_json(fh.read(), kind)
    except OSError as exc:
        raise SystemExit(f"cannot read {path}: {exc}")


def _emit_vector(vec, args) -> None:
    fmt = getattr(args, "format", "json") or "json"
    _write(vector_to_csv(vec) if fmt == "csv" else vector_to_json(vec), args.out)


def _emit_matrix(entries, args) -> None:
    fmt = getattr(args, "format", "json") or "json"
    _write(matrix_to_csv(entries) if fmt == "csv" else matrix_to_json(entries), args.out)


def _emit_obj(obj, args) -> None:
    _write(json.dumps(obj, sort_keys=True, indent=2), args.out)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--degree", type=int, default=0, help="truncation degree (default 64 or FOCKDICT_DEGREE)")
    p.add_argument("--nodes", type=int, default=0, help="quadrature nodes (default 4*degree, capped at 256)")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p.add_argument("--format", choices=["json", "csv"], default="json", help="output format")
    p.add_argument("--out", default=None, help="output path (default stdout)")


def _parse_pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise SystemExit(f"expected two comma-separated numbers, got {text!r}")
    return float(parts[0]), float(parts[1])


# ----------------------------------------------------------------------
# subcommand handlers
# ----------------------------------------------------------------------

def _cmd_bargmann(args) -> int:
    N = _default_degree(args)
    line = _read_vector(args.input, "line").coeffs
    line = np.concatenate([line, np.zeros(max(0, N + 1 - len(line)))])[: N + 1]
    lv = hm.LineVector(line)
    if args.mode == "coeff":
        _emit_vector(bg.bargmann_coeff(lv), args)
        return 0
    # quadrature path: coefficients recovered from the defining integrals
    rule = hm.gauss_hermite(args.nodes or min(256, max(64, 4 * N)))
    coeffs = hm.project_line(lambda x: lv(x), N, rule, warn=False)
    _emit_vector(bg.bargmann_coeff(coeffs), args)
    return 0


def _cmd_op_apply(args) -> int:
    N = _default_degree(args)
    f = _read_vector(args.infile, "fock").pad(N)
    params = [float(p) for p in args.params.split(",")] if args.params else []
    if args.op == "fourier":
        out = op.fourier_fock(f)
    elif args.op == "rotate":
        if len(params) != 1:
            raise SystemExit("rotate needs --params THETA")
        out = op.rotation(params[0], f)
    elif args.op == "weyl":
        if len(params) != 2:
            raise SystemExit("weyl needs --params RE,IM")
        out = op.weyl_matrix(complex(params[0], params[1]), N).apply(f)
    elif args.op == "dilate":
        if len(params) != 1:
            raise SystemExit("dilate needs --params R")
        pipe = bg.BargmannPipeline.default(min(N, 32))
        res = op.dilation_fock(params[0], FockVector(f.coeffs[: min(N, 24) + 1]), pipe)
        sys.stderr.write(f"dual-path discrepancy: {res.discrepancy:.3e}\n")
        out = res.primary
    elif args.op == "a1":
        out = op.a1_matrix(N).apply(f)
    elif args.op == "a2":
        out = op.a2_matrix(N).apply(f)
    else:
        raise SystemExit(f"unknown operator {args.op!r}")
    _emit_vector(out, args)
    return 0


def _cmd_op_verify(args) -> int:
    N = _default_degree(args)
    results = []
    if args.op == "commutator":
        M, D = op.md_matrices(N)
        C = op.commutator(D, M)
        results.append({
            "name": "derivative-multiplication", "block": f"0..{N - 1}",
            "residual": float(np.max(np.abs(C[:N, :N] - np.eye(N)))),
        })
        C2 = op.commutator(op.a2_matrix(N), op.a1_matrix(N))
        results.append({
            "name": "line-pair-transport", "block": f"0..{N - 2}",
            "residual": float(np.max(np.abs(C2[: N - 1, : N - 1] - np.eye(N - 1)))),
        })
        C3 = op.commutator(uc.s1_matrix(N), uc.s2_matrix(N))
        results.append({
            "name": "uncertainty-pair", "block": f"0..{N - 2}",
            "residual": float(np.max(np.abs(C3[: N - 1, : N - 1] + 2j * np.eye(N - 1)))),
        })
    elif args.op == "unitarity":
        rng = np.random.default_rng(args.seed)
        f = FockVector(rng.standard_normal(N + 1) + 1j * rng.standard_normal(N + 1))
        results.append({
            "name": "fourier", "block": f"0..{N}",
            "residual": abs(op.fourier_fock(f).norm() - f.norm()),
        })
        results.append({
            "name": "rotation", "block": f"0..{N}",
            "residual": abs(op.rotation(0.9, f).norm() - f.norm()),
        })
        a = 0.5
        W = op.weyl_matrix(a, N)
        blk = max(4, int(N - math.ceil(a * a + 5 * a * math.sqrt(N)) - 4))
        results.append({
            "name": "weyl(0.5)", "block": f"0..{blk - 1}",
            "residual": op.unitarity_residual(W, blk),
        })
    else:
        raise SystemExit(f"unknown verification {args.op!r}")
    _emit_obj(results, args)
    return 0


def _cmd_singular(args) -> int:
    N = _default_degree(args)
    if args.mode == "hilbert":
        T = sg.hilbert_fock_matrix(N)
        if args.check == "tsquare":
            R = T.entries @ T.entries + np.eye(N + 1)
            span = min(8, N)
            residual = max(float(np.linalg.norm(R[:, j])) for j in range(span + 1))
            _emit_obj({"check": "tsquare", "degree": N, "span": f"0..{span}",
                       "residual": residual}, args)
        elif args.check == "berezin":
            sym = sg.hilbert_symbol(max(1, 2 * N - 1))
            z = 0.5 + 0.5j
            lhs, rhs = sg.berezin_check(sym, z, N)
            _emit_obj({"check": "berezin", "degree": N, "z": [z.real, z.imag],
                       "lhs": [lhs.real, lhs.imag], "rhs": [rhs.real, rhs.imag],
                       "difference": abs(lhs - rhs)}, args)
        else:  # norm
            series, tail = sg.fock_norm_A(200, with_tail=True)
            col_norm_sq = float(np.linalg.norm(T.entries[:, 0]) ** 2)
            _emit_obj({"check": "norm", "degree": N,
                       "antiderivative_norm_sq_series": series,
                       "series_tail_estimate": tail,
                       "first_column_norm_sq": col_norm_sq,
                       "ratio_to_series": col_norm_sq / (4.0 / np.pi * series)}, args)
        return 0
    if not args.phi or not args.apply:
        raise SystemExit("singular needs --phi and --apply (or the hilbert subcommand)")
    taylor = _read_vector(args.phi, "fock").coeffs
    sym = sg.symbol_from_taylor(taylor)
    f = _read_vector(args.apply, "fock").pad(N)
    S = sg.s_phi_matrix(sym, N)
    _emit_vector(S.apply(f), args)
    return 0


def _cmd_gabor(args) -> int:
    N = _default_degree(args)
    a, b = _parse_pair(args.lattice)
    if args.action == "density":
        radii = [float(r) for r in args.radii.split(",")]
        rep = gb.density_estimate(gb.PointSet.rectangular(a, b), radii)
        _emit_obj({
            "lattice": [a, b],
            "radii": list(rep.radii),
            "lower": list(rep.lower),
            "upper": list(rep.upper),
            "lower_extrapolated": rep.lower_extrapolated,
            "upper_extrapolated": rep.upper_extrapolated,
            "cell_density": 1.0 / (np.pi * a * b),
        }, args)
    elif args.action == "frame-bounds":
        Z = gb.PointSet.rectangular(a, b).clip_to_disk(math.sqrt(N / 2.0))
        core = args.core or max(2, N // 8)
        A, B = gb.frame_bounds_finite(Z, N, core)
        _emit_obj({"lattice": [a, b], "degree": N, "core": core,
                   "points": len(Z.points), "lower": A, "upper": B}, args)
    else:  # predicate
        rep = gb.density_estimate(gb.PointSet.rectangular(a, b), [30.0, 50.0])
        sep, gap = gb.separation_check(gb.PointSet.rectangular(a, b))
        _emit_obj({
            "lattice": [a, b],
            "product": a * b,
            "lattice_criterion": gb.lattice_frame_predicate(a, b),
            "density_verdict": gb.density_frame_predicate(
                gb.PointSet.rectangular(a, b), rep, sep),
            "min_gap": gap,
        }, args)
    return 0


def _cmd_uncertainty(args) -> int:
    N = _default_degree(args)
    if args.mode == "extremal":
        params = uc.ExtremalParams(C=1.0, c=args.c, a=args.a, b=args.b)
        _emit_vector(uc.extremal_coeffs(params, N), args)
        return 0
    if not args.f:
        raise SystemExit("uncertainty needs --f (or the extremal subcommand)")
    f = _read_vector(args.f, "fock")
    lhs, rhs = uc.uncertainty_product(f, args.a, args.b)
    _emit_obj({"lhs": lhs, "rhs": rhs, "gap": lhs - rhs}, args)
    return 0


def _cmd_quantize(args) -> int:
    N = _default_degree(args)
    if args.action == "toeplitz":
        T = qz.toeplitz_monomial_matrix(args.m, args.n, N)
        _emit_matrix(T.entries, args)
        return 0
    with open(args.symbol, "r", encoding="utf-8") as fh:
        spec = json.load(fh)
    sym = qz.PolySymbol({(int(m), int(n)): complex(re, im) for m, n, re, im in spec["terms"]})
    if args.action == "verify-anti-wick":
        residual = qz.anti_wick_toeplitz_residual(sym, N)
    else:
        residual = qz.weyl_toeplitz_residual(sym, N)
    _emit_obj({"residual": residual}, args)
    return 0


def _cmd_verify(args) -> int:
    cfg = SuiteConfig(degree=args.degree, nodes=args.nodes, seed=args.seed)
    report = run_suite(args.suite, cfg)
    text = report.to_json()
    _write(text, args.out)
    for case in sorted(report.cases, key=lambda c: c.id):
        status = "PASS" if case.passed else "FAIL"
        sys.stderr.write(f"{status} {case.id}: residual={case.residual:.3e} "
                         f"tolerance={case.tolerance:.1e}\n")
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fockdict",
        description="Numerical dictionary between square-integrable functions "
                    "on the line and the Fock space of entire functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bargmann", help="transform a line vector to the Fock side")
    p.add_argument("--input", required=True, help="LineVector JSON file")
    p.add_argument("--mode", choices=["coeff", "quad"], default="coeff")
    _add_common(p)
    p.set_defaults(fn=_cmd_bargmann)

    p = sub.add_parser("op", help="apply or verify dictionary operators")
    opsub = p.add_subparsers(dest="action", required=True)
    pa = opsub.add_parser("apply")
    pa.add_argument("--op", required=True,
                    choices=["fourier", "rotate", "weyl", "dilate", "a1", "a2"])
    pa.add_argument("--params", default="", help="comma-separated operator parameters")
    pa.add_argument("--in", dest="infile", required=True, help="FockVector JSON file")
    _add_common(pa)
    pa.set_defaults(fn=_cmd_op_apply)
    pv = opsub.add_parser("verify")
    pv.add_argument("--op", required=True, choices=["commutator", "unitarity"])
    _add_common(pv)
    pv.set_defaults(fn=_cmd_op_verify)

    p = sub.add_parser("singular", help="singular integral operators")
    p.add_argument("mode", nargs="?", choices=["hilbert"], default=None)
    p.add_argument("--phi", help="symbol Taylor coefficients (vector JSON)")
    p.add_argument("--apply", help="FockVector JSON file to apply the operator to")
    p.add_argument("--check", choices=["tsquare", "berezin", "norm"], default="tsquare")
    _add_common(p)
    p.set_defaults(fn=_cmd_singular)

    p = sub.add_parser("gabor", help="lattices, densities, frame bounds")
    gsub = p.add_subparsers(dest="action", required=True)
    for action in ("density", "frame-bounds", "predicate"):
        pg = gsub.add_parser(action)
        pg.add_argument("--lattice", required=True, help="lattice steps a,b")
        if action == "density":
            pg.add_argument("--R", dest="radii", default="10,20,50",
                            help="comma-separated disk radii")
        if action == "frame-bounds":
            pg.add_argument("--core", type=int, default=0,
                            help="core subspace degree (default degree/8)")
        _add_common(pg)
        pg.set_defaults(fn=_cmd_gabor)

    p = sub.add_parser("uncertainty", help="uncertainty product and extremal family")
    p.add_argument("mode", nargs="?", choices=["extremal"], default=None)
    p.add_argument("--f", help="FockVector JSON file")
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--b", type=float, default=0.0)
    p.add_argument("--c", type=float, default=1.0, help="extremal family parameter (positive)")
    _add_common(p)
    p.set_defaults(fn=_cmd_uncertainty)

    p = sub.add_parser("quantize", help="Toeplitz and pseudo-differential calculi")
    qsub = p.add_subparsers(dest="action", required=True)
    pt = qsub.add_parser("toeplitz")
    pt.add_argument("--m", type=int, required=True, help="antiholomorphic power")
    pt.add_argument("--n", type=int, required=True, help="holomorphic power")
    _add_common(pt)
    pt.set_defaults(fn=_cmd_quantize)
    for action in ("verify-anti-wick", "verify-weyl"):
        pq = qsub.add_parser(action)
        pq.add_argument("--symbol", required=True,
                        help='symbol JSON: {"terms": [[m, n, re, im], ...]}')
        _add_common(pq)
        pq.set_defaults(fn=_cmd_quantize)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=["bargmann", "fourier", "weyl", "dilation",
                                     "gabor", "hilbert", "uncertainty", "quantize", "all"])
    _add_common(p)
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())
