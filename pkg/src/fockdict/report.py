"""Batch verification suites with machine-readable reports.

Each suite runs the residual checks of one module family at a configured
degree and emits a self-describing report: the config echo makes a report
re-runnable, cases are sorted by id, and identical config + seed produces a
byte-identical document.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

import numpy as np

from . import bargmann as bg
from . import gabor as gb
from . import hermite as hm
from . import operators as op
from . import quantize as qz
from . import singular as sg
from . import uncertainty as uc
from .fock import FockVector, kernel_vector

SUITE_NAMES = (
    "bargmann",
    "fourier",
    "weyl",
    "dilation",
    "gabor",
    "hilbert",
    "uncertainty",
    "quantize",
)


@dataclass(frozen=True)
class SuiteConfig:
    degree: int = 0  # 0 means: FOCKDICT_DEGREE env var or 64
    nodes: int = 0  # 0 means 4 * degree, capped
    seed: int = 0

    def resolved(self) -> "SuiteConfig":
        deg = self.degree or int(os.environ.get("FOCKDICT_DEGREE", "64"))
        nodes = self.nodes or min(256, max(64, 4 * deg))
        return SuiteConfig(deg, nodes, self.seed)


@dataclass(frozen=True)
class CaseResult:
    id: str
    ref: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "ref": self.ref,
            "residual": float(self.residual),
            "tolerance": float(self.tolerance),
            "pass": bool(self.passed),
        }


@dataclass(frozen=True)
class VerificationReport:
    suite: str
    config: SuiteConfig
    cases: tuple[CaseResult, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return bool(all(c.passed for c in self.cases))

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "config": {
                "degree": self.config.degree,
                "nodes": self.config.nodes,
                "seed": self.config.seed,
            },
            "cases": [c.to_dict() for c in sorted(self.cases, key=lambda c: c.id)],
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


# ----------------------------------------------------------------------
# case implementations (each returns (residual, tolerance))
# ----------------------------------------------------------------------

def _case_bargmann(cfg: SuiteConfig) -> list[CaseResult]:
    rule = hm.gauss_hermite(cfg.nodes)
    plane = hm.gauss_hermite_plane(64)
    rng = np.random.default_rng(cfg.seed)
    zs = (rng.standard_normal(10) + 1j * rng.standard_normal(10)) * 0.9
    worst = 0.0
    for n in range(7):
        vals = bg.bargmann_quadrature(lambda x: hm.hermite_function(n, x), zs, rule)
        worst = max(worst, float(np.max(np.abs(vals - FockVector.basis(n, n)(zs)))))
    out = [CaseResult("b1-hermite-to-monomial", "transform of basis functions", worst, 1e-7)]

    c = rng.standard_normal(cfg.degree + 1) + 1j * rng.standard_normal(cfg.degree + 1)
    lv = hm.LineVector(c)
    out.append(
        CaseResult(
            "b2-coefficient-isometry",
            "norm preservation of the coefficient path",
            abs(bg.bargmann_coeff(lv).norm() - lv.norm()),
            1e-12,
        )
    )

    xg = np.linspace(-2.0, 2.0, 9)
    inv = bg.inverse_bargmann_quadrature(FockVector.basis(2, 8), xg, plane)
    out.append(
        CaseResult(
            "b3-inverse-integral",
            "inverse integral reproduces basis functions",
            float(np.max(np.abs(inv - hm.hermite_functions(2, xg)[2]))),
            1e-6,
        )
    )

    lhs, rhs = bg.verify_pbound(lambda x: np.ones_like(x), rule, grid_radius=6.0)
    out.append(
        CaseResult(
            "b4-sup-norm-bound",
            "weighted sup bound with equality for constants",
            abs(lhs / rhs - 1.0),
            0.02,
        )
    )
    return out


def _case_fourier(cfg: SuiteConfig) -> list[CaseResult]:
    rng = np.random.default_rng(cfg.seed)
    f = FockVector(rng.standard_normal(cfg.degree + 1) + 1j * rng.standard_normal(cfg.degree + 1))
    n = np.arange(cfg.degree + 1)
    diag = np.max(np.abs(op.fourier_fock(f).coeffs - (1j**(n % 4)) * f.coeffs))
    out = [CaseResult("f1-diagonal", "transform is diagonal with fourth-root phases", float(diag), 1e-15)]

    g = f
    for _ in range(4):
        g = op.fourier_fock(g)
    out.append(CaseResult("f2-fourth-power", "fourth power is the identity",
                          float(np.max(np.abs(g.coeffs - f.coeffs))), 1e-15))

    rec = (
        op.spectral_projection(0, f).coeffs
        + 1j * op.spectral_projection(1, f).coeffs
        - op.spectral_projection(2, f).coeffs
        - 1j * op.spectral_projection(3, f).coeffs
    )
    out.append(CaseResult("f3-spectral-recombination", "projection recombination equals the transform",
                          float(np.max(np.abs(rec - op.fourier_fock(f).coeffs))), 1e-15))

    rule = hm.gauss_hermite(cfg.nodes)
    xs = np.linspace(-4.0, 4.0, 33)
    vals = op.fourier_line_quadrature(lambda t: hm.hermite_function(2, t), xs, rule)
    out.append(CaseResult("f4-line-transport", "line-side eigenrelation for index 2",
                          float(np.max(np.abs(vals + hm.hermite_functions(2, xs)[2]))), 1e-6))

    out.append(CaseResult("f5-quarter-rotation", "quarter rotation equals the transform",
                          float(np.max(np.abs(op.rotation(np.pi / 2, f).coeffs - op.fourier_fock(f).coeffs))), 1e-12))
    out.append(CaseResult("f6-rotation-isometry", "rotations preserve the norm",
                          abs(op.rotation(0.7, f).norm() - f.norm()), 1e-12))
    return out


def _weyl_block(N: int, a: complex) -> int:
    r = abs(a) ** 2
    return max(4, int(N - np.ceil(r + 5 * abs(a) * np.sqrt(N)) - 4))


def _case_weyl(cfg: SuiteConfig) -> list[CaseResult]:
    N = cfg.degree
    a = 0.5 + 0.0j
    out = [CaseResult("w1-zero-displacement", "zero displacement is the identity",
                      float(np.max(np.abs(op.weyl_matrix(0.0, 16).entries - np.eye(17)))), 1e-15)]

    W = op.weyl_matrix(a, N)
    out.append(CaseResult("w2-kernel-column", "first column is the normalized kernel",
                          float(np.max(np.abs(W.entries[:, 0] - kernel_vector(a, N).coeffs))), 1e-12))

    blk = _weyl_block(N, a)
    out.append(CaseResult("w3-unitarity-interior", "unitary away from the truncation boundary",
                          op.unitarity_residual(W, blk), 1e-10))

    P = W.entries @ op.weyl_matrix(-a, N).entries
    out.append(CaseResult("w4-composition", "opposite displacements cancel on the interior",
                          float(np.max(np.abs(P[:blk, :blk] - np.eye(blk)))), 1e-10))

    ab = (0.5, 0.3)
    pipe = bg.BargmannPipeline.default(N)
    Wm = op.translation_modulation_fock(ab[0], ab[1], N)
    worst = 0.0
    for n in (0, 1):
        x = pipe.line_rule.nodes
        g = bg.inverse_bargmann_quadrature(FockVector.basis(n, N), x - ab[0], pipe.plane_rule, warn=False)
        vals = np.exp(2j * np.pi * ab[1] * x) * g
        col = hm.hermite_functions(N, x) @ (pipe.line_rule.flat_weights() * vals)
        worst = max(worst, float(np.max(np.abs(col - Wm.entries[:, n]))))
    out.append(CaseResult("w5-shift-modulation-dictionary",
                          "line shifts and modulations map to displacements", worst, 1e-6))
    return out


def _case_dilation(cfg: SuiteConfig) -> list[CaseResult]:
    pipe = bg.BargmannPipeline.default(min(cfg.degree, 32))
    res1 = op.dilation_fock(1.0, FockVector.basis(1, 8), pipe)
    out = [CaseResult("d1-identity", "unit ratio is the identity",
                      float(np.max(np.abs(res1.primary.coeffs - FockVector.basis(1, pipe.degree).coeffs))), 1e-9)]

    import math

    r = 2.0
    res = op.dilation_fock(r, FockVector.basis(0, 8), pipe)
    gamma = (1 - r * r) / (2 * (1 + r * r))
    cf = np.zeros(pipe.degree + 1, dtype=complex)
    for k in range(pipe.degree // 2 + 1):
        cf[2 * k] = np.sqrt(2 * r / (1 + r * r)) * gamma**k * math.sqrt(math.factorial(2 * k)) / math.factorial(k)
    out.append(CaseResult("d2-gauss-closed-form", "dilated Gaussian has known coefficients",
                          float(np.max(np.abs(res.primary.coeffs - cf))), 1e-9))

    worst = 0.0
    for rr in (0.5, 2.0):
        for n in (0, 1):
            worst = max(worst, op.dilation_fock(rr, FockVector.basis(n, 8), pipe).discrepancy)
    out.append(CaseResult("d3-dual-path", "line route agrees with the direct kernel", worst, 1e-5))
    return out


def _case_gabor(cfg: SuiteConfig) -> list[CaseResult]:
    Z = gb.PointSet.rectangular(1.0, 1.0)
    rep = gb.density_estimate(Z, [20.0, 50.0])
    target = 1.0 / np.pi
    dev = max(abs(rep.lower_extrapolated - target), abs(rep.upper_extrapolated - target)) / target
    out = [CaseResult("g1-lattice-density", "disk counts approach the cell-area density", dev, 0.05)]

    sep, gap = gb.separation_check(Z)
    out.append(CaseResult("g2-separation", "unit lattice gap", abs(gap - 1.0), 1e-12))

    A1, B1 = gb.frame_bounds_finite(gb.PointSet.rectangular(0.8, 0.8).clip_to_disk(6.0), 80, 10)
    A2, B2 = gb.frame_bounds_finite(gb.PointSet.rectangular(1.1, 1.1).clip_to_disk(6.0), 80, 10)
    out.append(CaseResult("g3-frame-ratio", "dense lattice dominates sparse by 10x",
                          10.0 * (A2 / B2) / (A1 / B1), 1.0))

    pts = np.array([0.4 + 0.2j, -0.3 + 0.9j, 1.0 - 0.5j])
    G = gb.kernel_gram(pts, cfg.degree)
    closed = np.exp(
        np.conj(pts)[:, None] * pts[None, :]
        - (np.abs(pts)[:, None] ** 2 + np.abs(pts)[None, :] ** 2) / 2.0
    )
    out.append(CaseResult("g4-kernel-gram", "kernel inner products match the closed form",
                          float(np.max(np.abs(G - closed.T))), 1e-10))

    z = 1.0 + 1.0j
    two_path = abs(gb.box_window_fock(z) - gb.box_window_coeffs(min(cfg.degree, 120))(z))
    out.append(CaseResult("g5-box-two-path", "pointwise and coefficient box paths agree",
                          float(two_path), 1e-6))

    import math

    b0 = gb.box_window_coeffs(32).coeffs[0]
    want = hm.GAUSS_CONST * math.sqrt(np.pi) / 2.0 * math.erf(1.0)
    out.append(CaseResult("g6-box-first-coefficient", "first coefficient in closed form",
                          abs(b0 - want), 1e-10))

    ok, ratio = gb.linear_independence_check(FockVector.basis(0, 40), [0.0, 1.0], 40)
    gram_closed = np.array([[1.0, np.exp(-0.5)], [np.exp(-0.5), 1.0]])
    vals = np.linalg.eigvalsh(gram_closed)
    out.append(CaseResult("g7-independence", "two displaced kernels stay independent",
                          abs(ratio - vals[0] / vals[-1]) + (0.0 if ok else 1.0), 1e-8))

    pred_ok = (
        gb.lattice_frame_predicate(0.9, 0.9)
        and not gb.lattice_frame_predicate(1.0, 1.0)
        and gb.lattice_frame_predicate(2.0, 0.4)
    )
    out.append(CaseResult("g8-lattice-predicate", "strict product criterion", 0.0 if pred_ok else 1.0, 0.5))
    return out


def _case_hilbert(cfg: SuiteConfig) -> list[CaseResult]:
    N = cfg.degree
    T = sg.hilbert_fock_matrix(N)
    col_oracle = sg.symbol_to_fock(sg.hilbert_symbol(max(1, 2 * N - 1)), N)
    out = [CaseResult("h1-first-column", "first column equals the symbol coefficients",
                      float(np.max(np.abs(T.entries[:, 0] - col_oracle.coeffs))), 1e-13)]

    series = sg.fock_norm_A(200)
    direct = sg.symbol_to_fock(sg.scaled_antiderivative_symbol(399), 399).norm() ** 2
    out.append(CaseResult("h2-norm-two-path", "norm series equals the coefficient norm",
                          abs(series - direct), 1e-12))

    par = np.add.outer(np.arange(N + 1), np.arange(N + 1)) % 2 == 0
    out.append(CaseResult("h3-parity", "entries vanish on equal parity",
                          float(np.max(np.abs(T.entries[par]))), 1e-15))
    out.append(CaseResult("h4-skew-adjoint", "matrix is skew-adjoint",
                          float(np.max(np.abs(T.entries + T.entries.conj().T))), 1e-15))

    rule = hm.gauss_hermite(min(cfg.nodes, 192))
    worst = 0.0
    for n in range(3):
        hv = sg.hilbert_line_pv(lambda t: hm.hermite_function(n, t), rule.nodes)
        col = hm.hermite_functions(N, rule.nodes) @ (rule.flat_weights() * hv)
        worst = max(worst, float(np.max(np.abs(col - T.entries[:, n]))))
    out.append(CaseResult("h5-principal-value-oracle",
                          "columns match the line-side singular integral", worst, 1e-10))

    def t2_residual(deg):
        M = sg.hilbert_fock_matrix(deg).entries
        R = M @ M + np.eye(deg + 1)
        return max(np.linalg.norm(R[:, j]) for j in range(9))

    r_small, r_big = t2_residual(N // 2), t2_residual(N)
    out.append(CaseResult("h6-involution-trend", "squared-transform residual decreases with degree",
                          r_big / r_small, 1.0))

    lhs, rhs = sg.berezin_check(sg.symbol_from_taylor([0.0, 1.0]), 1j, min(N, 40))
    out.append(CaseResult("h7-berezin", "quadratic form recovers the symbol",
                          abs(lhs - rhs), 1e-10))
    return out


def _case_uncertainty(cfg: SuiteConfig) -> list[CaseResult]:
    N = cfg.degree
    S1, S2 = uc.s1_matrix(N), uc.s2_matrix(N)
    C = op.commutator(S1, S2)
    out = [CaseResult("u1-commutator", "canonical commutator on the interior",
                      float(np.max(np.abs(C[: N - 1, : N - 1] + 2j * np.eye(N - 1)))), 1e-12)]
    out.append(CaseResult("u2-self-adjoint", "generator pair is self-adjoint",
                          float(max(np.max(np.abs(S1.entries - S1.entries.conj().T)),
                                    np.max(np.abs(S2.entries - S2.entries.conj().T)))), 1e-15))

    rng = np.random.default_rng(cfg.seed)
    worst_violation = 0.0
    for _ in range(20):
        c = rng.standard_normal(12) + 1j * rng.standard_normal(12)
        f = FockVector(np.concatenate([c, np.zeros(4)]))
        a, b = 2.0 * rng.standard_normal(2)
        lhs, rhs = uc.uncertainty_product(f, a, b)
        worst_violation = max(worst_violation, rhs - lhs)
    out.append(CaseResult("u3-inequality", "product bound on random vectors", worst_violation, 1e-9))

    worst_gap = 0.0
    for _ in range(10):
        alpha = rng.uniform(-0.4, 0.4)
        cpar = (1 + 2 * alpha) / (1 - 2 * alpha)
        a, b = rng.standard_normal(2)
        f = uc.extremal_coeffs(uc.ExtremalParams(1.0, cpar, a, b), 300)
        lhs, rhs = uc.uncertainty_product(f, a, b)
        worst_gap = max(worst_gap, abs(lhs - rhs) / rhs)
    out.append(CaseResult("u4-equality-family", "equality on the Gaussian family", worst_gap, 1e-6))
    return out


def _case_quantize(cfg: SuiteConfig) -> list[CaseResult]:
    import math

    plane = hm.gauss_hermite_plane(64)
    worst = 0.0
    for p in range(7):
        for q in range(7):
            got = np.sum(plane.weights * plane.nodes**p * np.conj(plane.nodes) ** q)
            want = math.factorial(p) if p == q else 0.0
            worst = max(worst, abs(got - want))
    out = [CaseResult("q1-moment-identity", "Gaussian monomial moments", float(worst), 1e-10)]

    worst = max(
        qz.anti_wick_toeplitz_residual(qz.PolySymbol({(m, n): 1.0}), 16)
        for m in range(5)
        for n in range(5 - m)
    )
    out.append(CaseResult("q2-anti-wick", "normal-ordered calculus equals compression", worst, 1e-12))

    out.append(CaseResult("q3-oscillator-chain", "heat transform closes the oscillator identity",
                          qz.weyl_toeplitz_residual(qz.PolySymbol({(1, 1): 1.0}), cfg.degree // 2), 1e-8))

    worst = max(
        qz.weyl_toeplitz_residual(sym, cfg.degree // 2)
        for sym in (
            qz.PolySymbol({(0, 1): 1.0, (1, 0): 1.0}),
            qz.PolySymbol({(0, 2): 1.0}),
            qz.PolySymbol({(1, 0): 1j}),
        )
    )
    out.append(CaseResult("q4-symmetric-calculus", "phase-space calculus matches compression", worst, 1e-8))

    sym = qz.PolySymbol({(1, 1): 2.0, (0, 1): 1 - 1j, (1, 0): 1 + 1j})
    Tm = qz.toeplitz_poly_matrix(sym, 16).entries
    out.append(CaseResult("q5-hermitian-transport", "real symbols give Hermitian matrices",
                          float(np.max(np.abs(Tm - Tm.conj().T))), 1e-14))
    return out


_SUITES = {
    "bargmann": _case_bargmann,
    "fourier": _case_fourier,
    "weyl": _case_weyl,
    "dilation": _case_dilation,
    "gabor": _case_gabor,
    "hilbert": _case_hilbert,
    "uncertainty": _case_uncertainty,
    "quantize": _case_quantize,
}


def run_suite(name: str, config: SuiteConfig | None = None) -> VerificationReport:
    """Run one named verification suite (or "all") and return its report."""
    cfg = (config or SuiteConfig()).resolved()
    if name == "all":
        cases: list[CaseResult] = []
        for s in SUITE_NAMES:
            cases.extend(_SUITES[s](cfg))
        return VerificationReport("all", cfg, tuple(sorted(cases, key=lambda c: c.id)))
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES + ('all',)}")
    cases = _SUITES[name](cfg)
    return VerificationReport(name, cfg, tuple(sorted(cases, key=lambda c: c.id)))
