"""Hermite polynomials and functions, Gauss quadrature, and real-line vectors.

The orthonormal basis of L2(R) used throughout is

    h_n(x) = (2/pi)^(1/4) / sqrt(2^n n!) * exp(-x^2) * H_n(sqrt(2) x),

where H_n is the physicists' Hermite polynomial.  Quadrature rules are stored
with the weight they integrate against so callers cannot mix conventions.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import AccuracyWarning

GAUSS_CONST = (2.0 / np.pi) ** 0.25  # normalizing constant of h_0

_MAX_GH_NODES = 256


def hermite_poly(n: int, y):
    """Physicists' Hermite polynomial H_n by the three-term recurrence.

    Raises OverflowError instead of returning infinities.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    ya = np.asarray(y, dtype=np.float64)
    h_prev = np.ones_like(ya)
    if n == 0:
        out = h_prev
    else:
        with np.errstate(over="ignore", invalid="ignore"):
            h = 2.0 * ya
            for k in range(1, n):
                h, h_prev = 2.0 * ya * h - 2.0 * k * h_prev, h
        out = h
    if not np.all(np.isfinite(out)):
        raise OverflowError(f"H_{n} overflows at the requested argument")
    return float(out) if np.isscalar(y) else out


def hermite_function(n: int, x):
    """Orthonormal Hermite function h_n(x).

    The Gaussian is carried inside the recurrence
        h_{n+1} = 2x/sqrt(n+1) h_n - sqrt(n/(n+1)) h_{n-1},
    which is stable to n of a few hundred; far tails underflow to zero.
    """
    return hermite_functions(n, x)[n]


def hermite_functions(n_max: int, x) -> np.ndarray:
    """All h_0..h_{n_max} at the given points, shape (n_max+1, len(x))."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    xa = np.atleast_1d(np.asarray(x, dtype=np.float64))
    out = np.zeros((n_max + 1, xa.size))
    out[0] = GAUSS_CONST * np.exp(-(xa**2))
    if n_max >= 1:
        out[1] = 2.0 * xa * out[0]
    for n in range(1, n_max):
        out[n + 1] = 2.0 * xa / np.sqrt(n + 1) * out[n] - np.sqrt(n / (n + 1)) * out[n - 1]
    if np.isscalar(x):
        return out[:, 0]
    return out


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights tagged with the weight function they integrate.

    weight == "hermite": sum w_k f(x_k) ~ int f(x) exp(-x^2) dx on R.
    weight == "plane":   nodes are complex, sum w_k f(z_k) ~ int f dlambda.
    weight == "legendre": plain composite rule, int f(x) dx on [lo, hi].

    ``log_weights`` stores log w_k for the hermite rule so that the
    re-weighting w_k exp(x_k^2) can be formed without overflow.
    """

    nodes: np.ndarray
    weights: np.ndarray
    weight: str = "hermite"
    log_weights: np.ndarray | None = None

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    def flat_weights(self) -> np.ndarray:
        """Weights against plain dx: w_k exp(+x_k^2) for the hermite rule."""
        if self.weight == "hermite":
            return np.exp(self.log_weights + self.nodes**2)
        if self.weight == "legendre":
            return self.weights
        raise ValueError("flat weights are only defined for real-line rules")


def gauss_hermite(n_nodes: int) -> QuadratureRule:
    """Gauss-Hermite rule for the weight exp(-x^2) on R (Golub-Welsch).

    Nodes are the eigenvalues of the symmetric tridiagonal Jacobi matrix.
    Weights are recovered from the Christoffel function,
    w_k = exp(-x_k^2) / sum_j psi_j(x_k)^2 with psi_j the orthonormal
    weight-one Hermite functions: unlike the first-eigenvector formula this
    stays accurate (in log scale) at the extreme nodes, where eigenvector
    components sink below machine noise.  Weights sum to sqrt(pi).
    """
    if not 1 <= n_nodes <= _MAX_GH_NODES:
        raise ValueError(f"n_nodes must be in 1..{_MAX_GH_NODES}")
    if n_nodes == 1:
        nodes = np.zeros(1)
        weights = np.array([np.sqrt(np.pi)])
        return QuadratureRule(nodes, weights, "hermite", np.log(weights))
    off = np.sqrt(np.arange(1, n_nodes) / 2.0)
    jac = np.diag(off, 1) + np.diag(off, -1)
    vals = np.linalg.eigvalsh(jac)
    # psi_0 = pi^{-1/4} e^{-x^2/2}; psi_{j+1} = x sqrt(2/(j+1)) psi_j - sqrt(j/(j+1)) psi_{j-1}
    psi_prev = np.pi**-0.25 * np.exp(-(vals**2) / 2.0)
    christoffel = psi_prev**2
    psi = vals * np.sqrt(2.0) * psi_prev
    for j in range(1, n_nodes):
        christoffel += psi**2
        psi, psi_prev = (
            vals * np.sqrt(2.0 / (j + 1)) * psi - np.sqrt(j / (j + 1)) * psi_prev,
            psi,
        )
    log_weights = -(vals**2) - np.log(christoffel)
    return QuadratureRule(vals, np.exp(log_weights), "hermite", log_weights)


def gauss_hermite_plane(n_nodes: int) -> QuadratureRule:
    """Tensor rule on C for the Gaussian measure dlambda = exp(-|z|^2)/pi dA."""
    line = gauss_hermite(n_nodes)
    u, v = np.meshgrid(line.nodes, line.nodes, indexing="ij")
    wu, wv = np.meshgrid(line.weights, line.weights, indexing="ij")
    nodes = (u + 1j * v).ravel()
    weights = (wu * wv).ravel() / np.pi
    return QuadratureRule(nodes, weights, "plane")


def composite_legendre(lo: float, hi: float, n_panels: int, points: int = 32) -> QuadratureRule:
    """Composite Gauss-Legendre rule on [lo, hi]."""
    xg, wg = np.polynomial.legendre.leggauss(points)
    edges = np.linspace(lo, hi, n_panels + 1)
    nodes, weights = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        nodes.append((xg + 1.0) * (b - a) / 2.0 + a)
        weights.append(wg * (b - a) / 2.0)
    return QuadratureRule(np.concatenate(nodes), np.concatenate(weights), "legendre")


def default_line_rule(degree: int) -> QuadratureRule:
    """4 nodes per degree for smooth integrands, capped at the rule limit."""
    return gauss_hermite(min(_MAX_GH_NODES, max(64, 4 * degree)))


@dataclass(frozen=True, eq=False)
class LineVector:
    """Coefficients b_0..b_N of a real-line function against h_n.

    ``tail_ratio`` is set by projections: ||top coefficients|| / ||all||,
    a cheap under-resolution indicator.
    """

    coeffs: np.ndarray
    tail_ratio: float | None = None

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=np.complex128).copy()
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("coefficients must be a non-empty 1-d sequence")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def __call__(self, x):
        basis = hermite_functions(self.degree, np.atleast_1d(x))
        vals = self.coeffs @ basis
        return complex(vals[0]) if np.isscalar(x) else vals

    @classmethod
    def basis(cls, n: int, degree: int) -> "LineVector":
        c = np.zeros(degree + 1, dtype=np.complex128)
        c[n] = 1.0
        return cls(c)


def _tail_ratio(coeffs: np.ndarray) -> float:
    total = np.linalg.norm(coeffs)
    if total == 0.0:
        return 0.0
    n_tail = max(2, len(coeffs) // 8)
    return float(np.linalg.norm(coeffs[-n_tail:]) / total)


def project_line(
    f: Callable, degree: int, rule: QuadratureRule, warn: bool = True
) -> LineVector:
    """Expand a smooth function against h_0..h_N with a Gauss-Hermite rule.

    b_n = sum_k w_k exp(x_k^2) f(x_k) h_n(x_k); the re-weighting is done in
    log space so x_k^2 is never exponentiated on its own.
    """
    if rule.weight != "hermite":
        raise ValueError("project_line needs a Gauss-Hermite rule")
    x = rule.nodes
    fw = rule.flat_weights() * np.asarray(f(x), dtype=np.complex128)
    basis = hermite_functions(degree, x)
    coeffs = basis @ fw
    ratio = _tail_ratio(coeffs)
    if warn and ratio > 1e-6:
        warnings.warn(
            f"projection tail ratio {ratio:.2e} > 1e-6: expansion under-resolved",
            AccuracyWarning,
            stacklevel=2,
        )
    return LineVector(coeffs, tail_ratio=ratio)


def project_line_interval(
    f: Callable,
    degree: int,
    support: tuple[float, float],
    points: int = 32,
    n_panels: int | None = None,
    warn: bool = True,
) -> LineVector:
    """Expand a compactly supported function via composite Gauss-Legendre.

    Meant for discontinuous windows (the function must vanish outside
    ``support``); panels default to enough to resolve h_N's oscillation.
    """
    lo, hi = support
    if n_panels is None:
        n_panels = max(4, int(np.ceil((degree + 1) * (hi - lo) / 20.0)))
    rule = composite_legendre(lo, hi, n_panels, points)
    x = rule.nodes
    fw = rule.weights * np.asarray(f(x), dtype=np.complex128)
    basis = hermite_functions(degree, x)
    coeffs = basis @ fw
    ratio = _tail_ratio(coeffs)
    if warn and ratio > 1e-6:
        warnings.warn(
            f"projection tail ratio {ratio:.2e} > 1e-6: expansion under-resolved",
            AccuracyWarning,
            stacklevel=2,
        )
    return LineVector(coeffs, tail_ratio=ratio)
