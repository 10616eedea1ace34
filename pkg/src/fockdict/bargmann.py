"""The Bargmann transform in two redundant forms, and weighted sup norms.

The transform B maps L2(R) unitarily onto the Fock space,

    Bf(z) = c * int f(x) exp(2xz - x^2 - z^2/2) dx,      c = (2/pi)^(1/4),

and sends the Hermite function h_n to the monomial e_n.  That makes the
coefficient map the exact transform path; the quadrature of the defining
integral is kept alongside it as an independent certification of the
integral formulas.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import AccuracyWarning
from .fock import FockVector, evaluate
from .hermite import (
    GAUSS_CONST,
    LineVector,
    QuadratureRule,
    default_line_rule,
    gauss_hermite_plane,
    project_line,
)


def bargmann_coeff(f: LineVector) -> FockVector:
    """Exact transform: h_n coefficients become e_n coefficients unchanged."""
    return FockVector(f.coeffs)


def inverse_bargmann_coeff(F: FockVector) -> LineVector:
    """Exact inverse transform on coefficients."""
    return LineVector(F.coeffs)


def bargmann_quadrature(f: Callable, z, rule: QuadratureRule, warn: bool = True):
    """Quadrature of the defining integral at one or many points z.

    The Gaussian weight of the rule absorbs exp(-x^2); the factor
    exp(2x i Im z) oscillates, so accuracy degrades once |Im z| outruns the
    rule's phase resolution (flagged at |Im z| > n_nodes / 8).
    """
    if rule.weight != "hermite":
        raise ValueError("bargmann_quadrature needs a Gauss-Hermite rule")
    scalar = np.isscalar(z)
    zs = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    if warn and np.max(np.abs(zs.imag)) > rule.n_nodes / 8.0:
        warnings.warn(
            "oscillation budget exceeded: |Im z| > n_nodes/8", AccuracyWarning, stacklevel=2
        )
    x = rule.nodes
    fx = rule.weights * np.asarray(f(x), dtype=np.complex128)
    kernel = np.exp(2.0 * np.outer(zs, x) - (zs**2 / 2.0)[:, None])
    vals = GAUSS_CONST * kernel @ fx
    return complex(vals[0]) if scalar else vals


def inverse_bargmann_quadrature(
    F: FockVector, x, plane_rule: QuadratureRule, warn: bool = True
):
    """Tensor Gauss-Hermite value of the inverse integral over the plane.

    B^{-1}F(x) = c * int F(z) exp(2x conj(z) - x^2 - conj(z)^2/2) dlambda(z);
    reliable for F of modest degree relative to the plane rule.
    """
    if plane_rule.weight != "plane":
        raise ValueError("inverse_bargmann_quadrature needs a plane rule")
    if warn and F.degree > np.sqrt(plane_rule.n_nodes):
        warnings.warn(
            "plane rule too coarse for this degree", AccuracyWarning, stacklevel=2
        )
    scalar = np.isscalar(x)
    xs = np.atleast_1d(np.asarray(x, dtype=np.float64))
    zb = np.conj(plane_rule.nodes)
    fz = plane_rule.weights * evaluate(F, plane_rule.nodes) * np.exp(-(zb**2) / 2.0)
    kernel = np.exp(2.0 * np.outer(xs, zb) - (xs**2)[:, None])
    vals = GAUSS_CONST * kernel @ fz
    return complex(vals[0]) if scalar else vals


@dataclass(frozen=True)
class BargmannPipeline:
    """Degree, quadrature rules and tolerance bundled for transform chains.

    The coefficient path and the quadrature path must agree on smooth inputs
    within ``tol``; ``cross_validate`` measures exactly that.
    """

    degree: int
    line_rule: QuadratureRule
    plane_rule: QuadratureRule
    tol: float = 1e-7

    @classmethod
    def default(cls, degree: int, plane_nodes: int = 64, tol: float = 1e-7):
        return cls(degree, default_line_rule(degree), gauss_hermite_plane(plane_nodes), tol)

    def forward(self, f: LineVector) -> FockVector:
        return bargmann_coeff(f)

    def forward_from_callable(self, f: Callable, warn: bool = True) -> FockVector:
        return bargmann_coeff(project_line(f, self.degree, self.line_rule, warn=warn))

    def cross_validate(self, f: LineVector, z_points) -> float:
        """Max |quadrature - coefficient| of Bf over the given points."""
        func = lambda x: f(x)
        quad_vals = bargmann_quadrature(func, z_points, self.line_rule)
        coeff_vals = evaluate(bargmann_coeff(f), np.asarray(z_points))
        return float(np.max(np.abs(quad_vals - coeff_vals)))


def _polar_grid(radius: float, step: float) -> np.ndarray:
    radii = np.arange(0.0, radius + step / 2.0, step)
    pts = [np.array([0.0 + 0.0j])]
    for r in radii[1:]:
        n_theta = max(16, int(np.ceil(2.0 * np.pi * r / step)))
        theta = np.linspace(0.0, 2.0 * np.pi, n_theta, endpoint=False)
        pts.append(r * np.exp(1j * theta))
    return np.concatenate(pts)


def fock_sup_norm(F: FockVector, grid_radius: float, grid_step: float) -> float:
    """max over a polar grid of |F(z)| exp(-|z|^2/2).

    Choose grid_radius >= sqrt(2 * degree): beyond that the weighted modulus
    of a truncated series only decays.
    """
    grid = _polar_grid(grid_radius, grid_step)
    vals = np.abs(evaluate(F, grid)) * np.exp(-np.abs(grid) ** 2 / 2.0)
    return float(np.max(vals))


def fock_p_norm(F: FockVector, p: float, grid_radius: float, grid_step: float) -> float:
    """Grid estimate of the F^p norm (p/(2 pi) int |F e^{-|z|^2/2}|^p dA)^(1/p).

    Exposed for experimentation; no accuracy contract.
    """
    if p <= 0:
        raise ValueError("p must be positive")
    radii = np.arange(grid_step / 2.0, grid_radius, grid_step)
    total = 0.0
    for r in radii:
        n_theta = max(16, int(np.ceil(2.0 * np.pi * r / grid_step)))
        theta = np.linspace(0.0, 2.0 * np.pi, n_theta, endpoint=False)
        z = r * np.exp(1j * theta)
        w = np.abs(evaluate(F, z)) * np.exp(-np.abs(z) ** 2 / 2.0)
        total += np.sum(w**p) * r * grid_step * (2.0 * np.pi / n_theta)
    return float((p / (2.0 * np.pi) * total) ** (1.0 / p))


def verify_pbound(
    f: Callable,
    rule: QuadratureRule,
    grid_radius: float = 8.0,
    grid_step: float = 0.1,
    f_sup: float | None = None,
    sup_scan: float = 50.0,
) -> tuple[float, float]:
    """Check ||Bf||_{F-infinity} <= c sqrt(pi) ||f||_infinity for bounded f.

    Returns (lhs, rhs): lhs is the weighted sup of Bf on a polar grid with Bf
    evaluated by quadrature; rhs the bound.  ||f||_inf is scanned on a dense
    real grid unless supplied.
    """
    if f_sup is None:
        xs = np.linspace(-sup_scan, sup_scan, 20001)
        f_sup = float(np.max(np.abs(np.asarray(f(xs), dtype=np.complex128))))
    grid = _polar_grid(grid_radius, grid_step)
    vals = bargmann_quadrature(f, grid, rule, warn=False)
    lhs = float(np.max(np.abs(vals) * np.exp(-np.abs(grid) ** 2 / 2.0)))
    rhs = float(GAUSS_CONST * np.sqrt(np.pi) * f_sup)
    return lhs, rhs
