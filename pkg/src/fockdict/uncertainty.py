"""Uncertainty principle on the Fock space.

The product inequality

    ||f' + zf - af|| * ||f' - zf - b i f|| >= ||f||^2     (a, b real)

is driven by the commutator of the self-adjoint pair S1 = D + M and
S2 = i(D - M); note the second factor is ||(S2 + b) f||, not ||(S2 - b) f||
(multiplying by -i flips the sign of the b-term), which is why the extremal
family below uses the same (a, b) as the displayed product.  Both factors
are computed on degree-raised coefficient arrays, so the products are exact
for any truncated input and no interior-block caveat is needed.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import FockVector
from .operators import OperatorMatrix, md_matrices


def s1_matrix(degree: int) -> OperatorMatrix:
    """S1 = D + M; self-adjoint on the truncated basis."""
    M, D = md_matrices(degree)
    return OperatorMatrix(D.entries + M.entries, "fock", "s1")


def s2_matrix(degree: int) -> OperatorMatrix:
    """S2 = i(D - M); self-adjoint, with [S1, S2] = -2i I on the interior."""
    M, D = md_matrices(degree)
    return OperatorMatrix(1j * (D.entries - M.entries), "fock", "s2")


def _apply_mult(c: np.ndarray) -> np.ndarray:
    """(M f) on a coefficient array, raising the degree by one (exact)."""
    out = np.zeros(len(c) + 1, dtype=np.complex128)
    n = np.arange(1, len(c) + 1)
    out[1:] = np.sqrt(n) * c
    return out


def _apply_diff(c: np.ndarray) -> np.ndarray:
    """(D f) on a coefficient array, padded to the same raised degree."""
    out = np.zeros(len(c) + 1, dtype=np.complex128)
    n = np.arange(1, len(c))
    out[: len(c) - 1] = np.sqrt(n) * c[1:]
    return out


def uncertainty_product(f: FockVector, a: float, b: float) -> tuple[float, float]:
    """Returns (lhs, rhs) of the product inequality; lhs >= rhs always.

    lhs = ||f' + zf - af|| * ||f' - zf - ibf||, rhs = ||f||^2, both computed
    exactly on degree-raised arrays.
    """
    c = f.coeffs
    d = _apply_diff(c)
    m = _apply_mult(c)
    ce = np.concatenate([c, [0.0]])
    u = d + m - a * ce
    w = d - m - 1j * b * ce
    lhs = float(np.linalg.norm(u) * np.linalg.norm(w))
    rhs = float(np.linalg.norm(c) ** 2)
    return lhs, rhs


def uncertainty_gap(f: FockVector, a: float, b: float) -> float:
    """lhs - rhs of the product inequality; zero exactly on the extremal family."""
    lhs, rhs = uncertainty_product(f, a, b)
    return lhs - rhs


@dataclass(frozen=True)
class ExtremalParams:
    """Parameters of the equality family C exp(alpha z^2 + beta z).

    alpha = (c-1)/(2(c+1)) and beta = (a + i b c)/(c+1); membership in the
    space needs |alpha| < 1/2, automatic for c > 0.
    """

    C: complex = 1.0
    c: float = 1.0
    a: float = 0.0
    b: float = 0.0

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError("c must be positive")

    @property
    def alpha(self) -> float:
        return (self.c - 1.0) / (2.0 * (self.c + 1.0))

    @property
    def beta(self) -> complex:
        return (self.a + 1j * self.b * self.c) / (self.c + 1.0)


def extremal_coeffs(params: ExtremalParams, degree: int) -> FockVector:
    """Coefficients of C exp(alpha z^2 + beta z) against e_n.

    Taylor recurrence (n+1) t_{n+1} = beta t_n + 2 alpha t_{n-1}; basis
    coefficients are t_n sqrt(n!).  Fails when the top coefficient is not yet
    below the 1e-10 tail certificate (pick a larger degree).
    """
    alpha, beta = params.alpha, params.beta
    t = np.zeros(degree + 1, dtype=np.complex128)
    t[0] = params.C
    if degree >= 1:
        t[1] = beta * params.C
    for n in range(1, degree):
        t[n + 1] = (beta * t[n] + 2.0 * alpha * t[n - 1]) / (n + 1)
    half_log_fact = 0.5 * np.concatenate(
        [[0.0], np.cumsum(np.log(np.arange(1, degree + 1)))]
    )
    coeffs = t * np.exp(half_log_fact)
    vec = FockVector(coeffs)
    norm = vec.norm()
    if norm > 0 and abs(coeffs[-1]) > 1e-10 * norm:
        raise ValueError(
            f"tail certificate failed: |c_N| = {abs(coeffs[-1]):.2e} "
            f"> 1e-10 * ||f||; increase the degree"
        )
    return vec
