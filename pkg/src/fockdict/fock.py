"""Truncated vectors in the Fock space of entire functions.

The space carries the Gaussian probability measure dlambda = exp(-|z|^2)/pi dA
and the orthonormal monomial basis  e_n(z) = z^n / sqrt(n!).  A ``FockVector``
stores the coefficients c_0..c_N of an entire function against that basis, so
norms and inner products are plain l2 quantities and evaluation is a weighted
power series.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# exp(|z|^2 / 2) must stay inside double range during evaluation
_EVAL_HALF_MOD_SQ_LIMIT = 700.0


def _as_coeff_array(coeffs) -> np.ndarray:
    arr = np.asarray(coeffs, dtype=np.complex128)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("coefficients must be a non-empty 1-d sequence")
    out = arr.copy()
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class FockVector:
    """Coefficients c_0..c_N of an entire function against e_n(z) = z^n/sqrt(n!)."""

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _as_coeff_array(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def pad(self, degree: int) -> "FockVector":
        """Zero-pad (or truncate) to the given degree."""
        n = degree + 1
        c = np.zeros(n, dtype=np.complex128)
        m = min(n, len(self.coeffs))
        c[:m] = self.coeffs[:m]
        return FockVector(c)

    def __call__(self, z):
        return evaluate(self, z)

    @classmethod
    def basis(cls, n: int, degree: int) -> "FockVector":
        c = np.zeros(degree + 1, dtype=np.complex128)
        c[n] = 1.0
        return cls(c)


def inner(f: FockVector, g: FockVector) -> complex:
    """Fock-space inner product, linear in the first slot.

    Vectors of unequal degree are implicitly zero-padded.
    """
    m = min(len(f.coeffs), len(g.coeffs))
    return complex(np.vdot(g.coeffs[:m], f.coeffs[:m]))


def evaluate(f: FockVector, z):
    """Evaluate sum c_n z^n/sqrt(n!) at one point or an array of points.

    Uses the term recurrence t_{n+1} = t_n * z / sqrt(n+1) so no factorial is
    ever formed.  Raises OverflowError when exp(|z|^2/2) would leave double
    range, since values of that size are meaningless in the weighted space.
    """
    scalar = np.isscalar(z) or getattr(z, "ndim", 0) == 0
    zs = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    if np.any(np.abs(zs) ** 2 / 2.0 > _EVAL_HALF_MOD_SQ_LIMIT):
        raise OverflowError("|z|^2/2 exceeds the floating exponent range")
    term = np.ones_like(zs)
    acc = f.coeffs[0] * term
    for n in range(1, len(f.coeffs)):
        term = term * zs / np.sqrt(n)
        acc = acc + f.coeffs[n] * term
    return complex(acc[0]) if scalar else acc


def kernel_vector(a: complex, degree: int, normalized: bool = True) -> FockVector:
    """Truncated reproducing kernel K(., a), optionally normalized to k_a.

    Coefficients are conj(a)^n / sqrt(n!), times exp(-|a|^2/2) when
    normalized; the normalized vector has unit norm up to the tail of the
    exponential series beyond the truncation degree.
    """
    if degree < 0:
        raise ValueError("degree must be >= 0")
    n = np.arange(degree + 1)
    c = np.ones(degree + 1, dtype=np.complex128)
    ab = np.conj(complex(a))
    for k in range(1, degree + 1):
        c[k] = c[k - 1] * ab / np.sqrt(k)
    if normalized:
        c *= np.exp(-abs(complex(a)) ** 2 / 2.0)
    return FockVector(c)


def kernel_truncation_defect(a: complex, degree: int) -> float:
    """1 - ||k_a truncated at degree||^2, i.e. the mass lost to truncation."""
    return max(0.0, 1.0 - kernel_vector(a, degree, normalized=True).norm() ** 2)


@dataclass(frozen=True)
class KernelPoint:
    """A kernel evaluation point; ``normalized`` selects k_a over K(., a)."""

    a: complex
    normalized: bool = True

    def vector(self, degree: int) -> FockVector:
        return kernel_vector(self.a, degree, self.normalized)
