"""Singular integral operators S_phi on the Fock space.

S_phi f(z) = int f(w) e^{z conj(w)} phi(z - conj(w)) dlambda(w) for an entire
symbol phi.  Expanding phi and using that int f(w) conj(w)^j e^{z conj(w)}
dlambda = f^(j)(z) gives the normal-ordered form

    S_phi = sum_k phi_k sum_j C(k,j) (-1)^j M^{k-j} D^j,

with M multiplication by z and D differentiation.  The matrix entry at
(row p, col q) collapses to a single alternating series over j,

    <S_phi e_q, e_p> = sqrt(p! q!) sum_j (-1)^j C(d+2j, j) phi_{d+2j} / (q-j)!,

with d = p - q.  For symbols of high degree the terms of that series exceed
the result by dozens of orders of magnitude before cancelling, far beyond
double precision, so the series is summed in exact rational arithmetic:
symbols carry their Taylor coefficients as exact fractions (times one real
scale factor) and only the final value is rounded.  The defining integral is
retained as a quadrature oracle for cross-validation at low degree.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import AccuracyWarning
from .fock import FockVector, evaluate, kernel_vector
from .hermite import QuadratureRule
from .operators import OperatorMatrix

_CFrac = tuple[Fraction, Fraction]


def _cfrac(value: complex) -> _CFrac:
    return (Fraction(float(np.real(value))), Fraction(float(np.imag(value))))


def _cfrac_mul(x: _CFrac, y: _CFrac) -> _CFrac:
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _cfrac_pow(base: _CFrac, n: int) -> _CFrac:
    out: _CFrac = (Fraction(1), Fraction(0))
    for _ in range(n):
        out = _cfrac_mul(out, base)
    return out


def _frac_to_float_scaled(fr: Fraction, log_scale: float) -> float:
    """float(fr * exp(log_scale)) without forming huge intermediates."""
    if fr == 0:
        return 0.0
    sign = 1.0 if fr > 0 else -1.0
    ln = math.log(abs(fr.numerator)) - math.log(fr.denominator)
    return sign * math.exp(ln + log_scale)


@dataclass(frozen=True, eq=False)
class EntireSymbol:
    """Taylor coefficients phi_0..phi_K of an entire symbol at the origin.

    ``exact`` holds the coefficients as exact (re, im) fractions with
    phi_k = scale * exact[k]; generic float input is converted losslessly
    (every double is a binary rational).  Membership of phi in the Fock
    space requires sum |phi_n|^2 n! < infinity, estimated by ``f2_tail_ratio``.
    """

    taylor: np.ndarray
    name: str = ""
    exact: tuple[_CFrac, ...] | None = None
    scale: float = 1.0

    def __post_init__(self):
        arr = np.asarray(self.taylor, dtype=np.complex128).copy()
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("taylor coefficients must be a non-empty 1-d sequence")
        arr.setflags(write=False)
        object.__setattr__(self, "taylor", arr)
        if self.exact is None:
            object.__setattr__(self, "exact", tuple(_cfrac(c) for c in arr))
            object.__setattr__(self, "scale", 1.0)
        else:
            object.__setattr__(self, "exact", tuple(self.exact))

    @property
    def degree(self) -> int:
        return len(self.taylor) - 1

    def __call__(self, u):
        scalar = np.isscalar(u)
        us = np.atleast_1d(np.asarray(u, dtype=np.complex128))
        vals = np.polyval(self.taylor[::-1], us)
        return complex(vals[0]) if scalar else vals

    def truncated(self, degree: int) -> "EntireSymbol":
        k = min(degree, self.degree) + 1
        return EntireSymbol(self.taylor[:k], self.name, self.exact[:k], self.scale)

    def f2_tail_ratio(self) -> float:
        """sup of recent per-degree growth ratios of |phi_n|^2 n!.

        A value below 1 indicates the membership series is still contracting
        at the truncation degree; this is a heuristic flag, not a proof.
        """
        mags = np.abs(self.taylor)
        nz = np.nonzero(mags)[0]
        if len(nz) < 2:
            return 0.0
        gl = np.concatenate([[0.0], np.cumsum(np.log(np.arange(1, len(mags))))])
        log_terms = 2.0 * np.log(mags[nz]) + gl[nz]
        ratios = np.exp(np.diff(log_terms) / np.diff(nz))
        tail = ratios[-4:]
        return float(np.max(tail))


def symbol_from_taylor(taylor, name: str = "") -> EntireSymbol:
    return EntireSymbol(np.asarray(taylor, dtype=np.complex128), name)


def antiderivative_coeffs(degree: int) -> EntireSymbol:
    """Taylor series of the odd antiderivative of e^{z^2}: sum z^{2n+1}/((2n+1) n!)."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    taylor = np.zeros(degree + 1, dtype=np.complex128)
    exact: list[_CFrac] = [(Fraction(0), Fraction(0))] * (degree + 1)
    for n in range(0, (degree - 1) // 2 + 1):
        k = 2 * n + 1
        fr = Fraction(1, (2 * n + 1) * math.factorial(n))
        exact[k] = (fr, Fraction(0))
        taylor[k] = float(fr)
    return EntireSymbol(taylor, "antiderivative-exp-z2", tuple(exact), 1.0)


def scaled_antiderivative_symbol(degree: int) -> EntireSymbol:
    """A(z / sqrt(2)) with A the antiderivative above; scale carries 1/sqrt(2)."""
    taylor = np.zeros(degree + 1, dtype=np.complex128)
    exact: list[_CFrac] = [(Fraction(0), Fraction(0))] * (degree + 1)
    scale = 1.0 / math.sqrt(2.0)
    for n in range(0, (degree - 1) // 2 + 1):
        k = 2 * n + 1
        fr = Fraction(1, (2 * n + 1) * math.factorial(n) * 2**n)
        exact[k] = (fr, Fraction(0))
        taylor[k] = scale * float(fr)
    return EntireSymbol(taylor, "antiderivative-scaled", tuple(exact), scale)


def hilbert_symbol(degree: int) -> EntireSymbol:
    """Symbol of the Fock-side Hilbert transform: -(2/sqrt(pi)) A(u/sqrt(2))."""
    base = scaled_antiderivative_symbol(degree)
    scale = -2.0 / math.sqrt(np.pi) * base.scale
    return EntireSymbol(
        base.taylor * (-2.0 / math.sqrt(np.pi)), "hilbert", base.exact, scale
    )


def gaussian_square_symbol(a: complex, degree: int) -> EntireSymbol:
    """phi(u) = exp(a u^2), truncated; bounded S_phi requires real a < 1/2."""
    taylor = np.zeros(degree + 1, dtype=np.complex128)
    exact: list[_CFrac] = [(Fraction(0), Fraction(0))] * (degree + 1)
    ax = _cfrac(complex(a))
    for n in range(0, degree // 2 + 1):
        num = _cfrac_pow(ax, n)
        fact = math.factorial(n)
        re, im = num[0] / fact, num[1] / fact
        exact[2 * n] = (re, im)
        taylor[2 * n] = float(re) + 1j * float(im)
    return EntireSymbol(taylor, f"exp({a}u^2)", tuple(exact), 1.0)


def exp_linear_symbol(a: complex, degree: int) -> EntireSymbol:
    """phi(u) = exp(u conj(a)); S_phi is a weighted displacement, bounded iff a is real."""
    taylor = np.zeros(degree + 1, dtype=np.complex128)
    exact: list[_CFrac] = [(Fraction(0), Fraction(0))] * (degree + 1)
    ab = _cfrac(np.conj(complex(a)))
    for k in range(degree + 1):
        num = _cfrac_pow(ab, k)
        fact = math.factorial(k)
        re, im = num[0] / fact, num[1] / fact
        exact[k] = (re, im)
        taylor[k] = float(re) + 1j * float(im)
    return EntireSymbol(taylor, f"exp(u*conj({a}))", tuple(exact), 1.0)


def fock_norm_A(n_terms: int, with_tail: bool = False):
    """Partial sum of ||A(z/sqrt(2))||^2 = 1/2 sum (2n+1)!/((2n+1)^2 4^n (n!)^2).

    Terms decay like n^{-3/2}, so the tail past n_terms is estimated by the
    integral comparison ~ 1/(sqrt(pi) sqrt(n_terms)).
    """
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    total = 0.0
    t = 1.0
    for n in range(n_terms):
        if n >= 1:
            t *= (2 * n - 1) ** 2 / (2 * n * (2 * n + 1))
        total += t
    value = 0.5 * total
    if with_tail:
        tail = 1.0 / (math.sqrt(np.pi) * math.sqrt(n_terms))
        return value, tail
    return value


def symbol_to_fock(symbol: EntireSymbol, degree: int) -> FockVector:
    """Coefficients of the symbol itself as a Fock vector: c_k = phi_k sqrt(k!).

    Combined in log scale through the exact representation, since sqrt(k!)
    alone overflows well before the products do.
    """
    gl = np.concatenate([[0.0], np.cumsum(np.log(np.arange(1, degree + 1)))])
    c = np.zeros(degree + 1, dtype=np.complex128)
    sgn = 1.0 if symbol.scale >= 0 else -1.0
    log_scale = math.log(abs(symbol.scale)) if symbol.scale != 0 else -math.inf
    for k in range(min(degree, symbol.degree) + 1):
        re, im = symbol.exact[k]
        shift = 0.5 * gl[k] + log_scale
        c[k] = sgn * (_frac_to_float_scaled(re, shift) + 1j * _frac_to_float_scaled(im, shift))
    return FockVector(c)


def s_phi_matrix(symbol: EntireSymbol, degree: int) -> OperatorMatrix:
    """Matrix of S_phi on e_0..e_N via the normal-ordered expansion.

    The per-entry alternating series is summed exactly in rational
    arithmetic (see module docstring); one rounding happens at the end,
    scaled by sqrt(p! q!) in log space.
    """
    N = degree
    K = symbol.degree
    if K > 2 * N:
        raise ValueError(f"symbol degree {K} exceeds 2 * matrix degree {2 * N}")
    exact = symbol.exact
    nonzero = [k for k in range(K + 1) if exact[k][0] != 0 or exact[k][1] != 0]
    nonzero_set = set(nonzero)
    gl = np.concatenate([[0.0], np.cumsum(np.log(np.arange(1, N + 1)))])
    fact = [math.factorial(i) for i in range(N + 1)]
    out = np.zeros((N + 1, N + 1), dtype=np.complex128)
    for q in range(N + 1):
        for p in range(N + 1):
            d = p - q
            j_lo = max(0, (-d + 1) // 2)
            j_hi = min(q, (K - d) // 2)
            if j_hi < j_lo:
                continue
            js = [j for j in range(j_lo, j_hi + 1) if (d + 2 * j) in nonzero_set]
            if not js:
                continue
            s_re = Fraction(0)
            s_im = Fraction(0)
            for j in js:
                k = d + 2 * j
                mult = Fraction(math.comb(k, j), fact[q - j])
                if j % 2:
                    mult = -mult
                ck = exact[k]
                s_re += mult * ck[0]
                s_im += mult * ck[1]
            log_pref = 0.5 * (gl[p] + gl[q]) + math.log(abs(symbol.scale))
            sgn = 1.0 if symbol.scale >= 0 else -1.0
            out[p, q] = sgn * (
                _frac_to_float_scaled(s_re, log_pref)
                + 1j * _frac_to_float_scaled(s_im, log_pref)
            )
    return OperatorMatrix(out, "fock", f"S[{symbol.name}]")


def s_phi_apply_quadrature(
    symbol: EntireSymbol, F: FockVector, z, plane_rule: QuadratureRule
):
    """Quadrature oracle for the defining integral of S_phi at points z."""
    if plane_rule.weight != "plane":
        raise ValueError("needs a plane rule")
    scalar = np.isscalar(z)
    zs = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    w = plane_rule.nodes
    wbar = np.conj(w)
    base = plane_rule.weights * evaluate(F, w)
    vals = np.empty(len(zs), dtype=np.complex128)
    for i, zz in enumerate(zs):
        vals[i] = np.sum(base * np.exp(zz * wbar) * symbol(zz - wbar))
    return complex(vals[0]) if scalar else vals


@lru_cache(maxsize=8)
def hilbert_fock_matrix(degree: int) -> OperatorMatrix:
    """Fock-side Hilbert transform: S_phi with phi = -(2/sqrt(pi)) A(u/sqrt(2)).

    Column 0 is the coefficient vector of the symbol itself; the matrix is
    skew-adjoint with odd parity (entries vanish when row and column have
    equal parity).
    """
    sym = hilbert_symbol(max(1, 2 * degree - 1))
    op = s_phi_matrix(sym, degree)
    return OperatorMatrix(op.entries, "fock", "hilbert", unitary=True)


def berezin_check(symbol: EntireSymbol, z: complex, degree: int) -> tuple[complex, complex]:
    """Berezin transform identity: <S_phi k_z, k_z> = phi(z - conj(z)).

    Returns (quadratic form on the truncated kernel, Taylor evaluation at
    2i Im z); they agree up to truncation.
    """
    z = complex(z)
    if abs(z) > math.sqrt(degree) / 2.0 + 1e-12:
        warnings.warn(
            "kernel point too far out for this degree", AccuracyWarning, stacklevel=2
        )
    kv = kernel_vector(z, degree, normalized=True).coeffs
    S = s_phi_matrix(symbol, degree)
    lhs = complex(np.vdot(kv, S.entries @ kv))
    rhs = symbol(z - np.conj(z))
    return lhs, rhs


def boundedness_probe(
    symbol: EntireSymbol,
    degree_list,
    n_iter: int = 200,
    seed: int = 0,
) -> list[float]:
    """Spectral-norm estimates of S_phi across truncation degrees.

    Power iteration with a fixed seeded start; the monotone trend across
    degrees is the deliverable, not a certified norm.  Growth without bound
    is reported, never raised.
    """
    out = []
    for N in degree_list:
        sym = symbol.truncated(2 * N)
        A = s_phi_matrix(sym, N).entries
        rng = np.random.default_rng(seed)
        v = rng.standard_normal(N + 1) + 1j * rng.standard_normal(N + 1)
        v /= np.linalg.norm(v)
        H = A.conj().T @ A
        for _ in range(n_iter):
            v = H @ v
            nv = np.linalg.norm(v)
            if nv == 0.0:
                break
            v /= nv
        out.append(float(np.linalg.norm(A @ v)))
    return out


def hilbert_line_pv(f, x, cutoff: float = None, points: int = 32,
                    tail_coeff: float = 0.0):
    """Line-side Hilbert transform (1/pi) PV int f(t)/(t - x) dt by quadrature.

    Mirrored nodes around the singularity: substituting t = x +- s turns the
    principal value into int_0^S [f(x+s) - f(x-s)]/s ds, smooth at s = 0.
    Accurate to ~1e-8 on Hermite functions of low index.  For integrands that
    decay only like a/t (e.g. Hilbert images of even functions) pass the
    asymptotic coefficient a as ``tail_coeff``; the tail beyond the cutoff is
    then added in closed form.
    """
    from .hermite import composite_legendre

    scalar = np.isscalar(x)
    xs = np.atleast_1d(np.asarray(x, dtype=np.float64))
    S = (float(np.max(np.abs(xs))) + 10.0) if cutoff is None else float(cutoff)
    rule = composite_legendre(0.0, S, max(8, int(S)), points)
    s = rule.nodes
    # one batched evaluation of f over all (x, s) pairs
    plus = np.asarray(f((xs[:, None] + s[None, :]).ravel())).reshape(len(xs), len(s))
    minus = np.asarray(f((xs[:, None] - s[None, :]).ravel())).reshape(len(xs), len(s))
    vals = ((plus - minus) / s[None, :]) @ rule.weights / np.pi
    vals = vals.astype(np.complex128)
    if tail_coeff != 0.0:
        small = np.abs(xs) < 1e-12
        corr = np.empty_like(xs)
        corr[small] = 2.0 / S
        xa = xs[~small]
        corr[~small] = np.log((S + xa) / (S - xa)) / xa
        vals = vals + tail_coeff * corr / np.pi
    return complex(vals[0]) if scalar else vals
