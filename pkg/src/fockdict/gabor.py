"""Gabor frames through the Fock-space lens.

Time-frequency shifts (a, b) on the line correspond to displacement points
z = a - pi b i in the plane, so a rectangular time-frequency lattice with
steps (a, b) becomes the plane lattice a Z x (-pi b i) Z with cell area
pi a b.  Frames of displaced kernels, Beurling densities, the ab < 1
lattice criterion, the box-window orthonormal system, and finite linear
independence checks all live here.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import ResolutionError
from .fock import FockVector, kernel_truncation_defect, kernel_vector
from .hermite import GAUSS_CONST, composite_legendre, project_line_interval
from .bargmann import bargmann_coeff
from .operators import weyl_matrix

CRITICAL_DENSITY = 1.0 / np.pi


@dataclass(frozen=True, eq=False)
class PointSet:
    """Distinct points in the plane, optionally backed by a lattice generator.

    Generator-backed sets produce points on demand inside any disk, which
    removes edge effects from density counts; ``clip_radius`` marks sets that
    were clipped out of a larger region, so disk queries beyond the clip are
    refused rather than silently undercounted.
    """

    points: np.ndarray
    generators: tuple[complex, complex] | None = None
    clip_radius: float | None = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.complex128).copy()
        if pts.ndim != 1:
            raise ValueError("points must be a 1-d sequence")
        if len(pts) > 1:
            gap = _near_duplicate_gap(pts)
            if gap <= 1e-9:
                raise ValueError(f"points must be distinct (min gap {gap:.2e})")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_points(cls, seq) -> "PointSet":
        return cls(np.asarray(list(seq), dtype=np.complex128))

    @classmethod
    def rectangular(cls, a: float, b: float) -> "PointSet":
        """Time-frequency lattice with steps (a, b): points n a - i m pi b."""
        if a <= 0 or b <= 0:
            raise ValueError("lattice steps must be positive")
        return cls(np.empty(0, dtype=np.complex128), generators=(complex(a), complex(0, -np.pi * b)))

    @classmethod
    def lattice(cls, omega1: complex, omega2: complex) -> "PointSet":
        o1, o2 = complex(omega1), complex(omega2)
        if abs(o1.real * o2.imag - o1.imag * o2.real) < 1e-15:
            raise ValueError("lattice generators must be independent over R^2")
        return cls(np.empty(0, dtype=np.complex128), generators=(o1, o2))

    @property
    def is_lattice(self) -> bool:
        return self.generators is not None

    def points_in_disk(self, center: complex, radius: float) -> np.ndarray:
        if self.is_lattice:
            return _lattice_points_in_disk(self.generators, complex(center), radius)
        if self.clip_radius is not None and abs(complex(center)) + radius > self.clip_radius:
            raise ValueError("disk query exceeds the clipped region")
        mask = np.abs(self.points - complex(center)) < radius
        return self.points[mask]

    def clip_to_disk(self, radius: float, center: complex = 0.0) -> "PointSet":
        pts = self.points_in_disk(center, radius)
        return PointSet(pts, clip_radius=float(radius))


def _near_duplicate_gap(pts: np.ndarray, tol: float = 1e-9) -> float:
    """Smallest gap among pairs closer than tol in real part (duplicate gate).

    Sort-scan: any pair violating distinctness at scale tol must sit within
    tol of each other along the real axis, so only those pairs are examined.
    Returns inf when no near-duplicates exist.
    """
    order = np.lexsort((pts.imag, pts.real))
    p = pts[order]
    best = np.inf
    for i in range(len(p) - 1):
        j = i + 1
        while j < len(p) and p[j].real - p[i].real <= tol:
            best = min(best, abs(p[j] - p[i]))
            j += 1
    return float(best)


def _min_gap(pts: np.ndarray) -> float:
    """True minimum pairwise distance (quadratic; capped for sanity)."""
    if len(pts) > 5000:
        raise ValueError("min-gap computation limited to 5000 points")
    best = np.inf
    for i in range(0, len(pts), 256):
        chunk = pts[i : i + 256]
        diff = np.abs(chunk[:, None] - pts[None, :])
        diff[np.arange(len(chunk)), i + np.arange(len(chunk))] = np.inf
        best = min(best, float(diff.min()))
    return best


def _lattice_points_in_disk(gens, center: complex, radius: float) -> np.ndarray:
    o1, o2 = gens
    # invert the generator matrix to bound the integer search box
    mat = np.array([[o1.real, o2.real], [o1.imag, o2.imag]])
    inv = np.linalg.inv(mat)
    corners = center + radius * np.exp(1j * np.linspace(0, 2 * np.pi, 17))
    uv = inv @ np.vstack([corners.real, corners.imag])
    n_lo, n_hi = int(np.floor(uv[0].min())) - 1, int(np.ceil(uv[0].max())) + 1
    m_lo, m_hi = int(np.floor(uv[1].min())) - 1, int(np.ceil(uv[1].max())) + 1
    ns = np.arange(n_lo, n_hi + 1)
    ms = np.arange(m_lo, m_hi + 1)
    grid = ns[:, None] * o1 + ms[None, :] * o2
    pts = grid.ravel()
    return pts[np.abs(pts - center) < radius]


@dataclass(frozen=True)
class DensityReport:
    """Disk-count density estimates across radii, with endpoint extrapolation."""

    radii: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    lower_extrapolated: float
    upper_extrapolated: float


def density_estimate(
    Z: PointSet, radii: Sequence[float], center_grid: Sequence[complex] | None = None
) -> DensityReport:
    """Beurling density estimates: inf/sup over centers of count / (pi R^2).

    For lattices the centers default to a grid over one fundamental cell
    (counts are periodic in the center); the extrapolated values are the
    estimates at the largest radius.
    """
    radii = np.asarray(sorted(radii), dtype=np.float64)
    if center_grid is None:
        if Z.is_lattice:
            o1, o2 = Z.generators
            frac = (np.arange(6) + 0.5) / 6.0
            center_grid = [u * o1 + v * o2 for u in frac for v in frac]
        else:
            center_grid = [0.0 + 0.0j]
    lower = np.empty(len(radii))
    upper = np.empty(len(radii))
    for i, R in enumerate(radii):
        counts = [len(Z.points_in_disk(c, R)) for c in center_grid]
        area = np.pi * R**2
        lower[i] = min(counts) / area
        upper[i] = max(counts) / area
    return DensityReport(radii, lower, upper, float(lower[-1]), float(upper[-1]))


def separation_check(Z: PointSet) -> tuple[bool, float]:
    """Minimum pairwise gap and a separation verdict (threshold 1e-9).

    Finite sets are trivially unions of separated subsequences, so no
    decomposition is attempted; lattices report their cell geometry.
    """
    if Z.is_lattice:
        o1, o2 = Z.generators
        # min over small integer combinations of the generators
        combos = [
            abs(n * o1 + m * o2)
            for n in range(-2, 3)
            for m in range(-2, 3)
            if (n, m) != (0, 0)
        ]
        gap = min(combos)
        return gap > 1e-9, float(gap)
    if len(Z.points) < 2:
        return True, float("inf")
    gap = _min_gap(Z.points)
    return gap > 1e-9, gap


def frame_bounds_finite(
    Z: PointSet, degree: int, core_degree: int
) -> tuple[float, float]:
    """Extreme Rayleigh quotients of the kernel frame operator on a core block.

    S = sum_n k_{z_n} (x) k_{z_n}^* is assembled at the truncation degree and
    restricted to span{e_0..e_core}; the restriction keeps the estimates away
    from the spurious zero modes a finite window of an infinite frame creates.
    """
    if Z.is_lattice:
        raise ValueError("frame_bounds_finite needs a finite point set (clip first)")
    if core_degree > degree // 2:
        raise ValueError("core_degree must be <= degree/2")
    pts = Z.points
    if np.any(np.abs(pts) ** 2 > degree / 2.0):
        raise ResolutionError("some |z|^2 exceeds degree/2: kernels unresolvable")
    for z in pts:
        if kernel_truncation_defect(z, degree) > 1e-8:
            raise ResolutionError(f"kernel at {z} has truncation defect > 1e-8")
    KV = np.column_stack([kernel_vector(z, degree, True).coeffs for z in pts])
    S = KV @ KV.conj().T
    core = S[: core_degree + 1, : core_degree + 1]
    vals = np.linalg.eigvalsh(core)
    return float(max(vals[0], 0.0)), float(vals[-1])


def lattice_frame_predicate(a: float, b: float) -> bool:
    """The Gaussian-window lattice criterion: frame iff a b < 1 (strict)."""
    if a <= 0 or b <= 0:
        raise ValueError("lattice steps must be positive")
    return a * b < 1.0


def density_frame_predicate(
    Z: PointSet, report: DensityReport, separated: bool, margin: float = 0.10
) -> str:
    """Numerical proxy for the density criterion: lower density vs 1/pi.

    Returns "frame", "not-frame", or "undecided" when the estimate lands
    inside the margin band around the critical density; the criterion itself
    is asymptotic, so near-critical configurations are undecidable at any
    finite radius.  Requires the report to reach radius 30.
    """
    if report.radii[-1] < 30.0:
        raise ValueError("density report must reach radius >= 30")
    lo = report.lower_extrapolated
    if separated and lo > CRITICAL_DENSITY * (1.0 + margin):
        return "frame"
    if lo < CRITICAL_DENSITY * (1.0 - margin):
        return "not-frame"
    return "undecided"


# ----------------------------------------------------------------------
# Box window
# ----------------------------------------------------------------------

@lru_cache(maxsize=4)
def _box_rule(n_panels: int = 8, points: int = 32):
    return composite_legendre(0.0, 1.0, n_panels, points)


def box_window_fock(z):
    """Transform of the box window chi_[0,1) evaluated pointwise.

    Equals c e^{z^2/2} int_0^1 e^{-(x-z)^2} dx; the integrand is entire so a
    composite Legendre rule on [0, 1] is valid for complex z.
    """
    scalar = np.isscalar(z)
    zs = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    rule = _box_rule()
    x = rule.nodes
    vals = np.exp(-((x[None, :] - zs[:, None]) ** 2)) @ rule.weights
    out = GAUSS_CONST * np.exp(zs**2 / 2.0) * vals
    return complex(out[0]) if scalar else out


@lru_cache(maxsize=8)
def box_window_coeffs(degree: int) -> FockVector:
    """Coefficients of the box-window transform: projections int_0^1 h_n dx.

    The coefficient tail decays only like n^{-3/4} (the window is
    discontinuous), so the truncated norm approaches 1 slowly; callers that
    need tight Gram identities must budget for that.
    """
    line = project_line_interval(
        lambda x: np.ones_like(x), degree, (0.0, 1.0), warn=False
    )
    return bargmann_coeff(line)


def box_frame_gram(m_range, n_range, degree: int) -> np.ndarray:
    """Gram matrix of displaced box transforms W_{n - m pi i}(box window).

    The line-side system is orthonormal, so the Gram approaches the identity
    as the degree grows (at the slow rate the box tail allows).
    """
    coeffs = box_window_coeffs(degree)
    vecs = []
    for m in m_range:
        for n in n_range:
            z = complex(n, -np.pi * m)
            if abs(z) ** 2 > degree / 2.0:
                raise ResolutionError(f"|z_mn|^2 > degree/2 for (m,n)=({m},{n})")
            vecs.append(weyl_matrix(z, degree, warn=False).apply(coeffs).coeffs)
    U = np.column_stack(vecs)
    return U.conj().T @ U


def linear_independence_check(
    f: FockVector, points, degree: int
) -> tuple[bool, float]:
    """Finite linear-independence probe for displaced copies of f.

    Builds the Gram matrix of {W_{z_k} f}; reports the smallest-to-largest
    eigenvalue ratio as numerical evidence, with independence declared above
    1e-10.  Evidence only: no claim beyond the tested configuration.
    """
    pts = PointSet.from_points(points).points  # enforces distinctness
    if len(pts) > 12:
        raise ValueError("independence check limited to 12 points")
    cols = [weyl_matrix(z, degree, warn=False).apply(f).coeffs for z in pts]
    U = np.column_stack(cols)
    gram = U.conj().T @ U
    vals = np.linalg.eigvalsh(gram)
    smin, smax = float(max(vals[0], 0.0)), float(vals[-1])
    if smax == 0.0:
        return False, 0.0
    return smin > 1e-10 * smax, smin / smax


def kernel_gram(points, degree: int) -> np.ndarray:
    """Gram of truncated normalized kernels; closed form e^{conj(zm) zn - (|zm|^2+|zn|^2)/2}."""
    pts = np.asarray(list(points), dtype=np.complex128)
    KV = np.column_stack([kernel_vector(z, degree, True).coeffs for z in pts])
    return KV.conj().T @ KV
