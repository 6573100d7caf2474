"""Photon frequency profiles: evaluation, overlaps, redshift, orthonormalization.

A profile F(omega) is a normalized complex function on omega > 0 describing
the spectral wavepacket of a single photon.  Three kinds are supported:

* ``GaussianProfile`` -- a single bell, F(w) = (2 pi s^2)^(-1/4)
  exp(-(w - w0)^2 / (4 s^2)) e^{i phase}, so |F|^2 has standard deviation s.
* ``CombProfile``     -- a weighted superposition of Gaussian lobes.
* ``TabulatedProfile``-- complex samples on a strictly increasing grid with
  linear interpolation; zero outside the grid.

Evaluation at omega <= 0 returns zero for every kind.  Overlaps
<F,G> = int_0^inf F*(w) G(w) dw are computed by adaptive quadrature on the
intersection of the two profiles' effective supports (where the envelopes
exceed 1e-16 of their peak).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad_vec

from .errors import DegeneracyError, DomainError, QuadratureError

# Truncation level for effective support windows, relative to the peak.
SUPPORT_REL_EPS = 1e-16
# Absolute tolerance for overlap integrals; 1e-12 target leaves headroom
# over the 1e-10 contract since overlaps feed arccos/arcsin downstream.
QUAD_ABS_TOL = 1e-10
_QUAD_TARGET = 1e-12
_QUAD_LIMIT = 1000

# |F| falls below SUPPORT_REL_EPS of its peak this many sigmas out.
_SUPPORT_HALF_WIDTH = 2.0 * np.sqrt(np.log(1.0 / SUPPORT_REL_EPS))


def _gauss_lobe(omega: np.ndarray, center: float, width: float) -> np.ndarray:
    """Unit-normalized real Gaussian lobe on the given frequencies."""
    return (2.0 * np.pi * width**2) ** (-0.25) * np.exp(
        -((omega - center) ** 2) / (4.0 * width**2)
    )


@dataclass(frozen=True)
class GaussianProfile:
    """Single-peak Gaussian wavepacket with peak omega0, width sigma."""

    omega0: float
    sigma: float
    phase: float = 0.0

    def __post_init__(self):
        if self.sigma <= 0:
            raise DomainError(f"gaussian width must be positive, got {self.sigma}")
        if self.omega0 <= 0:
            raise DomainError(f"gaussian peak must be positive, got {self.omega0}")
        if self.omega0 < 5.0 * self.sigma:
            warnings.warn(
                f"gaussian peak {self.omega0} < 5 sigma ({self.sigma}); "
                "omega>0 truncation error exceeds 1e-7",
                stacklevel=3,
            )

    def evaluate(self, omega):
        """F(omega); zero for omega <= 0.  Accepts scalars or arrays."""
        w = np.asarray(omega, dtype=float)
        vals = _gauss_lobe(w, self.omega0, self.sigma) * np.exp(1j * self.phase)
        out = np.where(w > 0, vals, 0.0 + 0.0j)
        return out[()] if np.isscalar(omega) or out.ndim == 0 else out

    def support_window(self) -> tuple[float, float]:
        half = _SUPPORT_HALF_WIDTH * self.sigma
        return (max(self.omega0 - half, 0.0), self.omega0 + half)

    def to_json_dict(self) -> dict:
        return {
            "kind": "gaussian",
            "omega0": self.omega0,
            "sigma": self.sigma,
            "phase": self.phase,
        }


@dataclass(frozen=True)
class CombProfile:
    """Weighted superposition of Gaussian lobes.

    Each peak is (weight, center, width) with complex weight.  The weights
    are stored as given; use :func:`make_comb` to build a normalized comb.
    """

    peaks: tuple[tuple[complex, float, float], ...]

    def __post_init__(self):
        if not self.peaks:
            raise DomainError("comb needs at least one peak")
        for _, center, width in self.peaks:
            if width <= 0:
                raise DomainError(f"comb width must be positive, got {width}")
            if center <= 0:
                raise DomainError(f"comb center must be positive, got {center}")

    def evaluate(self, omega):
        w = np.asarray(omega, dtype=float)
        vals = np.zeros(w.shape, dtype=complex)
        for weight, center, width in self.peaks:
            vals += weight * _gauss_lobe(w, center, width)
        out = np.where(w > 0, vals, 0.0 + 0.0j)
        return out[()] if np.isscalar(omega) or out.ndim == 0 else out

    def support_window(self) -> tuple[float, float]:
        lo = min(c - _SUPPORT_HALF_WIDTH * s for _, c, s in self.peaks)
        hi = max(c + _SUPPORT_HALF_WIDTH * s for _, c, s in self.peaks)
        return (max(lo, 0.0), hi)

    def to_json_dict(self) -> dict:
        return {
            "kind": "comb",
            "peaks": [
                [complex(wt).real, complex(wt).imag, c, s]
                for wt, c, s in self.peaks
            ],
        }


@dataclass(frozen=True, eq=False)
class TabulatedProfile:
    """Complex samples on a strictly increasing positive grid.

    Linear interpolation between grid points; zero outside the grid and for
    omega <= 0 (documented convention).
    """

    omega: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        grid = np.asarray(self.omega, dtype=float)
        vals = np.asarray(self.values, dtype=complex)
        if grid.ndim != 1 or grid.size < 2:
            raise DomainError("tabulated grid needs at least two points")
        if vals.shape != grid.shape:
            raise DomainError("tabulated grid and values must have equal length")
        if np.any(np.diff(grid) <= 0):
            raise DomainError("tabulated grid must be strictly increasing")
        if grid[0] <= 0:
            raise DomainError("tabulated grid must be strictly positive")
        object.__setattr__(self, "omega", grid)
        object.__setattr__(self, "values", vals)

    def evaluate(self, omega):
        w = np.asarray(omega, dtype=float)
        re = np.interp(w, self.omega, self.values.real, left=0.0, right=0.0)
        im = np.interp(w, self.omega, self.values.imag, left=0.0, right=0.0)
        inside = (w > 0) & (w >= self.omega[0]) & (w <= self.omega[-1])
        out = np.where(inside, re + 1j * im, 0.0 + 0.0j)
        return out[()] if np.isscalar(omega) or out.ndim == 0 else out

    def support_window(self) -> tuple[float, float]:
        return (float(self.omega[0]), float(self.omega[-1]))

    def to_json_dict(self) -> dict:
        return {
            "kind": "tabulated",
            "omega": self.omega.tolist(),
            "re": self.values.real.tolist(),
            "im": self.values.imag.tolist(),
        }


ModeProfile = GaussianProfile | CombProfile | TabulatedProfile


def profile_from_json(doc: dict) -> ModeProfile:
    """Rebuild a profile from its JSON dict form (see ``to_json_dict``)."""
    kind = doc.get("kind")
    if kind == "gaussian":
        return GaussianProfile(doc["omega0"], doc["sigma"], doc.get("phase", 0.0))
    if kind == "comb":
        return CombProfile(
            tuple((re + 1j * im, c, s) for re, im, c, s in doc["peaks"])
        )
    if kind == "tabulated":
        vals = np.asarray(doc["re"], float) + 1j * np.asarray(doc["im"], float)
        return TabulatedProfile(np.asarray(doc["omega"], float), vals)
    raise DomainError(f"unknown profile kind {kind!r}")


def evaluate(profile: ModeProfile, omega):
    """Functional form of profile evaluation."""
    return profile.evaluate(omega)


def inner_product(f: ModeProfile, g: ModeProfile) -> complex:
    """Overlap <F,G> = int_0^inf F*(w) G(w) dw by adaptive quadrature.

    The integral is truncated to the intersection of the effective supports
    (envelope above 1e-16 of peak); a disjoint intersection yields exactly 0.

    Raises:
        QuadratureError: integrator error estimate exceeds 1e-10.
    """
    lo1, hi1 = f.support_window()
    lo2, hi2 = g.support_window()
    lo, hi = max(lo1, lo2), min(hi1, hi2)
    if lo >= hi:
        return 0.0 + 0.0j

    if isinstance(f, TabulatedProfile) or isinstance(g, TabulatedProfile):
        # Adaptive rules stall on the interpolation kinks; composite Simpson
        # between grid nodes is exact for products of linear interpolants.
        return _piecewise_inner(f, g, lo, hi)

    def integrand(w):
        val = np.conj(f.evaluate(w)) * g.evaluate(w)
        return np.array([val.real, val.imag])

    result, err = quad_vec(
        integrand, lo, hi, epsabs=_QUAD_TARGET, epsrel=0.0, limit=_QUAD_LIMIT
    )
    if err > QUAD_ABS_TOL:
        raise QuadratureError(achieved=float(err), requested=QUAD_ABS_TOL)
    return complex(result[0], result[1])


def _piecewise_inner(f, g, lo: float, hi: float) -> complex:
    """Node-aligned composite Simpson with one Richardson error estimate."""
    nodes = {lo, hi}
    for p in (f, g):
        if isinstance(p, TabulatedProfile):
            inside = p.omega[(p.omega > lo) & (p.omega < hi)]
            nodes.update(inside.tolist())
    x = np.array(sorted(nodes))

    def simpson(grid):
        mids = 0.5 * (grid[:-1] + grid[1:])
        fa = np.conj(f.evaluate(grid[:-1])) * g.evaluate(grid[:-1])
        fm = np.conj(f.evaluate(mids)) * g.evaluate(mids)
        fb = np.conj(f.evaluate(grid[1:])) * g.evaluate(grid[1:])
        h = np.diff(grid)
        return np.sum(h / 6.0 * (fa + 4.0 * fm + fb))

    coarse = simpson(x)
    refined_grid = np.sort(np.concatenate([x, 0.5 * (x[:-1] + x[1:])]))
    fine = simpson(refined_grid)
    err = abs(fine - coarse) / 15.0
    if err > QUAD_ABS_TOL:
        raise QuadratureError(achieved=float(err), requested=QUAD_ABS_TOL)
    return complex(fine)


def norm(profile: ModeProfile) -> float:
    """sqrt(<F,F>)."""
    return float(np.sqrt(inner_product(profile, profile).real))


def redshift_transform(profile: ModeProfile, chi: float) -> ModeProfile:
    """Apply the redshift map F'(w) = chi * F(chi^2 w).

    Parametric kinds transform in closed form (peaks and widths divide by
    chi^2); tabulated grids are rescaled.  The map preserves the norm
    exactly, so no renormalization is applied.
    """
    if chi <= 0:
        raise DomainError(f"redshift parameter must be positive, got {chi}")
    c2 = chi * chi
    if isinstance(profile, GaussianProfile):
        return GaussianProfile(profile.omega0 / c2, profile.sigma / c2, profile.phase)
    if isinstance(profile, CombProfile):
        return CombProfile(
            tuple((wt, c / c2, s / c2) for wt, c, s in profile.peaks)
        )
    if isinstance(profile, TabulatedProfile):
        return TabulatedProfile(profile.omega / c2, chi * profile.values)
    raise DomainError(f"unknown profile type {type(profile)!r}")


def make_comb(peaks) -> CombProfile:
    """Build a normalized comb from (weight, center, width) triples.

    The normalization constant is computed by quadrature and folded into
    the stored weights.
    """
    peaks = tuple((complex(wt), float(c), float(s)) for wt, c, s in peaks)
    raw = CombProfile(peaks)
    scale = 1.0 / norm(raw)
    return CombProfile(tuple((wt * scale, c, s) for wt, c, s in peaks))


def _as_comb(profile: ModeProfile) -> CombProfile | None:
    """Lobe-list view of a parametric profile; None for tabulated."""
    if isinstance(profile, GaussianProfile):
        weight = np.exp(1j * profile.phase)
        return CombProfile(((weight, profile.omega0, profile.sigma),))
    if isinstance(profile, CombProfile):
        return profile
    return None


def _tabulate(profile: ModeProfile, grid: np.ndarray) -> TabulatedProfile:
    return TabulatedProfile(grid, np.asarray(profile.evaluate(grid), complex))


def _merged_grid(f: ModeProfile, g: ModeProfile, points_per_window: int = 4001):
    """Common dense grid covering both supports."""
    parts = []
    for p in (f, g):
        if isinstance(p, TabulatedProfile):
            parts.append(p.omega)
        else:
            lo, hi = p.support_window()
            lo = max(lo, np.finfo(float).tiny)
            parts.append(np.linspace(lo, hi, points_per_window))
    grid = np.unique(np.concatenate(parts))
    return grid[grid > 0]


def orthonormalize_pair(
    f1: ModeProfile, f2: ModeProfile
) -> tuple[ModeProfile, ModeProfile]:
    """Gram-Schmidt anchored on the first argument.

    Returns (F1/||F1||, (F2 - <E1,F2> E1)/||.||).  For gaussian/comb inputs
    the subtraction stays in closed form as a weighted lobe list; if either
    input is tabulated, both outputs are tabulated on a merged grid so the
    projection coefficient and the final orthogonality check share one
    quadrature rule.

    Raises:
        DegeneracyError: inputs numerically parallel.
    """
    comb1, comb2 = _as_comb(f1), _as_comb(f2)
    if comb1 is None or comb2 is None:
        grid = _merged_grid(f1, f2)
        return _orthonormalize_tabulated(_tabulate(f1, grid), _tabulate(f2, grid))

    s1 = 1.0 / norm(comb1)
    e1 = CombProfile(tuple((wt * s1, c, s) for wt, c, s in comb1.peaks))
    s2 = 1.0 / norm(comb2)
    n2 = CombProfile(tuple((wt * s2, c, s) for wt, c, s in comb2.peaks))

    c12 = inner_product(e1, n2)
    if abs(c12) >= 1.0 - 1e-12:
        raise DegeneracyError(
            f"profiles numerically parallel, |<F1,F2>| = {abs(c12):.15f}"
        )
    residual = CombProfile(
        n2.peaks + tuple((-c12 * wt, c, s) for wt, c, s in e1.peaks)
    )
    rnorm = norm(residual)
    e2 = CombProfile(tuple((wt / rnorm, c, s) for wt, c, s in residual.peaks))
    return e1, e2


def _orthonormalize_tabulated(t1: TabulatedProfile, t2: TabulatedProfile):
    e1 = TabulatedProfile(t1.omega, t1.values / norm(t1))
    v2 = t2.values / norm(t2)
    n2 = TabulatedProfile(t2.omega, v2)
    c12 = inner_product(e1, n2)
    if abs(c12) >= 1.0 - 1e-12:
        raise DegeneracyError(
            f"profiles numerically parallel, |<F1,F2>| = {abs(c12):.15f}"
        )
    residual = TabulatedProfile(t2.omega, v2 - c12 * e1.values)
    e2 = TabulatedProfile(t2.omega, residual.values / norm(residual))
    return e1, e2
