"""Sweeps over the redshift parameter and location of interference points.

A sweep evaluates the full pipeline (mode pair -> mixer -> two-photon state
-> reduced density matrix) on a chi grid.  Root finding operates on the
signed coincidence quantity U11 U22 + U12 U21, which is real for the
zero-phase mixer; its modulus has no sign change and would defeat
bracketing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GravTritterError
from .fock import (
    evolve_two_photon,
    hom_record,
    negativity,
    negativity_lower_bound,
    trace_out_third,
)
from .modes import ModeProfile, orthonormalize_pair
from .tritter import tritter_from_modes

_BISECT_MAX_ITER = 200


@dataclass(frozen=True)
class SweepSpec:
    """Mode pair plus chi grid and interference thresholds.

    The profiles are orthonormalized internally before any mixer is built.
    """

    profile1: ModeProfile
    profile2: ModeProfile
    chi_lo: float
    chi_hi: float
    grid: int
    hom_tol: float = 1e-8
    population_floor: float = 1e-6

    def __post_init__(self):
        if self.chi_lo <= 0:
            raise DomainError(f"chi_lo must be positive, got {self.chi_lo}")
        if self.chi_hi < self.chi_lo:
            raise DomainError("chi_hi must be >= chi_lo")
        if self.grid < 2:
            raise DomainError(f"grid size must be >= 2, got {self.grid}")
        if self.population_floor <= 0:
            raise DomainError("population floor must be positive")

    def chi_values(self) -> np.ndarray:
        return np.linspace(self.chi_lo, self.chi_hi, self.grid)


@dataclass(frozen=True)
class SweepRow:
    chi: float
    theta: float = float("nan")
    phi: float = float("nan")
    psi: float = float("nan")
    hom_coeff: float = float("nan")
    rho2020: float = float("nan")
    rho0202: float = float("nan")
    rho1111: float = float("nan")
    negativity: float = float("nan")
    neg_bound: float = float("nan")
    status: str = "ok"


@dataclass(frozen=True)
class HomRoot:
    """A refined zero of the signed coincidence quantity."""

    chi: float
    hom_coeff: float
    rho2020: float
    rho0202: float
    negativity: float
    converged: bool = True


CSV_HEADER = (
    "chi,theta,phi,psi,hom_coeff,rho2020,rho0202,rho1111,"
    "negativity,neg_bound,status"
)


class _Pipeline:
    """Orthonormalized pair with per-chi evaluation helpers."""

    def __init__(self, spec: SweepSpec):
        self.e1, self.e2 = orthonormalize_pair(spec.profile1, spec.profile2)

    def row(self, chi: float) -> SweepRow:
        u, angles, _rec = tritter_from_modes(self.e1, self.e2, chi)
        state = evolve_two_photon(u)
        rho = trace_out_third(state, n_max=2)
        rec = hom_record(u)
        return SweepRow(
            chi=float(chi),
            theta=angles.theta,
            phi=angles.phi,
            psi=angles.psi,
            hom_coeff=rec.coefficient,
            rho2020=rec.rho2020,
            rho0202=rec.rho0202,
            rho1111=float(rho.entry(1, 1, 1, 1).real),
            negativity=negativity(rho),
            neg_bound=negativity_lower_bound(rho),
        )

    def signed_coincidence(self, chi: float) -> float:
        u, _angles, _rec = tritter_from_modes(self.e1, self.e2, chi)
        return float((u[0, 0] * u[1, 1] + u[0, 1] * u[1, 0]).real)


def sweep_chi(spec: SweepSpec) -> list[SweepRow]:
    """Evaluate the pipeline on every grid chi, ascending order.

    A row that fails keeps its chi and carries an error tag in ``status``;
    the sweep continues.
    """
    pipeline = _Pipeline(spec)
    rows = []
    for chi in spec.chi_values():
        try:
            rows.append(pipeline.row(float(chi)))
        except GravTritterError as exc:
            rows.append(SweepRow(chi=float(chi), status=f"error:{exc}"))
    return rows


def find_hom(spec: SweepSpec) -> list[HomRoot]:
    """Locate interference points on the chi grid.

    Scans for sign changes of the signed coincidence quantity, refines each
    bracket by bisection to |value| < hom_tol (up to 200 iterations), and
    keeps only roots where both double-occupation populations exceed the
    population floor.  No bracket found is an empty list, not an error.
    """
    pipeline = _Pipeline(spec)
    grid = spec.chi_values()
    values = [pipeline.signed_coincidence(float(c)) for c in grid]

    roots: list[HomRoot] = []
    for i in range(len(grid) - 1):
        a, b = float(grid[i]), float(grid[i + 1])
        fa, fb = values[i], values[i + 1]
        if abs(fa) < spec.hom_tol:
            root = _evaluate_root(pipeline, spec, a, abs(fa), converged=True)
            if root is not None:
                roots.append(root)
            continue
        if fa * fb >= 0:
            continue
        chi_root, val, converged = _bisect(pipeline, a, b, fa, fb, spec.hom_tol)
        root = _evaluate_root(pipeline, spec, chi_root, abs(val), converged)
        if root is not None:
            roots.append(root)
    if values and abs(values[-1]) < spec.hom_tol:
        root = _evaluate_root(
            pipeline, spec, float(grid[-1]), abs(values[-1]), converged=True
        )
        if root is not None:
            roots.append(root)
    return roots


def _bisect(pipeline, a, b, fa, fb, tol):
    val = fa
    mid = a
    for _ in range(_BISECT_MAX_ITER):
        mid = 0.5 * (a + b)
        val = pipeline.signed_coincidence(mid)
        if abs(val) < tol:
            return mid, val, True
        if fa * val < 0:
            b, fb = mid, val
        else:
            a, fa = mid, val
    return mid, val, False


def _evaluate_root(pipeline, spec, chi, coeff, converged):
    row = pipeline.row(chi)
    if row.rho2020 <= spec.population_floor or row.rho0202 <= spec.population_floor:
        return None
    return HomRoot(
        chi=chi,
        hom_coeff=coeff,
        rho2020=row.rho2020,
        rho0202=row.rho0202,
        negativity=row.negativity,
        converged=converged,
    )


def rows_to_csv(rows: list[SweepRow], meta_comment: str | None = None) -> str:
    """Deterministic CSV rendering: fixed header, %.12e fields, chi order."""
    lines = []
    if meta_comment is not None:
        lines.append(f"# {meta_comment}")
    lines.append(CSV_HEADER)
    for r in rows:
        fields = [f"{r.chi:.12e}"] + [
            f"{v:.12e}"
            for v in (
                r.theta,
                r.phi,
                r.psi,
                r.hom_coeff,
                r.rho2020,
                r.rho0202,
                r.rho1111,
                r.negativity,
                r.neg_bound,
            )
        ]
        fields.append(r.status)
        lines.append(",".join(fields))
    return "\n".join(lines) + "\n"


def rows_to_json(rows: list[SweepRow]) -> list[dict]:
    return [
        {
            "chi": r.chi,
            "theta": r.theta,
            "phi": r.phi,
            "psi": r.psi,
            "hom_coeff": r.hom_coeff,
            "rho2020": r.rho2020,
            "rho0202": r.rho0202,
            "rho1111": r.rho1111,
            "negativity": r.negativity,
            "neg_bound": r.neg_bound,
            "status": r.status,
        }
        for r in rows
    ]
