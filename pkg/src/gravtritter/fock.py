"""Fock-state evolution under a mode mixer, reduction, interference, negativity.

States live on three modes (mode1, mode2, perp) at fixed total photon
number.  Evolution follows the standard permanent rule for passive linear
optics; the two-photon case also has a closed-form fast path.  Reduction
traces out the third (unobserved) mode; entanglement of the remaining two
modes is quantified by the negativity of the partial transpose.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import factorial, prod, sqrt

import numpy as np

from .errors import DomainError

_UNITARITY_TOL = 1e-10
# Eigenvalues of the partial transpose below this count as negative.
_EIG_NEG_TOL = 1e-11


def occupation_basis(total: int, n_modes: int = 3) -> list[tuple[int, ...]]:
    """All occupation tuples with the given total, lexicographic order."""
    if n_modes == 1:
        return [(total,)]
    out = []
    for first in range(total + 1):
        for rest in occupation_basis(total - first, n_modes - 1):
            out.append((first, *rest))
    return out


@dataclass
class FockState:
    """Amplitudes over three-mode occupation triples at fixed total number."""

    total: int
    amplitudes: dict[tuple[int, int, int], complex]

    def __post_init__(self):
        for occ in self.amplitudes:
            if len(occ) != 3 or any(n < 0 for n in occ) or sum(occ) != self.total:
                raise DomainError(f"occupation {occ} inconsistent with N={self.total}")

    @classmethod
    def single(cls, occ: tuple[int, int, int]) -> "FockState":
        return cls(sum(occ), {tuple(occ): 1.0 + 0.0j})

    def amplitude(self, occ: tuple[int, int, int]) -> complex:
        return self.amplitudes.get(tuple(occ), 0.0 + 0.0j)

    def norm_sq(self) -> float:
        return float(sum(abs(a) ** 2 for a in self.amplitudes.values()))

    def fidelity(self, other: "FockState") -> float:
        """|<self|other>|^2."""
        ov = sum(
            np.conj(a) * other.amplitude(occ) for occ, a in self.amplitudes.items()
        )
        return float(abs(ov) ** 2)


def permanent(mat: np.ndarray) -> complex:
    """Permanent by permutation expansion; fine for the small sizes used here."""
    n = mat.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    return complex(
        sum(prod(mat[i, p[i]] for i in range(n)) for p in permutations(range(n)))
    )


def _check_unitary(u: np.ndarray):
    if np.max(np.abs(u @ u.conj().T - np.eye(3))) > _UNITARITY_TOL:
        raise DomainError("mixer matrix is not unitary to 1e-10")


def apply_mixer(state: FockState, u: np.ndarray) -> FockState:
    """Evolve a state through a 3x3 mixer via the permanent rule.

    Creation operators transform by rows: A_j^dag -> sum_i U_ji B_i^dag.
    The amplitude from input occupation n to output occupation m is
    perm(M) / sqrt(prod n! prod m!), with M built from U by repeating row j
    n_j times and column i m_i times.
    """
    _check_unitary(u)
    basis = occupation_basis(state.total)
    out: dict[tuple[int, int, int], complex] = {}
    for occ_in, amp in state.amplitudes.items():
        if amp == 0:
            continue
        rows = [j for j in range(3) for _ in range(occ_in[j])]
        f_in = prod(factorial(n) for n in occ_in)
        for occ_out in basis:
            cols = [i for i in range(3) for _ in range(occ_out[i])]
            sub = u[np.ix_(rows, cols)]
            f_out = prod(factorial(n) for n in occ_out)
            contrib = amp * permanent(sub) / sqrt(f_in * f_out)
            if contrib != 0:
                out[occ_out] = out.get(occ_out, 0.0 + 0.0j) + contrib
    result = FockState(state.total, out)
    if abs(result.norm_sq() - state.norm_sq()) > 1e-10:
        raise DomainError("mixer evolution failed to preserve the norm")
    return result


def evolve_two_photon(u: np.ndarray) -> FockState:
    """Closed-form image of |110> under the mixer.

    Must agree entrywise with apply_mixer(|110>, U); the pair of routes is
    kept as a cross-check of the permanent rule.
    """
    _check_unitary(u)
    amps = {
        (0, 0, 2): sqrt(2.0) * u[0, 2] * u[1, 2],
        (0, 2, 0): sqrt(2.0) * u[0, 1] * u[1, 1],
        (2, 0, 0): sqrt(2.0) * u[0, 0] * u[1, 0],
        (0, 1, 1): u[0, 2] * u[1, 1] + u[0, 1] * u[1, 2],
        (1, 1, 0): u[0, 0] * u[1, 1] + u[0, 1] * u[1, 0],
        (1, 0, 1): u[0, 0] * u[1, 2] + u[0, 2] * u[1, 0],
    }
    return FockState(2, {occ: complex(a) for occ, a in amps.items()})


@dataclass
class TwoModeDensityMatrix:
    """Hermitian matrix over |n m>, n,m in 0..n_max, lexicographic order."""

    n_max: int
    matrix: np.ndarray

    def __post_init__(self):
        d = (self.n_max + 1) ** 2
        self.matrix = np.asarray(self.matrix, complex)
        if self.matrix.shape != (d, d):
            raise DomainError(
                f"density matrix shape {self.matrix.shape} != ({d}, {d})"
            )

    def index(self, n: int, m: int) -> int:
        if not (0 <= n <= self.n_max and 0 <= m <= self.n_max):
            raise DomainError(f"occupation ({n},{m}) exceeds cutoff {self.n_max}")
        return n * (self.n_max + 1) + m

    def entry(self, n: int, m: int, p: int, q: int) -> complex:
        """<n m| rho |p q>."""
        return complex(self.matrix[self.index(n, m), self.index(p, q)])

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def to_json_dict(self) -> dict:
        d = self.n_max + 1
        return {
            "n_max": self.n_max,
            "basis": [f"{n}{m}" for n in range(d) for m in range(d)],
            "entries": [
                [float(z.real), float(z.imag)] for z in self.matrix.ravel()
            ],
        }


def trace_out_third(state: FockState, n_max: int = 2) -> TwoModeDensityMatrix:
    """Reduced density matrix of the first two modes.

    rho(nm, pq) = sum_k amp(n,m,k) conj(amp(p,q,k)).

    Raises:
        DomainError: some populated occupation exceeds n_max.
    """
    d = n_max + 1
    for (n1, n2, _k), amp in state.amplitudes.items():
        if amp != 0 and (n1 > n_max or n2 > n_max):
            raise DomainError(
                f"occupation ({n1},{n2}) exceeds two-mode cutoff {n_max}"
            )
    rho = np.zeros((d * d, d * d), dtype=complex)
    by_k: dict[int, dict[tuple[int, int], complex]] = {}
    for (n1, n2, k), amp in state.amplitudes.items():
        by_k.setdefault(k, {})[(n1, n2)] = amp
    for sector in by_k.values():
        for (n, m), a in sector.items():
            for (p, q), b in sector.items():
                rho[n * d + m, p * d + q] += a * np.conj(b)
    return TwoModeDensityMatrix(n_max, rho)


def partial_transpose(rho: TwoModeDensityMatrix) -> np.ndarray:
    """Transpose with respect to the second mode: (nm, pq) -> (nq, pm)."""
    d = rho.n_max + 1
    pt = rho.matrix.reshape(d, d, d, d).transpose(0, 3, 2, 1).reshape(d * d, d * d)
    return pt.copy()


def negativity(rho: TwoModeDensityMatrix) -> float:
    """Sum of |lambda| over negative eigenvalues of the partial transpose.

    Nonzero negativity certifies entanglement of the two observed modes
    (PPT criterion).
    """
    eigs = np.linalg.eigvalsh(partial_transpose(rho))
    return float(np.sum(np.abs(eigs[eigs < -_EIG_NEG_TOL])))


def negativity_lower_bound(rho: TwoModeDensityMatrix) -> float:
    """Analytic lower bound on the negativity from two coherence blocks.

    1/2 [sqrt(rho0101^2 + 4 |rho0211|^2) - rho0101]
    + 1/2 [sqrt(rho1010^2 + 4 |rho2011|^2) - rho1010],
    evaluated on the named entries.  Asserted as a bound only for reduced
    states with the two-photon sparsity structure.
    """
    r0101 = rho.entry(0, 1, 0, 1).real
    r1010 = rho.entry(1, 0, 1, 0).real
    r0211 = rho.entry(0, 2, 1, 1)
    r2011 = rho.entry(2, 0, 1, 1)
    return 0.5 * (sqrt(r0101**2 + 4.0 * abs(r0211) ** 2) - r0101) + 0.5 * (
        sqrt(r1010**2 + 4.0 * abs(r2011) ** 2) - r1010
    )


def hom_coefficient(u: np.ndarray) -> float:
    """|U11 U22 + U12 U21|, the surviving coincidence amplitude modulus."""
    return float(abs(u[0, 0] * u[1, 1] + u[0, 1] * u[1, 0]))


@dataclass(frozen=True)
class HomRecord:
    """Interference diagnostics for a mixer acting on |110>.

    ``flag`` is True when the coincidence amplitude vanishes while both
    double-occupation populations survive: Hong-Ou-Mandel-like interference.
    """

    coefficient: float
    rho2020: float
    rho0202: float
    flag: bool


def hom_record(u: np.ndarray, tol: float = 1e-6) -> HomRecord:
    """Coincidence coefficient plus the double-occupation populations."""
    coeff = hom_coefficient(u)
    rho2020 = float(2.0 * abs(u[0, 0] * u[1, 0]) ** 2)
    rho0202 = float(2.0 * abs(u[0, 1] * u[1, 1]) ** 2)
    return HomRecord(
        coefficient=coeff,
        rho2020=rho2020,
        rho0202=rho0202,
        flag=bool(coeff < tol and rho2020 > tol and rho0202 > tol),
    )
