import numpy as np
import pytest

from gravtritter import (
    DomainError,
    GaussianProfile,
    SweepSpec,
    find_hom,
    make_comb,
    sweep_chi,
)
from gravtritter.search import CSV_HEADER, rows_to_csv, rows_to_json


def alternating_comb_pair():
    f1 = make_comb([(1, 100, 1), (-1, 104, 1), (1, 108, 1)])
    f2 = make_comb([(1, 102, 1), (-1, 106, 1), (1, 110, 1)])
    return f1, f2


class TestSweepSpec:
    def test_validation(self):
        f1, f2 = alternating_comb_pair()
        with pytest.raises(DomainError):
            SweepSpec(f1, f2, -1.0, 1.1, 5)
        with pytest.raises(DomainError):
            SweepSpec(f1, f2, 1.0, 1.1, 1)
        with pytest.raises(DomainError):
            SweepSpec(f1, f2, 1.0, 1.1, 5, population_floor=0.0)
        with pytest.raises(DomainError):
            SweepSpec(f1, f2, 1.2, 1.1, 5)

    def test_grid_values(self):
        f1, f2 = alternating_comb_pair()
        spec = SweepSpec(f1, f2, 1.0, 1.2, 5)
        assert np.allclose(spec.chi_values(), [1.0, 1.05, 1.1, 1.15, 1.2])


class TestSweepChi:
    def test_identity_row_at_chi_one(self):
        spec = SweepSpec(
            GaussianProfile(100.0, 1.0), GaussianProfile(104.0, 1.0), 1.0, 1.02, 3
        )
        rows = sweep_chi(spec)
        assert len(rows) == 3
        assert [r.chi for r in rows] == sorted(r.chi for r in rows)
        first = rows[0]
        assert first.chi == 1.0
        assert first.hom_coeff == pytest.approx(1.0, abs=1e-10)
        assert first.negativity < 1e-10
        assert first.status == "ok"

    def test_disjoint_pair_no_mixing(self):
        spec = SweepSpec(
            GaussianProfile(100.0, 1.0), GaussianProfile(140.0, 1.0), 1.0, 1.02, 5
        )
        for row in sweep_chi(spec):
            assert np.sin(row.phi) < 1e-9  # |U21| = sin(phi)
            assert row.rho2020 * row.rho0202 < 1e-12

    def test_comb_pair_sign_change(self):
        f1, f2 = alternating_comb_pair()
        spec = SweepSpec(f1, f2, 1.0, 1.03, 13)
        rows = sweep_chi(spec)
        signed = [
            np.cos(r.theta) * (np.cos(r.phi) ** 2 - np.sin(r.phi) ** 2)
            * np.cos(r.psi)
            - np.sin(r.theta) * np.sin(r.phi) * np.sin(r.psi)
            for r in rows
        ]
        assert any(a * b < 0 for a, b in zip(signed, signed[1:]))

    def test_negativity_dominates_bound_rowwise(self):
        f1, f2 = alternating_comb_pair()
        rows = sweep_chi(SweepSpec(f1, f2, 1.0, 1.05, 7))
        for r in rows:
            assert r.status == "ok"
            assert r.negativity >= r.neg_bound - 1e-10


class TestFindHom:
    def test_comb_pair_roots(self):
        f1, f2 = alternating_comb_pair()
        spec = SweepSpec(f1, f2, 1.0, 1.03, 13, hom_tol=1e-9, population_floor=1e-4)
        roots = find_hom(spec)
        assert roots
        for r in roots:
            assert r.converged
            assert r.hom_coeff < 1e-9
            assert r.rho2020 > 1e-4 and r.rho0202 > 1e-4
            assert r.negativity > 0

    def test_root_kills_coincidence_populations(self):
        # full interference condition at the root: no |11> weight left
        from gravtritter import evolve_two_photon, trace_out_third, tritter_from_modes
        from gravtritter.modes import orthonormalize_pair

        f1, f2 = alternating_comb_pair()
        spec = SweepSpec(f1, f2, 1.0, 1.03, 13, hom_tol=1e-12, population_floor=1e-4)
        roots = find_hom(spec)
        assert roots
        e1, e2 = orthonormalize_pair(f1, f2)
        for r in roots:
            u, _, _ = tritter_from_modes(e1, e2, r.chi)
            rho = trace_out_third(evolve_two_photon(u))
            assert abs(rho.entry(1, 1, 1, 1)) < 1e-9
            assert abs(rho.entry(2, 0, 1, 1)) < 1e-9
            assert abs(rho.entry(0, 2, 1, 1)) < 1e-9

    def test_disjoint_pair_empty(self):
        spec = SweepSpec(
            GaussianProfile(100.0, 1.0), GaussianProfile(140.0, 1.0), 1.0, 1.05, 9
        )
        assert find_hom(spec) == []


class TestSerialization:
    def test_csv_deterministic(self):
        f1, f2 = alternating_comb_pair()
        spec = SweepSpec(f1, f2, 1.0, 1.02, 5)
        a = rows_to_csv(sweep_chi(spec), meta_comment="{}")
        b = rows_to_csv(sweep_chi(spec), meta_comment="{}")
        assert a == b
        assert a.splitlines()[0] == "# {}"
        assert a.splitlines()[1] == CSV_HEADER

    def test_json_rows_match_csv_fields(self):
        spec = SweepSpec(
            GaussianProfile(100.0, 1.0), GaussianProfile(104.0, 1.0), 1.0, 1.01, 2
        )
        rows = sweep_chi(spec)
        docs = rows_to_json(rows)
        assert len(docs) == 2
        assert set(docs[0]) == set(CSV_HEADER.split(","))
