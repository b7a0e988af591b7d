"""Tests for ring decompositions, whole-plane bounds, and the covering."""

import math

import numpy as np
import pytest

from eigencount import (
    DiscreteMeasure,
    Grid2D,
    InputError,
    PotentialField,
    RingDecomposition,
    adaptive_cover,
    bound_plane_lebesgue,
    bound_plane_measure,
    corner_cutoff_energy,
    corner_inequality,
    khuri_bound,
    orlicz_terms_plane,
    weighted_terms_plane,
)

E = math.e

PHI_INV_1 = 1.1461932206205826  # A^{-1}(1), 30-digit reference


def atom_measure(points, masses, values):
    mu = DiscreteMeasure(atoms=np.asarray(points, float), atom_mass=np.asarray(masses, float))
    return PotentialField(atom_values=np.asarray(values, float)), mu


def lebesgue_square(lo, hi, n):
    h = (hi - lo) / n
    g = Grid2D(origin=(lo, lo), cell=(h, h), mass=np.full((n, n), h * h))
    return DiscreteMeasure(grid=g)


class TestRings:
    def test_log_dyadic_intervals(self):
        J = RingDecomposition("J")
        assert J.interval(0) == pytest.approx((1 / E, E), rel=1e-15)
        assert J.interval(1) == pytest.approx((E, E**2), rel=1e-15)
        assert J.interval(2) == pytest.approx((E**2, E**4), rel=1e-15)
        assert J.interval(-1) == pytest.approx((E**-2, E**-1), rel=1e-15)

    @pytest.mark.parametrize("kind", ["J", "Omega"])
    def test_tiling(self, kind):
        rings = RingDecomposition(kind)
        for n in range(-4, 4):
            assert rings.interval(n)[1] == pytest.approx(rings.interval(n + 1)[0], rel=1e-14)

    def test_q_tiling(self):
        rings = RingDecomposition("Q", c0=1.0, c1=1.3, alpha=1.3)
        for n in range(-4, 4):
            assert rings.interval(n)[1] == pytest.approx(rings.interval(n + 1)[0], rel=1e-14)

    def test_every_radius_lands_in_its_ring(self):
        rng = np.random.default_rng(7)
        decs = [
            RingDecomposition("J"),
            RingDecomposition("Omega"),
            RingDecomposition("Q", c0=1.0, c1=1.0, alpha=1.0),
        ]
        for r in np.exp(rng.uniform(-6, 6, size=200)):
            for dec in decs:
                n = dec.assign(float(r))
                lo, hi = dec.interval(n)
                assert lo <= r <= hi

    def test_boundary_goes_to_smaller_index(self):
        J = RingDecomposition("J")
        assert J.assign(E) == 0  # J_0 / J_1 edge
        assert J.assign(1 / E) == 0  # J_-1 / J_0 edge
        assert J.assign(E**2) == 1
        Om = RingDecomposition("Omega")
        assert Om.assign(1.0) == 0
        assert Om.assign(E) == 0
        assert Om.assign(1 / E) == -1
        Q = RingDecomposition("Q", c0=1.0, c1=1.0, alpha=1.0)
        assert Q.assign(1.0) == 0
        assert Q.assign(2.0) == 1
        assert Q.assign(0.5) == 0

    def test_degenerate_ratio_rejected(self):
        with pytest.raises(InputError):
            RingDecomposition("Q", c0=2.0, c1=1.0, alpha=1.0)


class TestWeightedTerms:
    def test_atom_at_e_squared(self):
        V, mu = atom_measure([[E**2, 0.0]], [1.0], [1.0])
        terms = weighted_terms_plane(V, mu).terms
        assert set(terms) == {1}
        assert terms[1] == pytest.approx(2.0, rel=1e-14)

    def test_annulus_central_ring(self):
        # Lebesgue on {1/e <= |x| <= 1}: G_0 is the unweighted mass pi(1 - e^-2)
        n = 220
        h = 2.0 / n
        xs = -1.0 + (np.arange(n) + 0.5) * h
        X, Y = np.meshgrid(xs, xs, indexing="ij")
        R = np.hypot(X, Y)
        mask = (R >= 1 / E) & (R <= 1.0)
        g = Grid2D(origin=(-1.0, -1.0), cell=(h, h), mass=np.where(mask, h * h, 0.0))
        mu = DiscreteMeasure(grid=g)
        V = PotentialField(cell_values=np.ones((n, n)))
        terms = weighted_terms_plane(V, mu).terms
        assert terms[0] == pytest.approx(math.pi * (1 - math.exp(-2)), rel=1.5e-2)
        assert all(n == 0 or t == 0.0 for n, t in terms.items())

    def test_zero_potential_all_zero(self):
        V, mu = atom_measure([[1.0, 2.0], [0.5, 0.5]], [1.0, 2.0], [0.0, 0.0])
        assert all(t == 0.0 for t in weighted_terms_plane(V, mu).terms.values())

    def test_origin_mass_rejected(self):
        V, mu = atom_measure([[0.0, 0.0]], [1.0], [1.0])
        with pytest.raises(InputError):
            weighted_terms_plane(V, mu)

    def test_origin_with_zero_potential_allowed(self):
        V, mu = atom_measure([[0.0, 0.0], [3.0, 0.0]], [1.0, 1.0], [0.0, 2.0])
        terms = weighted_terms_plane(V, mu).terms
        assert terms[1] == pytest.approx(2.0 * math.log(3.0), rel=1e-14)


class TestOrliczTerms:
    def test_constant_on_ring(self):
        # V = 1 with total ring mass m gives the norm Phi^-1(1) * m
        rng = np.random.default_rng(3)
        radii = rng.uniform(1.1, 1.9, size=5)  # inside Q_1 = (1, 2] for rho = 2
        angles = rng.uniform(0, 2 * math.pi, size=5)
        pts = np.column_stack([radii * np.cos(angles), radii * np.sin(angles)])
        masses = rng.uniform(0.05, 0.3, size=5)
        V = PotentialField(atom_values=np.ones(5))
        mu = DiscreteMeasure(atoms=pts, atom_mass=masses)
        terms = orlicz_terms_plane(V, mu, c0=1.0, c1=1.0, alpha=1.0).terms
        assert set(terms) == {1}
        assert terms[1] == pytest.approx(PHI_INV_1 * masses.sum(), rel=1e-8)

    def test_homogeneity(self):
        rng = np.random.default_rng(11)
        pts = rng.uniform(-3, 3, size=(12, 2))
        masses = rng.uniform(0.01, 1.0, size=12)
        vals = rng.uniform(0.0, 2.0, size=12)
        mu = DiscreteMeasure(atoms=pts, atom_mass=masses)
        base = orlicz_terms_plane(PotentialField(atom_values=vals), mu, 1.0, 1.0, 1.0).terms
        for t in (0.25, 13.7):
            scaled = orlicz_terms_plane(
                PotentialField(atom_values=t * vals), mu, 1.0, 1.0, 1.0
            ).terms
            assert set(scaled) == set(base)
            for n in base:
                assert scaled[n] == pytest.approx(t * base[n], rel=1e-7)

    def test_thin_rings_merge_on_grids(self):
        # alpha large -> ring width below two cells: expect a merge note
        mu = lebesgue_square(0.5, 1.5, 8)
        V = PotentialField(cell_values=np.ones((8, 8)))
        series = orlicz_terms_plane(V, mu, c0=1.0, c1=1.0, alpha=8.0)
        assert "merged" in series.geometry


class TestPlaneMeasureBound:
    def test_all_zero_gives_base(self):
        V, mu = atom_measure([[1.0, 0.0]], [1.0], [0.0])
        g = weighted_terms_plane(V, mu)
        d = orlicz_terms_plane(V, mu, 1.0, 1.0, 1.0)
        rep = bound_plane_measure(g, d)
        assert rep.value == 1.0

    def test_single_g_term_formula(self):
        # G = {1} alone: 1 + 4 * sqrt(1) = 5
        V, mu = atom_measure([[E, 0.0]], [1.0], [1.0])
        g = weighted_terms_plane(V, mu)
        assert g.terms == {0: 1.0, 1: 0.0} or g.terms.get(0) == 1.0
        d = orlicz_terms_plane(PotentialField(atom_values=np.zeros(1)), mu, 1.0, 1.0, 1.0)
        rep = bound_plane_measure(g, d)
        assert rep.value == pytest.approx(5.0, rel=1e-14)

    def test_quarter_threshold_is_strict(self):
        from eigencount import TermSeries

        g1 = TermSeries("G", "rings", {0: 0.25})
        g2 = TermSeries("G", "rings", {0: 0.25 + 1e-9})
        d = TermSeries("D", "rings", {})
        assert bound_plane_measure(g1, d).value == 1.0
        assert bound_plane_measure(g2, d).value > 1.0

    def test_norm_coefficient_enters_identity_sum(self):
        from eigencount import TermSeries

        g = TermSeries("G", "rings", {})
        d = TermSeries("D", "rings", {0: 2.0})
        rep = bound_plane_measure(g, d, norm_coefficient=1.5)
        assert rep.value == pytest.approx(1.0 + 3.0, rel=1e-14)
        prov = {c.name: c.provenance for c in rep.all_constants()}
        assert prov["norm_coefficient"] == "user"
        rep_default = bound_plane_measure(g, d)
        prov = {c.name: c.provenance for c in rep_default.all_constants()}
        assert prov["norm_coefficient"] == "default-unspecified"


class TestPlaneLebesgueBound:
    def test_zero_potential(self):
        mu = lebesgue_square(-1.0, 1.0, 10)
        V = PotentialField(cell_values=np.zeros((10, 10)))
        rep = bound_plane_lebesgue(V, mu)
        assert rep.value == 1.0

    def test_requires_lebesgue_grid(self):
        V, mu = atom_measure([[1.0, 0.0]], [1.0], [1.0])
        with pytest.raises(InputError):
            bound_plane_lebesgue(V, mu)

    def test_constant_annulus_polar_norm(self):
        # V = 1 on {1/e <= r <= 1}: the ring term over that interval is
        # Phi^-1(1) * 2*pi * int r dr = Phi^-1(1) * pi * (1 - e^-2)
        n = 160
        h = 2.0 / n
        xs = -1.0 + (np.arange(n) + 0.5) * h
        X, Y = np.meshgrid(xs, xs, indexing="ij")
        R = np.hypot(X, Y)
        mu = lebesgue_square(-1.0, 1.0, n)
        V = PotentialField(cell_values=np.where((R >= 1 / E) & (R <= 1.0), 1.0, 0.0))
        rep = bound_plane_lebesgue(V, mu)
        mixed = next(s for s in rep.series if s.label != "A")
        want = PHI_INV_1 * math.pi * (1 - math.exp(-2))
        assert mixed.terms[-1] == pytest.approx(want, rel=5e-3)

    def test_radial_flag_notes_droppable_sum(self):
        mu = lebesgue_square(-1.0, 1.0, 20)
        V = PotentialField(cell_values=np.ones((20, 20)))
        rep = bound_plane_lebesgue(V, mu, radial=True)
        assert any("radial" in note for note in rep.notes)
        assert rep.value == rep.recomputed_value()


class TestKhuri:
    def test_zero_potential(self):
        mu = lebesgue_square(-1.0, 1.0, 10)
        V = PotentialField(cell_values=np.zeros((10, 10)))
        rep = khuri_bound(V, mu)
        assert rep.value == rep.base  # both integrals vanish

    def test_unit_disk_terms(self):
        n = 400
        h = 2.2 / n
        xs = -1.1 + (np.arange(n) + 0.5) * h
        X, Y = np.meshgrid(xs, xs, indexing="ij")
        inside = X**2 + Y**2 <= 1.0
        mu = lebesgue_square(-1.1, 1.1, n)
        V = PotentialField(cell_values=np.where(inside, 1.0, 0.0))
        rep = khuri_bound(V, mu)
        k1 = sum(next(s for s in rep.series if s.label == "K1").terms.values())
        k2 = sum(next(s for s in rep.series if s.label == "K2").terms.values())
        assert k1 == pytest.approx(3.0685564559294904, rel=4e-3)
        assert k2 == pytest.approx(math.pi / 2, rel=2e-2)

    def test_second_term_rearrangement_invariant(self):
        rng = np.random.default_rng(5)
        n = 40
        vals = rng.uniform(0.0, 3.0, size=(n, n))
        mu = lebesgue_square(-1.0, 1.0, n)
        rep = khuri_bound(PotentialField(cell_values=vals), mu)
        flat = vals.reshape(-1)
        shuffled = rng.permutation(flat).reshape(n, n)
        rep2 = khuri_bound(PotentialField(cell_values=shuffled), mu)
        k2 = sum(next(s for s in rep.series if s.label == "K2").terms.values())
        k2s = sum(next(s for s in rep2.series if s.label == "K2").terms.values())
        assert k2 == pytest.approx(k2s, rel=1e-12)

    def test_requires_grid(self):
        V, mu = atom_measure([[1.0, 0.0]], [1.0], [1.0])
        with pytest.raises(InputError):
            khuri_bound(V, mu)


class TestCorner:
    def test_energy_matches_quadrature(self):
        # radial log ramp between r and 1/sqrt(2) over a quarter turn
        for r in (0.1, 0.01):
            R = 1 / math.sqrt(2)
            s = np.linspace(r, R, 200001)
            du = -1.0 / (s * math.log(R / r))
            num = (math.pi / 2) * np.trapezoid(du * du * s, s)
            assert corner_cutoff_energy(r) == pytest.approx(num, rel=1e-8)

    def test_energy_domain(self):
        with pytest.raises(InputError):
            corner_cutoff_energy(0.8)
        with pytest.raises(InputError):
            corner_cutoff_energy(0.0)

    def test_inequality_fails_at_small_radius(self):
        ok = corner_inequality(0.1, c0=1.0, c1=1.0, alpha=1.0)
        bad = corner_inequality(0.01, c0=1.0, c1=1.0, alpha=1.0)
        assert ok.holds and not bad.holds
        assert ok.rhs == pytest.approx(1.841, rel=1e-3)
        assert bad.rhs == pytest.approx(0.8456, rel=1e-3)
        # the right side only shrinks as the concentration radius does
        assert bad.rhs < ok.rhs


class TestAdaptiveCover:
    def test_unit_square_spec_example(self):
        m = 40
        mu = lebesgue_square(0.0, 1.0, m)
        V = PotentialField(cell_values=np.ones((m, m)))
        cov = adaptive_cover(V, mu, region=(0.0, 1.0, 0.0, 1.0), n=64, c0=1.0, c1=1.0, alpha=0.5)
        assert len(cov.squares) <= 64
        assert not cov.flagged
        for v in cov.norms:
            assert v >= cov.target
            assert v <= 1.05 * cov.target
        # families are pairwise disjoint in the sup metric
        for fam in cov.families:
            for i in fam:
                for j in fam:
                    if i >= j:
                        continue
                    (xi, yi), si = cov.squares[i]
                    (xj, yj), sj = cov.squares[j]
                    assert max(abs(xi - xj), abs(yi - yj)) > (si + sj) / 2
        assert cov.linkage_bound <= 19
        # every support point is covered
        pts = mu.points()
        for px, py in pts:
            assert any(
                max(abs(px - cx), abs(py - cy)) <= s / 2 for (cx, cy), s in cov.squares
            )

    def test_single_atom(self):
        mu = DiscreteMeasure(atoms=np.array([[0.4, 0.6]]), atom_mass=np.array([2.0]))
        V = PotentialField(atom_values=np.array([1.5]))
        cov = adaptive_cover(V, mu, region=(0.0, 1.0, 0.0, 1.0), n=90, c0=1.0, c1=1.0, alpha=1.0)
        assert len(cov.squares) == 1
        assert cov.linkage_bound == 1

    def test_small_n_rejected(self):
        mu = DiscreteMeasure(atoms=np.array([[0.5, 0.5]]), atom_mass=np.array([1.0]))
        V = PotentialField(atom_values=np.array([1.0]))
        # kappa0 * 19 = 19 * 3 sqrt(2) for alpha = 1, c0 = c1
        with pytest.raises(InputError):
            adaptive_cover(V, mu, region=(0.0, 1.0, 0.0, 1.0), n=64, c0=1.0, c1=1.0, alpha=1.0)
