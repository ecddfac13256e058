"""Warped product spectra and the shooting integrator."""

import math

import numpy as np
import pytest

from curvop import (
    WarpJet,
    dwp_eigenvalue_list,
    dwp_eigenvalues,
    dwp_operator,
    integrate_warp_ode,
    ode_rhs,
    ode_shoot,
    perturbed_profile,
    round_jet,
    scal_single_warped,
    trajectory_scal,
)


class TestDwpEigenvalues:
    def test_round_gives_all_ones(self):
        for p in (2, 3, 4):
            for q in (2, 3, 4):
                for r in (0.2, 0.8, 1.4):
                    evs = dwp_eigenvalue_list(p, q, round_jet(r))
                    assert np.abs(evs - 1.0).max() < 1e-12
                    assert evs.size == math.comb(p + q + 1, 2)

    def test_multiplicity_tally(self):
        fams = dwp_eigenvalues(2, 2, round_jet(0.5))
        assert [m for _, m, _ in fams] == [2, 2, 1, 1, 4]
        assert sum(m for _, m, _ in fams) == 10

    def test_labels(self):
        labels = [lab for _, _, lab in dwp_eigenvalues(3, 2, round_jet(0.5))]
        assert labels == ["radial-p", "radial-q", "plane-p", "plane-q", "mixed"]

    def test_radial_family_tracks_second_derivative(self):
        jet = WarpJet(r=0.8, phi=0.7, dphi=0.6, d2phi=0.35, psi=0.7, dpsi=-0.6, d2psi=-0.7)
        fams = dwp_eigenvalues(2, 2, jet)
        assert fams[0][0] == pytest.approx(-0.5)

    def test_operator_is_bianchi_and_identity_when_round(self):
        op = dwp_operator(2, 3, round_jet(0.9))
        assert op.bianchi_certified is True
        assert np.abs(op.mat - np.eye(op.N)).max() < 1e-12

    def test_jet_positivity_enforced(self):
        with pytest.raises(ValueError):
            WarpJet(r=0.0, phi=0.0, dphi=1.0, d2phi=0.0, psi=1.0, dpsi=0.0, d2psi=-1.0)

    def test_small_factors_rejected(self):
        with pytest.raises(ValueError):
            dwp_eigenvalues(1, 2, round_jet(0.5))


class TestPerturbedProfile:
    def test_zero_amplitude_is_round(self):
        prof = perturbed_profile(2, 2, 0.0, 0.8, 0.2)
        for r in (0.1, 0.8, 1.5):
            jet = prof(r)
            base = round_jet(r)
            assert jet.phi == base.phi
            assert jet.dphi == base.dphi
            assert jet.d2phi == base.d2phi
        assert prof.c1_bound == 0.0

    def test_bump_is_compactly_supported(self):
        prof = perturbed_profile(2, 2, 2.0, 0.8, 0.1)
        before = prof(0.5)
        assert before.d2phi == round_jet(0.5).d2phi
        inside = prof(0.8)
        assert inside.d2phi == pytest.approx(-math.sin(0.8) + 2.0)

    def test_c1_bound_holds_on_samples(self):
        prof = perturbed_profile(2, 2, 1.5, 0.7, 0.15)
        worst = 0.0
        for r in np.linspace(0.05, 1.5, 300):
            jet = prof(float(r))
            worst = max(worst, abs(jet.phi - math.sin(r)), abs(jet.dphi - math.cos(r)))
        assert worst <= prof.c1_bound

    def test_deep_dip_with_others_near_one(self):
        prof = perturbed_profile(2, 2, 2.0, 0.8, 0.01)
        rs = np.linspace(0.1, 1.2, 300)
        radial = [dwp_eigenvalues(2, 2, prof(float(r)))[0][0] for r in rs]
        assert min(radial) <= -1.0
        others = []
        for r in rs:
            fams = dwp_eigenvalues(2, 2, prof(float(r)))
            others.extend(v for v, _, _ in fams[1:])
        assert 0.9 <= min(others) and max(others) <= 1.1

    def test_positivity_transition(self):
        # 3-positive everywhere, 2-positivity broken somewhere
        prof = perturbed_profile(2, 2, 0.9, 0.8, 0.05)
        low2 = []
        low3 = []
        for r in np.linspace(0.02, math.pi / 2 - 0.02, 400):
            evs = dwp_eigenvalue_list(2, 2, prof(float(r)))
            low2.append(evs[:2].sum())
            low3.append(evs[:3].sum())
        assert min(low2) <= 0.0
        assert min(low3) > 0.0

    def test_support_must_stay_interior(self):
        with pytest.raises(ValueError):
            perturbed_profile(2, 2, 1.0, 0.05, 0.1)
        with pytest.raises(ValueError):
            perturbed_profile(2, 2, 1.0, 1.5, 0.2)

    def test_bump_integrals_match_quadrature(self):
        # independent oracle: trapezoid quadrature of the window
        from curvop.warped import _bump, _bump_i1, _bump_i2

        us = np.linspace(-1.2, 1.2, 1201)
        w = _bump(us)
        i1 = np.concatenate([[0.0], np.cumsum((w[1:] + w[:-1]) / 2.0) * (us[1] - us[0])])
        i1 += float(_bump_i1(us[0]))
        assert np.abs(_bump_i1(us) - i1).max() < 1e-6
        i2 = np.concatenate([[0.0], np.cumsum((i1[1:] + i1[:-1]) / 2.0) * (us[1] - us[0])])
        i2 += float(_bump_i2(us[0]))
        assert np.abs(_bump_i2(us) - i2).max() < 1e-6

    def test_profile_derivatives_consistent(self):
        # finite differences of phi reproduce dphi and d2phi
        prof = perturbed_profile(2, 2, 1.3, 0.8, 0.2)
        eps = 1e-5
        for r in (0.5, 0.8, 0.95, 1.2):
            plus, minus, mid = prof(r + eps), prof(r - eps), prof(r)
            dphi_fd = (plus.phi - minus.phi) / (2 * eps)
            d2phi_fd = (plus.phi - 2 * mid.phi + minus.phi) / eps ** 2
            assert dphi_fd == pytest.approx(mid.dphi, abs=1e-8)
            assert d2phi_fd == pytest.approx(mid.d2phi, abs=1e-4)


class TestScalSingleWarped:
    def test_round_sphere(self):
        for n in (3, 5, 8):
            r = 0.7
            got = scal_single_warped(n, math.sin(r), math.cos(r), -math.sin(r))
            assert got == pytest.approx(n * (n - 1), rel=1e-12)

    def test_cylinder(self):
        for n, c in ((4, 0.5), (6, 2.0)):
            got = scal_single_warped(n, c, 0.0, 0.0)
            assert got == pytest.approx((n - 2) * (n - 1) / c ** 2, rel=1e-12)

    def test_rejects_nonpositive_radius(self):
        with pytest.raises(ValueError):
            scal_single_warped(4, 0.0, 1.0, 0.0)


class TestOde:
    def test_fixed_point_stays(self):
        for n in (4, 6):
            center = math.sqrt((n - 2) / 2.0)
            states, status = integrate_warp_ode(n, center, 0.0, 1e-3, 2.0)
            assert status == "ok"
            drift = max(max(abs(s.x - center), abs(s.y)) for s in states)
            assert drift <= 1e-8

    def test_crossing_radius_grows(self):
        for n in (4, 5, 6, 7, 8):
            res = ode_shoot(n, math.sqrt((n - 2) / 4.0), step=1e-3, t_max=30.0)
            assert res.status == "crossed"
            _, x1 = res.crossing
            assert x1 * x1 > (n - 2) / 2.0

    def test_reference_crossing(self):
        res = ode_shoot(4, 0.5, step=1e-3, t_max=20.0)
        assert res.status == "crossed"
        assert res.crossing[1] > 1.0
        assert abs(res.states[-1].y) <= 1e-10

    def test_scal_constant_along_trajectory(self):
        res = ode_shoot(5, 0.8, step=1e-3, t_max=20.0)
        scal = trajectory_scal(5, res.states)
        assert np.abs(scal - 8.0).max() <= 1e-6

    def test_center_start_reports_no_crossing(self):
        n = 5
        res = ode_shoot(n, math.sqrt((n - 2) / 2.0), step=1e-3, t_max=1.0)
        assert res.status == "no-crossing"
        assert res.crossing is None

    def test_time_reversal(self):
        fwd, _ = integrate_warp_ode(4, 0.6, 0.0, 1e-3, 2.0)
        last = fwd[-1]
        back, _ = integrate_warp_ode(4, last.x, -last.y, 1e-3, 2.0)
        worst = max(
            max(abs(a.x - b.x), abs(a.y + b.y)) for a, b in zip(back, reversed(fwd))
        )
        assert worst <= 1e-6

    def test_blow_down_detected(self):
        states, status = integrate_warp_ode(4, 0.5, -10.0, 1e-3, 2.0)
        assert status == "blow-down"

    def test_fourth_order_convergence(self):
        def radius(h):
            return ode_shoot(4, math.sqrt(0.5), step=h, t_max=30.0).crossing[1]

        coarse, mid, fine = radius(0.02), radius(0.01), radius(0.005)
        order = math.log2(abs(coarse - mid) / abs(mid - fine))
        assert order >= 3.8

    def test_rejects_bad_start(self):
        with pytest.raises(ValueError):
            ode_shoot(4, 1.5)
        with pytest.raises(ValueError):
            ode_shoot(4, -0.1)

    def test_rhs_matches_scal_target(self):
        # the field is exactly the constant-scalar-curvature condition
        for n in (4, 6):
            x, y = 0.7, 0.3
            _, dy = ode_rhs(n, x, y)
            assert scal_single_warped(n, x, y, dy) == pytest.approx(2.0 * (n - 1), rel=1e-12)
