"""Envelope length, edge trajectories and peak-lifetime arithmetic."""

import numpy as np
import pytest

from volkovwp.field import ConstantProfile, FieldIntegrals, PlaneWaveField
from volkovwp.momentum import (design_va, drift_velocity_1d,
                               peak_velocity_infield, reference_kinematics)
from volkovwp.spectrum import EtaWeight
from volkovwp.lifetime import (cn_constant, edge_trajectories,
                               envelope_length, lifetime_constant_field,
                               lifetime_field_free, peak_lifetime)

P = 3.0
EXI = 3.0


def weight(width, kind="flattop"):
    return EtaWeight(center=1.6667, width=width, kind=kind)


class TestEnvelopeLength:
    def test_inverse_proportionality(self):
        a = envelope_length(0.0, P, weight(0.01))
        b = envelope_length(0.0, P, weight(0.02))
        assert a == pytest.approx(2.0 * b, rel=1e-12)

    def test_equal_lengths_when_width_scaled(self):
        # scenarios share Delta_x3 when width scales with |v_a - P3/E|
        r = -0.8
        base = 0.02
        lengths = []
        for v_a in (-0.3, 0.0, 19.5):
            dw = base * abs(v_a - r) / 0.8
            lengths.append(envelope_length(v_a, P, weight(dw)))
        assert np.ptp(lengths) < 0.01 * lengths[0]

    def test_cn_flattop_analytic(self):
        # half width at half maximum of exp(-t^10)
        assert cn_constant("flattop", 10) == pytest.approx(
            np.log(2.0) ** 0.1, rel=1e-12)

    def test_cn_supergauss_positive_and_cached(self):
        c1 = cn_constant("supergauss", 10)
        c2 = cn_constant("supergauss", 10)
        assert c1 == c2
        assert 0.5 < c1 < 3.0


class TestEdgeTrajectories:
    def test_field_free_lines(self):
        x = np.linspace(-100, 100, 11)
        dl = 50.0
        rising, falling = edge_trajectories(P, dl, x)
        slope = (rising[-1] - rising[0]) / (x[-1] - x[0])
        assert slope == pytest.approx(-4.0 / 9.0, rel=1e-12)
        assert np.allclose(rising - falling, 2 * dl / 1.8, rtol=1e-12)

    def test_separation_at_origin(self):
        rising, falling = edge_trajectories(P, 37.0, np.array([0.0]))
        assert rising[0] - falling[0] == pytest.approx(2 * 37.0 / 1.8,
                                                       rel=1e-12)

    def test_constant_field_drift_slope(self):
        fld = PlaneWaveField(omega=0.01, phase=0.0,
                             profile=ConstantProfile(EXI))
        cache = FieldIntegrals(fld, -3000.0, 3000.0)
        x = np.array([-2000.0, 2000.0])
        rising, _ = edge_trajectories(P, 10.0, x, fld, cache)
        slope = (rising[1] - rising[0]) / (x[1] - x[0])
        # added drift slope e^2 xi*^2/(4 P^2) = 0.25 over the free -4/9
        assert slope == pytest.approx(-4.0 / 9.0 + 0.25, rel=1e-9)


class TestAnalyticLifetimes:
    def test_fig2c_constant_field_value(self):
        # [2/1.8] |(1 - v1D)/(vf* - v1D)| = 0.3575 per unit Delta_x3
        dx0 = lifetime_constant_field(1.0, P, 19.5, EXI)
        assert dx0 == pytest.approx(0.3575, rel=1e-3)

    def test_field_free_superluminal_value(self):
        dx0 = lifetime_field_free(1.0, P, 19.5)
        assert dx0 == pytest.approx(0.0985, rel=1e-3)

    def test_comoving_peak_never_exits(self):
        assert lifetime_field_free(1.0, P, -0.8) == np.inf


class TestPeakLifetimeNumeric:
    def test_matches_analytic_constant_profile(self):
        fld = PlaneWaveField(omega=0.01, phase=0.0,
                             profile=ConstantProfile(EXI))
        res = peak_lifetime(19.5, P, weight(0.05), fld)
        assert res.status == "ok"
        assert res.dx0_numeric == pytest.approx(res.dx0_analytic, rel=0.01)

    def test_matches_analytic_random_tuples(self):
        rng = np.random.default_rng(3)
        checked = 0
        while checked < 20:
            v_a = rng.uniform(-0.7, 0.95)
            exi = rng.uniform(0.5, 4.0)
            pm = rng.uniform(1.5, 6.0)
            p3, energy = reference_kinematics(pm)
            vf = peak_velocity_infield(v_a, exi, pm)
            v1d = drift_velocity_1d(p3 / energy, exi, pm)
            if abs(vf - v1d) < 0.05:
                continue
            fld = PlaneWaveField(omega=0.01, phase=rng.uniform(0, 6.28),
                                 profile=ConstantProfile(exi))
            res = peak_lifetime(v_a, pm, EtaWeight(center=2.0, width=0.05,
                                                   kind="flattop"), fld)
            assert res.status == "ok"
            assert res.dx0_numeric == pytest.approx(res.dx0_analytic,
                                                    rel=0.01)
            checked += 1

    def test_no_intersection_reported(self):
        res = peak_lifetime(-0.8, P, weight(0.05), None)
        assert res.status == "no_intersection"
        assert res.dx0_analytic == np.inf

    def test_monotone_in_velocity_disparity(self):
        # lifetime per unit envelope length decreases as |vf* - v1D|
        # grows (all else fixed)
        fld = PlaneWaveField(omega=0.01, phase=0.0,
                             profile=ConstantProfile(EXI))
        per_length = []
        for vf_star in (-0.3, -1.0, -2.5, -4.1):
            v_a = design_va(vf_star, EXI, P)
            res = peak_lifetime(v_a, P, weight(0.05), fld)
            per_length.append(res.dx0_numeric / res.delta_x3)
            assert res.status == "ok"
        assert all(np.diff(per_length) < 0)

    def test_report_dict_schema(self):
        res = peak_lifetime(19.5, P, weight(0.05), None)
        d = res.as_dict()
        assert set(d) == {"delta_x3", "delta_x0_analytic",
                          "delta_x0_numeric", "roots", "status"}
