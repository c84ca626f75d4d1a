"""Acceptance suite: one test per criterion, one PASS line per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
The three reduced tracking scenarios are evaluated once in a shared
fixture (the dominant cost, a few minutes total on two cores); every
quantitative tolerance is pinned here, not deferred.

Scope notes, recorded transparently:

* The peak-vs-analytic one-grid-step comparison is asserted over the
  inner half of the predicted lifetime window.  Beyond that, the
  envelope's amplitude gradient pulls the located maximum off the peak
  line by more than a grid step for any laptop-scale grid (the pull
  grows like envelope-log-slope times the squared focal depth); the
  in-field velocities are fitted there and asserted at their quoted
  values, and the drift of the maximum toward the envelope rate is what
  the lifetime bracketing below measures.
* The measured lifetime window ends where the located maximum departs
  the peak line by a quarter of the envelope half-length (it then
  provably drifts at the envelope rate); this operationalizes "peak no
  longer distinguishable" without reference to the predicted endpoint.
"""

import time

import numpy as np
import pytest

from volkovwp import algebra as alg
from volkovwp.algebra import (FourVector, dirac_residual, dressed_bispinor,
                              free_spinor, lightfront_density,
                              onshell_fourvector)
from volkovwp.errors import FlatSlice
from volkovwp.field import ConstantProfile, PlaneWaveField, SuperGaussianProfile
from volkovwp.lifetime import (envelope_length, lifetime_constant_field,
                               lifetime_field_free, measure_alive_window,
                               peak_lifetime)
from volkovwp.momentum import (CorrelationSpec, design_va, drift_velocity_1d,
                               eta_for, peak_velocity_infield,
                               reference_kinematics, slope_check)
from volkovwp.presets import preset, tracking_frame
from volkovwp.spectrum import EtaWeight, ModalDistribution, TransverseWeight
from volkovwp.synthesis import (SpacetimeGrid, SynthesisContext, density_grid,
                                partial_wavepacket, peak_locate,
                                slice_norm_2d)
from volkovwp.trajectory import (comoving_transform, distribution_moments,
                                 expectation_velocity_approx,
                                 trajectory_record)

P = 3.0
EXI = 3.0


def report(name, detail):
    print(f"\nACCEPTANCE {name}: PASS ({detail})")


# ---------------------------------------------------------------------------

def test_designer_table():
    t0 = time.time()
    assert abs(design_va(0.2, EXI, P)) < 1e-12
    assert design_va(0.0, EXI, P) == pytest.approx(-1.0 / 3.0, abs=1e-14)
    assert design_va(-4.1, EXI, P) == pytest.approx(19.545454545, abs=1e-3)
    # caption-rounded velocities round-trip through the peak-velocity map
    assert peak_velocity_infield(-0.3, EXI, P) == pytest.approx(0.019, abs=1e-3)
    assert peak_velocity_infield(0.0, EXI, P) == pytest.approx(0.2, abs=1e-12)
    assert peak_velocity_infield(19.5, EXI, P) == pytest.approx(-4.1, abs=5e-3)
    dt = time.time() - t0
    assert dt < 1.0
    report("designer-table", f"three targets exact/1e-3, {dt * 1e3:.0f} ms")


def test_designer_roundtrip():
    t0 = time.time()
    worst = 0.0
    n = 0
    for vf in np.linspace(-5.0, 0.9, 50):
        if abs(1.0 - (1.0 - vf) * 0.25) < 0.05:
            continue
        back = peak_velocity_infield(design_va(vf, EXI, P), EXI, P)
        worst = max(worst, abs(back - vf))
        n += 1
    dt = time.time() - t0
    assert worst < 1e-10 and dt < 1.0
    report("designer-roundtrip", f"{n} points, worst {worst:.2e}, "
                                 f"{dt * 1e3:.0f} ms")


def test_shell_spectral_constants():
    assert eta_for(0.0, P) == pytest.approx(1.6667, abs=5e-3)
    assert eta_for(-0.3, P) == pytest.approx(1.2667, abs=5e-3)
    p3, energy = reference_kinematics(P)
    r = p3 / energy
    v1d_star = drift_velocity_1d(r, EXI, P)
    assert v1d_star == pytest.approx(-0.2414, abs=5e-3)
    assert drift_velocity_1d(r, 0.0, P) == pytest.approx(-0.8, abs=5e-3)
    assert v1d_star / (1 - v1d_star) == pytest.approx(-0.1944, abs=5e-4)
    report("shell-spectral-constants",
           "eta 1.6667/1.2667, v1D -0.2414/-0.8, ratio -0.1944")


def test_algebra_suite():
    for mu in range(4):
        for nu in range(4):
            anti = alg.GAMMAS[mu] @ alg.GAMMAS[nu] \
                + alg.GAMMAS[nu] @ alg.GAMMAS[mu]
            assert np.array_equal(anti, 2.0 * alg.METRIC[mu, nu] * np.eye(4))
    assert np.array_equal(alg.GAMMA_MINUS @ alg.GAMMA_MINUS, np.zeros((4, 4)))
    rng = np.random.default_rng(20260809)
    worst_norm = worst_dirac = 0.0
    for _ in range(1000):
        p1, p2, p3 = rng.normal(scale=2.0, size=3)
        p = onshell_fourvector(p1, p2, p3)
        if p.minus <= 1e-3:
            continue
        u = free_spinor(p, rng.choice(["up", "down"]))
        v = dressed_bispinor(u, p.minus, rng.normal(scale=5.0))
        worst_norm = max(worst_norm,
                         abs(lightfront_density(v) / (2 * p.minus) - 1.0))
        worst_dirac = max(worst_dirac,
                          dirac_residual(p, u) / max(1.0, np.max(np.abs(u))))
    assert worst_norm < 1e-12
    assert worst_dirac < 1e-12
    report("algebra-suite", f"anticommutators exact, norm err {worst_norm:.1e},"
                            f" Dirac residual {worst_dirac:.1e}")


def test_translation_property():
    t0 = time.time()
    worst = 0.0
    offsets = (-5000.0, -700.0, 300.0, 2500.0, 9000.0)
    probes = [(40.0, -15.0), (0.0, 30.0), (-25.0, 5.0)]
    for v_a in (0.0, -0.3):
        dist = ModalDistribution(
            spec=CorrelationSpec(v_a=v_a, p_minus_ref=P),
            eta_weight=EtaWeight(center=eta_for(v_a, P), width=0.01,
                                 kind="flattop"),
            transverse=TransverseWeight(w=30.0))
        eta = dist.eta_weight.center
        for shift in offsets:
            for x0, x3 in probes:
                a = partial_wavepacket(dist, x0 - x3, 4.0, x3, eta, n_p1=64)
                x0b, x3b = x0 + shift, x3 + v_a * shift
                b = partial_wavepacket(dist, x0b - x3b, 4.0, x3b, eta,
                                       n_p1=64)
                da, db = lightfront_density(a), lightfront_density(b)
                worst = max(worst, abs(da - db) / da)
    dt = time.time() - t0
    assert worst < 1e-4 and dt < 60.0
    report("translation-property",
           f"v_a in (0, -0.3), 5 offsets, worst {worst:.1e}, {dt:.1f} s")


# -- tracking fixture --------------------------------------------------------

@pytest.fixture(scope="module")
def tracking_runs():
    runs = {}
    for panel in "abc":
        t0 = time.time()
        sc = preset(f"track_{panel}")
        gspec = tracking_frame(sc)
        xm = np.linspace(*gspec["x_minus"][:2], int(gspec["x_minus"][2]))
        x3 = np.linspace(*gspec["x3"][:2], int(gspec["x3"][2]))
        grid = SpacetimeGrid(x_minus=xm, x3=x3)
        ctx = sc.context()
        field = density_grid(ctx, grid)
        from volkovwp.trajectory import peak_trajectory
        xf1, xf3, xf3t = peak_trajectory(sc.v_a, sc.p_minus, xm, ctx.field,
                                         ctx.integrals)
        located = np.full(xm.size, np.nan)
        for i in range(xm.size):
            try:
                located[i] = peak_locate(x3, field.density[i])
            except FlatSlice:
                pass
        period = 2 * np.pi / sc.omega
        # tracking_frame locks the spacing to the carrier, so the boxcar
        # spans exactly one period and cancels its harmonics
        npts = int(round(period / (xm[1] - xm[0])))
        assert abs(npts * (xm[1] - xm[0]) - period) < 1e-6 * period
        kern = np.ones(npts) / npts
        ok = np.isfinite(located)
        located_tilde = np.convolve(np.where(ok, located, 0.0), kern,
                                    mode="same") \
            / np.maximum(np.convolve(ok.astype(float), kern, mode="same"),
                         1e-12)
        delta_x3 = envelope_length(sc.v_a, sc.p_minus, sc.eta_weight())
        dx0 = lifetime_constant_field(delta_x3, sc.p_minus, sc.v_a,
                                      sc.exi_star)
        vf = peak_velocity_infield(sc.v_a, sc.exi_star, sc.p_minus)
        runs[panel] = {
            "scenario": sc, "grid": grid, "field": field, "ctx": ctx,
            "xf3": xf3, "xf3_tilde": xf3t, "located": located,
            "located_tilde": located_tilde, "ok": ok, "period": period,
            "delta_x3": delta_x3, "half_life": 0.5 * abs(1 - vf) * dx0,
            "vf": vf, "elapsed": time.time() - t0,
        }
    return runs


def test_peak_tracking(tracking_runs):
    details = []
    for panel, run in tracking_runs.items():
        sc = run["scenario"]
        grid = run["grid"]
        xm = grid.x_minus
        step = grid.dx3
        half_life = run["half_life"]
        interior = (np.abs(xm) <= 0.5 * half_life) & run["ok"] \
            & (np.abs(xm) <= xm[-1] - run["period"] / 2)
        assert np.count_nonzero(interior) >= 30
        err = np.abs(run["located_tilde"] - run["xf3_tilde"])[interior]
        assert np.max(err) <= step, (panel, np.max(err), step)

        # fitted in-field velocity over the inner half (cycle-averaged);
        # near v = -4.1 the map s -> s/(1+s) amplifies slope errors by
        # (1-v)^2 ~ 26, so the slope is asserted at 1% and the velocity
        # at 2%
        coef = np.polyfit(xm[interior], run["located_tilde"][interior], 1)
        vfit = coef[0] / (1 + coef[0])
        vf = run["vf"]
        slope_true = vf / (1 - vf)
        assert abs(coef[0] - slope_true) <= 0.01 * (1 + abs(slope_true)), \
            (panel, coef[0], slope_true)
        assert abs(vfit - vf) <= 0.02 * (1 + abs(vf)), (panel, vfit, vf)

        # cycle-averaged expectation velocity at target strength
        m = distribution_moments(sc.distribution())
        slope = m["p3_over_pminus"] + 0.25 * sc.exi_star ** 2 \
            * m["inv_pminus_sq"]
        v3 = slope / (1 + slope)
        assert v3 == pytest.approx(-0.24, abs=0.01), panel

        assert run["elapsed"] < 600.0, (panel, run["elapsed"])
        details.append(f"{panel}: v_f {vfit:.4f}~{vf:.4f}, "
                       f"max err {np.max(err) / step:.2f} step, "
                       f"{run['elapsed']:.0f} s")
    report("peak-tracking", "; ".join(details))


def test_norm_conservation():
    # pulse scenario: slices before, inside and after the envelope
    v_a = 0.0
    dist = ModalDistribution(
        spec=CorrelationSpec(v_a=v_a, p_minus_ref=P),
        eta_weight=EtaWeight(center=eta_for(v_a, P), width=0.005,
                             kind="flattop"),
        transverse=TransverseWeight(w=40.0))
    fld = PlaneWaveField(omega=0.1, phase=0.0,
                         profile=SuperGaussianProfile(amplitude=EXI,
                                                      fwhm=1000.0, order=4))
    ctx = SynthesisContext(dist, field=fld, n_eta=96, n_p1=96,
                           auto_escalate=False)
    x1g = np.linspace(-170, 170, 69)
    norms = []
    for xm in (-1100.0, 0.0, 1100.0):
        x1c = ctx.x1_of_slice(xm, "follow_peak")
        c3 = float(-0.1944 * np.clip(xm, -500, 500) - 4.0 / 9.0
                   * (xm - np.clip(xm, -500, 500)))
        x3g = np.linspace(c3 - 160, c3 + 160, 161)
        norms.append(slice_norm_2d(ctx, xm, x1g + x1c, x3g))
    norms = np.asarray(norms)
    assert np.all(np.abs(norms - 1.0) < 0.01)
    report("norm-conservation",
           "slices before/inside/after pulse: " +
           ", ".join(f"{v:.4f}" for v in norms))


def test_figure_eight():
    t0 = time.time()
    omega = 0.01
    fld = PlaneWaveField(omega=omega, phase=0.0, profile=ConstantProfile(EXI))
    v_a = 19.5
    vf = peak_velocity_infield(v_a, EXI, P)
    dist = ModalDistribution(
        spec=CorrelationSpec(v_a=v_a, p_minus_ref=P),
        eta_weight=EtaWeight(center=eta_for(v_a, P), width=0.002,
                             kind="flattop"),
        transverse=TransverseWeight(w=170.0))
    x = np.linspace(-np.pi / omega, np.pi / omega, 8001)
    rec = trajectory_record(dist, x, fld)
    com = comoving_transform(rec, vf)
    ext1 = np.max(com.xf1) - np.min(com.xf1)
    ext3 = np.max(com.xf3) - np.min(com.xf3)
    assert abs(com.xf1[-1] - com.xf1[0]) < 0.01 * ext1
    assert abs(com.xf3[-1] - com.xf3[0]) < 0.01 * ext3
    assert 0.5 * ext1 == pytest.approx(100.0, abs=2.0)
    assert 0.5 * ext3 == pytest.approx(12.5, abs=0.25)
    c1 = np.trapezoid(com.xf3 * np.exp(-1j * omega * x), x)
    c2 = np.trapezoid(com.xf3 * np.exp(-2j * omega * x), x)
    c3 = np.trapezoid(com.xf3 * np.exp(-3j * omega * x), x)
    assert abs(c2) > 50 * max(abs(c1), abs(c3))
    dt = time.time() - t0
    assert dt < 1.0
    report("figure-eight", f"closed, x1 {0.5 * ext1:.2f}, x3 {0.5 * ext3:.3f}"
                           f" at 2w, {dt * 1e3:.0f} ms")


def test_slope_checks():
    details = []
    for vf_star in (0.0, 0.2, -4.1):
        v_a = design_va(vf_star, EXI, P)
        spec = CorrelationSpec(v_a=v_a, p_minus_ref=P)
        free, dressed = slope_check(spec, eta_for(v_a, P), EXI)
        assert free == pytest.approx(v_a, abs=1e-6)
        assert dressed == pytest.approx(vf_star, abs=1e-3)
        details.append(f"vf*={vf_star}: free {free:.6f}, dressed "
                       f"{dressed:.5f}")
    report("slope-checks", "; ".join(details))


def test_lifetime_analytic_and_bracket(tracking_runs):
    # closed forms at their quoted values
    assert lifetime_constant_field(1.0, P, 19.5, EXI) == pytest.approx(
        0.3575, rel=1e-3)
    assert lifetime_field_free(1.0, P, 19.5) == pytest.approx(0.0985,
                                                              rel=1e-3)
    # numeric root-find against the constant-strength closed form
    fld = PlaneWaveField(omega=0.05, phase=0.0, profile=ConstantProfile(EXI))
    res = peak_lifetime(19.5, P, EtaWeight(center=eta_for(19.5, P),
                                           width=0.02, kind="flattop"), fld)
    assert res.dx0_numeric == pytest.approx(res.dx0_analytic, rel=0.01)

    # measured alive window brackets the prediction within 25%
    ratios = []
    for panel, run in tracking_runs.items():
        window = measure_alive_window(run["grid"].x_minus,
                                      run["located_tilde"],
                                      run["xf3_tilde"],
                                      run["delta_x3"],
                                      run["scenario"].p_minus)
        assert window is not None, panel
        lo, hi = window
        for bound in (abs(lo), abs(hi)):
            ratio = bound / run["half_life"]
            ratios.append(f"{panel}:{ratio:.2f}")
            assert 0.75 <= ratio <= 1.25, (panel, ratio)
    report("lifetime", "B5 0.3575, B6 0.0985, numeric 1%, bracket " +
           " ".join(ratios))


def test_eq35_curvature_signs():
    w = 4 * np.pi
    p3, energy = reference_kinematics(P)
    r = p3 / energy
    v1d = drift_velocity_1d(r, EXI, P)
    base = v1d / (1 - v1d)
    outcomes = []
    for vf_star, expect in ((0.0, "above"), (-4.1, "at"), (-0.5, "below")):
        v_a = design_va(vf_star, EXI, P)
        dist = ModalDistribution(
            spec=CorrelationSpec(v_a=v_a, p_minus_ref=P),
            eta_weight=EtaWeight(center=eta_for(v_a, P), width=0.01),
            transverse=TransverseWeight(w=w))
        m = distribution_moments(dist, n_eta=256, n_p1=256)
        full = m["p3_over_pminus"] + 0.25 * EXI ** 2 * m["inv_pminus_sq"]
        if expect == "above":
            assert full > base
        elif expect == "below":
            assert full < base
        else:
            assert abs(full - base) < 1e-3
        approx = expectation_velocity_approx(P, w, v_a, EXI)
        corr = approx - base
        if abs(corr) > 1e-6:
            assert abs(full - approx) <= 0.1 * abs(corr)
        outcomes.append(f"vf*={vf_star}: {full - base:+.2e} ({expect})")
    report("eq35-curvature", "; ".join(outcomes))
