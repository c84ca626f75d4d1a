"""Built-in scenario presets.

``figure`` presets carry the published parameter sets: reference
light-front momentum 3 m, strength |e| xi* / m = 3, carrier 0.01 m,
pulse FWHM 4.8e4 / m, transverse width w = 170 / m (maps use 4 pi / m),
out-of-field velocities {-0.3, 0, 19.5} paired with designed in-field
velocities {0, 0.2, -4.1}.

``tracking`` presets are reduced variants for quantitative peak-vs-
analytic comparisons on laptop-scale grids: a rescaled carrier
(omega = 0.05) so the peak lifetime spans many cycles, a constant
envelope at the target strength, and a smaller transverse width so the
focal feature is sharp against the envelope.  All velocity constants
are independent of these rescalings.

Every preset re-derives its figure-caption constants at validation
time; ``check_caption_constants`` fails loudly on mismatch beyond the
quoted rounding.
"""

from __future__ import annotations

import numpy as np

from .errors import ScenarioError
from .lifetime import cn_constant, envelope_length, lifetime_constant_field
from .momentum import (design_va, drift_velocity_1d, peak_velocity_infield,
                       reference_kinematics)
from .scenario import Scenario, validate

P_MINUS = 3.0
EXI_STAR = 3.0
OMEGA_FIG = 0.01
PULSE_FWHM = 4.8e4
W_FIG = 170.0
W_MAP = 4.0 * np.pi

#: literal caption velocities and their designed in-field partners
FIG2_VA = {"a": -0.3, "b": 0.0, "c": 19.5}
FIG2_VFSTAR = {"a": 0.0, "b": 0.2, "c": -4.1}
FIG4_VFSTAR = {"a": 0.0, "b": -0.5, "c": -4.1}

#: shared envelope length (half width at half max) for the figure presets
FIG2_DX3 = 1.2e4


def _eta_width(v_a: float, delta_x3: float, order: int = 10) -> float:
    p3, energy = reference_kinematics(P_MINUS)
    return cn_constant("flattop", order) * abs(v_a - p3 / energy) / delta_x3


def fig2_scenario(panel: str) -> dict:
    """Full Fig.-2 parameter set (density window at the pulse center)."""
    v_a = FIG2_VA[panel]
    width = _eta_width(v_a, FIG2_DX3)
    span_xm = 1.5 * 2.0 * np.pi / OMEGA_FIG
    return {
        "name": f"fig2{panel}",
        "correlation": {"v_a": v_a},
        "p_minus": P_MINUS,
        "spectrum": {"width": width, "order": 10, "shape": "flattop",
                     "w": W_FIG},
        "field": {"omega": OMEGA_FIG, "phase": 0.0, "exi_star": EXI_STAR,
                  "profile": {"kind": "supergaussian", "fwhm": PULSE_FWHM,
                              "order": 8, "center": 0.0}},
        "grid": {"x_minus": [-span_xm, span_xm, 241],
                 "x3": [-8200.0, 8200.0, 161],
                 "x1": "follow_peak"},
        "quadrature": {"n_eta": 128, "n_p1": 128},
        "spin": "up",
    }


def fig3_scenario() -> dict:
    """Constant strength, one carrier cycle around the coincidence."""
    v_a = FIG2_VA["c"]
    width = _eta_width(v_a, FIG2_DX3)
    return {
        "name": "fig3",
        "correlation": {"v_a": v_a},
        "p_minus": P_MINUS,
        "spectrum": {"width": width, "order": 10, "shape": "flattop",
                     "w": W_FIG},
        "field": {"omega": OMEGA_FIG, "phase": 0.0, "exi_star": EXI_STAR,
                  "profile": {"kind": "constant"}},
        "quadrature": {"n_eta": 128, "n_p1": 128},
        "spin": "up",
    }


def fig4_scenario(panel: str) -> dict:
    """Momentum-density map at w = 4 pi for a designed target velocity."""
    vf_star = FIG4_VFSTAR[panel]
    return {
        "name": f"fig4{panel}",
        "correlation": {"target": {"vf_star": vf_star}},
        "p_minus": P_MINUS,
        "spectrum": {"width": 0.05, "order": 10, "shape": "supergauss",
                     "w": W_MAP},
        "field": {"omega": OMEGA_FIG, "phase": 0.0, "exi_star": EXI_STAR,
                  "profile": {"kind": "constant"}},
        "quadrature": {"n_eta": 128, "n_p1": 128},
        "spin": "up",
    }


def fig1_scenario(panel: str) -> dict:
    """Partial-wavepacket snapshot parameters (single eta)."""
    v_a = {"a": 0.0, "c": -0.3, "e": -0.3}[panel]
    scenario = {
        "name": f"fig1{panel}",
        "correlation": {"v_a": v_a},
        "p_minus": P_MINUS,
        "spectrum": {"width": _eta_width(v_a, FIG2_DX3), "order": 10,
                     "shape": "flattop", "w": W_FIG},
        "quadrature": {"n_eta": 96, "n_p1": 96},
        "spin": "up",
    }
    if panel == "e":
        scenario["field"] = {"omega": OMEGA_FIG, "phase": 0.0,
                             "exi_star": EXI_STAR,
                             "profile": {"kind": "constant"}}
    return scenario


# -- reduced tracking scenarios ---------------------------------------------

OMEGA_TRACK = 0.05
TRACK_PARAMS = {
    # panel: (delta_x3, w)
    "a": (800.0, 20.0),
    "b": (1080.0, 12.0),
    "c": (1080.0, 12.0),
}


def tracking_scenario(panel: str) -> dict:
    delta_x3, w = TRACK_PARAMS[panel]
    v_a = FIG2_VA[panel]
    return {
        "name": f"track_{panel}",
        "correlation": {"v_a": v_a},
        "p_minus": P_MINUS,
        "spectrum": {"width": _eta_width(v_a, delta_x3), "order": 10,
                     "shape": "flattop", "w": w},
        "field": {"omega": OMEGA_TRACK, "phase": 0.0, "exi_star": EXI_STAR,
                  "profile": {"kind": "constant"}},
        "quadrature": {"n_eta": 128, "n_p1": 128},
        "spin": "up",
    }


def tracking_frame(scenario: Scenario, window_factor: float = 1.35,
                   samples_per_cycle: int = 5) -> dict:
    """Grid spec covering the predicted lifetime window of a tracking
    scenario at the density-bandwidth resolution limit.

    The slice spacing is locked to the carrier (``samples_per_cycle``
    per period) so a boxcar over one period cancels the first few
    harmonics exactly when cycle-averaging tracked quantities.
    """
    v_a = scenario.v_a
    p3, energy = reference_kinematics(scenario.p_minus)
    r = p3 / energy
    delta_x3 = envelope_length(v_a, scenario.p_minus, scenario.eta_weight())
    dx0 = lifetime_constant_field(delta_x3, scenario.p_minus, v_a,
                                  scenario.exi_star)
    vf = peak_velocity_infield(v_a, scenario.exi_star, scenario.p_minus)
    v1d = drift_velocity_1d(r, scenario.exi_star, scenario.p_minus)
    half_xm = 0.5 * window_factor * abs(1.0 - vf) * dx0
    spacing = (2.0 * np.pi / scenario.omega) / samples_per_cycle
    m = int(np.ceil(half_xm / spacing))
    half_xm = m * spacing
    slope_env = v1d / (1.0 - v1d)
    slope_pk = vf / (1.0 - vf)
    env_hw = delta_x3 / (1.0 - r)
    reach = max(abs(slope_env) * half_xm + 1.2 * env_hw,
                abs(slope_pk) * half_xm + 0.3 * env_hw) + 40.0
    ctx = scenario.context()
    limit = ctx.dx3_limit()
    n_x3 = int(np.ceil(2.0 * reach / (0.92 * limit))) + 1
    return {"x_minus": [-half_xm, half_xm, 2 * m + 1],
            "x3": [-reach, reach, n_x3],
            "x1": "follow_peak"}


def preset(name: str) -> Scenario:
    """Validated preset scenario by name (fig2a ... track_c)."""
    builders = {}
    for p in "abc":
        builders[f"fig2{p}"] = lambda p=p: fig2_scenario(p)
        builders[f"fig4{p}"] = lambda p=p: fig4_scenario(p)
        builders[f"track_{p}"] = lambda p=p: tracking_scenario(p)
    for p in ("a", "c", "e"):
        builders[f"fig1{p}"] = lambda p=p: fig1_scenario(p)
    builders["fig3"] = fig3_scenario
    if name not in builders:
        raise KeyError(f"unknown preset {name!r}; "
                       f"choose from {sorted(builders)}")
    scenario = validate(builders[name]())
    check_caption_constants(scenario)
    return scenario


def check_caption_constants(scenario: Scenario) -> None:
    """Re-derive the published constants and fail loudly on mismatch.

    Guards the math modules against regression: designed velocities,
    the central eta values, and the drift velocities must match their
    captions at quoted rounding.
    """
    errs = []
    p3, energy = reference_kinematics(P_MINUS)
    r = p3 / energy
    if abs(r + 0.8) > 1e-12:
        errs.append(f"P3/E at p_minus=3 is {r}, expected -0.8")
    v1d = drift_velocity_1d(r, EXI_STAR, P_MINUS)
    if abs(v1d + 0.2414) > 5e-4:
        errs.append(f"v_1D at target strength is {v1d}, expected -0.2414")
    if abs(v1d / (1 - v1d) + 0.1944) > 5e-4:
        errs.append("v_1D/(1-v_1D) drifted from -0.1944")
    pairs = {-0.3: 0.0, 0.0: 0.2, 19.5: -4.1}
    for v_a, vf_star in pairs.items():
        v_back = design_va(vf_star, EXI_STAR, P_MINUS)
        if abs(v_back - v_a) > 0.05 * max(1.0, abs(v_a)):
            errs.append(f"designer({vf_star}) = {v_back}, caption {v_a}")
    name = scenario.name
    if name.startswith("fig2") or name.startswith("track"):
        v_a = scenario.v_a
        expected_eta = {-0.3: 1.27, 0.0: 1.67}.get(v_a)
        if expected_eta is not None \
                and abs(scenario.eta_center - expected_eta) > 5e-3:
            errs.append(f"eta_center {scenario.eta_center} vs caption "
                        f"{expected_eta}")
    if errs:
        raise ScenarioError(errs)
