"""Scenario ingestion, validation and derived-parameter resolution.

A scenario is a JSON document with the normative key schema:

    {
      "name": "fig2b",                        # optional label
      "correlation": {"v_a": 0.0}             # or {"target": {"vf_star": 0.2}}
      "p_minus": 3.0,
      "spectrum": {"width": 6.4e-5, "order": 10,
                   "shape": "flattop",        # or "supergauss"
                   "w": 170.0},
      "field": {"omega": 0.01, "phase": 0.0, "exi_star": 3.0,
                "profile": {"kind": "supergaussian", "fwhm": 4.8e4,
                            "order": 8, "center": 0.0}},
                # or {"kind": "constant"} / {"kind": "table", "x": [...],
                #     "xi": [...]} / omit "field" entirely (free packet)
      "grid": {"x_minus": [lo, hi, n], "x3": [lo, hi, n],
               "x1": "follow_peak"},          # or a number
      "quadrature": {"n_eta": 128, "n_p1": 128},
      "spin": "up",
      "workers": null
    }

Exactly one of correlation.v_a / correlation.target must be present;
with a target, v_a is produced by the velocity designer and echoed in
the derived block.  ``exi_star`` is the product |e| xi* / m from the
strength convention; profile strengths are stored as e xi.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .errors import DesignerSingular, EvanescentMode, ScenarioError
from .field import (ConstantProfile, PlaneWaveField, SuperGaussianProfile,
                    TabulatedProfile)
from .momentum import (CorrelationSpec, design_va, drift_velocity_1d,
                       eta_for, peak_velocity_infield, reference_kinematics,
                       singularity_guard)
from .spectrum import EtaWeight, ModalDistribution, TransverseWeight
from .synthesis import SpacetimeGrid, SynthesisContext

ROUNDING_TOL = 5e-3  # figure-caption constants are quoted to ~2-3 digits


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def scenario_hash(raw: dict) -> str:
    return hashlib.sha256(canonical_json(raw).encode()).hexdigest()[:12]


@dataclass(frozen=True)
class Scenario:
    """Validated scenario with every derived quantity resolved."""

    raw: dict
    name: str
    v_a: float
    designed: bool
    p_minus: float
    eta_center: float
    spectrum_width: float
    spectrum_order: int
    spectrum_shape: str
    w: float
    omega: float | None
    phase: float
    exi_star: float
    profile_spec: dict | None
    grid_spec: dict | None
    n_eta: int
    n_p1: int
    spin: str
    workers: int | None
    derived: dict = dataclass_field(default_factory=dict)

    @property
    def hash(self) -> str:
        return scenario_hash(self.raw)

    def correlation_spec(self) -> CorrelationSpec:
        return CorrelationSpec(v_a=self.v_a, p_minus_ref=self.p_minus)

    def eta_weight(self) -> EtaWeight:
        return EtaWeight(center=self.eta_center, width=self.spectrum_width,
                         order=self.spectrum_order, kind=self.spectrum_shape)

    def distribution(self) -> ModalDistribution:
        return ModalDistribution(spec=self.correlation_spec(),
                                 eta_weight=self.eta_weight(),
                                 transverse=TransverseWeight(w=self.w))

    def plane_wave(self) -> PlaneWaveField | None:
        if self.profile_spec is None:
            return None
        kind = self.profile_spec["kind"]
        if kind == "constant":
            prof = ConstantProfile(amplitude=self.exi_star)
        elif kind == "supergaussian":
            prof = SuperGaussianProfile(
                amplitude=self.exi_star,
                fwhm=self.profile_spec["fwhm"],
                order=self.profile_spec.get("order", 8),
                center=self.profile_spec.get("center", 0.0))
        else:
            prof = TabulatedProfile(
                x=tuple(self.profile_spec["x"]),
                values=tuple(self.exi_star * np.asarray(
                    self.profile_spec["xi"]) / max(self.profile_spec["xi"])))
        return PlaneWaveField(omega=self.omega, phase=self.phase,
                              profile=prof)

    def context(self, n_eta: int | None = None,
                n_p1: int | None = None) -> SynthesisContext:
        return SynthesisContext(self.distribution(), field=self.plane_wave(),
                                n_eta=n_eta or self.n_eta,
                                n_p1=n_p1 or self.n_p1, spin=self.spin)

    def grid(self) -> SpacetimeGrid | None:
        if self.grid_spec is None:
            return None
        lo, hi, n = self.grid_spec["x_minus"]
        x_minus = np.linspace(lo, hi, int(n))
        lo, hi, n = self.grid_spec["x3"]
        x3 = np.linspace(lo, hi, int(n))
        return SpacetimeGrid(x_minus=x_minus, x3=x3,
                             x1_rule=self.grid_spec.get("x1", "follow_peak"))


def _get(d, path, errors, typ=None, required=True, default=None):
    cur = d
    for part in path.split("."):
        if not isinstance(cur, dict) or part not in cur:
            if required:
                errors.append(f"{path}: missing")
            return default
        cur = cur[part]
    if typ is not None and not isinstance(cur, typ):
        errors.append(f"{path}: expected {typ}, got {type(cur).__name__}")
        return default
    return cur


def validate(raw: dict) -> Scenario:
    """Resolve and validate a scenario document.

    Raises ScenarioError carrying one entry per violated invariant,
    each prefixed with the offending field path.
    """
    errors: list[str] = []
    name = raw.get("name", "scenario")

    p_minus = _get(raw, "p_minus", errors, (int, float))
    if p_minus is not None and p_minus <= 0:
        errors.append("p_minus: must be positive")

    corr = raw.get("correlation")
    v_a = None
    designed = False
    exi_star = 0.0
    field_spec = raw.get("field")
    if field_spec is not None:
        exi_star = _get(raw, "field.exi_star", errors, (int, float),
                        default=0.0)
    if not isinstance(corr, dict):
        errors.append("correlation: missing")
    else:
        has_va = "v_a" in corr
        has_target = "target" in corr
        if has_va == has_target:
            errors.append(
                "correlation: exactly one of v_a / target must be given")
        elif has_va:
            v_a = float(corr["v_a"])
        else:
            vf_star = corr["target"].get("vf_star")
            if vf_star is None:
                errors.append("correlation.target.vf_star: missing")
            elif field_spec is None:
                errors.append("correlation.target: requires a field block "
                              "(the designer needs exi_star)")
            else:
                designed = True
                try:
                    v_a = design_va(float(vf_star), exi_star, p_minus or 3.0)
                except DesignerSingular as exc:
                    errors.append(f"correlation.target: {exc}")

    spectrum = raw.get("spectrum") or {}
    width = _get(raw, "spectrum.width", errors, (int, float))
    order = int(spectrum.get("order", 10))
    shape = spectrum.get("shape", "supergauss")
    w = _get(raw, "spectrum.w", errors, (int, float))
    if width is not None and width <= 0:
        errors.append("spectrum.width: must be positive")
    if w is not None and w <= 0:
        errors.append("spectrum.w: must be positive")
    if shape not in ("supergauss", "flattop"):
        errors.append(f"spectrum.shape: unknown shape {shape!r}")
    if order % 2 or order < 2:
        errors.append("spectrum.order: must be a positive even integer")

    omega = None
    phase = 0.0
    profile_spec = None
    if field_spec is not None:
        omega = _get(raw, "field.omega", errors, (int, float))
        if omega is not None and omega <= 0:
            errors.append("field.omega: must be positive")
        phase = float(field_spec.get("phase", 0.0))
        profile_spec = field_spec.get("profile", {"kind": "constant"})
        kind = profile_spec.get("kind")
        if kind not in ("constant", "supergaussian", "table"):
            errors.append(f"field.profile.kind: unknown kind {kind!r}")
        elif kind == "supergaussian" and "fwhm" not in profile_spec:
            errors.append("field.profile.fwhm: missing")
        elif kind == "table" and ("x" not in profile_spec
                                  or "xi" not in profile_spec):
            errors.append("field.profile: table needs x and xi arrays")

    quad = raw.get("quadrature") or {}
    n_eta = int(quad.get("n_eta", 128))
    n_p1 = int(quad.get("n_p1", 128))
    spin = raw.get("spin", "up")
    if spin not in ("up", "down"):
        errors.append(f"spin: unknown label {spin!r}")
    workers = raw.get("workers")

    grid_spec = raw.get("grid")
    if grid_spec is not None:
        for axis in ("x_minus", "x3"):
            val = grid_spec.get(axis)
            if not (isinstance(val, (list, tuple)) and len(val) == 3):
                errors.append(f"grid.{axis}: expected [lo, hi, steps]")

    derived: dict = {}
    if v_a is not None and p_minus and p_minus > 0:
        eta_center = eta_for(v_a, p_minus)
        p3, energy = reference_kinematics(p_minus)
        guard = singularity_guard(v_a, eta_center)
        if guard.singular_slice:
            errors.append(
                f"correlation.v_a: v_a = {v_a:.6g} equals P3/E = "
                f"{p3 / energy:.6g} (singular slice)")
        if guard.evanescent_on_axis:
            errors.append("correlation.v_a: on-axis mode is evanescent "
                          "at the derived eta")
        if w and w > 0 and width and width > 0 \
                and shape in ("supergauss", "flattop") and abs(v_a) < 1.0:
            # the whole quadrature support must stay in the real-root
            # region: eta^2 >= (1 - v_a^2)(m^2 + pperp^2)
            try:
                eta_lo, _ = EtaWeight(center=eta_center, width=width,
                                      order=order,
                                      kind=shape).quadrature_support()
            except ValueError:
                eta_lo = eta_center
            bound = eta_lo ** 2 / (1.0 - v_a * v_a) - 1.0
            if eta_lo <= 0 or bound <= 0 or (6.0 / w) ** 2 >= bound:
                errors.append(
                    "spectrum: the (eta, p1) quadrature support exits the "
                    "real-root region (narrow the width or raise w)")
        try:
            v_f_star = peak_velocity_infield(v_a, exi_star, p_minus)
        except DesignerSingular:
            v_f_star = math.inf
        v_1d_star = drift_velocity_1d(p3 / energy, exi_star, p_minus)
        derived = {
            "v_a": v_a,
            "designed": designed,
            "eta_center": eta_center,
            "eta_center_echo": f"{eta_center:.6f}",
            "P3": p3,
            "E": energy,
            "p3_over_E": p3 / energy,
            "v_f_at_star": v_f_star,
            "v_1d_at_star": v_1d_star,
            "v_1d_free": p3 / energy,
            "branch_boundary": guard.branch_boundary,
        }
        if width and width > 0 and abs(eta_center) > 0:
            rel = width / abs(eta_center)
            derived["relative_spectral_width"] = rel
            if rel > 0.2:
                derived["narrow_spectrum_warning"] = True

    if errors:
        raise ScenarioError(errors)
    return Scenario(raw=raw, name=name, v_a=float(v_a), designed=designed,
                    p_minus=float(p_minus), eta_center=derived["eta_center"],
                    spectrum_width=float(width), spectrum_order=order,
                    spectrum_shape=shape, w=float(w), omega=omega,
                    phase=phase, exi_star=float(exi_star),
                    profile_spec=profile_spec, grid_spec=grid_spec,
                    n_eta=n_eta, n_p1=n_p1, spin=spin,
                    workers=workers, derived=derived)


def load(path) -> Scenario:
    with open(path, "r", encoding="utf-8") as fh:
        return validate(json.load(fh))
