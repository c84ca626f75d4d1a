"""Peak and expectation trajectories and the co-moving view.

Peak equations of motion (valid for v_a != 1):

    dx_f1/dx_minus = -eA1 / P_minus
    dx_f2/dx_minus = 0
    dx_f3/dx_minus = v_a/(1 - v_a) + e^2 A1^2 / (2 P_minus^2)

integrate to x_f1 = -I1/P_minus and x_f3 = [v_a/(1-v_a)] x_minus
+ I2/(2 P_minus^2); the cycle-averaged form replaces I2 by its running
average.  Expectation components integrate the distribution moments
<1/p_minus>, <p3/p_minus>, <1/p_minus^2> against the same cumulative
field integrals, so both trajectories are exact up to quadrature.

The co-moving transform subtracts the drift line of a velocity v,
x3 -> x3 - [v/(1-v)] x_minus, i.e. v times the cycle-averaged time
coordinate of the drifting trajectory.  This is the coordinate in which
a matched trajectory closes into the classic figure eight; it is not a
Lorentz boost (|v| > 1 is allowed).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import SingularSlice
from .field import FieldIntegrals, PlaneWaveField
from .momentum import (drift_velocity_1d, onshell_arrays,
                       peak_velocity_infield, reference_kinematics)
from .spectrum import ModalDistribution
from .synthesis import gauss_legendre_nodes


@dataclass(frozen=True)
class TrajectoryRecord:
    """Sampled peak and expectation trajectories over x_minus."""

    x_minus: np.ndarray
    xf1: np.ndarray
    xf3: np.ndarray
    xf3_tilde: np.ndarray
    ex1: np.ndarray
    ex3: np.ndarray
    ex3_tilde: np.ndarray

    @property
    def xf2(self) -> np.ndarray:
        return np.zeros_like(self.x_minus)

    @property
    def ex2(self) -> np.ndarray:
        return np.zeros_like(self.x_minus)

    def columns(self) -> dict:
        return {"x_minus": self.x_minus, "xf1": self.xf1, "xf3": self.xf3,
                "xf3_tilde": self.xf3_tilde, "ex1": self.ex1,
                "ex3": self.ex3, "ex3_tilde": self.ex3_tilde}


def peak_trajectory(v_a: float, p_minus_ref: float, x_minus,
                    field: PlaneWaveField | None = None,
                    integrals: FieldIntegrals | None = None):
    """(xf1, xf3, xf3_tilde) arrays; x_f(0) = 0 by convention."""
    if v_a == 1.0:
        raise ValueError("v_a = 1 has no generic peak trajectory "
                         "(dx_f3/dx0 = 1 identically)")
    x = np.asarray(x_minus, dtype=float)
    drift = (v_a / (1.0 - v_a)) * x
    if field is None:
        zero = np.zeros_like(x)
        return zero, drift.copy(), drift.copy()
    if integrals is None:
        integrals = FieldIntegrals(field, float(np.min(x)) - field.period,
                                   float(np.max(x)) + field.period)
    pm2 = 2.0 * p_minus_ref * p_minus_ref
    xf1 = -integrals.i1(x) / p_minus_ref
    xf3 = drift + integrals.i2(x) / pm2
    xf3_tilde = drift + integrals.i2_tilde(x) / pm2
    return xf1, xf3, xf3_tilde


def cycle_averaged_peak_velocity(v_a: float, p_minus_ref: float,
                                 x_minus: float,
                                 field: PlaneWaveField | None) -> float:
    """d x~_f3 / d x_minus = v_f/(1 - v_f) at the local envelope value."""
    e_xi = field.envelope(x_minus) if field is not None else 0.0
    v_f = peak_velocity_infield(v_a, e_xi, p_minus_ref)
    return v_f / (1.0 - v_f)


def distribution_moments(dist: ModalDistribution, n_eta: int = 192,
                         n_p1: int = 192) -> dict:
    """<1/p_minus>, <p3/p_minus>, <1/p_minus^2>, <p3/E> over |N|^2 |T|^2.

    Normalized by the quadrature mass so envelope truncation does not
    bias the averages.
    """
    eta, w_eta = gauss_legendre_nodes(*dist.eta_weight.quadrature_support(),
                                      n_eta)
    p1, w_p1 = gauss_legendre_nodes(*dist.transverse.support(), n_p1)
    energy, p3, p_minus = onshell_arrays(dist.spec, eta[:, None],
                                         np.abs(p1)[None, :])
    wgt = (w_eta[:, None] * w_p1[None, :]
           * dist.eta_weight.amplitude(eta)[:, None] ** 2
           * dist.transverse.amplitude(p1)[None, :] ** 2)
    mass = float(np.sum(wgt))
    avg = lambda q: float(np.sum(wgt * q)) / mass
    return {
        "inv_pminus": avg(1.0 / p_minus),
        "p3_over_pminus": avg(p3 / p_minus),
        "inv_pminus_sq": avg(1.0 / p_minus ** 2),
        "p3_over_e": avg(p3 / energy),
        "mass": mass,
    }


def expectation_trajectory(dist: ModalDistribution, x_minus,
                           field: PlaneWaveField | None = None,
                           integrals: FieldIntegrals | None = None,
                           moments: dict | None = None):
    """(ex1, ex3, ex3_tilde) arrays; <x(0)> = 0 by convention."""
    x = np.asarray(x_minus, dtype=float)
    if moments is None:
        moments = distribution_moments(dist)
    if field is None:
        zero = np.zeros_like(x)
        drift = moments["p3_over_pminus"] * x
        return zero, drift.copy(), drift.copy()
    if integrals is None:
        integrals = FieldIntegrals(field, float(np.min(x)) - field.period,
                                   float(np.max(x)) + field.period)
    ex1 = -moments["inv_pminus"] * integrals.i1(x)
    ex3 = moments["p3_over_pminus"] * x \
        + 0.5 * moments["inv_pminus_sq"] * integrals.i2(x)
    ex3_tilde = moments["p3_over_pminus"] * x \
        + 0.5 * moments["inv_pminus_sq"] * integrals.i2_tilde(x)
    return ex1, ex3, ex3_tilde


def trajectory_record(dist: ModalDistribution, x_minus,
                      field: PlaneWaveField | None = None,
                      integrals: FieldIntegrals | None = None,
                      moments: dict | None = None) -> TrajectoryRecord:
    x = np.asarray(x_minus, dtype=float)
    xf1, xf3, xf3t = peak_trajectory(dist.spec.v_a, dist.spec.p_minus_ref,
                                     x, field, integrals)
    ex1, ex3, ex3t = expectation_trajectory(dist, x, field, integrals,
                                            moments)
    return TrajectoryRecord(x_minus=x, xf1=xf1, xf3=xf3, xf3_tilde=xf3t,
                            ex1=ex1, ex3=ex3, ex3_tilde=ex3t)


def comoving_transform(record: TrajectoryRecord, v: float) -> TrajectoryRecord:
    """Subtract the drift line of velocity v from every longitudinal
    column: x3 -> x3 - [v/(1-v)] x_minus (v = 0 is the identity)."""
    if v == 1.0:
        raise ValueError("the lightlike frame has no finite drift line")
    line = (v / (1.0 - v)) * record.x_minus
    return replace(record,
                   xf3=record.xf3 - line,
                   xf3_tilde=record.xf3_tilde - line,
                   ex3=record.ex3 - line,
                   ex3_tilde=record.ex3_tilde - line)


def expectation_velocity_approx(p_minus_ref: float, w: float, v_a: float,
                                e_xi: float) -> float:
    """Second-order expansion of the cycle-averaged expectation velocity:

        v_1D/(1 - v_1D) + (1 - v_f v_1D) / (2 P_minus^2 (v_f - v_1D) w^2)

    with v_f and v_1D at the local envelope strength.  Raises
    SingularSlice at v_f = v_1D (the expansion's apparent singularity).
    """
    p3, energy = reference_kinematics(p_minus_ref)
    r = p3 / energy
    v_f = peak_velocity_infield(v_a, e_xi, p_minus_ref)
    v_1d = drift_velocity_1d(r, e_xi, p_minus_ref)
    if abs(v_f - v_1d) < 1e-12:
        raise SingularSlice("expansion invalid at v_f = v_1D")
    correction = (1.0 - v_f * v_1d) / (2.0 * p_minus_ref ** 2
                                       * (v_f - v_1d) * w * w)
    return v_1d / (1.0 - v_1d) + correction
