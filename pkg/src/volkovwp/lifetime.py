"""Lifetime of the probability-density peak.

The peak is only distinguishable inside the envelope that follows the
expectation trajectory.  The envelope length in x3 scales as

    Delta_x3 = c_N |v_a - P3/E| / Delta_eta,

with c_N the full width at half maximum of |FT N|^2 for the unit-width
weight shape (computed once per shape and cached).  The rising and
falling envelope edges follow

    (P3/P_minus) x_minus + I2~(x_minus)/(2 P_minus^2)
        +- Delta_x3 / (1 - P3/E),

and the lifetime is bounded by the intersections of the cycle-averaged
peak trajectory with these edges.  For a constant envelope strength the
duration is analytic,

    Delta_x0 = [2 Delta_x3 / |1 - P3/E|] |(1 - v_1D)/(v_f* - v_1D)|,

which the numeric root-find must reproduce; with the field off it
reduces to 2 Delta_x3 / |v_a - v_1D|.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.optimize import brentq

from .field import FieldIntegrals, PlaneWaveField
from .momentum import (drift_velocity_1d, peak_velocity_infield,
                       reference_kinematics)
from .spectrum import EtaWeight
from .trajectory import peak_trajectory


@lru_cache(maxsize=None)
def cn_constant(kind: str, order: int) -> float:
    """Half width at half maximum of |FT N|^2 for the unit-width weight.

    The edge construction places the envelope edges at +-Delta_x3 around
    the center, so Delta_x3 is calibrated as a half-length; the measured
    peak-death points then coincide with the predicted edges.
    """
    if kind == "flattop":
        # the transform of the flat-top weight is its generating time
        # envelope: |FT N|^2 = exp(-t^order)
        return float(np.log(2.0) ** (1.0 / order))
    if kind != "supergauss":
        raise ValueError(f"unknown eta-weight kind {kind!r}")
    # numeric transform of exp(-u^order / 2)
    u_max = (2.0 * np.log(1e18)) ** (1.0 / order)
    nodes, weights = leggauss(400)
    u = u_max * nodes
    w = u_max * weights
    g = np.exp(-0.5 * np.abs(u) ** order)

    def intensity(t):
        return np.abs(np.sum(w * g * np.cos(u * t))) ** 2

    peak = intensity(0.0)
    half = lambda t: intensity(t) - 0.5 * peak
    hi = 0.5
    while half(hi) > 0:
        hi *= 2.0
    return float(brentq(half, 0.0, hi, xtol=1e-12))


def envelope_length(v_a: float, p_minus_ref: float,
                    eta_weight: EtaWeight) -> float:
    """Envelope length Delta_x3 (inversely proportional to the spectral
    width)."""
    if eta_weight.width <= 0:
        raise ValueError("spectral width must be positive")
    p3, energy = reference_kinematics(p_minus_ref)
    r = p3 / energy
    return cn_constant(eta_weight.kind, eta_weight.order) \
        * abs(v_a - r) / eta_weight.width


def edge_trajectories(p_minus_ref: float, delta_x3: float, x_minus,
                      field: PlaneWaveField | None = None,
                      integrals: FieldIntegrals | None = None):
    """(rising, falling) edge positions at x_minus (cycle-averaged)."""
    x = np.asarray(x_minus, dtype=float)
    p3, energy = reference_kinematics(p_minus_ref)
    r = p3 / energy
    center = (p3 / p_minus_ref) * x
    if field is not None:
        if integrals is None:
            integrals = FieldIntegrals(field, float(np.min(x)) - field.period,
                                       float(np.max(x)) + field.period)
        center = center + integrals.i2_tilde(x) / (2.0 * p_minus_ref ** 2)
    off = delta_x3 / (1.0 - r)
    return center + off, center - off


def lifetime_constant_field(delta_x3: float, p_minus_ref: float, v_a: float,
                            e_xi_star: float) -> float:
    """Analytic peak duration Delta_x0 at constant envelope strength."""
    p3, energy = reference_kinematics(p_minus_ref)
    r = p3 / energy
    vf = peak_velocity_infield(v_a, e_xi_star, p_minus_ref)
    v1d = drift_velocity_1d(r, e_xi_star, p_minus_ref)
    if abs(vf - v1d) <= 1e-12 * (1.0 + abs(vf)):
        return np.inf
    return (2.0 * delta_x3 / abs(1.0 - r)) * abs((1.0 - v1d) / (vf - v1d))


def lifetime_field_free(delta_x3: float, p_minus_ref: float,
                        v_a: float) -> float:
    """Field off: v_1D = P3/E and v_f* = v_a."""
    p3, energy = reference_kinematics(p_minus_ref)
    v1d = p3 / energy
    if abs(v_a - v1d) <= 1e-12 * (1.0 + abs(v_a)):
        return np.inf
    return 2.0 * delta_x3 / abs(v_a - v1d)


@dataclass(frozen=True)
class LifetimeResult:
    """Envelope length plus analytic and numeric peak durations."""

    delta_x3: float
    dx0_analytic: float | None   # constant-strength or field-free closed form
    dx0_numeric: float | None    # from the root-find; None if no intersection
    roots: tuple | None          # (x_minus_low, x_minus_high)
    status: str                  # "ok" | "no_intersection"

    def as_dict(self) -> dict:
        return {"delta_x3": self.delta_x3,
                "delta_x0_analytic": self.dx0_analytic,
                "delta_x0_numeric": self.dx0_numeric,
                "roots": list(self.roots) if self.roots else None,
                "status": self.status}


def _nearest_root(fn, span: float, side: int, n_scan: int = 4096):
    """First sign change of fn on (0, span] (side=+1) or [-span, 0)
    (side=-1), refined by Brent."""
    xs = np.linspace(0.0, side * span, n_scan)
    vals = fn(xs)
    sign_change = np.nonzero(np.diff(np.sign(vals)) != 0)[0]
    if sign_change.size == 0:
        return None
    i = sign_change[0]
    a, b = xs[i], xs[i + 1]
    if a == b:
        return float(a)
    return float(brentq(lambda t: float(fn(np.array([t]))[0]),
                        min(a, b), max(a, b), xtol=1e-9 * max(1.0, span)))


def peak_lifetime(v_a: float, p_minus_ref: float, eta_weight: EtaWeight,
                  field: PlaneWaveField | None,
                  integrals: FieldIntegrals | None = None,
                  x_minus_span: float | None = None) -> LifetimeResult:
    """Numeric intersection of the cycle-averaged peak trajectory with
    the envelope edges, nearest the coincidence point x_minus = 0.

    The analytic member is filled for a constant profile (target-strength
    closed form) or with the field off.
    """
    delta_x3 = envelope_length(v_a, p_minus_ref, eta_weight)
    p3, energy = reference_kinematics(p_minus_ref)
    r = p3 / energy

    if field is None:
        analytic = lifetime_field_free(delta_x3, p_minus_ref, v_a)
    else:
        profile_kind = field.profile.describe()["kind"]
        if profile_kind == "constant":
            analytic = lifetime_constant_field(
                delta_x3, p_minus_ref, v_a, field.profile.amplitude)
        else:
            analytic = None
    if analytic == np.inf:
        return LifetimeResult(delta_x3, np.inf, None, None, "no_intersection")

    if x_minus_span is None:
        guess = analytic if analytic else lifetime_field_free(
            delta_x3, p_minus_ref, v_a)
        x_minus_span = 4.0 * guess if np.isfinite(guess) and guess > 0 \
            else 100.0 * delta_x3
    if field is not None and integrals is None:
        integrals = FieldIntegrals(field, -x_minus_span - field.period,
                                   x_minus_span + field.period)

    def gap_rising(x):
        _, _, xf3t = peak_trajectory(v_a, p_minus_ref, x, field, integrals)
        rising, _ = edge_trajectories(p_minus_ref, delta_x3, x, field,
                                      integrals)
        return xf3t - rising

    def gap_falling(x):
        _, _, xf3t = peak_trajectory(v_a, p_minus_ref, x, field, integrals)
        _, falling = edge_trajectories(p_minus_ref, delta_x3, x, field,
                                       integrals)
        return xf3t - falling

    roots_hi = [z for z in (_nearest_root(gap_rising, x_minus_span, +1),
                            _nearest_root(gap_falling, x_minus_span, +1))
                if z is not None]
    roots_lo = [z for z in (_nearest_root(gap_rising, x_minus_span, -1),
                            _nearest_root(gap_falling, x_minus_span, -1))
                if z is not None]
    if not roots_hi or not roots_lo:
        return LifetimeResult(delta_x3, analytic, None, None,
                              "no_intersection")
    x_hi = min(roots_hi)
    x_lo = max(roots_lo)
    # Delta_x0 along the peak: dx0 = dx_minus + dx3
    _, _, xf3t = peak_trajectory(v_a, p_minus_ref,
                                 np.array([x_lo, x_hi]), field, integrals)
    dx0 = (x_hi - x_lo) + (xf3t[1] - xf3t[0])
    return LifetimeResult(delta_x3, analytic, float(dx0),
                          (float(x_lo), float(x_hi)), "ok")


def measure_alive_window(x_minus, located_peak, peak_line, delta_x3: float,
                         p_minus_ref: float, threshold: float = 0.25):
    """x_minus interval over which the located maximum still follows the
    peak trajectory.

    While the peak is distinguishable the located maximum rides the
    analytic peak line; once it dissolves, the maximum is dragged along
    with the envelope (its measured drift rate switches to the envelope
    rate).  A slice counts as alive while the located maximum stays
    within ``threshold`` of the envelope half-length
    delta_x3/(1 - P3/E) of the peak line.

    ``located_peak`` may contain NaN for slices without a located
    maximum.  Returns (x_lo, x_hi) of the contiguous alive run
    containing the coincidence point x_minus = 0, or None.
    """
    x_minus = np.asarray(x_minus, dtype=float)
    located = np.asarray(located_peak, dtype=float)
    line = np.asarray(peak_line, dtype=float)
    p3, energy = reference_kinematics(p_minus_ref)
    tol = threshold * delta_x3 / (1.0 - p3 / energy)
    alive = np.isfinite(located) & (np.abs(located - line) <= tol)
    idx = np.nonzero(alive)[0]
    if idx.size == 0:
        return None
    center = int(np.argmin(np.abs(x_minus)))
    runs = np.split(idx, np.nonzero(np.diff(idx) > 1)[0] + 1)
    for run in runs:
        if run[0] <= center <= run[-1]:
            return float(x_minus[run[0]]), float(x_minus[run[-1]])
    best = max(runs, key=len)
    return float(x_minus[best[0]]), float(x_minus[best[-1]])
