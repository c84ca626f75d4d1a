"""Linearly polarized plane-wave potential and its cumulative integrals.

The wave travels in +x3 and is polarized along x1:

    e A1(x_minus) = exi(x_minus) * cos(omega x_minus + phase)

Only the product of the charge and the potential ever enters the
dynamics, so profiles store ``exi`` = e * xi directly.  Scenario files
give the dimensionless strength |e| xi* / m.

The two cumulative integrals

    I1(x) = int_0^x e A1 dx',      I2(x) = int_0^x e^2 A1^2 dx'

are queried once per quadrature node per grid point, so they are
precomputed on a uniform grid (>= 64 samples per carrier period,
Gauss-Legendre inside each cell) and interpolated with a cubic spline.
``J2`` caches the cycle-averaged version of I2 (integrand e^2 xi^2 / 2),
used by the cycle-averaged trajectories.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field as dataclass_field

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.interpolate import CubicSpline

from .algebra import FourVector
from .errors import CacheRangeError

_LN2 = np.log(2.0)


class FieldProfileWarning(UserWarning):
    """Envelope varies too quickly compared to the carrier period."""


@dataclass(frozen=True)
class ConstantProfile:
    """xi(x) = amplitude everywhere."""

    amplitude: float

    def value(self, x):
        return np.broadcast_to(np.float64(self.amplitude), np.shape(x)).copy() \
            if np.ndim(x) else float(self.amplitude)

    def describe(self) -> dict:
        return {"kind": "constant", "amplitude": self.amplitude}


@dataclass(frozen=True)
class SuperGaussianProfile:
    """Flat-top pulse 2**(-(2(x-center)/fwhm)**order) * amplitude.

    ``order`` is the (even) exponent; the value at center +- fwhm/2 is
    amplitude/2 for every order.
    """

    amplitude: float
    fwhm: float
    order: int = 8
    center: float = 0.0

    def __post_init__(self):
        if self.order % 2 or self.order < 2:
            raise ValueError("super-Gaussian order must be a positive even integer")
        if self.fwhm <= 0:
            raise ValueError("fwhm must be positive")

    def value(self, x):
        u = (2.0 * (np.asarray(x, dtype=float) - self.center)) / self.fwhm
        out = self.amplitude * np.exp2(-(u ** self.order))
        return out if out.ndim else float(out)

    def describe(self) -> dict:
        return {"kind": "supergaussian", "amplitude": self.amplitude,
                "fwhm": self.fwhm, "order": self.order, "center": self.center}


@dataclass(frozen=True)
class TabulatedProfile:
    """Linear interpolation between samples; zero outside the table."""

    x: tuple
    values: tuple

    def value(self, xq):
        out = np.interp(np.asarray(xq, dtype=float), self.x, self.values,
                        left=0.0, right=0.0)
        return out if out.ndim else float(out)

    @property
    def amplitude(self) -> float:
        return float(np.max(self.values))

    def describe(self) -> dict:
        return {"kind": "table", "n_samples": len(self.x),
                "amplitude": self.amplitude}


@dataclass(frozen=True)
class PlaneWaveField:
    """Carrier frequency, carrier phase and envelope profile."""

    omega: float
    phase: float
    profile: object

    def __post_init__(self):
        if self.omega <= 0:
            raise ValueError("omega must be positive")

    @property
    def period(self) -> float:
        return 2.0 * np.pi / self.omega

    def envelope(self, x_minus):
        """e xi(x_minus)."""
        return self.profile.value(x_minus)

    def potential(self, x_minus):
        """e A1(x_minus)."""
        x = np.asarray(x_minus, dtype=float)
        out = self.profile.value(x) * np.cos(self.omega * x + self.phase)
        return out if np.ndim(x_minus) else float(out)

    def check_slowly_varying(self, lo: float, hi: float, n: int = 4097) -> float:
        """Warn when |d xi/dx| * period exceeds 20% of the peak amplitude.

        Returns the worst ratio found.
        """
        x = np.linspace(lo, hi, n)
        env = np.abs(self.profile.value(x))
        denv = np.gradient(env, x)
        peak = float(np.max(env))
        if peak == 0.0:
            return 0.0
        change_per_cycle = float(np.max(np.abs(denv)) * self.period / peak)
        if change_per_cycle > 0.2:
            warnings.warn(
                f"profile changes by {change_per_cycle:.2f} of its peak per "
                "carrier cycle (slowly-varying assumption requires <= 0.2)",
                FieldProfileWarning, stacklevel=2)
        return change_per_cycle


class FieldIntegrals:
    """Cumulative I1, I2 and cycle-averaged J2 on a uniform knot grid.

    Knots are integer multiples of the cell width so that x = 0 is a
    knot and I1(0) = I2(0) = J2(0) = 0 exactly.  Construction is
    single-threaded; queries are read-only and thread-safe.
    """

    _GL_NODES, _GL_WEIGHTS = leggauss(8)

    def __init__(self, field: PlaneWaveField, lo: float, hi: float,
                 samples_per_cycle: int = 256):
        if samples_per_cycle < 64:
            raise ValueError("need >= 64 samples per carrier period")
        if lo >= hi:
            raise ValueError("empty cache range")
        h = field.period / samples_per_cycle
        k_lo = min(int(np.floor(lo / h)), 0)
        k_hi = max(int(np.ceil(hi / h)), 0)
        knots = h * np.arange(k_lo, k_hi + 1)

        mid = 0.5 * (knots[:-1] + knots[1:])
        half = 0.5 * h
        xg = mid[:, None] + half * self._GL_NODES[None, :]
        ea1 = field.potential(xg)
        exi = field.envelope(xg)
        w = half * self._GL_WEIGHTS

        def cumulative(cell_vals):
            per_cell = cell_vals @ w
            c = np.concatenate([[0.0], np.cumsum(per_cell)])
            return c - c[-k_lo]  # zero at the x = 0 knot

        self.field = field
        self.lo, self.hi = float(knots[0]), float(knots[-1])
        self._i1 = CubicSpline(knots, cumulative(ea1))
        self._i2 = CubicSpline(knots, cumulative(ea1 * ea1))
        self._j2 = CubicSpline(knots, cumulative(0.5 * exi * exi))

    def _check(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(x < self.lo) or np.any(x > self.hi):
            raise CacheRangeError(
                f"query outside cached range [{self.lo}, {self.hi}]")
        return x

    def i1(self, x):
        out = self._i1(self._check(x))
        return out if np.ndim(x) else float(out)

    def i2(self, x):
        out = self._i2(self._check(x))
        return out if np.ndim(x) else float(out)

    def i2_tilde(self, x):
        """Cycle-averaged I2: int_0^x e^2 xi^2 / 2 dx'."""
        out = self._j2(self._check(x))
        return out if np.ndim(x) else float(out)


def field_integrals(field: PlaneWaveField, lo: float, hi: float,
                    samples_per_cycle: int = 256) -> FieldIntegrals:
    return FieldIntegrals(field, lo, hi, samples_per_cycle)


def action(p: FourVector, x: FourVector, field: PlaneWaveField | None,
           integrals: FieldIntegrals | None = None) -> float:
    """Classical action S = -p.x + [p1 I1(x_minus) - I2(x_minus)/2] / p_minus.

    With the field off (``field is None``) this is the free phase -p.x.
    """
    if p.minus <= 0.0:
        raise ValueError(f"action requires p_minus > 0, got {p.minus}")
    from .algebra import minkowski_dot
    s = -minkowski_dot(p, x)
    if field is None:
        return s
    if integrals is None:
        integrals = FieldIntegrals(field, min(0.0, x.minus), max(0.0, x.minus))
    xm = x.minus
    return s + (p.x1 * integrals.i1(xm) - 0.5 * integrals.i2(xm)) / p.minus


_CYCLE_NODES, _CYCLE_WEIGHTS = leggauss(64)


def cycle_average(f, x_minus: float, omega: float) -> float:
    """Mean of f over one carrier period centered at x_minus."""
    if omega <= 0:
        raise ValueError("omega must be positive")
    half = np.pi / omega
    xg = x_minus + half * _CYCLE_NODES
    try:
        vals = np.asarray(f(xg), dtype=float)
        if vals.shape != xg.shape:
            raise TypeError
    except (TypeError, ValueError):
        vals = np.asarray([f(float(xx)) for xx in xg], dtype=float)
    return float((vals @ _CYCLE_WEIGHTS) * half * omega / (2.0 * np.pi))
