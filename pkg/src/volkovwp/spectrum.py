"""Spectral weights and the modal distribution.

The joint momentum density is separable, |N(eta)|^2 |T(p1)|^2, with the
Jacobian factor |d eta / d p3|^(1/2) = |p3/E - v_a|^(1/2) carried by the
modal amplitude so that separability survives the change of variables.

Two eta-weight shapes are provided:

* ``supergauss``: N(eta) itself is a super-Gaussian of even order
  (default 10), N ~ exp(-((eta - c)/width)^order / 2), real >= 0.
* ``flattop``: N is the cosine transform of a super-Gaussian *time*
  envelope exp(-(t width)^order / 2), so the configuration-space
  envelope of the packet has a near-constant plateau.  N is real,
  symmetric, with sign-alternating side lobes.

Transverse content is reduced-dimensional: |T(p_perp)|^2 =
(w/sqrt(2 pi)) exp(-w^2 p1^2 / 2) delta(p2); all norms are per unit x2.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import gamma as gamma_fn

from .errors import EvanescentMode, SingularSlice
from .momentum import (CorrelationSpec, SINGULAR_TOL, dressed_arrays,
                       longitudinal_momentum)

log = logging.getLogger(__name__)

_FT_NODES, _FT_WEIGHTS = leggauss(256)


@dataclass(frozen=True)
class EtaWeight:
    """Normalized weighting amplitude N(eta)."""

    center: float
    width: float
    order: int = 10
    kind: str = "supergauss"

    def __post_init__(self):
        if self.width <= 0:
            raise ValueError("width must be positive")
        if self.order % 2 or self.order < 2:
            raise ValueError("order must be a positive even integer")
        if self.kind not in ("supergauss", "flattop"):
            raise ValueError(f"unknown eta-weight kind {self.kind!r}")

    @cached_property
    def _norm(self) -> float:
        if self.kind == "supergauss":
            # int exp(-u^order) du = 2 Gamma(1 + 1/order)
            return 1.0 / np.sqrt(self.width * 2.0 * gamma_fn(1.0 + 1.0 / self.order))
        # Parseval: int |FT G|^2 deta = 2 pi int G^2 dt
        g2 = (1.0 / self.width) * 2.0 * gamma_fn(1.0 + 1.0 / self.order)
        return 1.0 / np.sqrt(2.0 * np.pi * g2)

    @cached_property
    def _support_halfwidth(self) -> float:
        if self.kind == "supergauss":
            return float((2.0 * np.log(1e12)) ** (1.0 / self.order)) * self.width
        # scan the transform for the last side lobe above 1e-8 of the peak
        k = np.linspace(0.0, 80.0, 2001)
        vals = np.abs(self._flattop_raw(self.center + k * self.width))
        above = np.nonzero(vals > 1e-8 * vals[0])[0]
        return float(k[above[-1]] + 0.5) * self.width

    def _flattop_raw(self, eta):
        """2 int_0^T exp(-(t/tau)^order / 2) cos((eta - c) t) dt, tau = 1/width."""
        tau = 1.0 / self.width
        t_max = tau * (2.0 * np.log(1e18)) ** (1.0 / self.order)
        t = 0.5 * t_max * (_FT_NODES + 1.0)
        w = 0.5 * t_max * _FT_WEIGHTS
        g = np.exp(-0.5 * (t / tau) ** self.order)
        arg = np.multiply.outer(np.asarray(eta, dtype=float) - self.center, t)
        return 2.0 * (np.cos(arg) @ (w * g))

    def amplitude(self, eta):
        """N(eta); vectorized, real."""
        if self.kind == "supergauss":
            u = (np.asarray(eta, dtype=float) - self.center) / self.width
            out = self._norm * np.exp(-0.5 * u ** self.order)
        else:
            out = self._norm * self._flattop_raw(eta)
        return out if np.ndim(eta) else float(out)

    def support(self) -> tuple[float, float]:
        h = self._support_halfwidth
        return self.center - h, self.center + h

    def quadrature_support(self) -> tuple[float, float]:
        """Domain for mode quadrature.

        For the flat-top kind the slowly decaying side lobes are cut at
        +-20 widths (truncated |N|^2 mass ~ 2e-5); for the super-Gaussian
        kind this is the full support.
        """
        if self.kind == "supergauss":
            return self.support()
        h = 20.0 * self.width
        return self.center - h, self.center + h

    @property
    def relative_width(self) -> float:
        return abs(self.width / self.center) if self.center else np.inf


@dataclass(frozen=True)
class TransverseWeight:
    """Gaussian transverse amplitude in reduced dimensionality (p2 = 0)."""

    w: float

    def __post_init__(self):
        if self.w <= 0:
            raise ValueError("w must be positive")

    def amplitude(self, p1):
        out = np.sqrt(self.w / np.sqrt(2.0 * np.pi)) \
            * np.exp(-0.25 * (self.w * np.asarray(p1, dtype=float)) ** 2)
        return out if np.ndim(p1) else float(out)

    def support(self) -> tuple[float, float]:
        return -6.0 / self.w, 6.0 / self.w

    @property
    def mean_p1_squared(self) -> float:
        return 1.0 / (self.w * self.w)


def jacobian_factor(spec: CorrelationSpec, eta, p_perp):
    """|d eta / d p3|^(1/2) = |p3/E - v_a|^(1/2) on shell at (eta, pperp)."""
    p3 = longitudinal_momentum(spec, eta, p_perp)
    eta_b = np.broadcast_to(np.asarray(eta, dtype=float), np.shape(p3))
    energy = eta_b + spec.v_a * p3
    slope = p3 / energy - spec.v_a
    if np.any(np.abs(slope) <= SINGULAR_TOL):
        raise SingularSlice(
            f"p3/E equals v_a = {spec.v_a} on the requested mode set")
    out = np.sqrt(np.abs(slope))
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class ModalDistribution:
    """Correlation spec plus spectral weights; the full mode content."""

    spec: CorrelationSpec
    eta_weight: EtaWeight
    transverse: TransverseWeight

    def weight(self, eta, p1):
        """Separable joint density |N|^2 |T|^2 (no Jacobian)."""
        n = self.eta_weight.amplitude(eta)
        t = self.transverse.amplitude(p1)
        return (n * n) * (t * t)


def momentum_density_map(dist: ModalDistribution, e_xi_star: float,
                         eta_grid, p1_grid) -> dict:
    """Tabulate (q3/q_minus, weight) over an (eta, p1) grid.

    Evanescent grid points are skipped and counted, not fatal.
    Returns flat, row-major arrays: eta, p1, q3_over_qminus, weight.
    """
    eta_grid = np.asarray(eta_grid, dtype=float)
    p1_grid = np.asarray(p1_grid, dtype=float)
    rows_eta, rows_p1, rows_ratio, rows_w = [], [], [], []
    n_skipped = 0
    for eta in eta_grid:
        try:
            p3 = longitudinal_momentum(dist.spec, eta, np.abs(p1_grid))
        except EvanescentMode:
            # retry pointwise so only truly evanescent nodes drop out
            p3 = np.full(p1_grid.shape, np.nan)
            for j, p1 in enumerate(p1_grid):
                try:
                    p3[j] = longitudinal_momentum(dist.spec, eta, abs(p1))
                except EvanescentMode:
                    n_skipped += 1
        keep = np.isfinite(p3)
        if not np.any(keep):
            continue
        energy = eta + dist.spec.v_a * p3[keep]
        _, q3, q_minus = dressed_arrays(energy, p3[keep], e_xi_star)
        rows_eta.append(np.full(int(np.count_nonzero(keep)), eta))
        rows_p1.append(p1_grid[keep])
        rows_ratio.append(q3 / q_minus)
        rows_w.append(dist.weight(eta, p1_grid[keep]))
    if n_skipped:
        log.info("momentum_density_map: skipped %d evanescent grid points",
                 n_skipped)
    return {
        "eta": np.concatenate(rows_eta),
        "p1": np.concatenate(rows_p1),
        "q3_over_qminus": np.concatenate(rows_ratio),
        "weight": np.concatenate(rows_w),
        "n_skipped": n_skipped,
    }


def ridge_q3_over_qminus(spec: CorrelationSpec, e_xi_star: float, p1) -> np.ndarray:
    """q3/q_minus along eta = eta_ref as a function of p1 (the map ridge)."""
    p3 = longitudinal_momentum(spec, spec.eta_ref, np.abs(np.asarray(p1, float)))
    energy = spec.eta_ref + spec.v_a * p3
    _, q3, q_minus = dressed_arrays(energy, p3, e_xi_star)
    return q3 / q_minus
