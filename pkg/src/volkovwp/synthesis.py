"""Numerical synthesis of wavepackets and their light-front density.

The four-dimensional momentum integral of a partial wavepacket is
reduced analytically: the energy delta fixes p0 = E_p, the correlation
delta fixes p3 on the selected branch (its Jacobian cancels half of the
|d eta/d p3|^(1/2) amplitude factor), and the reduced transverse
dimensionality removes p2.  What remains is

    Phi(x, eta) = C int dp1  [V(p, x_minus) / sqrt(2 p_minus)]
                  * T(p1) |p3/E - v_a|^(-1/2) exp(i S(p, x)),

    psi(x) = int deta N(eta) Phi(x, eta),

with S the classical action.  The conserved light-front norm per unit
x2 on a constant-x_minus slice evaluates to (2 pi C)^2 <E/p_minus>
(expectation over |N|^2 |T|^2); the overall constant C is fixed so that
int dx1 dx3 psibar gamma_minus psi = 1 on every slice.

Grid evaluation factorizes per slice: all x3 dependence enters through
exp(-i p_minus x3), so a slice is one (nodes x points) matrix product.
Grid points are independent work items; rows are written by index, so
the output is identical for any worker count.
"""

from __future__ import annotations

import multiprocessing
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dataclass_field

import numpy as np
from numpy.polynomial.legendre import leggauss

from .algebra import GM_G1, M, free_spinor_columns, lightfront_density
from .errors import FlatSlice, ParaxialInvalid, ResolutionError
from .field import FieldIntegrals, PlaneWaveField
from .momentum import onshell_arrays
from .spectrum import ModalDistribution

#: nodes per 2 pi of phase variation demanded across the quadrature domain
NYQUIST_NODES_PER_CYCLE = 8
#: grid steps per 2 pi of the density's momentum bandwidth
GRID_POINTS_PER_CYCLE = 8
MAX_NODES = 4096


def gauss_legendre_nodes(lo: float, hi: float, n: int):
    x, w = leggauss(n)
    mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
    return mid + half * x, half * w


@dataclass(frozen=True)
class SpacetimeGrid:
    """Evaluation grid: x_minus slices by x3 points at one transverse rule.

    ``x1_rule`` is either the string "follow_peak" (evaluate at the
    analytic transverse peak location -I1(x_minus)/P_minus) or a fixed
    x1 value.  x2 = 0 throughout.
    """

    x_minus: np.ndarray
    x3: np.ndarray
    x1_rule: object = "follow_peak"

    def __post_init__(self):
        object.__setattr__(self, "x_minus", np.asarray(self.x_minus, float))
        object.__setattr__(self, "x3", np.asarray(self.x3, float))
        if self.x_minus.ndim != 1 or self.x3.ndim != 1:
            raise ValueError("grid axes must be one-dimensional")
        if isinstance(self.x1_rule, str) and self.x1_rule != "follow_peak":
            raise ValueError(f"unknown x1 rule {self.x1_rule!r}")

    @property
    def dx3(self) -> float:
        return float(self.x3[1] - self.x3[0]) if self.x3.size > 1 else np.inf

    @property
    def dxm(self) -> float:
        return float(self.x_minus[1] - self.x_minus[0]) \
            if self.x_minus.size > 1 else np.inf


@dataclass
class DensityField:
    """Sampled light-front density with its evaluation metadata."""

    grid: SpacetimeGrid
    density: np.ndarray          # (n_xminus, n_x3), >= 0
    x1: np.ndarray               # transverse location per slice
    line_norms: np.ndarray       # int rho dx3 per slice at the slice x1
    metadata: dict = dataclass_field(default_factory=dict)


class SynthesisContext:
    """Quadrature nodes, on-shell data and spinor tables for one scenario.

    Immutable after construction; shared read-only by worker processes.
    """

    def __init__(self, dist: ModalDistribution,
                 field: PlaneWaveField | None = None,
                 integrals: FieldIntegrals | None = None,
                 n_eta: int = 128, n_p1: int = 128,
                 spin: str = "up", auto_escalate: bool = True):
        self.dist = dist
        self.field = field
        self.integrals = integrals
        self.spin = spin
        self.n_eta = int(n_eta)
        self.n_p1 = int(n_p1)
        self.auto_escalate = auto_escalate
        self._build_nodes()

    def _build_nodes(self):
        dist = self.dist
        eta_lo, eta_hi = dist.eta_weight.quadrature_support()
        p1_lo, p1_hi = dist.transverse.support()
        eta, w_eta = gauss_legendre_nodes(eta_lo, eta_hi, self.n_eta)
        p1, w_p1 = gauss_legendre_nodes(p1_lo, p1_hi, self.n_p1)

        spec = dist.spec
        energy, p3, p_minus = onshell_arrays(spec, eta[:, None],
                                             np.abs(p1)[None, :])
        slope = p3 / energy - spec.v_a
        n_amp = dist.eta_weight.amplitude(eta)[:, None]
        t_amp = dist.transverse.amplitude(p1)[None, :]
        amp = (w_eta[:, None] * w_p1[None, :] * n_amp * t_amp
               / np.sqrt(np.abs(slope))
               / np.sqrt(2.0 * p_minus))
        # conserved slice norm: (2 pi C)^2 <E/p_minus> over |N|^2 |T|^2;
        # choose C so it equals one for this quadrature
        avg_e_over_pm = float(np.sum(w_eta[:, None] * w_p1[None, :]
                                     * (n_amp * t_amp) ** 2
                                     * energy / p_minus))
        norm_c = 1.0 / (2.0 * np.pi * np.sqrt(avg_e_over_pm))

        flat = lambda a: np.ascontiguousarray(a.reshape(-1))
        self.eta_nodes, self.p1_nodes = eta, p1
        self.energy = flat(energy)
        self.p3 = flat(p3)
        self.p_minus = flat(p_minus)
        self.p1 = flat(np.broadcast_to(p1[None, :], energy.shape))
        self.coeff = flat(norm_c * amp)
        u = free_spinor_columns(self.energy, self.p1, self.p3, self.spin)
        self.u = u
        self.g = u @ GM_G1.T  # gamma_minus gamma1 u, real

        # on-axis (p1 = 0) tables for the paraxial fast path
        e0, p30, pm0 = onshell_arrays(spec, eta, 0.0)
        self.axis_energy, self.axis_p3, self.axis_p_minus = e0, p30, pm0
        self.axis_coeff = (w_eta * dist.eta_weight.amplitude(eta)
                           / np.sqrt(np.abs(p30 / e0 - spec.v_a))) * norm_c
        self.norm_constant = norm_c

    # -- bandwidths ------------------------------------------------------

    @property
    def pminus_bandwidth(self) -> float:
        return float(np.max(self.p_minus) - np.min(self.p_minus))

    @property
    def energy_bandwidth(self) -> float:
        return float(np.max(self.energy) - np.min(self.energy))

    def dx3_limit(self) -> float:
        """Largest admissible x3 step: 2 pi / (8 * p_minus bandwidth).

        The slice density is a bilinear form in exp(-i p_minus x3), so
        its shortest x3 wavelength is 2 pi over the p_minus spread.
        """
        b = self.pminus_bandwidth
        return np.inf if b == 0 else 2.0 * np.pi / (GRID_POINTS_PER_CYCLE * b)

    def dxm_limit(self) -> float:
        b = self.energy_bandwidth
        if self.field is not None:
            b += 2.0 * self.field.omega
        return np.inf if b == 0 else 2.0 * np.pi / (GRID_POINTS_PER_CYCLE * b)

    # -- phases ----------------------------------------------------------

    def _require_integrals(self, x_minus):
        if self.field is None:
            return None
        pad = self.field.period
        lo = min(0.0, float(np.min(x_minus))) - pad
        hi = max(0.0, float(np.max(x_minus))) + pad
        if self.integrals is None or lo < self.integrals.lo \
                or hi > self.integrals.hi:
            if self.integrals is not None:
                lo = min(lo, self.integrals.lo)
                hi = max(hi, self.integrals.hi)
            self.integrals = FieldIntegrals(self.field, lo, hi)
        return self.integrals

    def x1_of_slice(self, x_minus: float, rule) -> float:
        if isinstance(rule, str):  # follow_peak
            if self.field is None:
                return 0.0
            cache = self._require_integrals(x_minus)
            return -cache.i1(x_minus) / self.dist.spec.p_minus_ref
        return float(rule)

    def slice_phase_and_spinor(self, x_minus: float, x1: float):
        """Per-node coefficient spinors at one slice: (nodes, 4) complex."""
        if self.field is not None:
            cache = self._require_integrals(x_minus)
            e_a1 = self.field.potential(x_minus)
            i1 = cache.i1(x_minus)
            i2 = cache.i2(x_minus)
        else:
            e_a1 = i1 = i2 = 0.0
        alpha = (-self.energy * x_minus + self.p1 * x1
                 + (self.p1 * i1 - 0.5 * i2) / self.p_minus)
        spinor = self.u - (e_a1 / (2.0 * self.p_minus))[:, None] * self.g
        return (self.coeff[:, None] * spinor) * np.exp(1j * alpha)[:, None]

    def wavepacket_slice(self, x_minus: float, x3: np.ndarray,
                         x1: float | None = None,
                         chunk: int = 8192) -> np.ndarray:
        """psi on one constant-x_minus slice: (len(x3), 4) complex."""
        x3 = np.asarray(x3, dtype=float)
        if x1 is None:
            x1 = self.x1_of_slice(x_minus, "follow_peak")
        s = self.slice_phase_and_spinor(x_minus, x1)
        out = np.zeros((x3.size, 4), dtype=complex)
        uniform = x3.size > 2 and np.allclose(np.diff(x3), x3[1] - x3[0],
                                              rtol=1e-12, atol=0.0)
        for i0 in range(0, self.p_minus.size, chunk):
            pm = self.p_minus[i0:i0 + chunk]
            if uniform:
                # geometric progression along the uniform x3 axis avoids
                # a full complex-exp per matrix entry
                w = np.empty((pm.size, x3.size), dtype=complex)
                w[:, 0] = np.exp(-1j * pm * x3[0])
                w[:, 1:] = np.exp(-1j * pm * (x3[1] - x3[0]))[:, None]
                np.cumprod(w, axis=1, out=w)
            else:
                w = np.exp(-1j * np.outer(pm, x3))
            out += w.T @ s[i0:i0 + chunk]
        return out

    def density_line(self, x_minus: float, x3: np.ndarray,
                     x1: float | None = None) -> np.ndarray:
        return lightfront_density(self.wavepacket_slice(x_minus, x3, x1))

    def wavepacket_at(self, x_minus: float, x1: float, x3: float) -> np.ndarray:
        """Total wavepacket at a single space-time point."""
        return self.wavepacket_slice(x_minus, np.array([x3]), x1)[0]

    # -- Nyquist guard ----------------------------------------------------

    def _phase_ranges(self, grid: SpacetimeGrid) -> tuple[float, float]:
        """Worst phase ranges across the quadrature domain (eta dir, p1
        dir) over the four grid corners."""
        corners = [(float(xm), float(x3))
                   for xm in (grid.x_minus[0], grid.x_minus[-1])
                   for x3 in (grid.x3[0], grid.x3[-1])]
        worst_eta = worst_p1 = 0.0
        k = self.eta_nodes.size
        j = self.p1_nodes.size
        energy = self.energy.reshape(k, j)
        p_minus = self.p_minus.reshape(k, j)
        p1 = self.p1.reshape(k, j)
        for xm, x3 in corners:
            if self.field is not None:
                cache = self._require_integrals(np.array([xm]))
                i1, i2 = cache.i1(xm), cache.i2(xm)
            else:
                i1 = i2 = 0.0
            x1 = self.x1_of_slice(xm, "follow_peak")
            phase = (-energy * xm - p_minus * x3 + p1 * x1
                     + (p1 * i1 - 0.5 * i2) / p_minus)
            along_eta = phase[:, j // 2]
            along_p1 = phase[k // 2, :]
            worst_eta = max(worst_eta,
                            float(np.max(along_eta) - np.min(along_eta)))
            worst_p1 = max(worst_p1,
                           float(np.max(along_p1) - np.min(along_p1)))
        return worst_eta, worst_p1

    def ensure_resolved(self, grid: SpacetimeGrid) -> dict:
        """Escalate quadrature sizes x2 until each dimension carries at
        least 8 nodes per 2 pi of phase variation across the grid."""
        log = {"n_eta_initial": self.n_eta, "n_p1_initial": self.n_p1}
        if not self.auto_escalate:
            log.update(n_eta=self.n_eta, n_p1=self.n_p1)
            return log
        while True:
            range_eta, range_p1 = self._phase_ranges(grid)
            need_eta = NYQUIST_NODES_PER_CYCLE * range_eta / (2.0 * np.pi)
            need_p1 = NYQUIST_NODES_PER_CYCLE * range_p1 / (2.0 * np.pi)
            grew = False
            if self.n_eta < need_eta and self.n_eta < MAX_NODES:
                self.n_eta *= 2
                grew = True
            if self.n_p1 < need_p1 and self.n_p1 < MAX_NODES:
                self.n_p1 *= 2
                grew = True
            if not grew:
                break
            self._build_nodes()
        log.update(n_eta=self.n_eta, n_p1=self.n_p1)
        return log


def partial_wavepacket(dist: ModalDistribution, x_minus: float, x1: float,
                       x3: float, eta: float,
                       field: PlaneWaveField | None = None,
                       integrals: FieldIntegrals | None = None,
                       n_p1: int = 128, spin: str = "up") -> np.ndarray:
    """Single partial wavepacket Phi(x, eta): p1 quadrature only.

    Uses the same reduced integrand and normalization as the full
    synthesis, without the eta weight.
    """
    spec = dist.spec
    p1_lo, p1_hi = dist.transverse.support()
    p1, w_p1 = gauss_legendre_nodes(p1_lo, p1_hi, n_p1)
    energy, p3, p_minus = onshell_arrays(spec, eta, np.abs(p1))
    slope = p3 / energy - spec.v_a
    coeff = (w_p1 * dist.transverse.amplitude(p1)
             / np.sqrt(np.abs(slope)) / np.sqrt(2.0 * p_minus)
             * np.sqrt(abs(1.0 - spec.v_a)) / (2.0 * np.pi))
    if field is not None:
        if integrals is None:
            integrals = FieldIntegrals(field, min(0.0, x_minus),
                                       max(0.0, x_minus))
        e_a1 = field.potential(x_minus)
        i1, i2 = integrals.i1(x_minus), integrals.i2(x_minus)
    else:
        e_a1 = i1 = i2 = 0.0
    phase = (-energy * x_minus - p_minus * x3 + p1 * x1
             + (p1 * i1 - 0.5 * i2) / p_minus)
    u = free_spinor_columns(energy, p1, p3, spin)
    spinor = u - (e_a1 / (2.0 * p_minus))[:, None] * (u @ GM_G1.T)
    return ((coeff * np.exp(1j * phase))[None, :] @ spinor.astype(complex))[0]


# -- grid evaluation -------------------------------------------------------

_WORKER: dict = {}


def _worker_rows(args):
    idx_block = args
    ctx: SynthesisContext = _WORKER["ctx"]
    grid: SpacetimeGrid = _WORKER["grid"]
    rows = []
    for i in idx_block:
        xm = float(grid.x_minus[i])
        x1 = ctx.x1_of_slice(xm, grid.x1_rule)
        rho = ctx.density_line(xm, grid.x3, x1)
        rows.append((i, x1, rho))
    return rows


def resolution_check(ctx: SynthesisContext, grid: SpacetimeGrid):
    """Raise ResolutionError when x3 steps undersample the density
    bandwidth; the x_minus direction only warns (display axis)."""
    limit = ctx.dx3_limit()
    if grid.dx3 > limit:
        raise ResolutionError(
            f"x3 step {grid.dx3:.6g} exceeds the bandwidth limit "
            f"{limit:.6g} (p_minus spread {ctx.pminus_bandwidth:.6g})")
    if grid.dxm > ctx.dxm_limit():
        warnings.warn(
            f"x_minus step {grid.dxm:.6g} undersamples the slice-to-slice "
            f"structure (limit {ctx.dxm_limit():.6g})", stacklevel=2)


def density_grid(ctx: SynthesisContext, grid: SpacetimeGrid,
                 workers: int | None = None) -> DensityField:
    """Evaluate the density on the full grid, slices in parallel.

    Output bits are independent of the worker count: every slice is an
    independent work item written by index.
    """
    resolution_check(ctx, grid)
    escalation = ctx.ensure_resolved(grid)
    if ctx.field is not None:
        lo = min(0.0, float(grid.x_minus[0])) - ctx.field.period
        hi = max(0.0, float(grid.x_minus[-1])) + ctx.field.period
        ctx._require_integrals(np.array([lo, hi]))

    n = grid.x_minus.size
    density = np.empty((n, grid.x3.size), dtype=float)
    x1s = np.empty(n, dtype=float)
    if workers is None:
        workers = os.cpu_count() or 1
    workers = max(1, min(int(workers), n))

    blocks = [list(range(i, n, workers)) for i in range(workers)]
    if workers == 1 or not hasattr(os, "fork"):
        results = [_worker_rows_serial(ctx, grid, b) for b in blocks]
    else:
        _WORKER["ctx"] = ctx
        _WORKER["grid"] = grid
        try:
            with ProcessPoolExecutor(
                    max_workers=workers,
                    mp_context=multiprocessing.get_context("fork")) as pool:
                results = list(pool.map(_worker_rows, blocks))
        finally:
            _WORKER.clear()
    for rows in results:
        for i, x1, rho in rows:
            density[i] = rho
            x1s[i] = x1

    line_norms = np.trapezoid(density, grid.x3, axis=1)
    meta = {
        "n_eta": ctx.n_eta, "n_p1": ctx.n_p1,
        "escalation": escalation,
        "pminus_bandwidth": ctx.pminus_bandwidth,
        "dx3_limit": ctx.dx3_limit(),
        "spin": ctx.spin,
        "workers": workers,
    }
    return DensityField(grid=grid, density=density, x1=x1s,
                        line_norms=line_norms, metadata=meta)


def _worker_rows_serial(ctx, grid, idx_block):
    rows = []
    for i in idx_block:
        xm = float(grid.x_minus[i])
        x1 = ctx.x1_of_slice(xm, grid.x1_rule)
        rows.append((i, x1, ctx.density_line(xm, grid.x3, x1)))
    return rows


def slice_norm_2d(ctx: SynthesisContext, x_minus: float,
                  x1_grid: np.ndarray, x3_grid: np.ndarray) -> float:
    """int rho dx1 dx3 over one slice by the trapezoid rule (the
    conserved light-front norm per unit x2 when the grids contain the
    packet)."""
    x1_grid = np.asarray(x1_grid, float)
    rows = np.empty((x1_grid.size, np.asarray(x3_grid).size))
    for i, x1 in enumerate(x1_grid):
        rows[i] = ctx.density_line(x_minus, x3_grid, float(x1))
    return float(np.trapezoid(np.trapezoid(rows, x3_grid, axis=1), x1_grid))


# -- paraxial fast path -----------------------------------------------------

def paraxial_guard(ctx: SynthesisContext):
    """Paraxial validity: <p1^2> below 1% of the evanescence bound.

    For |v_a| > 1 the bound is vacuous (no real-root boundary exists).
    """
    v_a = ctx.dist.spec.v_a
    if abs(v_a) >= 1.0:
        return
    eta0 = ctx.dist.eta_weight.center
    bound = eta0 * eta0 / (1.0 - v_a * v_a) - M * M
    mean_p1sq = ctx.dist.transverse.mean_p1_squared
    if mean_p1sq > 0.01 * bound:
        raise ParaxialInvalid(
            f"<p1^2> = {mean_p1sq:.3g} exceeds 1% of the paraxial bound "
            f"{bound:.3g}")


def paraxial_slice(ctx: SynthesisContext, x_minus: float, x3: np.ndarray,
                   x1: float | None = None) -> np.ndarray:
    """Closed-form p1 integral of the quadratic phase: complex envelope
    amplitude A(x3) with |A|^2 approximating the slice density."""
    paraxial_guard(ctx)
    dist = ctx.dist
    v_a = dist.spec.v_a
    w = dist.transverse.w
    x3 = np.asarray(x3, dtype=float)
    if ctx.field is not None:
        cache = ctx._require_integrals(np.array([x_minus]))
        i1, i2 = cache.i1(x_minus), cache.i2(x_minus)
    else:
        i1 = i2 = 0.0
    if x1 is None:
        x1 = ctx.x1_of_slice(x_minus, "follow_peak")

    e0 = ctx.axis_energy[:, None]
    p30 = ctx.axis_p3[:, None]
    pm0 = ctx.axis_p_minus[:, None]
    # the bispinor factor V/sqrt(2 p_minus) carries unit density norm
    # (Vbar gamma_minus V = 2 p_minus), so it drops out of |A|^2
    coeff = ctx.axis_coeff[:, None]
    x0 = x_minus + x3[None, :]
    s0 = -e0 * x_minus - pm0 * x3[None, :] - 0.5 * i2 / pm0
    b = x1 + i1 / pm0
    p32 = 1.0 / (2.0 * (v_a * e0 - p30))
    gam = p32 * (x3[None, :] - v_a * x0 - (1.0 - v_a) * 0.5 * i2 / (pm0 * pm0))
    a = 0.25 * w * w - 1j * gam
    gauss = (np.sqrt(w / np.sqrt(2.0 * np.pi)) * np.sqrt(np.pi / a)
             * np.exp(-b * b / (4.0 * a)))
    return np.sum(coeff * np.exp(1j * s0) * gauss, axis=0)


def paraxial_density(ctx: SynthesisContext, x_minus: float, x3: np.ndarray,
                     x1: float | None = None) -> np.ndarray:
    amp = paraxial_slice(ctx, x_minus, x3, x1)
    return np.abs(amp) ** 2


# -- peak location ----------------------------------------------------------

def peak_locate(x3: np.ndarray, density_row: np.ndarray,
                min_contrast: float = 1.5) -> float:
    """x3 of the slice maximum, refined by a 3-point parabola.

    Raises FlatSlice when the max/median contrast drops below
    ``min_contrast`` (no distinguishable peak).
    """
    rho = np.asarray(density_row, dtype=float)
    x3 = np.asarray(x3, dtype=float)
    peak = float(np.max(rho))
    if peak <= 0.0:
        raise FlatSlice("slice density vanishes")
    med = float(np.median(rho))
    contrast = np.inf if med <= 0.0 else peak / med
    if contrast < min_contrast:
        raise FlatSlice(f"max/median contrast {contrast:.3f} < {min_contrast}")
    i = int(np.argmax(rho))
    if i == 0 or i == rho.size - 1:
        return float(x3[i])
    y0, y1, y2 = rho[i - 1], rho[i], rho[i + 1]
    denom = y0 - 2.0 * y1 + y2
    shift = 0.0 if denom == 0.0 else 0.5 * (y0 - y2) / denom
    return float(x3[i] + shift * (x3[1] - x3[0]))
