"""On-shell and dressed-shell momentum geometry.

A wavepacket mode is labeled by (eta, p_perp) with eta = p0 - v_a p3.
Eliminating p0 through the mass shell leaves a quadratic for p3,

    (1 - v_a^2) p3^2 - 2 eta v_a p3 - (eta^2 - m^2 - pperp^2) = 0,

whose root selection defines the branch:

* |v_a| <= 1 ("negative"): the root with p3 < eta v_a / (1 - v_a^2),
  i.e. longitudinal momenta negative in the frame co-moving at v_a;
  real only where eta^2 >= (1 - v_a^2)(m^2 + pperp^2).
* |v_a| >  1 ("positive"): exactly one root has positive energy
  (the product of the two root energies is negative); that root is
  selected and is real for every eta, pperp.
* |v_a| =  1: the quadratic degenerates to a single finite branch
  p3 = -sign(v_a) (eta^2 - m^2 - pperp^2) / (2 eta).

Both one-sided limits v_a -> +1(-) and v_a -> -1(+) reproduce the
degenerate branch continuously.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import M, FourVector, N_PLANE
from .errors import DesignerSingular, EvanescentMode, SingularSlice

SINGULAR_TOL = 1e-9


def reference_kinematics(p_minus: float, mass: float = M) -> tuple[float, float]:
    """(P3, E) of the on-axis momentum with light-front component p_minus."""
    if p_minus <= 0:
        raise ValueError("p_minus must be positive")
    p3 = 0.5 * (mass * mass / p_minus - p_minus)
    energy = 0.5 * (mass * mass / p_minus + p_minus)
    return p3, energy


def eta_for(v_a: float, p_minus: float, mass: float = M) -> float:
    """eta = E - v_a P3 at the reference on-axis momentum."""
    p3, energy = reference_kinematics(p_minus, mass)
    return energy - v_a * p3


@dataclass(frozen=True)
class CorrelationSpec:
    """Designed correlation: velocity v_a, branch choice and reference p_minus."""

    v_a: float
    p_minus_ref: float = 3.0
    branch: str = "auto"
    target_vf_star: float | None = None
    target_e_xi_star: float | None = None

    def __post_init__(self):
        if self.branch not in ("auto", "negative", "positive"):
            raise ValueError(f"unknown branch {self.branch!r}")
        if self.p_minus_ref <= 0:
            raise ValueError("p_minus_ref must be positive")

    @classmethod
    def from_target(cls, vf_star: float, e_xi_star: float,
                    p_minus: float) -> "CorrelationSpec":
        v_a = design_va(vf_star, e_xi_star, p_minus)
        return cls(v_a=v_a, p_minus_ref=p_minus,
                   target_vf_star=vf_star, target_e_xi_star=e_xi_star)

    @property
    def resolved_branch(self) -> str:
        if self.branch != "auto":
            return self.branch
        return "negative" if abs(self.v_a) <= 1.0 else "positive"

    @property
    def eta_ref(self) -> float:
        return eta_for(self.v_a, self.p_minus_ref)


def _axis_radicand(v_a: float, eta):
    """eta^2 - (1 - v_a^2) m^2; zero marks the singular slice for |v_a|<1."""
    return eta * eta - (1.0 - v_a * v_a) * M * M


def longitudinal_momentum(spec: CorrelationSpec, eta, p_perp):
    """p3(eta, pperp) on the branch selected by ``spec``.  Vectorized.

    Raises EvanescentMode when any requested mode has no real (or no
    positive-energy) solution, SingularSlice when v_a equals p3/E on
    axis at this eta.
    """
    v_a = spec.v_a
    eta = np.asarray(eta, dtype=float)
    p_perp = np.asarray(p_perp, dtype=float)
    eta_b, pp_b = np.broadcast_arrays(eta, p_perp)
    scalar = eta_b.ndim == 0
    eta_b = np.atleast_1d(eta_b)
    pp_b = np.atleast_1d(pp_b)
    branch = spec.resolved_branch

    one_m_va2 = 1.0 - v_a * v_a
    d = eta_b * eta_b - M * M - pp_b * pp_b

    if abs(abs(v_a) - 1.0) <= 1e-15:
        # single finite branch; exclude co-propagating (p3 >= 0) content
        if np.any(eta_b <= 0.0):
            raise EvanescentMode("eta must be positive at |v_a| = 1")
        p3 = -np.sign(v_a) * d / (2.0 * eta_b)
        if np.any(p3 >= 0.0):
            raise EvanescentMode(
                "mode with p3 >= 0 at |v_a| = 1 (co-propagating content)")
        return float(p3[0]) if scalar else p3.reshape(np.broadcast_shapes(
            np.shape(eta), np.shape(p_perp)))

    if abs(v_a) < 1.0:
        if np.any(eta_b <= 0.0):
            raise EvanescentMode("eta must be positive for |v_a| < 1")
        # near the axis threshold eta^2 = (1 - v_a^2) m^2 the slope p3/E
        # reaches v_a; |p3/E - v_a| = sqrt(ax) (1-v_a^2)/eta maps the 1e-9
        # velocity tolerance onto the radicand, floored at float noise
        ax = _axis_radicand(v_a, eta_b)
        scale = eta_b * eta_b + one_m_va2 * M * M
        thresh = np.maximum((SINGULAR_TOL * eta_b / one_m_va2) ** 2,
                            64.0 * np.finfo(float).eps * scale)
        # the on-axis mode itself is fine at the threshold; only requests
        # for transverse content hit the singular slice
        hit = (np.abs(ax) <= thresh) & (pp_b > 0.0)
        if np.any(hit):
            raise SingularSlice(
                f"v_a = {v_a} equals p3/E on axis at eta = "
                f"{float(eta_b[hit][0])}")

    raw = eta_b * eta_b * v_a * v_a + one_m_va2 * d
    if np.any(raw < 0.0):
        n_bad = int(np.count_nonzero(raw < 0.0))
        raise EvanescentMode(
            f"{n_bad} mode(s) have imaginary longitudinal momentum "
            f"(v_a = {v_a})")
    root = np.sqrt(raw)

    lo = (eta_b * v_a - root) / one_m_va2
    hi = (eta_b * v_a + root) / one_m_va2
    if abs(v_a) < 1.0:
        p3 = lo if branch == "negative" else hi
    else:
        # exactly one root has E = eta + v_a p3 > 0
        e_lo = eta_b + v_a * lo
        p3 = np.where(e_lo > 0.0, lo, hi)
        if branch == "negative":
            raise EvanescentMode(
                "the negative branch has no positive-energy modes for |v_a| > 1")
        if np.any(eta_b + v_a * p3 <= 0.0):
            raise EvanescentMode("no positive-energy root (check eta sign)")

    out = p3.reshape(np.broadcast_shapes(np.shape(eta), np.shape(p_perp)))
    return float(p3[0]) if scalar else out


def onshell_arrays(spec: CorrelationSpec, eta, p_perp):
    """(E, p3, p_minus) arrays for the selected branch."""
    p3 = longitudinal_momentum(spec, eta, p_perp)
    eta_b = np.broadcast_to(np.asarray(eta, dtype=float), np.shape(p3))
    energy = eta_b + spec.v_a * p3
    return energy, p3, energy - p3


@dataclass(frozen=True)
class OnShellMomentum:
    """A single mode on the correlation curve."""

    eta: float
    p1: float
    p2: float
    p3: float
    energy: float

    @property
    def p_minus(self) -> float:
        return self.energy - self.p3

    def fourvector(self) -> FourVector:
        return FourVector(self.energy, self.p1, self.p2, self.p3)


def onshell_momentum(spec: CorrelationSpec, eta: float, p1: float,
                     p2: float = 0.0) -> OnShellMomentum:
    p_perp = float(np.hypot(p1, p2))
    p3 = float(longitudinal_momentum(spec, eta, p_perp))
    return OnShellMomentum(eta=eta, p1=p1, p2=p2, p3=p3,
                           energy=eta + spec.v_a * p3)


@dataclass(frozen=True)
class DressedMomentum:
    """Plane-wave-averaged momentum q = p + [e^2 xi*^2 / (4 p_minus)] n."""

    q: FourVector
    source: FourVector
    e_xi_star: float

    @property
    def q_minus(self) -> float:
        # identical to the source p_minus: the shift is along the null
        # direction n, whose minus-component vanishes
        return self.source.minus


def dressed_momentum(p: FourVector, e_xi_star: float) -> DressedMomentum:
    """Dress an on-shell momentum; q_minus = p_minus exactly and
    q0^2 - |q|^2 = m^2 + e^2 xi*^2 / 2."""
    if p.minus <= 0.0:
        raise ValueError(f"dressed_momentum requires p_minus > 0, got {p.minus}")
    shift = e_xi_star * e_xi_star / (4.0 * p.minus)
    return DressedMomentum(q=p + shift * N_PLANE, source=p, e_xi_star=e_xi_star)


def dressed_arrays(energy, p3, e_xi_star: float):
    """(q0, q3, q_minus) for arrays of on-shell (E, p3)."""
    p_minus = energy - p3
    shift = e_xi_star * e_xi_star / (4.0 * p_minus)
    return energy + shift, p3 + shift, p_minus


def lambda_surface(eta: float, q_minus: float, v_a: float, vf_star: float,
                   e_xi_star: float) -> float:
    """Out-of-field correlation plane re-expressed in dressed momenta."""
    if v_a == 1.0:
        raise ValueError("lambda_surface is undefined at v_a = 1")
    if q_minus <= 0:
        raise ValueError("q_minus must be positive")
    c = 0.25 * e_xi_star * e_xi_star
    return ((1.0 - vf_star) / (1.0 - v_a)) * eta \
        - ((v_a - vf_star) / (1.0 - v_a)) * q_minus \
        + (1.0 - vf_star) * c / q_minus


def lambda_slope_q3(q_minus: float, v_a: float, vf_star: float,
                    e_xi_star: float) -> float:
    """d lambda / d q3 at fixed q0; zero when v_a is designed correctly."""
    c = 0.25 * e_xi_star * e_xi_star
    return (v_a - vf_star) / (1.0 - v_a) + (1.0 - vf_star) * c / (q_minus * q_minus)


def design_va(vf_star: float, e_xi_star: float, p_minus: float) -> float:
    """Out-of-field velocity producing peak velocity vf_star at strength
    e xi*; X = (e xi*)^2 / (4 P_minus^2) is evaluated at the reference
    p_minus (first approximation, not iterated)."""
    x = (e_xi_star * e_xi_star) / (4.0 * p_minus * p_minus)
    den = 1.0 - (1.0 - vf_star) * x
    if abs(den) < 1e-12:
        raise DesignerSingular(
            f"designer denominator vanishes (vf_star={vf_star}, X={x})")
    return (vf_star - (1.0 - vf_star) * x) / den


def peak_velocity_infield(v_a: float, e_xi: float, p_minus: float) -> float:
    """Local peak velocity at envelope strength e xi (exact inverse of
    the designer map)."""
    if v_a == 1.0:
        return 1.0  # non-oscillatory special case, any field strength
    y = (e_xi * e_xi) / (4.0 * p_minus * p_minus)
    den = 1.0 + (1.0 - v_a) * y
    if abs(den) < 1e-12:
        raise DesignerSingular(f"peak velocity diverges (v_a={v_a}, Y={y})")
    return (v_a + (1.0 - v_a) * y) / den


def drift_velocity_1d(p3_over_e: float, e_xi: float, p_minus: float) -> float:
    """Cycle-averaged drift velocity of a planar (no transverse spread)
    wavepacket at envelope strength e xi."""
    y = (e_xi * e_xi) / (4.0 * p_minus * p_minus)
    return (p3_over_e + (1.0 - p3_over_e) * y) / (1.0 + (1.0 - p3_over_e) * y)


def slope_check(spec: CorrelationSpec, eta0: float, e_xi_star: float,
                delta: float = 1e-2) -> tuple[float, float]:
    """Secant slopes along the fixed-eta correlation curve.

    free slope:    dE/dp3 between pperp = 0 and pperp = delta (equals
                   v_a identically on the curve);
    dressed slope: dq0/dq3 at strength e xi* (approximates the designed
                   vf_star near the expectation point).
    """
    e0, p30, pm0 = onshell_arrays(spec, eta0, 0.0)
    e1, p31, pm1 = onshell_arrays(spec, eta0, delta)
    free = (e1 - e0) / (p31 - p30)
    q0a, q3a, _ = dressed_arrays(e0, p30, e_xi_star)
    q0b, q3b, _ = dressed_arrays(e1, p31, e_xi_star)
    dressed = (q0b - q0a) / (q3b - q3a)
    return float(free), float(dressed)


@dataclass(frozen=True)
class GuardDiagnostic:
    """Result of the velocity-singularity screen."""

    singular_slice: bool
    branch_boundary: bool
    evanescent_on_axis: bool
    p3_over_e: float | None

    @property
    def clean(self) -> bool:
        return not (self.singular_slice or self.branch_boundary
                    or self.evanescent_on_axis)


def singularity_guard(v_a: float, eta: float,
                      tol: float = SINGULAR_TOL) -> GuardDiagnostic:
    """Flag v_a = p3/E on axis at this eta, and |v_a| = 1 branch switching.

    Diagnostic only: never raises.
    """
    boundary = abs(abs(v_a) - 1.0) <= tol
    if boundary:
        return GuardDiagnostic(False, True, False, None)
    if abs(v_a) < 1.0:
        one_m_va2 = 1.0 - v_a * v_a
        ax = _axis_radicand(v_a, eta)
        thresh = max((tol * eta / one_m_va2) ** 2,
                     64.0 * np.finfo(float).eps * (eta * eta + one_m_va2))
        if abs(ax) <= thresh and eta > 0.0:
            return GuardDiagnostic(True, False, False, float(v_a))
        if ax <= 0.0 or eta <= 0.0:
            return GuardDiagnostic(False, False, True, None)
        p30 = (eta * v_a - np.sqrt(ax)) / one_m_va2
    else:
        spec = CorrelationSpec(v_a=v_a, branch="positive")
        try:
            p30 = float(longitudinal_momentum(spec, eta, 0.0))
        except EvanescentMode:
            return GuardDiagnostic(False, False, True, None)
    e0 = eta + v_a * p30
    r0 = p30 / e0
    return GuardDiagnostic(abs(r0 - v_a) <= tol, False, False, float(r0))
