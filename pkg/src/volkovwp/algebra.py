"""Four-vector kinematics and Dirac bispinor algebra.

Conventions (fixed for the whole package):

* natural units hbar = c = 1, lepton mass m = 1; all lengths in 1/m,
  all frequencies in m
* mostly-minus metric g = diag(+, -, -, -)
* Dirac (standard) representation of the gamma matrices
* light-front matrix ``gamma_minus = gamma0 - gamma3``; the sesquilinear
  density is psi^dag gamma0 gamma_minus psi, which is positive
  semidefinite because gamma0 gamma_minus = 1 - gamma0 gamma3 has
  eigenvalues {0, 2, 0, 2}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

M = 1.0  # lepton mass in natural units

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])

_PAULI1 = np.array([[0, 1], [1, 0]], dtype=complex)
_PAULI2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
_PAULI3 = np.array([[1, 0], [0, -1]], dtype=complex)
_ZERO2 = np.zeros((2, 2), dtype=complex)
_EYE2 = np.eye(2, dtype=complex)

GAMMA0 = np.block([[_EYE2, _ZERO2], [_ZERO2, -_EYE2]])
GAMMA1 = np.block([[_ZERO2, _PAULI1], [-_PAULI1, _ZERO2]])
GAMMA2 = np.block([[_ZERO2, _PAULI2], [-_PAULI2, _ZERO2]])
GAMMA3 = np.block([[_ZERO2, _PAULI3], [-_PAULI3, _ZERO2]])
GAMMAS = (GAMMA0, GAMMA1, GAMMA2, GAMMA3)

GAMMA_MINUS = GAMMA0 - GAMMA3
# gamma_minus gamma1 enters the field-dressed bispinor; both factors are
# real in this representation.
GM_G1 = np.real(GAMMA_MINUS @ GAMMA1)
# gamma0 gamma_minus is the (real, symmetric, PSD) light-front form.
LF_FORM = np.real(GAMMA0 @ GAMMA_MINUS)


@dataclass(frozen=True)
class FourVector:
    """Contravariant four-vector (t, x1, x2, x3)."""

    t: float
    x1: float
    x2: float
    x3: float

    @property
    def minus(self) -> float:
        """Light-front component t - x3."""
        return self.t - self.x3

    @property
    def perp(self) -> float:
        return float(np.hypot(self.x1, self.x2))

    def components(self) -> tuple[float, float, float, float]:
        return (self.t, self.x1, self.x2, self.x3)

    def __add__(self, other: "FourVector") -> "FourVector":
        return FourVector(self.t + other.t, self.x1 + other.x1,
                          self.x2 + other.x2, self.x3 + other.x3)

    def __sub__(self, other: "FourVector") -> "FourVector":
        return FourVector(self.t - other.t, self.x1 - other.x1,
                          self.x2 - other.x2, self.x3 - other.x3)

    def __mul__(self, s: float) -> "FourVector":
        return FourVector(s * self.t, s * self.x1, s * self.x2, s * self.x3)

    __rmul__ = __mul__


#: null propagation direction of the plane wave
N_PLANE = FourVector(1.0, 0.0, 0.0, 1.0)


def minkowski_dot(a: FourVector, b: FourVector) -> float:
    """a.b under the mostly-minus metric."""
    return a.t * b.t - a.x1 * b.x1 - a.x2 * b.x2 - a.x3 * b.x3


def onshell_energy(p1, p2, p3, mass: float = M):
    return np.sqrt(mass * mass + p1 * p1 + p2 * p2 + p3 * p3)


def onshell_fourvector(p1: float, p2: float, p3: float,
                       mass: float = M) -> FourVector:
    return FourVector(float(onshell_energy(p1, p2, p3, mass)), p1, p2, p3)


def free_spinor(p: FourVector, spin: str = "up") -> np.ndarray:
    """Positive-energy free Dirac spinor u(p), normalized to
    ubar gamma_minus u = 2 p_minus.

    ``p`` must be on shell with p.t = E > 0; light-front normalization
    requires p_minus > 0.
    """
    if p.minus <= 0.0:
        raise ValueError(f"free_spinor requires p_minus > 0, got {p.minus}")
    if p.t <= 0.0:
        raise ValueError("free_spinor requires a positive-energy momentum")
    chi = np.array([1.0, 0.0], dtype=complex) if spin == "up" \
        else np.array([0.0, 1.0], dtype=complex)
    if spin not in ("up", "down"):
        raise ValueError(f"unknown spin label {spin!r}")
    e_plus_m = p.t + M
    sigma_dot_p = p.x1 * _PAULI1 + p.x2 * _PAULI2 + p.x3 * _PAULI3
    upper = np.sqrt(e_plus_m) * chi
    lower = (sigma_dot_p @ chi) / np.sqrt(e_plus_m)
    return np.concatenate([upper, lower])


def free_spinor_columns(energy, p1, p3, spin: str = "up") -> np.ndarray:
    """Vectorized u(p) for p2 = 0: returns a real (n, 4) array.

    With p2 = 0 and the standard representation all four components are
    real, which the synthesis hot loop exploits.
    """
    energy = np.asarray(energy, dtype=float)
    p1 = np.broadcast_to(np.asarray(p1, dtype=float), energy.shape)
    p3 = np.broadcast_to(np.asarray(p3, dtype=float), energy.shape)
    root = np.sqrt(energy + M)
    u = np.empty(energy.shape + (4,), dtype=float)
    if spin == "up":
        u[..., 0] = root
        u[..., 1] = 0.0
        u[..., 2] = p3 / root
        u[..., 3] = p1 / root
    elif spin == "down":
        u[..., 0] = 0.0
        u[..., 1] = root
        u[..., 2] = p1 / root
        u[..., 3] = -p3 / root
    else:
        raise ValueError(f"unknown spin label {spin!r}")
    return u


def dirac_adjoint(psi: np.ndarray) -> np.ndarray:
    """psi^dag gamma0 for a single spinor or a stack (..., 4)."""
    return np.conjugate(psi) @ GAMMA0


def dressed_bispinor(u: np.ndarray, p_minus: float, e_a1: float) -> np.ndarray:
    """Field-dressed bispinor [1 - gamma_minus gamma1 eA1 / (2 p_minus)] u.

    ``e_a1`` is the product of the charge and the local vector potential.
    Nilpotency of gamma_minus makes the light-front norm invariant:
    Vbar gamma_minus V = ubar gamma_minus u for any eA1.
    """
    if p_minus <= 0.0:
        raise ValueError(f"dressed_bispinor requires p_minus > 0, got {p_minus}")
    return u - (e_a1 / (2.0 * p_minus)) * (GM_G1 @ u)


def lightfront_density(psi: np.ndarray) -> float | np.ndarray:
    """psi^dag gamma0 gamma_minus psi, real and >= 0.

    Accepts a single 4-spinor or a stack shaped (..., 4).
    """
    psi = np.asarray(psi)
    tmp = psi @ LF_FORM.T
    dens = np.real(np.einsum("...c,...c->...", np.conjugate(psi), tmp))
    return float(dens) if dens.ndim == 0 else dens


def dirac_residual(p: FourVector, u: np.ndarray) -> float:
    """Max-norm of (gamma.p - m) u; zero for an on-shell solution."""
    slash = p.t * GAMMA0 - p.x1 * GAMMA1 - p.x2 * GAMMA2 - p.x3 * GAMMA3
    return float(np.max(np.abs(slash @ u - M * u)))
