"""Reduced density matrix of the particle for a Gaussian initial packet.

Momentum representation (exact for all t):

    rho(p, p', t) = rho(p, p', 0) exp[-Gamma(t) (p-p')^2 + i Phi(t) (p^2 - p'^2)]

and the closed-form coordinate representation obtained from its double
Fourier transform, expressed with the dimensionless

    Z = 1 + 2 Gamma / d^2 + Phi^2 / d^4,        d = delta_r / sqrt(3),

so that the packet width obeys delta_r(t)^2 = 3 d^2 Z.

All quantities in internal units: momenta in m0 c, positions in hbar/(m0 c),
hbar = 1. The 3-D matrices factorize into identical per-axis 1-D pieces; 1-D
mode is primary (it is what the figure data uses), 3-D is the product of the
per-axis factors. Grids are always chosen by the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .decoherence import DecoherenceFactors
from .params import DomainError, ModelParams


@dataclass(frozen=True)
class GaussianPacket:
    """Initial Gaussian wave packet: mean momentum p0 (m0 c), width delta_p
    (m0 c), initial position r0 (hbar/m0 c), in dims = 1 or 3 dimensions.

    delta_r delta_p = 3/2 (hbar = 1) is built in; d = delta_r/sqrt(3) is the
    per-axis Gaussian scale.
    """

    p0: tuple[float, ...]
    delta_p: float
    r0: tuple[float, ...]
    dims: int = 1

    def __post_init__(self):
        if self.dims not in (1, 3):
            raise DomainError("dims must be 1 or 3")
        if self.delta_p <= 0.0:
            raise DomainError("delta_p must be positive")
        p0 = tuple(float(x) for x in np.atleast_1d(self.p0))
        r0 = tuple(float(x) for x in np.atleast_1d(self.r0))
        if len(p0) != self.dims or len(r0) != self.dims:
            raise DomainError(f"p0 and r0 must have {self.dims} components")
        object.__setattr__(self, "p0", p0)
        object.__setattr__(self, "r0", r0)

    @classmethod
    def from_params(cls, params: ModelParams, dims: int = 1) -> "GaussianPacket":
        r0 = params.r0_internal()
        if dims == 1:
            return cls(p0=(params.p0[0],), delta_p=params.delta_p, r0=(r0[0],), dims=1)
        return cls(p0=params.p0, delta_p=params.delta_p, r0=r0, dims=3)

    @property
    def norm(self) -> float:
        """N = (sqrt(3)/(sqrt(2 pi) delta_p))^dims, the unit-trace normalization."""
        return (math.sqrt(3.0) / (math.sqrt(2.0 * math.pi) * self.delta_p)) ** self.dims

    @property
    def delta_r(self) -> float:
        return 1.5 / self.delta_p

    @property
    def d(self) -> float:
        return self.delta_r / math.sqrt(3.0)


@dataclass(frozen=True)
class ComplexMatrixElement:
    """One density-matrix element with its provenance."""

    value: complex
    rep: str                       # "momentum" | "position"
    args: tuple                    # the (p, p') or (q, q') pair
    t: float                       # Omega^-1 units


def _vec(x, dims: int) -> np.ndarray:
    v = np.atleast_1d(np.asarray(x, dtype=float))
    if v.shape != (dims,):
        raise DomainError(f"expected {dims}-component vector, got shape {v.shape}")
    return v


def rho_p_initial(p, p_prime, packet: GaussianPacket) -> complex:
    """Initial packet element N exp{-3[(p-p0)^2 + (p'-p0)^2]/(4 dp^2) - i r0.(p-p')}."""
    p = _vec(p, packet.dims)
    pp = _vec(p_prime, packet.dims)
    p0 = np.asarray(packet.p0)
    r0 = np.asarray(packet.r0)
    gauss = -3.0 * (np.sum((p - p0) ** 2) + np.sum((pp - p0) ** 2)) / (4.0 * packet.delta_p**2)
    phase = -np.dot(r0, p - pp)
    return packet.norm * complex(math.exp(gauss) * math.cos(phase),
                                 math.exp(gauss) * math.sin(phase))


def rho_p(p, p_prime, packet: GaussianPacket, factors: DecoherenceFactors) -> complex:
    """Momentum-space element at the time carried by `factors`.

    The diagonal (p = p') is constant in time: momentum is the pointer basis.
    """
    p = _vec(p, packet.dims)
    pp = _vec(p_prime, packet.dims)
    dp2 = float(np.sum((p - pp) ** 2))
    e2 = float(np.sum(p**2) - np.sum(pp**2))
    env = -factors.gamma * dp2
    return rho_p_initial(p, p_prime, packet) * complex(
        math.exp(env) * math.cos(factors.phi * e2),
        math.exp(env) * math.sin(factors.phi * e2),
    )


def rho_r_initial(q, q_prime, packet: GaussianPacket) -> complex:
    """Initial coordinate element, q = r - r0 the displacement:

    (N dp^dims / dr^dims) exp[i p0.(q-q') - 3(q^2 + q'^2)/(4 dr^2)].
    """
    q = _vec(q, packet.dims)
    qp = _vec(q_prime, packet.dims)
    p0 = np.asarray(packet.p0)
    dr = packet.delta_r
    pref = packet.norm * (packet.delta_p / dr) ** packet.dims
    gauss = -3.0 * (np.sum(q**2) + np.sum(qp**2)) / (4.0 * dr**2)
    phase = float(np.dot(p0, q - qp))
    return pref * complex(math.exp(gauss) * math.cos(phase),
                          math.exp(gauss) * math.sin(phase))


def z_factor(packet: GaussianPacket, factors: DecoherenceFactors) -> float:
    """Z = 1 + 2 Gamma / d^2 + Phi^2 / d^4; delta_r(t)^2 = 3 d^2 Z."""
    d2 = packet.d ** 2
    return 1.0 + 2.0 * factors.gamma / d2 + (factors.phi / d2) ** 2


def width_t(packet: GaussianPacket, factors: DecoherenceFactors) -> float:
    """Packet spatial width delta_r(t) = sqrt(3 d^2 Z)."""
    return math.sqrt(3.0) * packet.d * math.sqrt(z_factor(packet, factors))


def mean_displacement_vec(packet: GaussianPacket, factors: DecoherenceFactors) -> np.ndarray:
    """<q>_t = -2 p0 Phi(t) per component (hbar = 1)."""
    return -2.0 * factors.phi * np.asarray(packet.p0)


def rho_r(q, q_prime, packet: GaussianPacket, factors: DecoherenceFactors) -> complex:
    """Coordinate-space element at the time carried by `factors` (q displacements).

    Closed form of the double Fourier transform: the t = 0 shape with
    delta_r -> delta_r(t), center -> <q>_t, the drift phase rescaled by
    (delta_r^2 + 6 Gamma)/delta_r(t)^2, and the decoherence/phase exponent
    (dp^2/delta_r(t)^2)[-Gamma (q-q')^2 - i Phi (q^2 - q'^2)].
    """
    q = _vec(q, packet.dims)
    qp = _vec(q_prime, packet.dims)
    p0 = np.asarray(packet.p0)
    dr2 = packet.delta_r**2
    wt = width_t(packet, factors)
    wt2 = wt * wt
    qc = mean_displacement_vec(packet, factors)

    pref = packet.norm * (packet.delta_p / wt) ** packet.dims
    drift_phase = (dr2 + 6.0 * factors.gamma) / wt2 * float(np.dot(p0, q - qp))
    gauss = -3.0 * (np.sum((q - qc) ** 2) + np.sum((qp - qc) ** 2)) / (4.0 * wt2)
    dq2 = float(np.sum((q - qp) ** 2))
    q2diff = float(np.sum(q**2) - np.sum(qp**2))
    scale = packet.delta_p**2 / wt2
    env = gauss - scale * factors.gamma * dq2
    phase = drift_phase - scale * factors.phi * q2diff
    return pref * complex(math.exp(env) * math.cos(phase), math.exp(env) * math.sin(phase))


def element(rep: str, a, b, packet: GaussianPacket,
            factors: DecoherenceFactors) -> ComplexMatrixElement:
    """Tagged element in either representation."""
    if rep == "momentum":
        val = rho_p(a, b, packet, factors)
    elif rep == "position":
        val = rho_r(a, b, packet, factors)
    else:
        raise DomainError(f"unknown representation {rep!r}")
    return ComplexMatrixElement(value=val, rep=rep, args=(a, b), t=factors.t)


# ---------------------------------------------------------------------------
# vectorized 1-D grids (the figure and oracle workhorses)
# ---------------------------------------------------------------------------

def rho_p_matrix(p_grid: np.ndarray, packet: GaussianPacket,
                 factors: DecoherenceFactors) -> np.ndarray:
    """Full (N, N) momentum matrix rho(p_i, p_j) on a 1-D grid."""
    if packet.dims != 1:
        raise DomainError("rho_p_matrix is 1-D only")
    p = np.asarray(p_grid, dtype=float)
    pi = p[:, None]
    pj = p[None, :]
    p0 = packet.p0[0]
    r0 = packet.r0[0]
    expo = (
        -3.0 * ((pi - p0) ** 2 + (pj - p0) ** 2) / (4.0 * packet.delta_p**2)
        - factors.gamma * (pi - pj) ** 2
    )
    phase = factors.phi * (pi**2 - pj**2) - r0 * (pi - pj)
    return packet.norm * np.exp(expo + 1j * phase)


def rho_r_matrix(q_grid: np.ndarray, packet: GaussianPacket,
                 factors: DecoherenceFactors) -> np.ndarray:
    """Full (N, N) coordinate matrix rho(q_i, q_j) on a 1-D displacement grid."""
    if packet.dims != 1:
        raise DomainError("rho_r_matrix is 1-D only")
    q = np.asarray(q_grid, dtype=float)
    qi = q[:, None]
    qj = q[None, :]
    p0 = packet.p0[0]
    dr2 = packet.delta_r**2
    wt2 = width_t(packet, factors) ** 2
    qc = -2.0 * factors.phi * p0
    scale = packet.delta_p**2 / wt2
    pref = packet.norm * packet.delta_p / math.sqrt(wt2)
    expo = (
        -3.0 * ((qi - qc) ** 2 + (qj - qc) ** 2) / (4.0 * wt2)
        - scale * factors.gamma * (qi - qj) ** 2
    )
    phase = (dr2 + 6.0 * factors.gamma) / wt2 * p0 * (qi - qj) - scale * factors.phi * (
        qi**2 - qj**2
    )
    return pref * np.exp(expo + 1j * phase)


def grid_trace(grid: np.ndarray, matrix: np.ndarray) -> float:
    """Trapezoid integral of the matrix diagonal over the grid."""
    return float(np.trapezoid(np.real(np.diagonal(matrix)), np.asarray(grid)))
