"""Two-dimensional coin operators for the discrete-time quantum walk.

The general coin is a 2x2 SU(2)-type unitary parameterized by three angles
(xi, theta, zeta),

    [[ e^{+i xi}  cos(theta),  e^{+i zeta} sin(theta) ],
     [ e^{-i zeta} sin(theta), -e^{-i xi}  cos(theta) ]],

of which the real symmetric single-angle family (xi = zeta = 0) and the
Hadamard coin (theta = pi/4) are special cases.  For walks started at the
origin only eta = xi - zeta and theta affect the measured position
distribution; see the gauge-invariance tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "CoinAngles",
    "CoinOperator",
    "make_su2_coin",
    "make_theta_coin",
    "sample_random_phase_coin",
]

TWO_PI = 2.0 * math.pi

#: per-entry tolerance for the unitarity check C C^dagger = I
UNITARITY_TOL = 1e-12


@dataclass(frozen=True)
class CoinAngles:
    """Angle triple (xi, theta, zeta) in radians.

    Angles are normalized on construction into the half-open ranges
    xi, zeta in [0, 2*pi) and theta in [0, pi); out-of-range inputs are
    reduced modulo the range rather than rejected, so parameter sweeps may
    generate values freely.
    """

    xi: float
    theta: float
    zeta: float

    def __post_init__(self):
        for name in ("xi", "theta", "zeta"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"coin angle {name!r} must be finite, got {v!r}")
        object.__setattr__(self, "xi", float(self.xi) % TWO_PI)
        object.__setattr__(self, "theta", float(self.theta) % math.pi)
        object.__setattr__(self, "zeta", float(self.zeta) % TWO_PI)

    @property
    def eta(self) -> float:
        """Phase difference xi - zeta, reduced to [0, 2*pi)."""
        return (self.xi - self.zeta) % TWO_PI


@dataclass(frozen=True)
class CoinOperator:
    """A 2x2 unitary acting on the coin (spin) degree of freedom.

    The wrapped matrix is validated for unitarity and unit-modulus
    determinant at construction (tolerance ``UNITARITY_TOL`` per entry).
    """

    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"coin matrix must be 2x2, got shape {m.shape}")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        dev = np.max(np.abs(m @ m.conj().T - np.eye(2)))
        if dev > UNITARITY_TOL:
            raise ValueError(f"coin matrix is not unitary (deviation {dev:.3e})")
        det_err = abs(abs(np.linalg.det(m)) - 1.0)
        if det_err > UNITARITY_TOL:
            raise ValueError(f"coin determinant modulus deviates by {det_err:.3e}")

    def entry(self, i: int, j: int) -> complex:
        return complex(self.matrix[i, j])


def make_su2_coin(angles: CoinAngles) -> CoinOperator:
    """Build the three-angle coin operator for the given ``CoinAngles``.

    Returns the matrix
    ``[[e^{i xi} cos(theta), e^{i zeta} sin(theta)],
    [e^{-i zeta} sin(theta), -e^{-i xi} cos(theta)]]``.
    """
    ct, st = math.cos(angles.theta), math.sin(angles.theta)
    m = np.array(
        [
            [np.exp(1j * angles.xi) * ct, np.exp(1j * angles.zeta) * st],
            [np.exp(-1j * angles.zeta) * st, -np.exp(-1j * angles.xi) * ct],
        ],
        dtype=complex,
    )
    return CoinOperator(m)


def make_theta_coin(theta: float) -> CoinOperator:
    """Build the real symmetric single-angle coin [[c, s], [s, -c]].

    Equals ``make_su2_coin(CoinAngles(0, theta, 0))``; theta = pi/4 gives the
    Hadamard coin, theta = 0 the sigma_z-like coin and theta -> pi/2 the
    sigma_x-like coin.
    """
    return make_su2_coin(CoinAngles(0.0, theta, 0.0))


def sample_random_phase_coin(
    theta: float, p_tilde: float, rng: np.random.Generator
) -> CoinOperator:
    """Draw one decohering coin: with probability ``p_tilde`` the off-diagonal
    phase zeta is uniform on [0, 2*pi), otherwise zeta = 0.

    Always consumes exactly two uniform variates from ``rng`` (one accept
    draw, one phase draw) so that callers that pre-generate streams stay in
    sync with this function.
    """
    if not 0.0 <= p_tilde <= 1.0:
        raise ValueError(f"p_tilde must be in [0, 1], got {p_tilde}")
    accept = rng.random()
    phase = rng.random()
    zeta = TWO_PI * phase if accept < p_tilde else 0.0
    return make_su2_coin(CoinAngles(0.0, theta, zeta))
