"""Unitary discrete-time quantum walk on the one-dimensional lattice.

State is stored as two complex amplitude vectors ``a`` (up component) and
``b`` (down component) over the sites [-n, +n] after n steps.  One step
applies the coin to the amplitude pair at every site and shifts the
up output one site right and the down output one site left:

    a_j(n+1) = C00 a_{j-1}(n) + C01 b_{j-1}(n)
    b_j(n+1) = C10 a_{j+1}(n) + C11 b_{j+1}(n)

This site recurrence is the single source of truth for the dynamics; the
equivalent composition "shift after coin" as one global operator is
exercised only as an independent oracle in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .coin import CoinOperator

__all__ = [
    "InitialCoinState",
    "WalkState",
    "PositionDistribution",
    "init_state",
    "step_unitary",
    "evolve",
    "position_distribution",
]

#: tolerance for |a0|^2 + |b0|^2 = 1 on initial coin states
IC_NORM_TOL = 1e-9


@dataclass(frozen=True)
class InitialCoinState:
    """Normalized coin state (a0, b0) placed at lattice site 0."""

    a0: complex
    b0: complex

    def __post_init__(self):
        norm = abs(self.a0) ** 2 + abs(self.b0) ** 2
        if abs(norm - 1.0) > IC_NORM_TOL:
            raise ValueError(
                f"initial coin state must be normalized: |a0|^2+|b0|^2 = {norm!r}"
            )


#: the equal-weight state (1, i)/sqrt(2); gives a reflection-symmetric walk
#: under any real symmetric coin
SYMMETRIC_IC = InitialCoinState(1 / math.sqrt(2), 1j / math.sqrt(2))
#: all amplitude in the up component; biases the walk toward positive sites
UP_IC = InitialCoinState(1.0, 0.0)
#: all amplitude in the down component
DOWN_IC = InitialCoinState(0.0, 1.0)


@dataclass(frozen=True)
class WalkState:
    """Walker amplitudes after ``n`` steps.

    ``a`` and ``b`` span the sites [-n, +n]; ``offset`` is the array index of
    site 0 (always n for states produced by this module).  Site j lives at
    index j + offset.
    """

    n: int
    offset: int
    a: np.ndarray = field(repr=False)
    b: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.offset != self.n:
            raise ValueError(
                f"site 0 must sit at index n = {self.n}, got offset {self.offset}"
            )
        for name in ("a", "b"):
            arr = np.asarray(getattr(self, name), dtype=complex)
            if arr.shape != (2 * self.n + 1,):
                raise ValueError(
                    f"{name} must have length 2n+1 = {2 * self.n + 1}, got {arr.shape}"
                )
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def site_index(self, j: int) -> int:
        return j + self.offset

    def amplitude(self, j: int) -> tuple[complex, complex]:
        i = self.site_index(j)
        if not 0 <= i < len(self.a):
            return 0.0 + 0.0j, 0.0 + 0.0j
        return complex(self.a[i]), complex(self.b[i])

    def norm(self) -> float:
        return float(np.sum(np.abs(self.a) ** 2 + np.abs(self.b) ** 2))

    @property
    def sites(self) -> np.ndarray:
        """Integer site labels [-n, ..., +n]."""
        return np.arange(-self.n, self.n + 1)


@dataclass(frozen=True)
class PositionDistribution:
    """Real position probabilities over sites [-n, +n] at step count ``n``.

    Distributions produced by :func:`position_distribution` sum to one; the
    figure-parity rescaling in :mod:`qwalk.stats` may return deliberately
    non-normalized instances.
    """

    n: int
    probs: np.ndarray = field(repr=False)

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float)
        if p.shape != (2 * self.n + 1,):
            raise ValueError(
                f"probs must have length 2n+1 = {2 * self.n + 1}, got {p.shape}"
            )
        p = p.copy()
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    @property
    def sites(self) -> np.ndarray:
        return np.arange(-self.n, self.n + 1)

    def total(self) -> float:
        return float(np.sum(self.probs))


def init_state(ic: InitialCoinState) -> WalkState:
    """Localize the walker at site 0 with coin state ``ic`` (n = 0)."""
    return WalkState(
        n=0,
        offset=0,
        a=np.array([ic.a0], dtype=complex),
        b=np.array([ic.b0], dtype=complex),
    )


def step_unitary(state: WalkState, coin: CoinOperator) -> WalkState:
    """Advance the walk one step with the given coin; support grows by one
    site on each side and the norm is conserved exactly up to rounding."""
    c = coin.matrix
    size = len(state.a) + 2
    a_next = np.zeros(size, dtype=complex)
    b_next = np.zeros(size, dtype=complex)
    a_next[2:] = c[0, 0] * state.a + c[0, 1] * state.b
    b_next[:-2] = c[1, 0] * state.a + c[1, 1] * state.b
    return WalkState(n=state.n + 1, offset=state.offset + 1, a=a_next, b=b_next)


def evolve(ic: InitialCoinState, coin: CoinOperator, n: int) -> WalkState:
    """Apply ``n`` coin-and-shift steps to the walker started at the origin."""
    if n < 0:
        raise ValueError(f"step count must be non-negative, got {n}")
    state = init_state(ic)
    for _ in range(n):
        state = step_unitary(state, coin)
    return state


def position_distribution(state: WalkState) -> PositionDistribution:
    """Squared amplitudes P_j = |a_j|^2 + |b_j|^2 over the support."""
    probs = np.abs(state.a) ** 2 + np.abs(state.b) ** 2
    return PositionDistribution(n=state.n, probs=probs)
