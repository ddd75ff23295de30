"""Asset-price model driven by the quantum walk.

Price increments follow dS = mu S dt + sigma S f(t) dQ, where dQ is the
walk's stochastic term and f(t) is a diffusion scaler that can compensate
the walk's ballistic spreading (variance growing like n^2 rather than n).
Because no trajectory-level semantics for Q(t) exists here, dQ is realized
by sampling a terminal site from the walk's position distribution once per
horizon of ``steps_per_horizon`` steps; measuring more often would collapse
the walk to the classical random walk and erase the interference structure
this model exists to provide.  Each lattice site j maps to a log-return

    r_j = mu * dt_horizon + sigma * f(dt_horizon) * dx * j,

where the lattice scale dx is calibrated from the realized distribution's
own standard deviation (so the pre-normalization return std equals sigma),
unless an explicit ``lattice_scale`` is supplied, e.g. for diffusion-scaling
diagnostics where dx must stay fixed across horizon lengths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .coin import CoinAngles, make_su2_coin, sample_random_phase_coin
from .decoherence import DecoherenceSpec, LinkMask, run_ensemble, step_broken_links
from .stats import moments
from .walk import (
    InitialCoinState,
    PositionDistribution,
    evolve,
    init_state,
    position_distribution,
    step_unitary,
)

__all__ = [
    "DiffusionScaler",
    "QwPriceModel",
    "ReturnDistribution",
    "qw_return_distribution",
    "prenormalized_return_distribution",
    "qw_price_path",
    "normalized_returns",
]

#: reserved spawn key for the lattice-scale calibration stream of price paths
_CALIBRATION_KEY = 2**32
#: ensemble size used to calibrate dx for decoherent price paths
_CALIBRATION_REALIZATIONS = 200


@dataclass(frozen=True)
class DiffusionScaler:
    """Diffusion control f(t): constant one, t^{-1/2} (with f(0) := 1), or a
    positive table interpolated linearly in t."""

    mode: str
    table_t: np.ndarray | None = field(default=None, repr=False)
    table_f: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.mode not in ("unit", "inverse_sqrt", "custom"):
            raise ValueError(f"unknown scaler mode {self.mode!r}")
        if self.mode == "custom":
            t = np.asarray(self.table_t, dtype=float)
            f = np.asarray(self.table_f, dtype=float)
            if t.ndim != 1 or t.shape != f.shape or len(t) < 2:
                raise ValueError("custom scaler needs matching 1-d t and f tables")
            if np.any(np.diff(t) <= 0):
                raise ValueError("custom scaler times must be strictly increasing")
            if np.any(f <= 0):
                raise ValueError("scaler values must be positive")
            object.__setattr__(self, "table_t", t)
            object.__setattr__(self, "table_f", f)

    @classmethod
    def unit(cls) -> "DiffusionScaler":
        return cls("unit")

    @classmethod
    def inverse_sqrt(cls) -> "DiffusionScaler":
        return cls("inverse_sqrt")

    @classmethod
    def custom(cls, t, f) -> "DiffusionScaler":
        return cls("custom", table_t=np.asarray(t, float), table_f=np.asarray(f, float))

    def value(self, t: float) -> float:
        if t < 0:
            raise ValueError(f"scaler time must be non-negative, got {t}")
        if self.mode == "unit":
            return 1.0
        if self.mode == "inverse_sqrt":
            return 1.0 if t == 0.0 else t**-0.5
        return float(np.interp(t, self.table_t, self.table_f))


@dataclass(frozen=True)
class QwPriceModel:
    """Full parameter bundle for the walk-driven price process."""

    mu: float
    sigma: float
    ic: InitialCoinState
    angles: CoinAngles
    decoherence: DecoherenceSpec
    steps_per_horizon: int
    dt_per_step: float
    scaler: DiffusionScaler
    s0: float = 1.0

    def __post_init__(self):
        if self.s0 <= 0:
            raise ValueError(f"s0 must be positive, got {self.s0}")
        if self.sigma < 0:
            raise ValueError(f"sigma must be non-negative, got {self.sigma}")
        if self.steps_per_horizon < 1:
            raise ValueError("steps_per_horizon must be >= 1")
        if self.dt_per_step <= 0:
            raise ValueError("dt_per_step must be positive")
        if self.decoherence.mode != "none" and self.angles.eta != 0.0:
            raise ValueError(
                "decoherent walks are defined for the single-angle coin family; "
                "use angles with xi == zeta"
            )

    @property
    def horizon(self) -> float:
        return self.steps_per_horizon * self.dt_per_step


@dataclass(frozen=True)
class ReturnDistribution:
    """Normalized-return distribution: probability ``probs[k]`` at return
    value ``returns[k]``, with the horizon length it was generated over.
    Unit variance under ``probs`` by construction."""

    returns: np.ndarray = field(repr=False)
    probs: np.ndarray = field(repr=False)
    horizon: float = 1.0


def _model_distribution(
    model: QwPriceModel, seed: int, realizations: int
) -> PositionDistribution:
    if model.decoherence.mode == "none":
        state = evolve(model.ic, make_su2_coin(model.angles), model.steps_per_horizon)
        return position_distribution(state)
    result = run_ensemble(
        model.ic,
        model.angles.theta,
        model.decoherence,
        model.steps_per_horizon,
        realizations,
        seed,
    )
    return result.mean


def prenormalized_return_distribution(
    model: QwPriceModel,
    seed: int,
    realizations: int,
    lattice_scale: float | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Return values r_j and probabilities before unit-variance
    normalization.

    With ``lattice_scale=None`` the scale dx is calibrated so the return
    standard deviation equals sigma; passing an explicit dx keeps the
    mapping fixed, exposing the scaler's n-dependence (return std then
    scales like sigma * f(horizon) * dx * walk_std(n))."""
    dist = _model_distribution(model, seed, realizations)
    summary = moments(dist)
    if summary.variance <= 0.0:
        raise ValueError("walk distribution has zero variance; returns degenerate")
    walk_std = math.sqrt(summary.variance)
    f_val = model.scaler.value(model.horizon)
    dx = lattice_scale if lattice_scale is not None else 1.0 / (f_val * walk_std)
    j = dist.sites.astype(float)
    values = model.mu * model.horizon + model.sigma * f_val * dx * j
    return values, dist.probs.copy()


def qw_return_distribution(
    model: QwPriceModel, seed: int, realizations: int
) -> ReturnDistribution:
    """Normalized-return distribution of one horizon of the model.

    The raw site returns are divided by their standard deviation under the
    distribution, giving exactly unit variance; the mean is not subtracted,
    so a drift or an asymmetric walk shifts the distribution."""
    values, probs = prenormalized_return_distribution(model, seed, realizations)
    mean = float(np.sum(values * probs))
    std = math.sqrt(float(np.sum((values - mean) ** 2 * probs)))
    if std <= 1e-12 * max(float(np.max(np.abs(values))), 1e-300):
        raise ValueError("return distribution has zero variance")
    return ReturnDistribution(
        returns=values / std, probs=probs, horizon=model.horizon
    )


def _single_realization_distribution(
    model: QwPriceModel, rng: np.random.Generator
) -> PositionDistribution:
    """One stochastic walk realization driven by ``rng`` (same draw pattern
    as the ensemble engine)."""
    n = model.steps_per_horizon
    spec = model.decoherence
    state = init_state(model.ic)
    if spec.mode == "broken_links":
        thresholds = rng.random((n, 2 * n + 2))
        for k in range(n):
            window = thresholds[k, n - k : n + k + 2] < spec.p
            state = step_broken_links(
                state, model.angles.theta, LinkMask(window, lo=-k - 1)
            )
    else:
        for _ in range(n):
            coin = sample_random_phase_coin(model.angles.theta, spec.p, rng)
            state = step_unitary(state, coin)
    return position_distribution(state)


def qw_price_path(
    model: QwPriceModel,
    total_steps: int,
    seed: int,
    lattice_scale: float | None = None,
) -> np.ndarray:
    """Price series at horizon boundaries, length ``total_steps`` + 1.

    Each horizon evolves a fresh walk (an independent stochastic realization
    when decoherence is active), samples one terminal site from its position
    distribution and compounds S <- S * exp(r_site).  Horizon h draws from
    the stream ``SeedSequence(seed, spawn_key=(h,))``, so paths are
    deterministic and horizons are order-independent.
    """
    if total_steps < 1:
        raise ValueError(f"total_steps must be >= 1, got {total_steps}")
    f_val = model.scaler.value(model.horizon)
    if lattice_scale is None:
        # calibration stream is offset from the horizon streams so the two
        # never alias for any horizon index
        dist = _model_distribution(
            model, seed=seed + _CALIBRATION_KEY, realizations=_CALIBRATION_REALIZATIONS
        )
        summary = moments(dist)
        if summary.variance <= 0.0:
            raise ValueError("walk distribution has zero variance; cannot calibrate")
        lattice_scale = 1.0 / (f_val * math.sqrt(summary.variance))

    prices = np.empty(total_steps + 1)
    prices[0] = model.s0
    unitary_dist = None
    for h in range(total_steps):
        rng = np.random.default_rng(
            np.random.SeedSequence(entropy=seed, spawn_key=(h,))
        )
        if model.decoherence.mode == "none":
            if unitary_dist is None:
                unitary_dist = _model_distribution(model, seed, 1)
            dist = unitary_dist
        else:
            dist = _single_realization_distribution(model, rng)
        j = int(rng.choice(dist.sites, p=dist.probs / dist.total()))
        r = model.mu * model.horizon + model.sigma * f_val * lattice_scale * j
        prices[h + 1] = prices[h] * math.exp(r)
    return prices


def normalized_returns(prices: np.ndarray, delta_t: int) -> np.ndarray:
    """Log price differences at lag ``delta_t`` divided by their sample
    standard deviation; the output has unit sample variance.

    Constant-return series (zero variance) are rejected."""
    prices = np.asarray(prices, dtype=float)
    if delta_t < 1:
        raise ValueError(f"delta_t must be >= 1, got {delta_t}")
    if len(prices) <= delta_t:
        raise ValueError("price series shorter than the return horizon")
    if np.any(prices <= 0):
        raise ValueError("prices must be strictly positive")
    log_p = np.log(prices)
    raw = log_p[delta_t:] - log_p[:-delta_t]
    std = float(np.std(raw))
    # constant-to-rounding returns (e.g. an exactly geometric series) are
    # degenerate: the normalized output would be pure floating-point noise
    if std <= 1e-12 * max(np.max(np.abs(raw)), 1e-300):
        raise ValueError("returns have zero variance; normalization undefined")
    return raw / std
