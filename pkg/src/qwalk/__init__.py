"""Discrete-time quantum walk models for financial return distributions,
with classical baselines (geometric Brownian motion, classical random walk,
Gaussian and alpha-stable densities)."""

from .coin import (
    CoinAngles,
    CoinOperator,
    make_su2_coin,
    make_theta_coin,
    sample_random_phase_coin,
)
from .walk import (
    DOWN_IC,
    SYMMETRIC_IC,
    UP_IC,
    InitialCoinState,
    PositionDistribution,
    WalkState,
    evolve,
    init_state,
    position_distribution,
    step_unitary,
)
from .decoherence import (
    DecoherenceSpec,
    EnsembleResult,
    LinkMask,
    realization_rng,
    run_ensemble,
    step_broken_links,
)
from .stats import (
    Histogram,
    SummaryStats,
    aggregate_histogram,
    moments,
    normalize_to_reference,
    total_variation,
)
from .classical import (
    GbmParams,
    QuadratureError,
    QuadratureSpec,
    StableParams,
    classical_rw_distribution,
    gaussian_pdf,
    gbm_path,
    gbm_terminal_samples,
    stable_cf,
    stable_pdf,
)
from .pricing import (
    DiffusionScaler,
    QwPriceModel,
    ReturnDistribution,
    normalized_returns,
    prenormalized_return_distribution,
    qw_price_path,
    qw_return_distribution,
)

__version__ = "0.1.0"
