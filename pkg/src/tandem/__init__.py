"""Simulation and analysis toolkit for AI-assisted human decision making.

A simulated judge answers binary admission cases, consulting an AI
assistant whenever their own confidence falls below a random threshold.
The package generates such teams synthetically, trains specialist and
behavior-aware classifiers, routes between specialists, and numerically
verifies the convexity and entropy bounds that govern when an adaptive
ensemble beats any single model.
"""

from .behavior import (
    RelianceState,
    ThresholdDist,
    alignment_disagreement,
    cgpr_decide,
    cgr_decide,
    expected_team_loss,
    region_weights,
    reliance,
    reliance_weighted,
    simulate_team_choices,
    simulate_team_decisions,
    team_loss_decomposition,
)
from .ensemble import (
    RouteDiagnostics,
    RoutingPolicy,
    RoutingResult,
    binary_entropy,
    misroute_entropy,
    route,
    routing_diagnostics,
    write_routing_trace,
)
from .errors import (
    AtOptimumError,
    BoundViolationError,
    ConfigError,
    DegenerateObjectiveError,
    EmptyAlignmentRegionError,
    MissingRegionInfoError,
    OptimizationDivergedError,
    PredictionTableError,
)
from .harness import (
    CellResult,
    ComparisonResult,
    ExperimentConfig,
    PredictionTable,
    SweepResult,
    TeamMetrics,
    TradeoffResult,
    VerifyReport,
    evaluate_answers,
    evaluate_table,
    evaluate_team,
    ingest_predictions,
    load_config,
    measure_tradeoff,
    run_cell,
    run_paradigm_comparison,
    split_indices,
    sweep,
    tradeoff_sweep,
    train_paradigm,
    verify_all,
)
from .learn import (
    LinearModel,
    Objective,
    TrainSpec,
    behavior_aware_objective,
    fixed_weight_objective,
    logistic_loss,
    minimize_gd,
    sigmoid,
    train,
    train_aligned,
    train_behavior_aware,
    train_complementary,
    train_fixed_weight,
    train_standard,
    weighted_logistic_loss,
    weighted_objective,
)
from .synthdata import Dataset, GenConfig, admission_labels, generate, simulate_human
from .theory import (
    BoundCheck,
    CurvatureBounds,
    GainReport,
    TradeoffReport,
    UncertainGain,
    adaptive_gain,
    alignment_sensitivity,
    curvature_bounds,
    gain_under_uncertainty,
    run_bound_suite,
    scalar_curvature,
    two_center_min,
    unit_tradeoff,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
