"""lhvlab: a simulation and verification lab for EPR spin-correlation
experiments under explicit local hidden-variable models.

The package provides deterministic model families mapping a shared hidden
variable to +-1 outcome pairs, reproducible counter-based Monte Carlo
estimation of their correlations, closed-form oracles for every estimate,
and evaluators for the correlation inequalities those families do or do not
satisfy.
"""

__version__ = "0.1.0"

from .core import (
    Direction,
    DomainError,
    HiddenVariable,
    LhvError,
    LhvModel,
    OutcomePair,
    RangeError,
    SettingMismatch,
    SettingPair,
    UnknownScenario,
    angle_between,
    evaluate_model,
)
from .models import (
    CELL_RELATIONS,
    BellConstrainedModel,
    EightPartition,
    EightPartitionModel,
    FactualModel,
    JointTable,
    QuantumSingletModel,
    SixFunctionRecord,
    bell_constrained_exact,
    bell_constrained_record,
    eight_partition_aggregate,
    eight_partition_record,
    factual_model_sample,
    make_model,
    qm_conditional_same,
    qm_expectation,
    qm_joint_table,
    qm_oracle_sample,
)
from .inequalities import (
    BoundSweepReport,
    DerivationReport,
    DerivationStep,
    InequalityReport,
    bell_like,
    bell_original,
    bound_margin,
    replay_bell_derivation,
    verify_bound_grid,
    verify_bound_random,
)
from .montecarlo import (
    CorrelationEstimate,
    SeedSpec,
    derive_trial_draws,
    estimate_correlation,
    estimate_marginals,
)

__all__ = [
    "__version__",
    # core
    "Direction",
    "SettingPair",
    "HiddenVariable",
    "OutcomePair",
    "LhvModel",
    "angle_between",
    "evaluate_model",
    "LhvError",
    "DomainError",
    "RangeError",
    "SettingMismatch",
    "UnknownScenario",
    # models
    "JointTable",
    "EightPartition",
    "SixFunctionRecord",
    "CELL_RELATIONS",
    "qm_conditional_same",
    "qm_joint_table",
    "qm_expectation",
    "qm_oracle_sample",
    "bell_constrained_record",
    "bell_constrained_exact",
    "factual_model_sample",
    "eight_partition_record",
    "eight_partition_aggregate",
    "QuantumSingletModel",
    "BellConstrainedModel",
    "FactualModel",
    "EightPartitionModel",
    "make_model",
    # inequalities
    "InequalityReport",
    "bell_original",
    "bell_like",
    "bound_margin",
    "BoundSweepReport",
    "verify_bound_grid",
    "verify_bound_random",
    "DerivationStep",
    "DerivationReport",
    "replay_bell_derivation",
    # montecarlo
    "SeedSpec",
    "CorrelationEstimate",
    "derive_trial_draws",
    "estimate_correlation",
    "estimate_marginals",
]
