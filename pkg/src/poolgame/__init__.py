"""Game-theoretic model of resource pooling: costs, rewards, Strong Nash checks,
best-response dynamics, emission schedules and a committee reward simulator."""

from .cost_model import (
    OperatorLinearCost,
    TabulatedCost,
    check_economies_of_scale,
    cost,
    delta,
    is_cost_efficient,
    is_viable,
    satisfies_prop1_condition,
)
from .equilibrium import (
    DeviationCertificate,
    EquilibriumReport,
    ImprovementMode,
    Instance,
    MoveRules,
    best_response_dynamics,
    find_profitable_deviation,
    is_strong_nash,
    participant_utilities,
)
from .resource_model import PoolingConfiguration, ResourceUniverse, measure, new_universe, validate_configuration
from .reward_model import (
    Capped,
    Linear,
    PowerConvex,
    Tabulated,
    check_cauchy_linearity,
    check_egalitarianism,
    check_sybil_resilience,
    evaluate,
    split_rewards,
)
from .splitting import FairShare, OperatorMargin

__version__ = "0.1.0"
