"""Finite privacy mechanisms as row-stochastic channels.

Exact certificates (Dobrushin coefficient, local-differential-privacy level,
maximal leakage), numerical verification of the inequalities relating them,
seeded lower-bound search for f-divergence contraction coefficients, and
Monte Carlo study of distribution-estimation risk under leakage constraints.
"""

__version__ = "0.1.0"

from .core import (
    DEFAULT_TOL,
    Channel,
    Distribution,
    ToleranceConfig,
    channel_from_dict,
    channel_to_dict,
    compose,
    distribution_from_dict,
    distribution_to_dict,
    pushforward,
    validate_channel,
    validate_distribution,
)
from .divergences import (
    CHI_SQUARED,
    KL,
    TOTAL_VARIATION,
    FDivergenceSpec,
    FKind,
    f_divergence,
    kl_divergence,
    l2_distance_sq,
    total_variation,
)
from .coefficients import (
    ContractionEstimate,
    PrivacyReport,
    dobrushin_coefficient,
    estimate_eta_f,
    ldp_level,
    map_adversary_gain,
    max_leakage,
    min_entry,
    privacy_report,
)
from .mechanisms import (
    maxl_staircase,
    random_channel,
    randomized_response,
    staircase_rate,
    z_channel,
)
from .bounds import (
    BoundCheckResult,
    check_ldp_sandwich,
    check_lemma1,
    check_maxl_sandwich,
    check_thm1,
    check_thm2,
    check_thm3,
    check_thm4,
    pairwise_mean_bound,
    run_all_checks,
)
from .minimax import (
    LeCamPair,
    RiskEstimate,
    SimulationConfig,
    SweepRow,
    closed_form_risk,
    default_direction,
    empirical_risk,
    lecam_lower_check,
    lecam_pair,
    sample_outputs,
    scaling_sweep,
    staircase_estimator,
)
from . import errors

__all__ = [
    "__version__",
    "DEFAULT_TOL",
    "Channel",
    "Distribution",
    "ToleranceConfig",
    "channel_from_dict",
    "channel_to_dict",
    "compose",
    "distribution_from_dict",
    "distribution_to_dict",
    "pushforward",
    "validate_channel",
    "validate_distribution",
    "CHI_SQUARED",
    "KL",
    "TOTAL_VARIATION",
    "FDivergenceSpec",
    "FKind",
    "f_divergence",
    "kl_divergence",
    "l2_distance_sq",
    "total_variation",
    "ContractionEstimate",
    "PrivacyReport",
    "dobrushin_coefficient",
    "estimate_eta_f",
    "ldp_level",
    "map_adversary_gain",
    "max_leakage",
    "min_entry",
    "privacy_report",
    "maxl_staircase",
    "random_channel",
    "randomized_response",
    "staircase_rate",
    "z_channel",
    "BoundCheckResult",
    "check_ldp_sandwich",
    "check_lemma1",
    "check_maxl_sandwich",
    "check_thm1",
    "check_thm2",
    "check_thm3",
    "check_thm4",
    "pairwise_mean_bound",
    "run_all_checks",
    "LeCamPair",
    "RiskEstimate",
    "SimulationConfig",
    "SweepRow",
    "closed_form_risk",
    "default_direction",
    "empirical_risk",
    "lecam_lower_check",
    "lecam_pair",
    "sample_outputs",
    "scaling_sweep",
    "staircase_estimator",
    "errors",
]
