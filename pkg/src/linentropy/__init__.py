"""One-bounded Lin entropy alongside Shannon, KL, JS and logical entropy."""

__version__ = "0.1.0"

from .distributions import (
    Distribution,
    JointDistribution,
    WeightVector,
    degenerate_distribution,
    empirical_distribution,
    make_distribution,
    random_distribution,
    uniform_distribution,
)
from .divergences import (
    js_divergence,
    js_divergence_averaged_kl,
    js_divergence_general,
    kl_divergence,
    normalized_shannon_entropy,
    self_joint,
    self_product,
    shannon_entropy,
)
from .lin import (
    SurprisalValue,
    corollary_residual,
    lin_entropy,
    lin_entropy_implicit,
    lin_entropy_uniform,
    lin_surprisal,
    lin_surprisal_d1,
    lin_surprisal_d2,
    logical_entropy,
    weighted_surprisal_d2,
)
from .verification import Property, PropertyReport, SuiteConfig, check_property, run_suite
