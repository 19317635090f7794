"""Finite stochastic maps with exact rationals: entropies, Bayesian inversion,
mediators and correctable codes."""

from .bayes import BayesPair, bayesian_inverse, double_inverse_check, inverse, verify_bayes_rule
from .core import (
    POINT,
    ColumnNotNormalized,
    DuplicateLabel,
    EmptySpace,
    FinStochError,
    Morphism,
    NotMeasurePreserving,
    NotNormalized,
    OutOfRange,
    ProbSpace,
    ShapeMismatch,
    StochMap,
    ae_equal,
    bloom_of,
    compose,
    compose_morphisms,
    convex_sum_morphisms,
    convex_sum_objects,
    copy,
    deterministic_map,
    discard,
    identity,
    is_ae_deterministic,
    is_deterministic,
    joint_distribution,
    make_map,
    make_space,
    map_from_columns,
    morphism,
    nullspace,
    product,
    projection,
    pushforward,
    shriek_of,
    swap,
)
from .measures import (
    closs_closed_form,
    conditional_entropy,
    conditional_information_loss,
    functoriality_deviation,
    shannon_entropy,
)
from .structure import (
    Code,
    Mediator,
    PossMap,
    bloom,
    bloom_shriek_factorize,
    ceiling,
    code_from_morphism,
    find_disintegration,
    find_mediator,
    is_coalescable,
    is_correctable,
    is_strongly_coalescable,
    shriek,
    verify_mediator,
)

__version__ = "0.1.0"
