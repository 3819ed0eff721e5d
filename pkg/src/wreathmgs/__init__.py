"""Finite-scale verification toolkit for minimal generating sets of
permutational wreath products and groups of rooted-tree automorphisms."""

from .automaton import (
    Activity,
    MealyAutomorphism,
    classify_activity,
    empirical_activity,
    is_finitary,
    m0_generator,
    minimize,
    odometer,
    section,
    theta_profile,
)
from .construct import (
    LConditionData,
    ReplayReport,
    build_S,
    replay_commutator,
    replay_power_k,
    replay_t,
    replay_u,
    validate_lcondition_finite,
)
from .errors import NotSatisfied, ReplayMismatch, ResourceError, SteeringNotFound, WreathMGSError
from .perm import Permutation, PermutationGroup, build_standard_group, wreath_action
from .portrait import Portrait, decompose_level_k, pi_sign, square_obstruction
from .pscert import PSWitness, find_ps_witness, find_steering, verify_ps_witness
from .wreath import FiniteGroup, WreathElement, check_irredundant, closure_order

__version__ = "0.1.0"

__all__ = [
    "Activity", "FiniteGroup", "LConditionData", "MealyAutomorphism", "NotSatisfied",
    "PSWitness", "Permutation", "PermutationGroup", "Portrait", "ReplayMismatch",
    "ReplayReport", "ResourceError", "SteeringNotFound", "WreathElement", "WreathMGSError",
    "build_S", "build_standard_group", "check_irredundant", "classify_activity",
    "closure_order", "decompose_level_k", "empirical_activity", "find_ps_witness",
    "find_steering", "is_finitary", "m0_generator", "minimize", "odometer", "pi_sign",
    "replay_commutator", "replay_power_k", "replay_t", "replay_u", "section",
    "square_obstruction", "theta_profile", "validate_lcondition_finite", "verify_ps_witness",
    "wreath_action",
]
