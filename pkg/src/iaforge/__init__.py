"""Iterated admissibility, RmAR fixpoints and their forcing construction, in exact arithmetic."""
from .admissibility import (
    DominanceVerdict,
    IALevels,
    admissible_set,
    ia_levels,
    ia_set,
    is_weakly_dominated,
)
from .belief import (
    BeliefModel,
    PlayerState,
    assumption_types,
    build_canonical_model,
    check_rationality_complete,
    project_event,
    rational_states,
    rmar_levels,
    unfold,
)
from .errors import IAForgeError, InputError, InvariantError, PreconditionError
from .game import Game, MixedStrategy, Restriction, expected_payoff, payoff, validate_restriction
from .lp import LPProblem, LPResult, solve_lp_exact

__version__ = "0.1.0"
