"""Weak dominance by mixed strategies and the iterated-admissibility hierarchy.

A strategy ``s`` of player ``i`` is dominated within a rectangle when some
mixture ``σ`` over ``S̄_i`` does at least as well against every ``s_{-i}`` in
``S̄_{-i}`` and strictly better against one.  This is decided with a single
exact LP maximising the total slack; ``s`` is dominated iff the optimum is
positive.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError, InvariantError
from .game import Game, MixedStrategy, Restriction, expected_payoff, require_valid
from .lp import OPTIMAL, LPProblem, solve_lp_exact


@dataclass(frozen=True)
class DominanceVerdict:
    dominated: bool
    witness: MixedStrategy | None = None
    strict_at: dict | None = None
    slack_total: Fraction = Fraction(0)


@dataclass(frozen=True)
class Elimination:
    player: str
    strategy: str
    verdict: DominanceVerdict


@dataclass
class IALevels:
    """``levels[m]`` is the rectangle ``∏ S_i^m``; ``levels[0]`` is the full game."""

    levels: list[Restriction]
    fixpoint_round: int
    removed: list[list[Elimination]] = field(default_factory=list)

    def level(self, m: int) -> Restriction:
        """``∏ S_i^m`` for any ``m ≥ 0``; rounds past the fixpoint repeat it."""
        return self.levels[min(m, len(self.levels) - 1)]

    @property
    def fixpoint(self) -> Restriction:
        return self.levels[self.fixpoint_round]


def dominance_lp(game: Game, r: Restriction, i: str, s_i: str):
    """The LP deciding whether ``s_i`` is dominated within ``r``.

    Variables: one weight per strategy of ``S̄_i`` followed by one slack per
    opponent profile.  Returns ``(problem, own strategies, opponent profiles)``.
    """
    own = r[i]
    opps = r.opponent_profiles(game, i)
    n_w, n_s = len(own), len(opps)
    k = game.index(i)
    rows, senses, rhs = [], [], []
    for c, opp in enumerate(opps):
        row = [Fraction(0)] * (n_w + n_s)
        for a, s in enumerate(own):
            row[a] = game.payoffs[game.key({**opp, i: s})][k]
        row[n_w + c] = Fraction(-1)
        rows.append(row)
        senses.append("==")
        rhs.append(game.payoffs[game.key({**opp, i: s_i})][k])
    rows.append([Fraction(1)] * n_w + [Fraction(0)] * n_s)
    senses.append("==")
    rhs.append(Fraction(1))
    objective = [0] * n_w + [1] * n_s
    return LPProblem(objective, rows, senses, rhs), own, opps


def _balanced_witness(problem: LPProblem, n_w: int, n_s: int):
    """Weights and slacks maximising the smallest slack, if that is positive.

    The sum-of-slacks optimum is often a whole face; this picks the mixture
    that beats ``s_i`` by the widest uniform margin when one strictly beats
    it everywhere.  Returns ``None`` otherwise.
    """
    # Same rows plus one margin variable t with slack_c - t >= 0.
    rows = [list(r) + [Fraction(0)] for r in problem.rows]
    senses, rhs = list(problem.senses), list(problem.rhs)
    for c in range(n_s):
        row = [Fraction(0)] * (n_w + n_s + 1)
        row[n_w + c] = Fraction(1)
        row[-1] = Fraction(-1)
        rows.append(row)
        senses.append(">=")
        rhs.append(Fraction(0))
    objective = [0] * (n_w + n_s) + [1]
    res = solve_lp_exact(LPProblem(objective, rows, senses, rhs))
    if res.status != OPTIMAL or res.value <= 0:
        return None
    return res.x[:-1]


def is_weakly_dominated(game: Game, r: Restriction, i: str, s_i: str) -> DominanceVerdict:
    """Decide whether ``s_i`` is weakly dominated by a mixture over ``S̄_i``."""
    require_valid(game, r)
    if s_i not in r[i]:
        raise InputError(f"{s_i!r} is not in the restriction for player {i!r}")
    problem, own, opps = dominance_lp(game, r, i, s_i)
    result = solve_lp_exact(problem)
    if result.status != OPTIMAL:
        # σ = pure s_i is always feasible and the slacks are bounded.
        raise InvariantError(f"dominance LP returned {result.status}")
    if result.value <= 0:
        return DominanceVerdict(False)
    weights = {s: result.x[a] for a, s in enumerate(own) if result.x[a]}
    slacks = result.x[len(own):]
    balanced = _balanced_witness(problem, len(own), len(opps))
    if balanced is not None:
        weights = {s: balanced[a] for a, s in enumerate(own) if balanced[a]}
        slacks = balanced[len(own):]
    witness = MixedStrategy(i, weights)
    strict = next(c for c, v in enumerate(slacks) if v > 0)
    return DominanceVerdict(True, witness, dict(opps[strict]), result.value)


def check_witness(game: Game, r: Restriction, i: str, s_i: str, verdict: DominanceVerdict) -> bool:
    """Re-verify a positive verdict with :func:`expected_payoff`, exactly."""
    if not verdict.dominated:
        return False
    w = verdict.witness
    if any(s not in r[i] for s in w.support()):
        return False
    for opp in r.opponent_profiles(game, i):
        ours = expected_payoff(game, i, w, opp)
        theirs = expected_payoff(game, i, MixedStrategy.pure(i, s_i), opp)
        if ours < theirs:
            return False
    at = verdict.strict_at
    return (expected_payoff(game, i, w, at)
            > expected_payoff(game, i, MixedStrategy.pure(i, s_i), at))


def admissible_set(game: Game, r: Restriction, i: str) -> tuple[str, ...]:
    """Strategies of ``S̄_i`` not weakly dominated within ``r``."""
    require_valid(game, r)
    keep = tuple(s for s in r[i] if not is_weakly_dominated(game, r, i, s).dominated)
    if not keep:
        raise InvariantError(f"empty admissible set for {i!r} in {r!r}")
    return keep


def ia_levels(game: Game) -> IALevels:
    """Run simultaneous elimination from the full rectangle to its fixpoint."""
    current = Restriction.full(game)
    levels = [current]
    removed = []
    bound = sum(len(s) - 1 for s in game.strategies)
    while True:
        survivors, gone = {}, []
        for p in game.players:
            keep = []
            for s in current[p]:
                v = is_weakly_dominated(game, current, p, s)
                if v.dominated:
                    gone.append(Elimination(p, s, v))
                else:
                    keep.append(s)
            if not keep:
                raise InvariantError(f"round {len(levels)} removed every strategy of {p!r}")
            survivors[p] = keep
        if not gone:
            break
        current = Restriction(survivors)
        levels.append(current)
        removed.append(gone)
        if len(levels) - 1 > bound:
            raise InvariantError("IA did not terminate within Σ(|S_i|-1) rounds")
    return IALevels(levels, len(levels) - 1, removed)


def ia_set(game: Game) -> Restriction:
    """``∏ S_i^∞``."""
    return ia_levels(game).fixpoint
