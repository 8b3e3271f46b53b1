"""Finite qualitative strategic belief models.

Each type ``t_i`` of player ``i`` carries a nonempty set ``P_i[t_i]`` of
opponent joint states; a joint state is a tuple of :class:`PlayerState`, one
per opponent, in game order.  Events are plain frozensets of state profiles.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

from .admissibility import IALevels, admissible_set, ia_levels
from .errors import InputError, InvariantError
from .game import Game, Restriction


class PlayerState(NamedTuple):
    player: str
    strategy: str
    type: str


JointState = tuple  # tuple[PlayerState, ...], opponents in game order
StateProfile = tuple  # tuple[PlayerState, ...], every player in game order


class BeliefModel:
    """``M = ({S_i}, {T_i}, {P_i})`` over a fixed game.

    ``beliefs[i][t]`` may be given as joint-state tuples or as mappings
    ``{j: (s_j, t_j)}``; both are normalised to tuples of PlayerState.
    """

    def __init__(self, game: Game, types: Mapping[str, Iterable[str]],
                 beliefs: Mapping[str, Mapping[str, Iterable]]):
        self.game = game
        missing = [p for p in game.players if p not in types]
        if missing:
            raise InputError(f"types missing for players {missing}")
        self.types = {p: tuple(types[p]) for p in game.players}
        for p, ts in self.types.items():
            if not ts:
                raise InputError(f"player {p!r} has no types")
            if len(set(ts)) != len(ts):
                raise InputError(f"duplicate type ids for player {p!r}")
        self._beliefs = {}
        for p in game.players:
            per = beliefs.get(p, {})
            unknown = set(per) - set(self.types[p])
            if unknown:
                raise InputError(f"beliefs given for unknown types of {p!r}: {sorted(unknown)}")
            self._beliefs[p] = {t: self._normalise_set(p, t, per.get(t, ())) for t in self.types[p]}

    def _normalise_set(self, i, t, joints) -> frozenset:
        out = set()
        opps = self.game.opponents(i)
        for joint in joints:
            if isinstance(joint, Mapping):
                if set(joint) != set(opps):
                    raise InputError(f"belief of {i}:{t} must name exactly the opponents {opps}")
                joint = tuple(PlayerState(j, *joint[j]) for j in opps)
            else:
                joint = tuple(PlayerState(*ps) for ps in joint)
                if tuple(ps.player for ps in joint) != opps:
                    raise InputError(f"belief of {i}:{t} must list opponents {opps} in order")
            for ps in joint:
                if ps.strategy not in self.game.strategies_of(ps.player):
                    raise InputError(f"belief of {i}:{t} uses unknown strategy {ps.strategy!r}")
                if ps.type not in self.types[ps.player]:
                    raise InputError(f"belief of {i}:{t} uses unknown type {ps.type!r}")
            out.add(joint)
        if not out:
            raise InputError(f"P_{i}[{t}] is empty")
        return frozenset(out)

    def beliefs(self, i: str, t: str) -> frozenset:
        try:
            return self._beliefs[i][t]
        except KeyError:
            raise InputError(f"unknown type {t!r} for player {i!r}") from None

    def states(self, i: str) -> list[PlayerState]:
        return [PlayerState(i, s, t) for s in self.game.strategies_of(i) for t in self.types[i]]

    def profiles(self) -> list[StateProfile]:
        return [tuple(c) for c in itertools.product(*(self.states(p) for p in self.game.players))]

    def believed_columns(self, i: str, t: str) -> set[tuple[str, ...]]:
        """Strategy projection of ``P_i[t]``: opponent pure profiles as tuples."""
        return {tuple(ps.strategy for ps in joint) for joint in self.beliefs(i, t)}

    def __eq__(self, other):
        if not isinstance(other, BeliefModel):
            return NotImplemented
        return (self.game == other.game and self.types == other.types
                and self._beliefs == other._beliefs)

    def __repr__(self):
        sizes = ", ".join(f"{p}:{len(ts)}" for p, ts in self.types.items())
        return f"BeliefModel(types={{{sizes}}})"


def project_event(e: Iterable[StateProfile], i: str) -> frozenset:
    """``E_{|∏_{j≠i}(S_j×T_j)}``: drop player ``i``'s component."""
    return frozenset(tuple(ps for ps in prof if ps.player != i) for prof in e)


def one_step(model: BeliefModel, i: str, t: str) -> frozenset:
    """``P^1_i[t]`` as a set of ``(player, type)`` pairs."""
    return frozenset((ps.player, ps.type) for joint in model.beliefs(i, t) for ps in joint)


def unfold(model: BeliefModel, i: str, t_i: str, m: int, cumulative: bool = False) -> frozenset:
    """Types reachable from ``t_i`` in exactly ``m`` belief steps.

    With ``cumulative=True`` the union over ``1..m`` steps is returned instead.
    ``m = 0`` gives ``{(i, t_i)}``.
    """
    if t_i not in model.types.get(i, ()):
        raise InputError(f"unknown type {t_i!r} for player {i!r}")
    if m < 0:
        raise InputError("unfolding depth must be nonnegative")
    frontier = frozenset({(i, t_i)})
    seen = set()
    for _ in range(m):
        frontier = frozenset(x for k, tk in frontier for x in one_step(model, k, tk))
        seen |= frontier
    return frozenset(seen) if cumulative and m > 0 else frontier


def assumption_types(model: BeliefModel, i: str, e: Iterable[StateProfile]) -> frozenset:
    """``AS_i[E]``: types whose belief set equals the projection of ``E``."""
    target = project_event(e, i)
    return frozenset(t for t in model.types[i] if model.beliefs(i, t) == target)


def _optimal_against(game: Game, i: str, s_i: str, columns, compare) -> bool:
    """``s_i`` pointwise ≥ every strategy in ``compare`` at every column."""
    k = game.index(i)
    opps = game.opponents(i)
    for col in columns:
        base = dict(zip(opps, col))
        mine = game.payoffs[game.key({**base, i: s_i})][k]
        for s in compare:
            if game.payoffs[game.key({**base, i: s})][k] > mine:
                return False
    return True


def rational_states(model: BeliefModel, i: str) -> frozenset:
    """States ``(s_i, t_i)`` where ``s_i`` is optimal over all of ``S_i`` at each believed column."""
    game = model.game
    out = set()
    for t in model.types[i]:
        cols = model.believed_columns(i, t)
        for s in game.strategies_of(i):
            if _optimal_against(game, i, s, cols, game.strategies_of(i)):
                out.add(PlayerState(i, s, t))
    return frozenset(out)


def rational_states_within(model: BeliefModel, i: str, r: Restriction) -> frozenset:
    """Rectangle reading: compare only within ``S̄_i`` on believed columns inside ``S̄_{-i}``.

    Types whose believed columns miss the rectangle entirely rationalise
    nothing.
    """
    game = model.game
    opps = game.opponents(i)
    out = set()
    for t in model.types[i]:
        cols = [c for c in model.believed_columns(i, t)
                if all(s in r[j] for j, s in zip(opps, c))]
        if not cols:
            continue
        for s in r[i]:
            if _optimal_against(game, i, s, cols, r[i]):
                out.add(PlayerState(i, s, t))
    return frozenset(out)


@dataclass
class EpistemicLevels:
    """The chain ``R^0_i ⊇ R^1_i ⊇ ...`` per player, stored up to its fixpoint."""

    chain: dict[str, list[frozenset]]
    fixpoint_round: int
    r_infinity: dict[str, frozenset] = field(default_factory=dict)

    def level(self, i: str, m: int) -> frozenset:
        seq = self.chain[i]
        return seq[min(m, len(seq) - 1)]

    def strategies(self, i: str, m: int | None = None) -> frozenset:
        """``R^m_{i|S_i}`` (``R^∞`` when ``m`` is None)."""
        states = self.r_infinity[i] if m is None else self.level(i, m)
        return frozenset(ps.strategy for ps in states)

    def level_event(self, players, m: int | None = None) -> frozenset:
        """Profiles whose every component lies in ``R^m`` (``R^∞`` for None)."""
        sets = [sorted(self.r_infinity[p] if m is None else self.level(p, m)) for p in players]
        return frozenset(tuple(c) for c in itertools.product(*sets))

    def state_level(self, ps: PlayerState) -> int | None:
        """Largest ``m`` with ``ps ∈ R^m``; ``-1`` if not rational; None if in ``R^∞``."""
        if ps in self.r_infinity[ps.player]:
            return None
        seq = self.chain[ps.player]
        m = -1
        while m + 1 < len(seq) and ps in seq[m + 1]:
            m += 1
        return m

    def product_nonempty(self) -> bool:
        return all(self.r_infinity.values())


def _opponent_product(game: Game, i: str, sets: Mapping[str, frozenset]) -> frozenset:
    opps = game.opponents(i)
    return frozenset(tuple(c) for c in itertools.product(*(sorted(sets[j]) for j in opps)))


def rmar_levels(model: BeliefModel) -> EpistemicLevels:
    """Compute ``R^m_i = R^{m-1}_i ∩ (S_i × AS_i[∏_{j≠i} R^{m-1}_j])`` to its fixpoint."""
    game = model.game
    current = {p: rational_states(model, p) for p in game.players}
    chain = {p: [current[p]] for p in game.players}
    bound = sum(len(game.strategies_of(p)) * len(model.types[p]) for p in game.players)
    rounds = 0
    while True:
        nxt = {}
        for p in game.players:
            target = _opponent_product(game, p, current)
            assuming = {t for t in model.types[p] if model.beliefs(p, t) == target}
            nxt[p] = frozenset(ps for ps in current[p] if ps.type in assuming)
        if nxt == current:
            break
        rounds += 1
        if rounds > bound:
            raise InvariantError("RmAR chain failed to stabilise")
        current = nxt
        for p in game.players:
            chain[p].append(current[p])
    return EpistemicLevels(chain, rounds, dict(current))


# -- rationality-completeness ---------------------------------------------

FULL = "full"
IA_CHAIN = "ia-chain"


@dataclass(frozen=True)
class WitnessEntry:
    rectangle: Restriction
    player: str
    strategy: str
    type: str | None  # None means FAILURE


@dataclass
class CompletenessReport:
    mode: str
    satisfied: bool
    witnesses: list[WitnessEntry]

    def failures(self) -> list[WitnessEntry]:
        return [w for w in self.witnesses if w.type is None]


def _subrectangles(game: Game):
    per_player = []
    for strats in game.strategies:
        subsets = [c for k in range(1, len(strats) + 1) for c in itertools.combinations(strats, k)]
        per_player.append(subsets)
    for combo in itertools.product(*per_player):
        yield Restriction(dict(zip(game.players, combo)))


def _find_witness(model: BeliefModel, r: Restriction, i: str, s_star: str) -> str | None:
    game = model.game
    opps = game.opponents(i)
    for t in model.types[i]:
        cols = [c for c in sorted(model.believed_columns(i, t))
                if all(s in r[j] for j, s in zip(opps, c))]
        if cols and _optimal_against(game, i, s_star, cols, r[i]):
            return t
    return None


def check_rationality_complete(model: BeliefModel, mode: str = IA_CHAIN,
                               ia: IALevels | None = None) -> CompletenessReport:
    """Search a rationalising type for every admissible strategy of every rectangle.

    ``mode="full"`` quantifies over every subrectangle; ``"ia-chain"`` only
    over the IA rectangles ``∏ S_i^m``.
    """
    game = model.game
    if mode == FULL:
        rects = list(_subrectangles(game))
    elif mode == IA_CHAIN:
        rects = list((ia or ia_levels(game)).levels)
    else:
        raise InputError(f"unknown completeness mode {mode!r}")
    entries = []
    for r in rects:
        for i in game.players:
            for s_star in admissible_set(game, r, i):
                entries.append(WitnessEntry(r, i, s_star, _find_witness(model, r, i, s_star)))
    return CompletenessReport(mode, all(e.type is not None for e in entries), entries)


# -- canonical model --------------------------------------------------------

def _pointwise_max_columns(game: Game, r: Restriction, i: str, s_star: str) -> list[dict]:
    return [opp for opp in r.opponent_profiles(game, i)
            if _optimal_against(game, i, s_star, [tuple(opp[j] for j in game.opponents(i))], r[i])]


class CanonicalModel(NamedTuple):
    model: BeliefModel
    report: CompletenessReport
    ia: IALevels
    layout: dict


def build_canonical_model(game: Game, ia: IALevels | None = None) -> CanonicalModel:
    """Build the level-indexed model mirroring the IA rounds.

    For every round ``m`` and player ``i`` a level type ``L{m}`` believes
    ``∏_{j≠i} {(s_j, L{m-1}_j) : s_j ∈ S_j^m}`` (level 0 pairs with ``L0``).
    For every strategy admissible in ``∏ S^m`` a witness type ``W{m}:{s}``
    believes exactly the columns where ``s`` is pointwise maximal in the
    rectangle.  Types with identical beliefs are shared; ``layout`` records
    which id each level/witness slot resolved to.
    """
    ia = ia or ia_levels(game)
    types = {p: [] for p in game.players}
    beliefs = {p: {} for p in game.players}
    layout = {}

    def add(i, wanted_id, joint_set):
        for t, existing in beliefs[i].items():
            if existing == joint_set:
                return t
        types[i].append(wanted_id)
        beliefs[i][wanted_id] = joint_set
        return wanted_id

    level_type = {p: {} for p in game.players}
    for m in range(ia.fixpoint_round + 1):
        rect = ia.levels[m]
        # Level-m types need the previous level's opponent types.
        pending = {}
        for i in game.players:
            opp_sets = []
            for j in game.opponents(i):
                tj = "L0" if m == 0 else level_type[j][m - 1]
                opp_sets.append([PlayerState(j, s, tj) for s in rect[j]])
            pending[i] = frozenset(tuple(c) for c in itertools.product(*opp_sets))
        for i in game.players:
            level_type[i][m] = add(i, f"L{m}", pending[i])
            layout[("level", i, m)] = level_type[i][m]

    for m in range(ia.fixpoint_round + 1):
        rect = ia.levels[m]
        for i in game.players:
            opps = game.opponents(i)
            for s_star in admissible_set(game, rect, i):
                cols = _pointwise_max_columns(game, rect, i, s_star)
                if not cols:
                    continue
                joint_set = frozenset(
                    tuple(PlayerState(j, col[j], level_type[j][max(m - 1, 0)]) for j in opps)
                    for col in cols)
                layout[("witness", i, m, s_star)] = add(i, f"W{m}:{s_star}", joint_set)

    model = BeliefModel(game, types, beliefs)
    report = check_rationality_complete(model, IA_CHAIN, ia)
    return CanonicalModel(model, report, ia, layout)
