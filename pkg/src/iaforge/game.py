"""Finite strategic-form games with exact rational payoffs.

Profiles are always per-player mappings (``{player: strategy}``); positional
tuples only appear internally, ordered like ``Game.players``.  All payoffs are
:class:`fractions.Fraction` values, never floats.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import InputError, InvariantError

Profile = Mapping[str, str]


def as_rational(value) -> Fraction:
    """Coerce ``value`` to a Fraction, refusing floats.

    Accepts ints, Fractions and strings of the form ``"p/q"`` or ``"p"``.
    """
    if isinstance(value, bool):
        raise InputError(f"boolean is not a payoff: {value!r}")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        num, sep, den = text.partition("/")
        try:
            if sep:
                return Fraction(int(num), int(den))
            return Fraction(int(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not an exact rational: {value!r}") from exc
    raise InputError(f"not an exact rational: {value!r} ({type(value).__name__})")


def format_rational(q: Fraction) -> str:
    return str(q)


@dataclass(frozen=True)
class Game:
    """An immutable n-player strategic-form game.

    ``payoffs`` maps positional profiles (ordered like ``players``) to a tuple
    of payoffs, one per player.  Use :meth:`from_records`, :meth:`bimatrix` or
    :meth:`from_function` rather than building the table by hand.
    """

    players: tuple[str, ...]
    strategies: tuple[tuple[str, ...], ...]
    payoffs: Mapping[tuple[str, ...], tuple[Fraction, ...]] = field(repr=False)
    _index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.players:
            raise InputError("a game needs at least one player")
        if len(set(self.players)) != len(self.players):
            raise InputError(f"duplicate player identifiers: {self.players}")
        if len(self.strategies) != len(self.players):
            raise InputError("one strategy list per player is required")
        for p, strats in zip(self.players, self.strategies):
            if not strats:
                raise InputError(f"player {p!r} has no strategies")
            if len(set(strats)) != len(strats):
                raise InputError(f"duplicate strategy labels for player {p!r}")
        n = len(self.players)
        for key in itertools.product(*self.strategies):
            vals = self.payoffs.get(key)
            if vals is None:
                raise InputError(f"missing payoff cell {dict(zip(self.players, key))}")
            if len(vals) != n:
                raise InputError(f"payoff cell {key} must hold {n} values")
        if len(self.payoffs) != _product_size(self.strategies):
            raise InputError("payoff table has cells outside the strategy space")
        object.__setattr__(self, "_index", {p: k for k, p in enumerate(self.players)})

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_function(cls, players: Sequence[str], strategies: Mapping[str, Sequence[str]], fn):
        """Build a game from ``fn(profile_dict) -> {player: payoff}``."""
        players = tuple(players)
        strats = tuple(tuple(strategies[p]) for p in players)
        table = {}
        for key in itertools.product(*strats):
            vals = fn(dict(zip(players, key)))
            table[key] = tuple(as_rational(vals[p]) for p in players)
        return cls(players, strats, table)

    @classmethod
    def from_records(cls, players, strategies, records):
        """Build a game from ``[(profile_dict, {player: value}), ...]``."""
        players = tuple(players)
        strats = tuple(tuple(strategies[p]) for p in players)
        table = {}
        for profile, values in records:
            if set(profile) != set(players):
                raise InputError(f"profile {profile} must name every player exactly once")
            key = tuple(profile[p] for p in players)
            for p, s in zip(players, key):
                if s not in strats[players.index(p)]:
                    raise InputError(f"unknown strategy {s!r} for player {p!r}")
            if key in table:
                raise InputError(f"duplicate profile {profile}")
            if set(values) != set(players):
                raise InputError(f"profile {profile} needs a value for every player")
            table[key] = tuple(as_rational(values[p]) for p in players)
        return cls(players, strats, table)

    @classmethod
    def bimatrix(cls, rows, cols, row_payoffs, col_payoffs, players=("row", "col")):
        """Two-player game from nested lists ``row_payoffs[r][c]``."""
        rows, cols = tuple(rows), tuple(cols)
        table = {}
        for a, r in enumerate(rows):
            for b, c in enumerate(cols):
                table[(r, c)] = (as_rational(row_payoffs[a][b]), as_rational(col_payoffs[a][b]))
        return cls(tuple(players), (rows, cols), table)

    # -- accessors ----------------------------------------------------------

    @property
    def n_players(self) -> int:
        return len(self.players)

    def index(self, player: str) -> int:
        try:
            return self._index[player]
        except KeyError:
            raise InputError(f"unknown player {player!r}") from None

    def strategies_of(self, player: str) -> tuple[str, ...]:
        return self.strategies[self.index(player)]

    def opponents(self, player: str) -> tuple[str, ...]:
        self.index(player)
        return tuple(p for p in self.players if p != player)

    def key(self, profile: Profile) -> tuple[str, ...]:
        """Positional key of a full profile; validates every label."""
        if len(profile) != len(self.players) or set(profile) != set(self.players):
            raise InputError(f"profile {dict(profile)} must assign exactly one strategy to each player")
        key = tuple(profile[p] for p in self.players)
        for k, s in enumerate(key):
            if s not in self.strategies[k]:
                raise InputError(f"unknown strategy {s!r} for player {self.players[k]!r}")
        return key

    def profiles(self) -> Iterator[dict[str, str]]:
        for key in itertools.product(*self.strategies):
            yield dict(zip(self.players, key))

    def value(self, player: str, key: tuple[str, ...]) -> Fraction:
        """Unchecked fast path: payoff of ``player`` at a positional key."""
        return self.payoffs[key][self._index[player]]


def _product_size(lists) -> int:
    size = 1
    for x in lists:
        size *= len(x)
    return size


class Restriction:
    """A rectangle of per-player strategy subsets ``S̄_i ⊆ S_i``.

    Construction never fails on content (empty or foreign subsets are allowed
    so that :func:`validate_restriction` can report them); operations that
    need a valid rectangle validate on entry.
    """

    __slots__ = ("_sets",)

    def __init__(self, sets: Mapping[str, Iterable[str]]):
        self._sets = {p: tuple(dict.fromkeys(s)) for p, s in sets.items()}

    @classmethod
    def full(cls, game: Game) -> "Restriction":
        return cls(dict(zip(game.players, game.strategies)))

    def __getitem__(self, player: str) -> tuple[str, ...]:
        return self._sets[player]

    def __contains__(self, player) -> bool:
        return player in self._sets

    def items(self):
        return self._sets.items()

    def players(self) -> tuple[str, ...]:
        return tuple(self._sets)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Restriction):
            return NotImplemented
        return self._frozen() == other._frozen()

    def __hash__(self) -> int:
        return hash(frozenset(self._frozen().items()))

    def _frozen(self):
        return {p: frozenset(s) for p, s in self._sets.items()}

    def issubset(self, other: "Restriction") -> bool:
        return all(set(s) <= set(other._sets.get(p, ())) for p, s in self._sets.items())

    def ordered(self, game: Game) -> "Restriction":
        """Same rectangle with every subset listed in the game's strategy order."""
        return Restriction({p: [s for s in game.strategies_of(p) if s in self._sets.get(p, ())]
                            for p in game.players})

    def replace(self, player: str, subset: Iterable[str]) -> "Restriction":
        sets = dict(self._sets)
        sets[player] = tuple(subset)
        return Restriction(sets)

    def opponent_profiles(self, game: Game, player: str) -> list[dict[str, str]]:
        """All ``s_{-i}`` in ``∏_{j≠i} S̄_j``, in lexicographic game order."""
        opps = game.opponents(player)
        return [dict(zip(opps, combo)) for combo in itertools.product(*(self._sets[j] for j in opps))]

    def profiles(self, game: Game) -> Iterator[dict[str, str]]:
        for combo in itertools.product(*(self._sets[p] for p in game.players)):
            yield dict(zip(game.players, combo))

    def size(self) -> int:
        return _product_size(self._sets.values())

    def to_dict(self) -> dict[str, list[str]]:
        return {p: list(s) for p, s in self._sets.items()}

    def __repr__(self) -> str:
        inner = " x ".join("{" + ",".join(s) + "}" for s in self._sets.values())
        return f"Restriction({inner})"


@dataclass(frozen=True)
class Violation:
    player: str
    reason: str


def validate_restriction(game: Game, r: Restriction) -> Violation | None:
    """Return ``None`` when ``r`` is a valid rectangle of ``game``.

    Otherwise return a :class:`Violation` naming the first offending player
    in game order.
    """
    for p in game.players:
        if p not in r:
            return Violation(p, "no subset given")
        subset = r[p]
        if not subset:
            return Violation(p, "empty strategy subset")
        strats = game.strategies_of(p)
        foreign = [s for s in subset if s not in strats]
        if foreign:
            return Violation(p, f"labels not in S_{p}: {foreign}")
    extra = [p for p in r.players() if p not in game.players]
    if extra:
        return Violation(extra[0], "not a player of the game")
    return None


def require_valid(game: Game, r: Restriction) -> None:
    v = validate_restriction(game, r)
    if v is not None:
        raise InputError(f"invalid restriction for player {v.player!r}: {v.reason}")


@dataclass(frozen=True)
class MixedStrategy:
    """A probability vector over one player's strategies, exact weights."""

    player: str
    weights: Mapping[str, Fraction]

    @classmethod
    def pure(cls, player: str, strategy: str) -> "MixedStrategy":
        return cls(player, {strategy: Fraction(1)})

    def check(self) -> None:
        if any(w < 0 for w in self.weights.values()):
            raise InvariantError(f"negative weight in mixture for {self.player!r}")
        total = sum(self.weights.values(), Fraction(0))
        if total != 1:
            raise InvariantError(f"mixture weights sum to {total}, not 1")

    def support(self) -> tuple[str, ...]:
        return tuple(s for s, w in self.weights.items() if w != 0)

    def to_dict(self) -> dict[str, str]:
        return {s: format_rational(w) for s, w in self.weights.items() if w != 0}


def payoff(game: Game, i: str, profile: Profile) -> Fraction:
    """``Π_i(profile)``, exactly as stored."""
    k = game.index(i)
    return game.payoffs[game.key(profile)][k]


def expected_payoff(game: Game, i: str, mix: MixedStrategy, opp: Profile) -> Fraction:
    """``Π_i(σ, s_{-i}) = Σ_s σ(s) Π_i(s, s_{-i})``."""
    if mix.player != i:
        raise InputError(f"mixture belongs to {mix.player!r}, not {i!r}")
    mix.check()
    if i in opp:
        raise InputError(f"opponent profile must not assign a strategy to {i!r}")
    total = Fraction(0)
    for s, w in mix.weights.items():
        if w:
            total += w * payoff(game, i, {**opp, i: s})
    return total
