"""The forcing construction realised on finite belief models.

Conditions are state profiles at which every player is rational and all
players' types reach one another by belief unfolding at some depth ``m``.
Conditions are preordered by their level: ``φ′ ⪯ φ`` iff ``m(φ) ≥ m(φ′)``.
Everything "for every m" is evaluated up to a truncation depth ``m_max``;
because the RmAR chain stabilises, the default depth (fixpoint round + 1)
loses nothing.

Subset enumeration (all dominations, all candidate generic filters) is done
with numpy bitmasks and is only attempted for posets of at most
``EXHAUSTIVE_LIMIT`` conditions.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .belief import (
    BeliefModel,
    EpistemicLevels,
    PlayerState,
    rational_states,
    rmar_levels,
    unfold,
)
from .errors import InputError, PreconditionError

EXHAUSTIVE_LIMIT = 20
WITNESS = "witness"
EXHAUSTIVE = "exhaustive"


@dataclass(frozen=True, order=True)
class Condition:
    profile: tuple
    level_set: frozenset = field(compare=False)

    def __post_init__(self):
        if not self.level_set:
            raise InputError(f"condition {self.profile} has an empty level set")

    @property
    def canonical_level(self) -> int:
        return max(self.level_set)

    def __repr__(self):
        states = ", ".join(f"{ps.player}:({ps.strategy},{ps.type})" for ps in self.profile)
        return f"Condition<{states} | m={self.canonical_level}>"


def order_leq(lower: Condition, upper: Condition) -> bool:
    """``lower ⪯ upper``: ``upper`` dominates ``lower``."""
    return upper.canonical_level >= lower.canonical_level


def default_m_max(levels: EpistemicLevels) -> int:
    return levels.fixpoint_round + 1


# -- the poset ---------------------------------------------------------------

class _Unfolder:
    """Caches ``P^m_k[t_k]`` for every type of a model."""

    def __init__(self, model: BeliefModel, cumulative: bool):
        self.model = model
        self.cumulative = cumulative
        self._cache = {}

    def __call__(self, i, t, m):
        key = (i, t, m)
        if key not in self._cache:
            self._cache[key] = unfold(self.model, i, t, m, cumulative=self.cumulative)
        return self._cache[key]


def condition_levels(model: BeliefModel, profile, m_max: int, *, cumulative: bool = False,
                     self_pairs: bool = False, _rational=None, _unfold=None) -> frozenset:
    """All ``m ≤ m_max`` at which ``profile`` qualifies as a condition.

    Requires every player rational and ``t_j ∈ P^m_i[t_i]`` for every ordered
    pair ``i ≠ j`` (also ``i = j`` when ``self_pairs``).
    """
    rational = _rational or {p: rational_states(model, p) for p in model.game.players}
    if not all(ps in rational[ps.player] for ps in profile):
        return frozenset()
    unf = _unfold or _Unfolder(model, cumulative)
    out = set()
    for m in range(m_max + 1):
        ok = True
        for a in profile:
            reach = unf(a.player, a.type, m)
            for b in profile:
                if (a.player != b.player or self_pairs) and (b.player, b.type) not in reach:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.add(m)
    return frozenset(out)


@dataclass
class ConditionPoset:
    elements: tuple[Condition, ...]
    m_max: int
    cumulative: bool = False
    self_pairs: bool = False

    def __post_init__(self):
        self._by_profile = {c.profile: c for c in self.elements}

    def __len__(self):
        return len(self.elements)

    def __contains__(self, item) -> bool:
        return _profile_of(item) in self._by_profile

    def get(self, item) -> Condition | None:
        return self._by_profile.get(_profile_of(item))

    def slice(self, m: int) -> list[Condition]:
        """``D_m = {φ : m(φ) ≥ m}``."""
        return [c for c in self.elements if c.canonical_level >= m]

    def levels_histogram(self) -> dict[int, int]:
        hist = {}
        for c in self.elements:
            hist[c.canonical_level] = hist.get(c.canonical_level, 0) + 1
        return dict(sorted(hist.items()))


def _profile_of(item):
    return item.profile if isinstance(item, Condition) else tuple(item)


def build_poset(model: BeliefModel, m_max: int | None = None, *, cumulative: bool = False,
                self_pairs: bool = False, levels: EpistemicLevels | None = None) -> ConditionPoset:
    """Enumerate every state profile and keep those with a nonempty level set."""
    if m_max is None:
        m_max = default_m_max(levels or rmar_levels(model))
    rational = {p: rational_states(model, p) for p in model.game.players}
    unf = _Unfolder(model, cumulative)
    elements = []
    candidates = [sorted(rational[p]) for p in model.game.players]
    for combo in itertools.product(*candidates):
        lv = condition_levels(model, combo, m_max, cumulative=cumulative, self_pairs=self_pairs,
                              _rational=rational, _unfold=unf)
        if lv:
            elements.append(Condition(tuple(combo), lv))
    return ConditionPoset(tuple(elements), m_max, cumulative, self_pairs)


# -- filters and dense sets ----------------------------------------------------

@dataclass(frozen=True)
class SetCheck:
    ok: bool
    violation: str | None = None
    witness: tuple = ()


def _resolve(f: Iterable, poset: ConditionPoset):
    members, missing = [], []
    for item in f:
        c = poset.get(item)
        (members if c is not None else missing).append(c if c is not None else item)
    return members, missing


def is_correct_set(f: Iterable, poset: ConditionPoset) -> SetCheck:
    """Nonempty, upward closed and directed, with the order taken from ``poset``."""
    members, missing = _resolve(f, poset)
    if missing:
        return SetCheck(False, "not in poset", tuple(missing[:1]))
    if not members:
        return SetCheck(False, "empty")
    inside = {c.profile for c in members}
    for low in members:
        for high in poset.elements:
            if order_leq(low, high) and high.profile not in inside:
                return SetCheck(False, "not upward closed", (low, high))
    top = max(members, key=lambda c: c.canonical_level)
    for a, b in itertools.combinations_with_replacement(members, 2):
        if order_leq(a, top) and order_leq(b, top):
            continue
        if not any(order_leq(a, c) and order_leq(b, c) for c in members):
            return SetCheck(False, "not directed", (a, b))
    return SetCheck(True)


def is_domination(d: Iterable, poset: ConditionPoset) -> bool:
    """Every poset element is dominated by some member of ``d``."""
    members, missing = _resolve(d, poset)
    if missing:
        raise InputError("domination candidates must be poset elements")
    if not members:
        return len(poset) == 0
    top = max(members, key=lambda c: c.canonical_level)
    return all(order_leq(low, top) or any(order_leq(low, c) for c in members)
               for low in poset.elements)


def delta_set(model: BeliefModel, m_max: int | None = None,
              levels: EpistemicLevels | None = None) -> frozenset:
    """Profiles with a common ``m ≤ m_max`` putting every state in ``R^m``."""
    levels = levels or rmar_levels(model)
    if m_max is None:
        m_max = default_m_max(levels)
    players = model.game.players
    out = set()
    for combo in itertools.product(*(sorted(levels.level(p, 0)) for p in players)):
        lv = frozenset(m for m in range(m_max + 1)
                       if all(ps in levels.level(ps.player, m) for ps in combo))
        if lv:
            out.add(Condition(tuple(combo), lv))
    return frozenset(out)


def domination_family(poset: ConditionPoset) -> dict[int, list[Condition]]:
    """The canonical dense sets ``D_m`` for ``m ≤ m_max``."""
    return {m: poset.slice(m) for m in range(poset.m_max + 1)}


def _masks(poset: ConditionPoset):
    """``up[k]``: bitmask of elements dominating element ``k``."""
    els = poset.elements
    up = []
    for a in els:
        mask = 0
        for b_idx, b in enumerate(els):
            if order_leq(a, b):
                mask |= 1 << b_idx
        up.append(mask)
    return up


def all_dominations(poset: ConditionPoset) -> np.ndarray:
    """Bitmasks of every subset of the poset that is a domination."""
    k = len(poset)
    if k > EXHAUSTIVE_LIMIT:
        raise InputError(f"poset has {k} conditions; exhaustive limit is {EXHAUSTIVE_LIMIT}")
    subsets = np.arange(1 << k, dtype=np.int64)
    ok = np.ones(subsets.shape, dtype=bool)
    for mask in _masks(poset):
        ok &= (subsets & mask) != 0
    return subsets[ok]


def all_correct_sets(poset: ConditionPoset) -> list[int]:
    """Bitmasks of every correct set (filter) of a small poset."""
    k = len(poset)
    if k > EXHAUSTIVE_LIMIT:
        raise InputError(f"poset has {k} conditions; exhaustive limit is {EXHAUSTIVE_LIMIT}")
    up = _masks(poset)
    subsets = np.arange(1, 1 << k, dtype=np.int64)
    ok = np.ones(subsets.shape, dtype=bool)
    for idx, mask in enumerate(up):
        has = (subsets >> idx) & 1
        ok &= (has == 0) | ((subsets & mask) == mask)
    out = []
    for s in subsets[ok].tolist():
        idxs = [b for b in range(k) if s >> b & 1]
        if all(s & up[a] & up[b] for a, b in itertools.combinations(idxs, 2)):
            out.append(s)
    return out


def _mask_of(items, poset: ConditionPoset) -> int:
    index = {c.profile: b for b, c in enumerate(poset.elements)}
    mask = 0
    for it in items:
        b = index.get(_profile_of(it))
        if b is not None:
            mask |= 1 << b
    return mask


# -- the generic set -------------------------------------------------------------

@dataclass
class GenericityReport:
    empty: bool
    subset_of_delta: bool
    subset_of_poset: bool
    correct: SetCheck | None
    meets_canonical: dict[int, bool]
    meets_all_dominations: bool | None  # None when the poset is too large to enumerate
    dominations_checked: int
    dominated_by_every_generic: bool
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        if self.empty:
            return True
        return (self.subset_of_delta and self.subset_of_poset and bool(self.correct and self.correct.ok)
                and all(self.meets_canonical.values()) and self.meets_all_dominations is not False
                and self.dominated_by_every_generic)


def generic_set(model: BeliefModel, poset: ConditionPoset | None = None,
                levels: EpistemicLevels | None = None, delta: frozenset | None = None):
    """``𝒢``: profiles whose every state survives all RmAR levels.

    Returns ``(generic, report)``; the report checks ``𝒢 ⊆ δ``, the filter
    property, that ``𝒢`` meets each ``D_m`` and (for small posets) every
    domination, and that every condition is dominated by every member of ``𝒢``.
    """
    levels = levels or rmar_levels(model)
    poset = poset or build_poset(model, levels=levels)
    m_max = poset.m_max
    if delta is None:
        delta = delta_set(model, m_max, levels)
    players = model.game.players
    generic = frozenset(
        Condition(tuple(combo), frozenset(range(m_max + 1)))
        for combo in itertools.product(*(sorted(levels.r_infinity[p]) for p in players)))
    if not generic:
        return generic, GenericityReport(True, True, True, None, {}, None, 0, True,
                                         ["no generic profile: some R^inf is empty"])
    delta_profiles = {c.profile for c in delta}
    subset_delta = all(g.profile in delta_profiles for g in generic)
    subset_poset = all(g in poset for g in generic)
    correct = is_correct_set(generic, poset)
    gprofiles = {g.profile for g in generic}
    meets = {}
    for m, d in domination_family(poset).items():
        if d and is_domination(d, poset):
            meets[m] = any(c.profile in gprofiles for c in d)
    in_poset = [poset.get(g) for g in generic if g in poset]
    dominated = all(order_leq(phi, g) for phi in poset.elements for g in in_poset)
    notes = []
    if len(poset) <= EXHAUSTIVE_LIMIT:
        doms = all_dominations(poset)
        gmask = _mask_of(generic, poset)
        meets_all = bool(np.all((doms & gmask) != 0))
        checked = int(doms.size)
    else:
        meets_all, checked = None, 0
        notes.append(f"poset has {len(poset)} conditions; only D_m checked")
    return generic, GenericityReport(False, subset_delta, subset_poset, correct, meets,
                                     meets_all, checked, dominated, notes)


# -- names and referential values -------------------------------------------------

@dataclass(frozen=True)
class GName:
    rank: int
    entries: frozenset  # of (GName | None, Condition)

    @property
    def empty(self) -> bool:
        return not self.entries

    def __repr__(self):
        return f"GName(rank={self.rank}, entries={len(self.entries)})"


def canonical_names(generic: Iterable[Condition], max_rank: int) -> list[GName]:
    """Canonical names of rank ``0..max_rank``.

    Rank 0 pairs the empty marker with every ``γ`` holding at level 0; rank
    ``m`` pairs every lower-rank canonical name with every ``γ`` holding at
    level ``m``.  A condition "holds at level m" when ``m`` is in its level
    set.
    """
    generic = sorted(generic)
    names = []
    for m in range(max_rank + 1):
        at_m = [g for g in generic if m in g.level_set]
        if m == 0:
            entries = frozenset((None, g) for g in at_m)
        else:
            entries = frozenset((child, g) for child in names for g in at_m)
        names.append(GName(m, entries))
    return names


def canonical_name(rank: int, generic: Iterable[Condition], m_max: int | None = None) -> GName:
    if m_max is not None and rank > m_max:
        raise PreconditionError(f"rank {rank} exceeds m_max {m_max}")
    return canonical_names(generic, rank)[rank]


class _WholeModel:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "WHOLE_MODEL"

    def __reduce__(self):
        return (_WholeModel, ())


WHOLE_MODEL = _WholeModel()


@dataclass(frozen=True)
class Leaf:
    event: frozenset


@dataclass(frozen=True)
class Node:
    children: frozenset


def depth(value) -> int:
    if isinstance(value, Node):
        return 1 + max((depth(c) for c in value.children), default=0)
    return 1


def leaf_profiles(value) -> set:
    if isinstance(value, Leaf):
        return set(value.event)
    if isinstance(value, Node):
        out = set()
        for c in value.children:
            out |= leaf_profiles(c)
        return out
    return set()


def referential_value(mu: GName, generic: Iterable[Condition], model: BeliefModel,
                      levels: EpistemicLevels | None = None):
    """Evaluate ``r_𝒢(μ)``; only entries whose condition lies in ``𝒢`` count."""
    levels = levels or rmar_levels(model)
    gprofiles = {_profile_of(g) for g in generic}
    players = model.game.players
    memo = {}

    def ev(name):
        key = id(name)
        if key in memo:
            return memo[key]
        live = [(child, g) for child, g in name.entries if g.profile in gprofiles]
        if name.rank == 0:
            out = Leaf(levels.level_event(players, 0)) if live else WHOLE_MODEL
        else:
            out = Node(frozenset(ev(child) if child is not None else WHOLE_MODEL
                                 for child, _ in live))
        memo[key] = out
        return out

    return ev(mu)


# -- the extension M0[G] -------------------------------------------------------------

@dataclass
class StrictnessCertificate:
    """Mixed-level profiles: a ground event no generic condition names."""

    event: frozenset
    state_levels: dict
    name: GName
    value: object


@dataclass
class Extension:
    values: list
    names: list[GName]
    certificate: StrictnessCertificate | None
    vacuous: bool
    notes: list[str] = field(default_factory=list)

    @property
    def degenerate(self) -> bool:
        return self.certificate is None


def _level_key(levels: EpistemicLevels, ps: PlayerState):
    lv = levels.state_level(ps)
    return "inf" if lv is None else lv


def extend_model(model: BeliefModel, generic: Iterable[Condition], m_max: int | None = None,
                 levels: EpistemicLevels | None = None) -> Extension:
    """Evaluate every canonical name up to ``m_max`` and look for a strictness certificate."""
    levels = levels or rmar_levels(model)
    if m_max is None:
        m_max = default_m_max(levels)
    generic = list(generic)
    names = canonical_names(generic, m_max)
    values, used = [], []
    for mu in names:
        if mu.rank > 0 and mu.empty:
            continue
        v = referential_value(mu, generic, model, levels)
        if v not in values:
            values.append(v)
        used.append(mu)
    notes = []
    if not generic:
        notes.append("generic set is empty; only WHOLE_MODEL is named")

    mixed, lvmap = set(), {}
    players = model.game.players
    for combo in itertools.product(*(sorted(levels.level(p, 0)) for p in players)):
        keys = {ps: _level_key(levels, ps) for ps in combo}
        if len(set(keys.values())) >= 2:
            mixed.add(tuple(combo))
            lvmap.update(keys)
    cert = None
    if mixed:
        conds = frozenset((None, Condition(p, frozenset({0}))) for p in sorted(mixed))
        name = GName(0, conds)
        cert = StrictnessCertificate(frozenset(mixed), lvmap, name,
                                     referential_value(name, generic, model, levels))
    else:
        notes.append("all rational states share one RmAR level; no mixed-level event")
    return Extension(values, used, cert, not generic, notes)


# -- forcing ------------------------------------------------------------------------

def psi(profile, levels: EpistemicLevels, m_max: int) -> bool:
    """Every state of ``profile`` lies in ``R^m`` for all ``m ≤ m_max`` and in ``R^∞``."""
    return all(ps in levels.r_infinity[ps.player]
               and all(ps in levels.level(ps.player, m) for m in range(m_max + 1))
               for ps in profile)


@dataclass
class ForcingVerdict:
    holds: bool
    mode: str
    evidence: list
    filters_checked: int = 0
    vacuous: bool = False
    notes: list[str] = field(default_factory=list)


def _witness_check(gamma, value, levels, m_max):
    leaves = leaf_profiles(value)
    checked = sorted(p for p in leaves if p in _rinf_event(levels))
    ok = psi(gamma.profile, levels, m_max) and all(psi(p, levels, m_max) for p in checked)
    if leaves and gamma.profile not in leaves:
        ok = False
    return ok, checked


def _rinf_event(levels):
    return levels.level_event(list(levels.chain), None)


def forces(gamma: Condition, mu: GName, model: BeliefModel, mode: str = WITNESS, *,
           generic: Iterable[Condition] | None = None, poset: ConditionPoset | None = None,
           levels: EpistemicLevels | None = None) -> ForcingVerdict:
    """Decide ``γ ⊩ Ψ(μ)`` for ``Ψ`` = "every state is in ``R^∞``".

    Witness mode evaluates ``μ`` under the computed ``𝒢`` and re-verifies
    every leaf profile lying in ``∏ R^∞`` plus ``γ``'s own profile.
    Exhaustive mode repeats the check under every correct set ``𝒢′ ∋ γ``
    meeting every domination of a poset with at most ``EXHAUSTIVE_LIMIT``
    conditions.
    """
    levels = levels or rmar_levels(model)
    poset = poset or build_poset(model, levels=levels)
    m_max = poset.m_max
    if generic is None:
        generic, _ = generic_set(model, poset, levels)
    generic = list(generic)
    gprofiles = {g.profile for g in generic}

    if mode == WITNESS:
        if gamma.profile not in gprofiles:
            raise PreconditionError("witness mode requires a condition of the generic set")
        value = referential_value(mu, generic, model, levels)
        ok, checked = _witness_check(gamma, value, levels, m_max)
        return ForcingVerdict(ok, WITNESS, [gamma.profile] + [p for p in checked if p != gamma.profile])

    if mode != EXHAUSTIVE:
        raise InputError(f"unknown forcing mode {mode!r}")
    if len(poset) > EXHAUSTIVE_LIMIT:
        raise PreconditionError(f"exhaustive mode needs a poset of at most {EXHAUSTIVE_LIMIT} conditions")
    if gamma not in poset:
        return ForcingVerdict(False, EXHAUSTIVE, [], 0, True, ["condition is not in the poset"])
    doms = all_dominations(poset)
    gbit = _mask_of([gamma], poset)
    evidence, count, ok = [], 0, True
    for fmask in all_correct_sets(poset):
        if not fmask & gbit or not bool(np.all((doms & fmask) != 0)):
            continue
        count += 1
        members = [c for b, c in enumerate(poset.elements) if fmask >> b & 1]
        value = referential_value(mu, members, model, levels)
        good, checked = _witness_check(gamma, value, levels, m_max)
        ok &= good
        evidence.append({"filter": sorted(c.profile for c in members), "checked": checked, "holds": good})
    verdict = ForcingVerdict(ok, EXHAUSTIVE, evidence, count, count == 0)
    if count == 0:
        verdict.notes.append("no generic filter contains the condition")
    return verdict


# -- bounded indiscernibility probe -------------------------------------------------

@dataclass
class ProbeResult:
    separator: str | None
    size: int | None
    vacuous: bool
    degenerate: bool
    exhausted: bool
    terms_seen: int
    notes: list[str] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.separator is not None


def base_vocabulary(model: BeliefModel, levels: EpistemicLevels) -> dict[str, frozenset]:
    """Ground events: rationality and ``R^m_i`` cylinders (``m`` below the fixpoint) and state cylinders."""
    players = model.game.players
    profiles = model.profiles()
    vocab = {}

    def cylinder(pred):
        return frozenset(p for p in profiles if pred(p))

    for k, p in enumerate(players):
        r0 = levels.level(p, 0)
        vocab[f"rational[{p}]"] = cylinder(lambda prof, k=k, r0=r0: prof[k] in r0)
        for m in range(1, levels.fixpoint_round):
            rm = levels.level(p, m)
            vocab[f"R{m}[{p}]"] = cylinder(lambda prof, k=k, rm=rm: prof[k] in rm)
        for ps in model.states(p):
            vocab[f"at[{p}:{ps.strategy},{ps.type}]"] = cylinder(lambda prof, k=k, ps=ps: prof[k] == ps)
    return vocab


def indiscernibility_probe(model: BeliefModel, generic: Iterable[Condition], k: int = 2,
                           levels: EpistemicLevels | None = None, *, max_k: int = 6,
                           budget: int = 200_000) -> ProbeResult:
    """Search formulas of at most ``k`` connectives for one defining ``𝒢`` exactly.

    A hit only shows the bounded vocabulary is expressive enough on this
    model; the fixpoint events themselves are never in the vocabulary.
    """
    if not 0 <= k <= max_k:
        raise PreconditionError(f"term size must be within 0..{max_k}")
    levels = levels or rmar_levels(model)
    profiles = model.profiles()
    index = {p: b for b, p in enumerate(profiles)}
    full = (1 << len(profiles)) - 1
    target = 0
    for g in generic:
        target |= 1 << index[_profile_of(g)]
    degenerate = levels.fixpoint_round == 0
    if target == 0:
        return ProbeResult("~TOP", 0, True, degenerate, False, 0, ["generic set is empty"])

    def mask(ev):
        out = 0
        for p in ev:
            out |= 1 << index[p]
        return out

    seen = {}
    by_size = [[]]
    for name, ev in base_vocabulary(model, levels).items():
        mk = mask(ev)
        if mk not in seen:
            seen[mk] = name
            by_size[0].append(mk)
    if target in seen:
        return ProbeResult(seen[target], 0, False, degenerate, False, len(seen))
    for size in range(1, k + 1):
        fresh = []

        def push(mk, text):
            if mk not in seen:
                seen[mk] = text
                fresh.append(mk)
            return mk == target

        for a in by_size[size - 1]:
            if push(full & ~a, f"~({seen[a]})"):
                return ProbeResult(seen[target], size, False, degenerate, False, len(seen))
        for left in range(size):
            right = size - 1 - left
            if right < left:
                break
            for a in by_size[left]:
                for b in by_size[right]:
                    if push(a | b, f"({seen[a]} | {seen[b]})") or push(a & b, f"({seen[a]} & {seen[b]})"):
                        return ProbeResult(seen[target], size, False, degenerate, False, len(seen))
                    if len(seen) > budget:
                        return ProbeResult(None, None, False, degenerate, True, len(seen),
                                           [f"term budget {budget} exhausted at size {size}"])
        by_size.append(fresh)
    return ProbeResult(None, None, False, degenerate, False, len(seen))


# -- one-call bundle -------------------------------------------------------------------

@dataclass
class ForcingAnalysis:
    model: BeliefModel
    levels: EpistemicLevels
    poset: ConditionPoset
    delta: frozenset
    generic: frozenset
    genericity: GenericityReport
    extension: Extension

    @property
    def m_max(self) -> int:
        return self.poset.m_max


def analyse(model: BeliefModel, m_max: int | None = None, *, cumulative: bool = False,
            self_pairs: bool = False, levels: EpistemicLevels | None = None) -> ForcingAnalysis:
    levels = levels or rmar_levels(model)
    if m_max is None:
        m_max = default_m_max(levels)
    poset = build_poset(model, m_max, cumulative=cumulative, self_pairs=self_pairs, levels=levels)
    delta = delta_set(model, m_max, levels)
    generic, report = generic_set(model, poset, levels, delta)
    ext = extend_model(model, generic, m_max, levels)
    return ForcingAnalysis(model, levels, poset, delta, generic, report, ext)
