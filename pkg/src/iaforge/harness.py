"""Exhaustive desk-scale verification.

The oracle here shares :mod:`iaforge.game` with the library but never touches
the simplex: dominance is decided by enumerating vertices of the polytope of
dominating-or-equal mixtures and solving each vertex's linear system with
plain Gaussian elimination over fractions.
"""
from __future__ import annotations

import itertools
import logging
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .admissibility import ia_levels, ia_set
from .belief import (
    IA_CHAIN,
    BeliefModel,
    build_canonical_model,
    check_rationality_complete,
    rational_states,
    rational_states_within,
    rmar_levels,
)
from .errors import InputError
from .forcing import (
    EXHAUSTIVE,
    EXHAUSTIVE_LIMIT,
    WITNESS,
    Leaf,
    analyse,
    canonical_names,
    depth,
    forces,
    is_correct_set,
    referential_value,
)
from .game import Game, Restriction
from .serialization import game_to_dict

log = logging.getLogger(__name__)

CONFIRMED = "confirmed"
UNMET = "hypothesis-unmet"
VIOLATION = "VIOLATION"
ORACLE_LIMIT = 4


@dataclass(frozen=True)
class GameFamilySpec:
    """All games with the given shape and payoffs drawn from ``values``.

    With ``sample`` set, ``sample`` games are drawn at random (seeded) instead
    of enumerating the family.
    """

    players: int = 2
    strategies: tuple[int, ...] = (2, 2)
    values: tuple[int, ...] = (0, 1, 2)
    cap: int | None = None
    seed: int = 0
    sample: int | None = None

    def __post_init__(self):
        if self.players < 1 or len(self.strategies) != self.players:
            raise InputError("one strategy count per player is required")
        if any(k < 1 for k in self.strategies) or not self.values:
            raise InputError("strategy counts must be positive and values nonempty")

    @property
    def cells(self) -> int:
        n = 1
        for k in self.strategies:
            n *= k
        return n * self.players

    @property
    def total(self) -> int:
        full = len(set(self.values)) ** self.cells if self.sample is None else self.sample
        return full if self.cap is None else min(full, self.cap)

    def to_dict(self) -> dict:
        return {"players": self.players, "strategies": list(self.strategies),
                "values": list(self.values), "cap": self.cap, "seed": self.seed,
                "sample": self.sample}


_ROW_LABELS = ("U", "D", "M", "X")
_COL_LABELS = ("L", "R", "C", "Y")


def _labels(spec: GameFamilySpec):
    if spec.players == 2 and max(spec.strategies) <= 4:
        return ["row", "col"], {"row": list(_ROW_LABELS[:spec.strategies[0]]),
                                "col": list(_COL_LABELS[:spec.strategies[1]])}
    players = [f"P{k + 1}" for k in range(spec.players)]
    return players, {p: [f"{p.lower()}s{a + 1}" for a in range(n)]
                     for p, n in zip(players, spec.strategies)}


def game_from_vector(spec: GameFamilySpec, vector) -> Game:
    """Cells are filled player-major, then profiles in lexicographic order."""
    players, strats = _labels(spec)
    keys = list(itertools.product(*(strats[p] for p in players)))
    n = len(keys)
    table = {key: tuple(Fraction(vector[k * n + c]) for k in range(len(players)))
             for c, key in enumerate(keys)}
    return Game(tuple(players), tuple(tuple(strats[p]) for p in players), table)


def enumerate_games(spec: GameFamilySpec):
    """Yield ``(game_id, game)`` deterministically; see :class:`GameFamilySpec`."""
    values = sorted(set(spec.values))
    if spec.sample is not None:
        rng = random.Random(spec.seed)
        vectors = ((rng.choice(values) for _ in range(spec.cells)) for _ in range(spec.sample))
    else:
        vectors = itertools.product(values, repeat=spec.cells)
    count = 0
    for gid, vec in enumerate(vectors):
        if spec.cap is not None and count >= spec.cap:
            log.info("enumeration truncated at cap %d", spec.cap)
            return
        yield gid, game_from_vector(spec, tuple(vec))
        count += 1


def random_game(rng: random.Random, max_players=3, max_strategies=3, values=range(-2, 3)) -> Game:
    n = rng.randint(1, max_players)
    players = [f"P{k + 1}" for k in range(n)]
    strats = {p: [f"{p.lower()}s{a + 1}" for a in range(rng.randint(1, max_strategies))] for p in players}
    values = list(values)
    return Game.from_function(players, strats, lambda prof: {p: rng.choice(values) for p in players})


# -- independent oracle ----------------------------------------------------------

def _solve(a, b):
    """Unique solution of the square system ``a x = b`` or None if singular."""
    n = len(a)
    m = [list(row) + [rhs] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [v / pv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def brute_force_dominated(game: Game, r: Restriction, i: str, s_i: str) -> bool:
    """Vertex enumeration over ``{σ ∈ Δ(S̄_i) : Π(σ, s_{-i}) ≥ Π(s_i, s_{-i}) ∀ s_{-i}}``.

    The total slack is linear, so its maximum over this bounded polytope sits
    at a vertex; ``s_i`` is dominated iff that maximum is positive.
    """
    own = list(r[i])
    cols = r.opponent_profiles(game, i)
    k = game.index(i)
    d = len(own)
    mat = [[game.payoffs[game.key({**c, i: s})][k] for s in own] for c in cols]
    base = [game.payoffs[game.key({**c, i: s_i})][k] for c in cols]
    # Candidate tight constraints: σ_a = 0, or column c binding.
    tight = [("zero", a) for a in range(d)] + [("col", c) for c in range(len(cols))]
    best = None
    for chosen in itertools.combinations(tight, d - 1):
        rows, rhs = [[Fraction(1)] * d], [Fraction(1)]
        for kind, idx in chosen:
            if kind == "zero":
                row = [Fraction(0)] * d
                row[idx] = Fraction(1)
                rows.append(row)
                rhs.append(Fraction(0))
            else:
                rows.append(list(mat[idx]))
                rhs.append(base[idx])
        sigma = _solve(rows, rhs)
        if sigma is None or any(x < 0 for x in sigma):
            continue
        slacks = [sum(m * x for m, x in zip(row, sigma)) - b for row, b in zip(mat, base)]
        if any(s < 0 for s in slacks):
            continue
        total = sum(slacks, Fraction(0))
        if best is None or total > best:
            best = total
    return best is not None and best > 0


def brute_force_ia(game: Game) -> Restriction:
    """IA fixpoint computed with :func:`brute_force_dominated` only."""
    if any(len(s) > ORACLE_LIMIT for s in game.strategies):
        raise InputError(f"oracle refuses games with more than {ORACLE_LIMIT} strategies per player")
    current = Restriction.full(game)
    while True:
        nxt = {p: [s for s in current[p] if not brute_force_dominated(game, current, p, s)]
               for p in game.players}
        nxt = Restriction(nxt)
        if nxt == current:
            return current
        current = nxt


# -- verification records ------------------------------------------------------------

@dataclass
class VerificationRecord:
    game_id: int | str
    ia_fixpoint: dict
    ia_rounds: int
    completeness: bool
    completeness_failures: list
    product_nonempty: bool
    r_infinity: dict
    rmar_rounds: int
    theorem1: str
    levelwise: list = field(default_factory=list)
    oracle_agrees: bool | None = None
    r0_readings_agree: bool | None = None
    forcing: dict | None = None
    detail: str = ""

    def to_dict(self) -> dict:
        out = {
            "game": self.game_id,
            "ia_fixpoint": self.ia_fixpoint,
            "ia_rounds": self.ia_rounds,
            "completeness": self.completeness,
            "completeness_failures": self.completeness_failures,
            "product_nonempty": self.product_nonempty,
            "r_infinity": self.r_infinity,
            "rmar_rounds": self.rmar_rounds,
            "theorem1": self.theorem1,
            "levelwise": self.levelwise,
            "oracle_agrees": self.oracle_agrees,
            "r0_readings_agree": self.r0_readings_agree,
        }
        if self.forcing is not None:
            out["forcing"] = self.forcing
        if self.detail:
            out["detail"] = self.detail
        return out


def _proj(strats):
    return sorted(strats)


def verify_theorem1(game: Game, model: BeliefModel | None = None, game_id="game",
                    with_oracle: bool = False) -> VerificationRecord:
    """Check the conditional claim ``R^∞_{i|S_i} = S_i^∞`` on one model.

    Uses the canonical model unless ``model`` is given.  The claim (and its
    level-wise form ``R^m_{i|S_i} = S_i^{m+1}``) is only asserted when the
    model is rationality-complete along the IA chain and ``∏ R^∞_i ≠ ∅``.
    """
    ia = ia_levels(game)
    if model is None:
        canon = build_canonical_model(game, ia)
        model, report = canon.model, canon.report
    else:
        report = check_rationality_complete(model, IA_CHAIN, ia)
    levels = rmar_levels(model)
    full = Restriction.full(game)
    r0_agree = all(rational_states(model, p) == rational_states_within(model, p, full)
                   for p in game.players)
    rec = VerificationRecord(
        game_id=game_id,
        ia_fixpoint={p: list(ia.fixpoint[p]) for p in game.players},
        ia_rounds=ia.fixpoint_round,
        completeness=report.satisfied,
        completeness_failures=[{"rectangle": w.rectangle.to_dict(), "player": w.player,
                                "strategy": w.strategy} for w in report.failures()],
        product_nonempty=levels.product_nonempty(),
        r_infinity={p: _proj(levels.strategies(p)) for p in game.players},
        rmar_rounds=levels.fixpoint_round,
        theorem1=UNMET,
        r0_readings_agree=r0_agree,
    )
    if with_oracle:
        rec.oracle_agrees = brute_force_ia(game) == ia.fixpoint
    if not (report.satisfied and rec.product_nonempty):
        rec.detail = "incomplete along the IA chain" if not report.satisfied else "some R^inf is empty"
        return rec
    ok = all(levels.strategies(p) == frozenset(ia.fixpoint[p]) for p in game.players)
    horizon = max(levels.fixpoint_round, ia.fixpoint_round)
    for m in range(horizon + 1):
        for p in game.players:
            got = levels.strategies(p, m)
            want = frozenset(ia.level(m + 1)[p])
            rec.levelwise.append({"m": m, "player": p, "R": _proj(got), "S": _proj(want),
                                  "equal": got == want})
            ok &= got == want
    rec.theorem1 = CONFIRMED if ok else VIOLATION
    if not ok:
        rec.detail = "R^inf projection or level-wise projection differs from IA"
    return rec


def verify_forcing_pipeline(game: Game, model: BeliefModel | None = None, *,
                            exhaustive: bool = True) -> dict:
    """Run every forcing check on the (canonical) model of ``game``."""
    if model is None:
        model = build_canonical_model(game).model
    fa = analyse(model)
    levels, poset = fa.levels, fa.poset
    delta_profiles = {c.profile for c in fa.delta}
    poset_profiles = {c.profile for c in poset.elements}
    out = {
        "m_max": fa.m_max,
        "poset_size": len(poset),
        "poset_levels": {str(k): v for k, v in poset.levels_histogram().items()},
        "delta_equals_poset": delta_profiles == poset_profiles,
        "delta_minus_poset": len(delta_profiles - poset_profiles),
        "poset_minus_delta": len(poset_profiles - delta_profiles),
        "delta_correct": is_correct_set(fa.delta, poset).ok if fa.delta else False,
        "generic_size": len(fa.generic),
        "generic_empty": fa.genericity.empty,
        "genericity_ok": fa.genericity.ok,
        "meets_every_Dm": all(fa.genericity.meets_canonical.values()),
        "meets_all_dominations": fa.genericity.meets_all_dominations,
        "dominated_by_every_generic": fa.genericity.dominated_by_every_generic,
        "distinct_rmar_levels": len({lv for lv in _state_levels(levels)}),
        "strictness_certificate": fa.extension.certificate is not None,
    }
    names = canonical_names(fa.generic, fa.m_max)
    rank0 = referential_value(names[0], fa.generic, model, levels)
    r0_event = levels.level_event(model.game.players, 0)
    out["rank0_is_R0_event"] = isinstance(rank0, Leaf) and rank0.event == r0_event if fa.generic else None
    out["rank_depths"] = [depth(referential_value(mu, fa.generic, model, levels)) for mu in names]
    witness_ok = True
    exhaustive_ok = None
    for gamma in sorted(fa.generic):
        for mu in names:
            witness_ok &= forces(gamma, mu, model, WITNESS, generic=fa.generic, poset=poset,
                                 levels=levels).holds
    if exhaustive and fa.generic and len(poset) <= EXHAUSTIVE_LIMIT:
        exhaustive_ok = True
        for gamma in sorted(fa.generic):
            for mu in names:
                exhaustive_ok &= forces(gamma, mu, model, EXHAUSTIVE, generic=fa.generic,
                                        poset=poset, levels=levels).holds
    out["forces_witness"] = witness_ok if fa.generic else None
    out["forces_exhaustive"] = exhaustive_ok
    return out


def _state_levels(levels):
    for p, seq in levels.chain.items():
        for ps in seq[0]:
            lv = levels.state_level(ps)
            yield "inf" if lv is None else lv


def forcing_ok(frag: dict) -> bool:
    """All forcing propositions that apply to this model hold."""
    ok = frag["delta_equals_poset"] and frag["delta_correct"] and frag["genericity_ok"]
    ok = ok and frag["meets_every_Dm"] and frag["dominated_by_every_generic"]
    if frag["distinct_rmar_levels"] >= 2:
        ok = ok and frag["strictness_certificate"]
    ok = ok and frag["forces_witness"] is not False and frag["forces_exhaustive"] is not False
    if not frag["generic_empty"]:
        ok = ok and frag["rank0_is_R0_event"]
        ok = ok and all(d == m + 1 for m, d in enumerate(frag["rank_depths"]))
    return bool(ok)


# -- family runs ------------------------------------------------------------------------

@dataclass
class RunResult:
    manifest: dict
    records: list[VerificationRecord]

    @property
    def counts(self) -> dict:
        return self.manifest["counts"]


def verify_family(spec: GameFamilySpec, *, forcing: bool = True, timings: bool = False,
                  keep_records: bool = False) -> RunResult:
    """Verify every game of ``spec``; stops at the first VIOLATION."""
    counts = {CONFIRMED: 0, UNMET: 0, VIOLATION: 0}
    oracle_mismatch, unmet_examples, counterexamples, forcing_failures = [], [], [], []
    forcing_checked = 0
    records = []
    clock = {"theorem1": 0.0, "oracle": 0.0, "forcing": 0.0}
    for gid, game in enumerate_games(spec):
        t0 = time.perf_counter()
        rec = verify_theorem1(game, game_id=gid)
        t1 = time.perf_counter()
        if all(len(s) <= ORACLE_LIMIT for s in game.strategies):
            rec.oracle_agrees = brute_force_ia(game) == ia_set(game)
            if not rec.oracle_agrees:
                oracle_mismatch.append(gid)
        t2 = time.perf_counter()
        if forcing and rec.theorem1 == CONFIRMED:
            rec.forcing = verify_forcing_pipeline(game)
            forcing_checked += 1
            if not forcing_ok(rec.forcing):
                forcing_failures.append(rec.to_dict())
        t3 = time.perf_counter()
        clock["theorem1"] += t1 - t0
        clock["oracle"] += t2 - t1
        clock["forcing"] += t3 - t2
        counts[rec.theorem1] += 1
        if rec.theorem1 == UNMET and len(unmet_examples) < 5:
            unmet_examples.append({"game": gid, "reason": rec.detail})
        if keep_records:
            records.append(rec)
        if rec.theorem1 == VIOLATION:
            dump = rec.to_dict()
            dump["game_file"] = game_to_dict(game)
            counterexamples.append(dump)
            log.error("VIOLATION on game %s; aborting run", gid)
            break
    manifest = {
        "spec": spec.to_dict(),
        "games": sum(counts.values()),
        "counts": counts,
        "oracle_mismatches": oracle_mismatch,
        "forcing_checked": forcing_checked,
        "forcing_failures": forcing_failures,
        "hypothesis_unmet_examples": unmet_examples,
        "counterexamples": counterexamples,
    }
    if timings:
        manifest["wall_clock_seconds"] = {k: round(v, 3) for k, v in clock.items()}
    return RunResult(manifest, records)


def exit_code(manifest: dict) -> int:
    """0 all confirmed, 2 some hypothesis unmet, 3 any violation or failed check."""
    if (manifest["counts"].get(VIOLATION) or manifest.get("oracle_mismatches")
            or manifest.get("forcing_failures")):
        return 3
    if manifest["counts"].get(UNMET):
        return 2
    return 0
