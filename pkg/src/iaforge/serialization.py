"""JSON file formats for games, belief models and reports.

Rationals are written as ``"p/q"`` strings (``"p"`` when ``q = 1``).  All
writers sort nothing implicitly: ordering follows the game's player and
strategy order so outputs are deterministic.
"""
from __future__ import annotations

import json
from pathlib import Path

from .admissibility import IALevels
from .belief import BeliefModel, CompletenessReport, EpistemicLevels, PlayerState
from .errors import InputError
from .forcing import WHOLE_MODEL, ForcingAnalysis, Leaf, Node
from .game import Game, format_rational


def _load_text(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def read_json(path) -> object:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    return _load_text(text, str(path))


def dumps(obj, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False) + "\n"


# -- games -------------------------------------------------------------------

def game_to_dict(game: Game) -> dict:
    records = []
    for profile in game.profiles():
        key = game.key(profile)
        records.append({"profile": profile,
                        "values": {p: format_rational(v) for p, v in zip(game.players, game.payoffs[key])}})
    return {"players": list(game.players),
            "strategies": {p: list(s) for p, s in zip(game.players, game.strategies)},
            "payoffs": records}


def game_from_dict(data) -> Game:
    if not isinstance(data, dict):
        raise InputError("game must be a JSON object")
    for key in ("players", "strategies", "payoffs"):
        if key not in data:
            raise InputError(f"game is missing {key!r}")
    players = data["players"]
    strategies = data["strategies"]
    if not isinstance(players, list) or not all(isinstance(p, str) for p in players):
        raise InputError("'players' must be a list of strings")
    if not isinstance(strategies, dict) or set(strategies) != set(players):
        raise InputError("'strategies' must map every player to a list")
    for p in players:
        if isinstance(strategies[p], list) and not all(isinstance(s, str) for s in strategies[p]):
            raise InputError(f"strategies of {p!r} must be strings")
    records = []
    for rec in data["payoffs"]:
        if not isinstance(rec, dict) or "profile" not in rec or "values" not in rec:
            raise InputError("each payoff record needs 'profile' and 'values'")
        for v in rec["values"].values():
            if isinstance(v, float):
                raise InputError(f"payoff {v!r} is a float; write it as a 'p/q' string")
        records.append((rec["profile"], rec["values"]))
    return Game.from_records(players, strategies, records)


def read_game(path) -> Game:
    return game_from_dict(read_json(path))


# -- belief models -------------------------------------------------------------

def model_to_dict(model: BeliefModel, inline_game: bool = True, game_ref: str | None = None) -> dict:
    beliefs = {}
    for p in model.game.players:
        beliefs[p] = {t: [{ps.player: [ps.strategy, ps.type] for ps in joint}
                          for joint in sorted(model.beliefs(p, t))]
                      for t in model.types[p]}
    return {"game": game_to_dict(model.game) if inline_game or game_ref is None else game_ref,
            "types": {p: list(ts) for p, ts in model.types.items()},
            "beliefs": beliefs}


def model_from_dict(data, base: Path | None = None) -> BeliefModel:
    if not isinstance(data, dict) or not {"game", "types", "beliefs"} <= set(data):
        raise InputError("model must be an object with 'game', 'types' and 'beliefs'")
    g = data["game"]
    if isinstance(g, str):
        path = Path(g)
        if base is not None and not path.is_absolute():
            path = base / path
        game = read_game(path)
    else:
        game = game_from_dict(g)
    return BeliefModel(game, data["types"], data["beliefs"])


def read_model(path) -> BeliefModel:
    path = Path(path)
    return model_from_dict(read_json(path), path.parent)


def read_game_or_model(path):
    """A model file holds a ``"beliefs"`` key; anything else is read as a game."""
    path = Path(path)
    data = read_json(path)
    if isinstance(data, dict) and "beliefs" in data:
        return model_from_dict(data, path.parent)
    return game_from_dict(data)


# -- reports -------------------------------------------------------------------

def ps_to_list(ps: PlayerState) -> list:
    return [ps.player, ps.strategy, ps.type]


def profile_to_list(profile) -> list:
    return [ps_to_list(ps) for ps in profile]


def ia_report(game: Game, ia: IALevels) -> dict:
    rounds = []
    for m, gone in enumerate(ia.removed, start=1):
        rounds.append({
            "round": m,
            "removed": [{"player": e.player, "strategy": e.strategy,
                         "witness": e.verdict.witness.to_dict(),
                         "strict_at": e.verdict.strict_at} for e in gone],
        })
    return {"levels": [r.ordered(game).to_dict() for r in ia.levels],
            "fixpoint_round": ia.fixpoint_round,
            "fixpoint": ia.fixpoint.ordered(game).to_dict(),
            "rounds": rounds}


def rmar_report(model: BeliefModel, levels: EpistemicLevels) -> dict:
    chain = {}
    for p in model.game.players:
        chain[p] = [[ps_to_list(ps) for ps in sorted(lv)] for lv in levels.chain[p]]
    return {"fixpoint_round": levels.fixpoint_round,
            "chain": chain,
            "r_infinity": {p: [ps_to_list(ps) for ps in sorted(levels.r_infinity[p])]
                           for p in model.game.players},
            "r_infinity_strategies": {p: sorted(levels.strategies(p)) for p in model.game.players},
            "product_nonempty": levels.product_nonempty()}


def completeness_report(report: CompletenessReport) -> dict:
    return {"mode": report.mode,
            "satisfied": report.satisfied,
            "witnesses": [{"rectangle": w.rectangle.to_dict(), "player": w.player,
                           "strategy": w.strategy, "type": w.type if w.type is not None else "FAILURE"}
                          for w in report.witnesses]}


def value_to_json(value):
    """Referential values as nested arrays: ``["LEAF", [...profiles]]``, ``"WHOLE_MODEL"``, ``[...]``."""
    if value is WHOLE_MODEL:
        return "WHOLE_MODEL"
    if isinstance(value, Leaf):
        return ["LEAF", [profile_to_list(p) for p in sorted(value.event)]]
    if isinstance(value, Node):
        return sorted((value_to_json(c) for c in value.children), key=lambda v: json.dumps(v))
    raise TypeError(f"not a referential value: {value!r}")


def forcing_report(fa: ForcingAnalysis, verdicts: list[dict], probe=None) -> dict:
    g = fa.genericity
    poset_profiles = {c.profile for c in fa.poset.elements}
    delta_profiles = {c.profile for c in fa.delta}
    cert = fa.extension.certificate
    out = {
        "m_max": fa.m_max,
        "poset": {"size": len(fa.poset),
                  "per_level": {str(k): v for k, v in fa.poset.levels_histogram().items()}},
        "delta_equals_poset": delta_profiles == poset_profiles,
        "delta_size": len(fa.delta),
        "genericity": {
            "empty": g.empty,
            "subset_of_delta": g.subset_of_delta,
            "correct_set": None if g.correct is None else g.correct.ok,
            "meets_D_m": {str(m): v for m, v in g.meets_canonical.items()},
            "meets_all_dominations": g.meets_all_dominations,
            "dominations_checked": g.dominations_checked,
            "dominated_by_every_generic": g.dominated_by_every_generic,
            "notes": g.notes,
        },
        "generic": [profile_to_list(c.profile) for c in sorted(fa.generic)],
        "names": [{"rank": mu.rank, "entries": len(mu.entries)} for mu in fa.extension.names],
        "values": [value_to_json(v) for v in fa.extension.values],
        "strictness_certificate": None if cert is None else {
            "profiles": [profile_to_list(p) for p in sorted(cert.event)],
            "value": value_to_json(cert.value)},
        "extension_notes": fa.extension.notes,
        "forcing": verdicts,
    }
    if probe is not None:
        out["indiscernibility_probe"] = {
            "separator": probe.separator, "size": probe.size, "vacuous": probe.vacuous,
            "degenerate": probe.degenerate, "budget_exhausted": probe.exhausted,
            "terms_seen": probe.terms_seen, "notes": probe.notes}
    return out
