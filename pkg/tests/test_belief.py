import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from iaforge.belief import (
    FULL,
    IA_CHAIN,
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
from iaforge.errors import InputError
from iaforge.game import Game, Restriction, payoff


def _naive_rational(model, i):
    # Straight from the definition, one state at a time.
    g = model.game
    j = g.opponents(i)[0]
    out = set()
    for s in g.strategies_of(i):
        for t in model.types[i]:
            cols = {joint[0].strategy for joint in model.beliefs(i, t)}
            if all(payoff(g, i, {i: s, j: c}) >= payoff(g, i, {i: x, j: c})
                   for c in cols for x in g.strategies_of(i)):
                out.add(PlayerState(i, s, t))
    return out


def _naive_chain(model):
    g = model.game
    a, b = g.players
    r = {a: _naive_rational(model, a), b: _naive_rational(model, b)}
    chain = [dict(r)]
    while True:
        nxt = {}
        for i, j in ((a, b), (b, a)):
            target = {(ps,) for ps in r[j]}
            nxt[i] = {ps for ps in r[i] if set(model.beliefs(i, ps.type)) == target}
        if nxt == r:
            return chain
        r = nxt
        chain.append(dict(r))


def test_project_event(two_round_game):
    m = BeliefModel(two_round_game, {"row": ["t"], "col": ["u"]},
                    {"row": {"t": [{"col": ["L", "u"]}]}, "col": {"u": [{"row": ["U", "t"]}]}})
    assert project_event([], "row") == frozenset()
    full = m.profiles()
    assert project_event(full, "row") == {(PlayerState("col", "L", "u"),), (PlayerState("col", "R", "u"),)}
    pair = [(PlayerState("row", "U", "t"), PlayerState("col", "L", "u")),
            (PlayerState("row", "D", "t"), PlayerState("col", "L", "u"))]
    assert len(project_event(pair, "row")) == 1


def _cycle_model(game):
    # t(row) -> u(col) -> v(row) -> w(col) -> t(row)
    return BeliefModel(game, {"row": ["t", "v"], "col": ["u", "w"]}, {
        "row": {"t": [{"col": ["L", "u"]}], "v": [{"col": ["L", "w"]}]},
        "col": {"u": [{"row": ["U", "v"]}], "w": [{"row": ["U", "t"]}]},
    })


def test_unfold_basic(two_round_game):
    m = BeliefModel(two_round_game, {"row": ["t"], "col": ["u"]},
                    {"row": {"t": [{"col": ["L", "u"]}]}, "col": {"u": [{"row": ["U", "t"]}]}})
    assert unfold(m, "row", "t", 1) == {("col", "u")}
    assert unfold(m, "row", "t", 2) == {("row", "t")}
    assert unfold(m, "row", "t", 0) == {("row", "t")}


def test_unfold_four_cycle(two_round_game):
    m = _cycle_model(two_round_game)
    expected = [("col", "u"), ("row", "v"), ("col", "w"), ("row", "t"), ("col", "u")]
    for k, want in enumerate(expected, start=1):
        assert unfold(m, "row", "t", k) == {want}
    assert unfold(m, "row", "t", 3, cumulative=True) == {("col", "u"), ("row", "v"), ("col", "w")}


def test_unfold_errors(two_round_game):
    m = _cycle_model(two_round_game)
    with pytest.raises(InputError):
        unfold(m, "row", "nope", 1)
    with pytest.raises(InputError):
        unfold(m, "row", "t", -1)


def test_model_validation(two_round_game):
    with pytest.raises(InputError):
        BeliefModel(two_round_game, {"row": ["t"], "col": ["u"]},
                    {"row": {"t": []}, "col": {"u": [{"row": ["U", "t"]}]}})
    with pytest.raises(InputError):
        BeliefModel(two_round_game, {"row": ["t"], "col": ["u"]},
                    {"row": {"t": [{"col": ["L", "zz"]}]}, "col": {"u": [{"row": ["U", "t"]}]}})
    with pytest.raises(InputError):
        BeliefModel(two_round_game, {"row": ["t"], "col": ["u"]},
                    {"row": {"t": [{"col": ["Q", "u"]}]}, "col": {"u": [{"row": ["U", "t"]}]}})


def test_assumption_is_equality(two_round_game):
    m = BeliefModel(two_round_game, {"row": ["full", "part"], "col": ["u"]}, {
        "row": {"full": [{"col": ["L", "u"]}, {"col": ["R", "u"]}], "part": [{"col": ["L", "u"]}]},
        "col": {"u": [{"row": ["U", "full"]}]},
    })
    assert assumption_types(m, "row", m.profiles()) == {"full"}
    assert assumption_types(m, "row", []) == frozenset()


def test_rational_states(strict_game, two_round_game):
    m = BeliefModel(strict_game, {"row": ["t"], "col": ["u"]},
                    {"row": {"t": [{"col": ["L", "u"]}]}, "col": {"u": [{"row": ["U", "t"]}]}})
    assert PlayerState("row", "U", "t") in rational_states(m, "row")
    assert PlayerState("row", "D", "t") not in rational_states(m, "row")
    # Ties at L make both rows rational.
    m2 = BeliefModel(two_round_game, {"row": ["t"], "col": ["u"]},
                     {"row": {"t": [{"col": ["L", "u"]}]}, "col": {"u": [{"row": ["U", "t"]}]}})
    assert rational_states(m2, "row") == {PlayerState("row", "U", "t"), PlayerState("row", "D", "t")}


def test_believing_two_columns():
    # U is best at L only, D at R only.
    g = Game.bimatrix("UD", "LR", [[1, 0], [0, 1]], [[0, 0], [0, 0]])
    m = BeliefModel(g, {"row": ["t"], "col": ["u", "v"]}, {
        "row": {"t": [{"col": ["L", "u"]}, {"col": ["R", "v"]}]},
        "col": {"u": [{"row": ["U", "t"]}], "v": [{"row": ["U", "t"]}]},
    })
    assert rational_states(m, "row") == frozenset()
    assert rational_states(m, "row") == _naive_rational(m, "row")


def test_chain_no_rational_states():
    g = Game.bimatrix("UD", "LR", [[1, 0], [0, 1]], [[0, 0], [0, 0]])
    m = BeliefModel(g, {"row": ["t"], "col": ["u"]}, {
        "row": {"t": [{"col": ["L", "u"]}, {"col": ["R", "u"]}]},
        "col": {"u": [{"row": ["U", "t"]}]},
    })
    lv = rmar_levels(m)
    assert lv.level("row", 0) == frozenset()
    assert lv.r_infinity["row"] == frozenset()
    assert not lv.product_nonempty()


def test_chain_single_strategy(single_game):
    m = BeliefModel(single_game, {"row": ["t"], "col": ["u"]},
                    {"row": {"t": [{"col": ["b", "u"]}]}, "col": {"u": [{"row": ["a", "t"]}]}})
    lv = rmar_levels(m)
    assert lv.fixpoint_round == 0
    assert lv.r_infinity == {"row": {PlayerState("row", "a", "t")}, "col": {PlayerState("col", "b", "u")}}
    assert lv.product_nonempty()
    assert lv.state_level(PlayerState("row", "a", "t")) is None


def test_two_round_canonical_chain(two_round_game):
    canon = build_canonical_model(two_round_game)
    m = canon.model
    assert m.types == {"row": ("L0", "L2"), "col": ("L0", "L1", "W0:R")}
    assert canon.report.mode == IA_CHAIN and canon.report.satisfied
    lv = rmar_levels(m)
    naive = _naive_chain(m)
    assert [lv.level("row", k) for k in range(len(naive))] == [c["row"] for c in naive]
    assert [lv.level("col", k) for k in range(len(naive))] == [c["col"] for c in naive]
    assert lv.level("row", 0) == {PlayerState("row", "D", "L2"), PlayerState("row", "U", "L0"),
                                  PlayerState("row", "U", "L2")}
    assert lv.level("col", 0) == {PlayerState("col", "L", "L1"), PlayerState("col", "R", "W0:R")}
    assert lv.fixpoint_round == 1
    assert lv.r_infinity == {"row": frozenset(), "col": frozenset()}
    # D survives level 0 even though IA removes it in round one.
    assert lv.strategies("row", 0) == {"U", "D"}
    assert lv.state_level(PlayerState("row", "D", "L2")) == 0
    assert lv.state_level(PlayerState("row", "D", "L0")) == -1


def test_abc_has_failure_for_c_in_every_model(abc_game):
    cols = ["X", "Y"]
    subsets = [c for k in (1, 2) for c in itertools.combinations(cols, k)]
    types = [f"b{k}" for k in range(len(subsets))]
    m = BeliefModel(abc_game, {"row": types, "col": ["u"]}, {
        "row": {t: [{"col": [c, "u"]} for c in sub] for t, sub in zip(types, subsets)},
        "col": {"u": [{"row": ["A", "b0"]}]},
    })
    for mode in (FULL, IA_CHAIN):
        report = check_rationality_complete(m, mode)
        assert not report.satisfied
        full = Restriction.full(abc_game)
        assert any(f.player == "row" and f.strategy == "C" and f.rectangle == full for f in report.failures())
    canon = build_canonical_model(abc_game)
    assert [(f.player, f.strategy) for f in canon.report.failures()] == [("row", "C")]


def test_completeness_trivial(single_game, strict_game):
    m = BeliefModel(single_game, {"row": ["t"], "col": ["u"]},
                    {"row": {"t": [{"col": ["b", "u"]}]}, "col": {"u": [{"row": ["a", "t"]}]}})
    assert check_rationality_complete(m, FULL).satisfied
    canon = build_canonical_model(strict_game)
    assert canon.report.satisfied and canon.report.mode == IA_CHAIN
    canon1 = build_canonical_model(single_game)
    assert canon1.model.types == {"row": ("L0",), "col": ("L0",)}
    assert canon1.report.satisfied


def test_completeness_requires_nonempty_restricted_beliefs(strict_game):
    # t believes only R; inside the rectangle {U}x{L} nothing is believed.
    m = BeliefModel(strict_game, {"row": ["t"], "col": ["u"]},
                    {"row": {"t": [{"col": ["R", "u"]}]}, "col": {"u": [{"row": ["U", "t"]}]}})
    report = check_rationality_complete(m, IA_CHAIN)
    assert not report.satisfied


@st.composite
def random_models(draw):
    rows = draw(st.integers(1, 3))
    cols = draw(st.integers(1, 3))
    vals = st.integers(0, 2)
    g = Game.bimatrix([f"r{k}" for k in range(rows)], [f"c{k}" for k in range(cols)],
                      [[draw(vals) for _ in range(cols)] for _ in range(rows)],
                      [[draw(vals) for _ in range(cols)] for _ in range(rows)])
    types = {"row": [f"t{k}" for k in range(draw(st.integers(1, 3)))],
             "col": [f"u{k}" for k in range(draw(st.integers(1, 3)))]}
    beliefs = {}
    for i, j in (("row", "col"), ("col", "row")):
        states = [(s, t) for s in g.strategies_of(j) for t in types[j]]
        beliefs[i] = {}
        for t in types[i]:
            picked = draw(st.lists(st.sampled_from(states), min_size=1, max_size=4, unique=True))
            beliefs[i][t] = [{j: list(x)} for x in picked]
    return BeliefModel(g, types, beliefs)


@settings(max_examples=150, deadline=None)
@given(random_models())
def test_chain_properties(m):
    lv = rmar_levels(m)
    for p in m.game.players:
        seq = lv.chain[p]
        assert all(b <= a for a, b in zip(seq, seq[1:]))
        assert lv.r_infinity[p] == seq[-1]
    bound = sum(len(m.game.strategies_of(p)) * len(m.types[p]) for p in m.game.players)
    assert lv.fixpoint_round <= bound
    naive = _naive_chain(m)
    for k, c in enumerate(naive):
        assert lv.level("row", k) == c["row"] and lv.level("col", k) == c["col"]


@settings(max_examples=150, deadline=None)
@given(random_models())
def test_nonempty_fixpoint_means_constant_chain(m):
    # Equality-based assumption: a nonempty R^inf product pins R^0 = R^1.
    lv = rmar_levels(m)
    if lv.product_nonempty():
        assert lv.fixpoint_round == 0
