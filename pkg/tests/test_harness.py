import random
from fractions import Fraction

import pytest

from iaforge.admissibility import ia_set, is_weakly_dominated
from iaforge.belief import BeliefModel
from iaforge.errors import InputError
from iaforge.game import Game, Restriction
from iaforge.harness import (
    CONFIRMED,
    UNMET,
    VIOLATION,
    GameFamilySpec,
    brute_force_dominated,
    brute_force_ia,
    enumerate_games,
    exit_code,
    forcing_ok,
    game_from_vector,
    random_game,
    verify_family,
    verify_forcing_pipeline,
    verify_theorem1,
)


def test_family_size_and_order():
    spec = GameFamilySpec()
    assert spec.total == 6561
    first = list(enumerate_games(GameFamilySpec(cap=3)))
    assert [gid for gid, _ in first] == [0, 1, 2]
    g = game_from_vector(spec, [0, 1, 2, 0, 1, 1, 1, 1])
    assert g.players == ("row", "col")
    assert g.payoffs[("U", "R")] == (Fraction(1), Fraction(1))
    assert g.payoffs[("D", "L")] == (Fraction(2), Fraction(1))


def test_sampling_is_seeded():
    a = [g for _, g in enumerate_games(GameFamilySpec(sample=5, seed=7))]
    b = [g for _, g in enumerate_games(GameFamilySpec(sample=5, seed=7))]
    assert a == b


def test_bad_family_spec():
    with pytest.raises(InputError):
        GameFamilySpec(players=2, strategies=(2,))
    with pytest.raises(InputError):
        GameFamilySpec(values=())


def test_oracle_two_round(two_round_game):
    assert brute_force_ia(two_round_game).to_dict() == {"row": ["U"], "col": ["L"]}


def test_oracle_refuses_big_games():
    g = Game.bimatrix("ABCDE", ["x"], [[0]] * 5, [[0]] * 5)
    with pytest.raises(InputError):
        brute_force_ia(g)


def test_oracle_matches_lp_on_random_games():
    rng = random.Random(11)
    for _ in range(200):
        g = random_game(rng)
        r = Restriction.full(g)
        for p in g.players:
            for s in g.strategies_of(p):
                assert brute_force_dominated(g, r, p, s) == is_weakly_dominated(g, r, p, s).dominated
        assert brute_force_ia(g) == ia_set(g)


def test_abc_is_unmet(abc_game):
    rec = verify_theorem1(abc_game, with_oracle=True)
    assert rec.theorem1 == UNMET
    assert not rec.completeness
    assert [(f["player"], f["strategy"]) for f in rec.completeness_failures] == [("row", "C")]
    assert rec.oracle_agrees


def test_two_round_is_unmet(two_round_game):
    rec = verify_theorem1(two_round_game)
    assert rec.completeness and not rec.product_nonempty
    assert rec.theorem1 == UNMET
    assert rec.levelwise == []
    assert rec.r0_readings_agree


def test_hand_model_confirms():
    g = Game.bimatrix("UD", "LR", [[1, 1], [1, 0]], [[0, 0], [0, 0]])
    m = BeliefModel(g, {"row": ["t"], "col": ["u"]}, {
        "row": {"t": [{"col": ["L", "u"]}, {"col": ["R", "u"]}]},
        "col": {"u": [{"row": ["U", "t"]}]},
    })
    rec = verify_theorem1(g, m)
    assert rec.theorem1 == CONFIRMED
    assert rec.r_infinity == {"row": ["U"], "col": ["L", "R"]}
    assert all(e["equal"] for e in rec.levelwise)
    frag = verify_forcing_pipeline(g, m)
    assert forcing_ok(frag)
    assert frag["rank_depths"] == [1, 2]


def test_constant_game_confirms(constant_game):
    rec = verify_theorem1(constant_game)
    assert rec.theorem1 == CONFIRMED
    frag = verify_forcing_pipeline(constant_game)
    assert frag["delta_equals_poset"] and forcing_ok(frag)


def test_small_family_run():
    res = verify_family(GameFamilySpec(cap=150))
    m = res.manifest
    assert m["games"] == 150
    assert m["counts"][VIOLATION] == 0
    assert m["counts"][UNMET] > 0
    assert m["oracle_mismatches"] == [] and m["forcing_failures"] == []
    assert m["forcing_checked"] == m["counts"][CONFIRMED]
    assert "wall_clock_seconds" not in m
    assert exit_code(m) == 2


def test_exit_codes():
    base = {"counts": {CONFIRMED: 1, UNMET: 0, VIOLATION: 0}, "oracle_mismatches": [], "forcing_failures": []}
    assert exit_code(base) == 0
    assert exit_code({**base, "counts": {CONFIRMED: 1, UNMET: 1, VIOLATION: 0}}) == 2
    assert exit_code({**base, "oracle_mismatches": [4]}) == 3
    assert exit_code({**base, "counts": {CONFIRMED: 0, UNMET: 0, VIOLATION: 1}}) == 3
