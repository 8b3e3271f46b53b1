from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from iaforge.errors import InputError, InvariantError
from iaforge.game import (
    Game,
    MixedStrategy,
    Restriction,
    as_rational,
    expected_payoff,
    payoff,
    validate_restriction,
)


def test_one_player_lookup():
    g = Game.from_function(["1"], {"1": ["A"]}, lambda prof: {"1": 5})
    assert payoff(g, "1", {"1": "A"}) == 5


def test_constant_game_is_zero(constant_game):
    for prof in constant_game.profiles():
        assert payoff(constant_game, "row", prof) == 0
        assert payoff(constant_game, "col", prof) == 0


def test_profile_order_is_irrelevant():
    g = Game.from_function(["a", "b", "c"], {"a": ["x", "y"], "b": ["u"], "c": ["p", "q"]},
                           lambda prof: {"a": len(prof["a"] + prof["c"]), "b": 1 if prof["c"] == "q" else 0, "c": 3})
    forward = {"a": "y", "b": "u", "c": "q"}
    backward = {"c": "q", "b": "u", "a": "y"}
    for p in g.players:
        assert payoff(g, p, forward) == payoff(g, p, backward)


@pytest.mark.parametrize("profile", [
    {"row": "U"},
    {"row": "U", "col": "Z"},
    {"row": "U", "col": "L", "extra": "L"},
])
def test_bad_profiles_raise(two_round_game, profile):
    with pytest.raises(InputError):
        payoff(two_round_game, "row", profile)


def test_unknown_player_raises(two_round_game):
    with pytest.raises(InputError):
        payoff(two_round_game, "nobody", {"row": "U", "col": "L"})


def test_degenerate_mixture_matches_payoff(two_round_game):
    g = two_round_game
    for s in "UD":
        for c in "LR":
            assert expected_payoff(g, "row", MixedStrategy.pure("row", s), {"col": c}) == \
                payoff(g, "row", {"row": s, "col": c})


def test_half_half_mixture():
    g = Game.bimatrix("AB", ["L"], [[3], [0]], [[0], [0]])
    mix = MixedStrategy("row", {"A": Fraction(1, 2), "B": Fraction(1, 2)})
    assert expected_payoff(g, "row", mix, {"col": "L"}) == Fraction(3, 2)


def test_identical_rows_give_common_value():
    g = Game.bimatrix("AB", ["L"], [[4], [4]], [[0], [0]])
    mix = MixedStrategy("row", {"A": Fraction(1, 3), "B": Fraction(2, 3)})
    assert expected_payoff(g, "row", mix, {"col": "L"}) == 4


@pytest.mark.parametrize("weights", [
    {"U": Fraction(1, 2), "D": Fraction(1, 3)},
    {"U": Fraction(3, 2), "D": Fraction(-1, 2)},
])
def test_invalid_mixture(two_round_game, weights):
    with pytest.raises(InvariantError):
        expected_payoff(two_round_game, "row", MixedStrategy("row", weights), {"col": "L"})


def test_validate_restriction(two_round_game):
    g = two_round_game
    assert validate_restriction(g, Restriction.full(g)) is None
    v = validate_restriction(g, Restriction({"row": [], "col": ["L"]}))
    assert v is not None and v.player == "row"
    v = validate_restriction(g, Restriction({"row": ["U"], "col": ["L", "Q"]}))
    assert v is not None and v.player == "col"


def test_rationals_refuse_floats():
    assert as_rational("3/4") == Fraction(3, 4)
    assert as_rational("-2") == -2
    with pytest.raises(InputError):
        as_rational(0.5)
    with pytest.raises(InputError):
        as_rational("1.5")
    with pytest.raises(InputError):
        as_rational("1/0")


def test_game_rejects_duplicates_and_holes():
    with pytest.raises(InputError):
        Game.from_records(["a"], {"a": ["x", "y"]}, [({"a": "x"}, {"a": 1})])
    with pytest.raises(InputError):
        Game.from_records(["a"], {"a": ["x"]}, [({"a": "x"}, {"a": 1}), ({"a": "x"}, {"a": 2})])
    with pytest.raises(InputError):
        Game.from_records(["a"], {"a": ["x", "x"]}, [({"a": "x"}, {"a": 1})])


small = st.integers(-3, 3)


@st.composite
def games_with_mixtures(draw):
    n_own = draw(st.integers(1, 3))
    n_opp = draw(st.integers(1, 3))
    rows = [[draw(small) for _ in range(n_opp)] for _ in range(n_own)]
    g = Game.bimatrix([f"s{k}" for k in range(n_own)], [f"c{k}" for k in range(n_opp)],
                      rows, [[0] * n_opp for _ in range(n_own)])

    def mixture():
        raw = [draw(st.integers(0, 5)) for _ in range(n_own)]
        if not any(raw):
            raw[0] = 1
        total = sum(raw)
        return MixedStrategy("row", {f"s{k}": Fraction(w, total) for k, w in enumerate(raw)})

    lam = Fraction(draw(st.integers(0, 6)), 6)
    return g, mixture(), mixture(), lam


@settings(max_examples=200, deadline=None)
@given(games_with_mixtures())
def test_expected_payoff_is_affine(case):
    g, w1, w2, lam = case
    combo = MixedStrategy("row", {s: lam * w1.weights.get(s, 0) + (1 - lam) * w2.weights.get(s, 0)
                                  for s in g.strategies_of("row")})
    for c in g.strategies_of("col"):
        opp = {"col": c}
        assert expected_payoff(g, "row", combo, opp) == \
            lam * expected_payoff(g, "row", w1, opp) + (1 - lam) * expected_payoff(g, "row", w2, opp)
