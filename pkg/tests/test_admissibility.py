from fractions import Fraction

import pytest

from iaforge.admissibility import admissible_set, check_witness, ia_levels, ia_set, is_weakly_dominated
from iaforge.errors import InputError
from iaforge.game import Game, Restriction
from iaforge.harness import brute_force_dominated


def _row_only(rows):
    n = len(rows[0])
    labels = [chr(ord("A") + k) for k in range(len(rows))]
    return Game.bimatrix(labels, [f"c{k}" for k in range(n)], rows, [[0] * n for _ in rows])


def test_pure_domination():
    g = Game.bimatrix("UD", "LR", [[1, 1], [1, 0]], [[0, 0], [0, 0]])
    v = is_weakly_dominated(g, Restriction.full(g), "row", "D")
    assert v.dominated
    assert v.witness.support() == ("U",)
    assert v.strict_at == {"col": "R"}
    assert check_witness(g, Restriction.full(g), "row", "D", v)


def test_mixed_domination():
    g = _row_only([[3, 0], [0, 3], [1, 1]])
    v = is_weakly_dominated(g, Restriction.full(g), "row", "C")
    assert v.dominated
    assert v.witness.weights == {"A": Fraction(1, 2), "B": Fraction(1, 2)}
    assert check_witness(g, Restriction.full(g), "row", "C", v)


def test_abc_not_dominated(abc_game):
    r = Restriction.full(abc_game)
    for s in "ABC":
        assert not brute_force_dominated(abc_game, r, "row", s)
        v = is_weakly_dominated(abc_game, r, "row", s)
        assert not v.dominated and v.witness is None
    assert admissible_set(abc_game, r, "row") == ("A", "B", "C")


def test_unknown_strategy_raises(two_round_game):
    r = Restriction({"row": ["U"], "col": ["L", "R"]})
    with pytest.raises(InputError):
        is_weakly_dominated(two_round_game, r, "row", "D")


def test_singleton_and_constant(single_game, constant_game):
    assert admissible_set(single_game, Restriction.full(single_game), "row") == ("a",)
    assert admissible_set(constant_game, Restriction.full(constant_game), "col") == ("L", "R")
    assert ia_set(constant_game) == Restriction.full(constant_game)


def test_single_strategy_levels(single_game):
    ia = ia_levels(single_game)
    assert ia.fixpoint_round == 0 and len(ia.levels) == 1
    assert ia.fixpoint.to_dict() == {"row": ["a"], "col": ["b"]}


def test_strict_game_one_round(strict_game):
    ia = ia_levels(strict_game)
    assert ia.fixpoint_round == 1
    assert sorted((e.player, e.strategy) for e in ia.removed[0]) == [("col", "R"), ("row", "D")]
    assert ia.fixpoint.to_dict() == {"row": ["U"], "col": ["L"]}


def test_two_round_game(two_round_game):
    ia = ia_levels(two_round_game)
    assert ia.fixpoint_round == 2
    assert [(e.player, e.strategy) for e in ia.removed[0]] == [("row", "D")]
    assert [(e.player, e.strategy) for e in ia.removed[1]] == [("col", "R")]
    assert ia.fixpoint.to_dict() == {"row": ["U"], "col": ["L"]}
    # Clamped past the fixpoint.
    assert ia.level(7) == ia.fixpoint
    for m, gone in enumerate(ia.removed):
        for e in gone:
            assert brute_force_dominated(two_round_game, ia.levels[m], e.player, e.strategy)
            assert check_witness(two_round_game, ia.levels[m], e.player, e.strategy, e.verdict)


def test_mixtures_range_over_restriction():
    # C is dominated by (A+B)/2 in the full game but not once B is gone.
    g = _row_only([[3, 0], [0, 3], [1, 1]])
    r = Restriction({"row": ["A", "C"], "col": ["c0", "c1"]})
    assert not is_weakly_dominated(g, r, "row", "C").dominated
