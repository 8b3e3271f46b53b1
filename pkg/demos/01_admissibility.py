"""
Iterated admissibility with exact arithmetic
============================================

Walk a two-round elimination, then look at a strategy that no mixture
dominates even though it is never a best reply.
"""
from fractions import Fraction
from pathlib import Path

from iaforge import Game, Restriction, ia_levels, is_weakly_dominated
from iaforge.admissibility import check_witness
from iaforge.serialization import read_game

DATA = Path(__file__).parent / "data"

# Row U ties D at L and beats it at R.  Column L and R swap payoffs by row.
game = read_game(DATA / "two_round.json")
ia = ia_levels(game)
for m, level in enumerate(ia.levels):
    print(f"S^{m}:", level.ordered(game).to_dict())
for m, gone in enumerate(ia.removed, start=1):
    for e in gone:
        print(f"round {m}: {e.player} drops {e.strategy}, witness {e.verdict.witness.to_dict()}, "
              f"strict at {e.verdict.strict_at}")

# Witnesses are re-checked with expected payoffs, no LP involved.
e = ia.removed[0][0]
print("witness re-verifies:", check_witness(game, ia.levels[0], e.player, e.strategy, e.verdict))

# A mixture can dominate where no pure strategy does.
g = Game.bimatrix("ABC", ["X", "Y"], [[3, 0], [0, 3], [1, 1]], [[0, 0]] * 3)
v = is_weakly_dominated(g, Restriction.full(g), "row", "C")
print("C=(1,1):", v.dominated, v.witness.to_dict())

# Raise C to (2,2): the half-half mixture now pays 3/2 < 2 on both columns.
g = read_game(DATA / "abc.json")
v = is_weakly_dominated(g, Restriction.full(g), "row", "C")
print("C=(2,2):", v.dominated)
print("best mixture margin at p=1/2:", Fraction(3, 2) - 2)
