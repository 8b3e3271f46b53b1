"""
Conditions, generic sets and names
==================================

Run the forcing pipeline on a small model with a nonempty fixpoint, then on
a model where the conditions and the level-indexed candidate set part ways.
"""
from pathlib import Path

from iaforge.belief import BeliefModel
from iaforge.forcing import EXHAUSTIVE, analyse, canonical_names, depth, forces, referential_value
from iaforge.game import Game
from iaforge.serialization import read_model, value_to_json

DATA = Path(__file__).parent / "data"

model = read_model(DATA / "tie_model.json")
fa = analyse(model)
print("m_max:", fa.m_max, " poset:", len(fa.poset), fa.poset.levels_histogram())
print("delta == poset:", {c.profile for c in fa.delta} == {c.profile for c in fa.poset.elements})
print("generic:", sorted(fa.generic))
print("genericity ok:", fa.genericity.ok, " dominations checked:", fa.genericity.dominations_checked)

names = canonical_names(fa.generic, fa.m_max)
for mu in names:
    v = referential_value(mu, fa.generic, model, fa.levels)
    print(f"rank {mu.rank}: depth {depth(v)}  {value_to_json(v)}")

for gamma in sorted(fa.generic):
    v = forces(gamma, names[-1], model, EXHAUSTIVE, generic=fa.generic, poset=fa.poset)
    print("forces:", v.holds, "over", v.filters_checked, "generic filter(s)")

# Everyone is rational in a zero game, but u only ever reaches t2, never t:
# (U,t),(L,u) sits at R-level 0 yet is not a condition.
zero = Game.bimatrix("UD", "LR", [[0, 0], [0, 0]], [[0, 0], [0, 0]])
m = BeliefModel(zero, {"row": ["t", "t2"], "col": ["u"]}, {
    "row": {"t": [{"col": ["L", "u"]}], "t2": [{"col": ["L", "u"]}]},
    "col": {"u": [{"row": ["U", "t2"]}]},
})
fa = analyse(m)
print("delta:", len(fa.delta), " poset:", len(fa.poset))
