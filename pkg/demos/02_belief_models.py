"""
Qualitative belief models and the RmAR chain
============================================

Build the canonical model of a game, compute rationality and the
assumption chain, and see why equality-based assumption is so demanding.
"""
from pathlib import Path

from iaforge import build_canonical_model, rmar_levels
from iaforge.belief import BeliefModel, check_rationality_complete, unfold
from iaforge.serialization import read_game, read_model

DATA = Path(__file__).parent / "data"

game = read_game(DATA / "two_round.json")
canon = build_canonical_model(game)
model = canon.model
print("types:", model.types)
print("ia-chain complete:", canon.report.satisfied)

levels = rmar_levels(model)
for m in range(levels.fixpoint_round + 1):
    for p in game.players:
        print(f"R^{m}[{p}]:", sorted(levels.level(p, m)))

# Level-0 row types that believe only column L keep D rational (it ties U there),
# so R^0 projects to {U, D} while IA has already dropped D.
print("R^0 row strategies:", sorted(levels.strategies("row", 0)))

# Assumption is set equality.  To survive round 2 a type must believe R^1
# exactly, and since it survived round 1 it also believes R^0; so R^0 = R^1.
# A nonempty fixpoint therefore means the chain never moved.
print("R^inf product nonempty:", levels.product_nonempty())

# A model where the chain is constant from the start.
tie = read_model(DATA / "tie_model.json")
lv = rmar_levels(tie)
print("tie model fixpoint round:", lv.fixpoint_round, {p: sorted(lv.strategies(p)) for p in tie.game.players})

# Unfolding alternates between players: exact-step depth matters.
cyc = BeliefModel(tie.game, {"row": ["t", "v"], "col": ["u", "w"]}, {
    "row": {"t": [{"col": ["L", "u"]}], "v": [{"col": ["L", "w"]}]},
    "col": {"u": [{"row": ["U", "v"]}], "w": [{"row": ["U", "t"]}]},
})
for k in range(1, 6):
    print(f"P^{k}[t] =", sorted(unfold(cyc, "row", "t", k)))

abc = read_game(DATA / "abc.json")
report = check_rationality_complete(build_canonical_model(abc).model)
print("abc failures:", [(w.player, w.strategy) for w in report.failures()])
