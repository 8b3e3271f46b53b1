"""
Sweeping a game family
======================

Classify every 2x2 game with payoffs in {0,1,2} (or a slice of it) and tally
where the conditional claim is confirmed, unmet, or violated.
"""
import sys
from collections import Counter

from iaforge.harness import CONFIRMED, GameFamilySpec, verify_family

cap = int(sys.argv[1]) if len(sys.argv) > 1 else 1000
res = verify_family(GameFamilySpec(cap=cap), timings=True, keep_records=True)
print(res.counts)
print("oracle mismatches:", res.manifest["oracle_mismatches"])
print("timings:", res.manifest["wall_clock_seconds"])

# Why the hypothesis fails: empty fixpoints dominate.
reasons = Counter(r.detail for r in res.records if r.theorem1 != CONFIRMED)
print(reasons.most_common())

# Confirmed games are those where neither player's payoff depends on their own strategy.
for r in res.records:
    if r.theorem1 == CONFIRMED:
        print("confirmed example:", r.game_id, r.ia_fixpoint, "rmar rounds", r.rmar_rounds)
        break
