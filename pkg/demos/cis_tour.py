# Constrained zero-sums: which route the dispatcher picks for each forbidden set.
# Run with: python3 demos/cis_tour.py

from zsf import Explicit, Problem, cis_full, plan_cis_full, verify
from zsf.cli import gen
from zsf.errors import FailureError

q = 11
sets = {
    "one hole": set(range(q)) - {4},
    "two holes": set(range(q)) - {1, 2},
    "half missing": {0, 1, 2, 3, 4},
    "two left": {3, 8},
}

for name, B in sets.items():
    plan = plan_cis_full(q, 1, B)
    route = plan.cheapest()
    print(f"{name:>12}: case={plan.case}, table route needs {plan.table_route.threshold}, "
          f"cheapest is {route.name} with {route.threshold}")
    wins = 0
    for seed in range(10):
        F = gen(seed, q, 1, route.threshold)
        try:
            x = cis_full(F, B)
        except FailureError:
            continue
        assert verify(Problem(F, Explicit(B)), x)
        wins += 1
    print(f"{'':>12}  {wins}/10 uniform instances solved")
