# Success rate of the average-case subset-sum solver as m grows.
# Run with: python3 demos/bench_sweep.py  (writes CSV to stdout)
# Below its threshold the solver refuses the input, so those cells report 0.

from fractions import Fraction

from zsf.cli import bench_csv
from zsf.thresholds import subset_sum_threshold

m_star = subset_sum_threshold(5, 1, Fraction(1, 2))
grid = sorted({max(1, m_star * p // 8) for p in range(1, 9)})
config = {"jobs": [{"problem": "subset", "q": 5, "n": 1, "m": grid, "seeds": list(range(10))}]}

text = bench_csv(config)
print(text, end="")

rows = [ln.split(",") for ln in text.splitlines()[1:]]
for m in grid:
    hits = [int(r[5]) for r in rows if int(r[3]) == m]
    print(f"# m={m:>4}: {sum(hits)}/{len(hits)}")
