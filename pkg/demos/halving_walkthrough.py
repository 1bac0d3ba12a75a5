# Halving a bounded zero-sum, step by step.
# Run with: python3 demos/halving_walkthrough.py

from zsf import Interval, Problem, reducible_from_zero_sum, sis_power2, verify
from zsf.cli import gen
from zsf.core import lifted, max_abs
from zsf.linalg import find_dependency, lin_comb
from zsf.thresholds import sis_power2_threshold, sis_quarter_threshold

q = 101

# any dependency among n+1 vectors is a (+-50)-zero-sum
F = gen(seed=3, q=q, n=2, m=3)
alpha = lifted(find_dependency(F), q)
print("dependency:", alpha)

# turn it into a reducible vector: c*u can be rewritten with coefficients <= 25
red = reducible_from_zero_sum(alpha, q // 2)
u = red.vector(F)
print("u coefficients:", red.u_coeffs, "u =", u)
for c in (1, 20, 26, 50, -37):
    x = red.expand(c)
    same = lin_comb(F.rows, x, q, F.n) == tuple(c * t % q for t in u)
    print(f"  {c:>4} * u -> {x}  ok={same}")

# the worst-case solvers just stack this trick
for k in (2, 4):
    m = sis_power2_threshold(q, 2, k)
    F = gen(seed=k, q=q, n=2, m=m)
    x = sis_power2(F, k)
    rep = verify(Problem(F, Interval(q // (2 * k))), x)
    print(f"k={k}: m={m}, support={len(x)}, max |x_i|={max_abs(x, q)} <= {q // (2 * k)}, verified={rep.ok}")

print("quarter threshold grows like n^2/2:", [sis_quarter_threshold(q, n) for n in range(1, 8)])
