"""The 2-cycle: exact binomial tail against the asymptotic formula.

A 2-cycle homomorphism is a mutual pair, so the count is Bin(n(n-1)/2, p^2)
and the upper tail is exact. The ratio to (1/2) n^2 p^2 [(1+d) log(1+d) - d]
drifts to 1 as n grows. A Monte Carlo estimate at small n sits alongside.
"""
import numpy as np

from uptail import catalog
from uptail.simulate import binomial_tail_c2, mc_upper_tail

p, delta = 0.1, 1.0
ns = np.array([50, 100, 200, 400, 800, 1600])
rows = np.array([binomial_tail_c2(int(n), p, delta) for n in ns])
for n, (exact, formula) in zip(ns, rows):
    print(f"n={n:5d}  exact={exact:10.4f}  formula={formula:10.4f}  ratio={exact / formula:.6f}")

est = mc_upper_tail(catalog.two_cycle(), 30, 0.3, 0.5, 20000, seed=7)
exact, _ = binomial_tail_c2(30, 0.3, 0.5)
lo, hi = est.interval
print(f"\nn=30, p=0.3, delta=0.5: Monte Carlo {est.estimate:.4f} in [{lo:.4f}, {hi:.4f}], exact {exact:.4f}")
