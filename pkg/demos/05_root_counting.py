"""Root counting for sums of exponentials: the engine behind the order checks.

A sum of exponentials with distinct rates has at most as many real zeros
as there are sign alternations in its coefficient sequence (ordered by
rate).  Root isolation exploits this: after factoring out the slowest
term, the derivative has one term fewer, so a short recursion brackets
every root between certified monotone segments.
"""
import numpy as np

from tailorder import ExpPoly, check_integration_lemma, scan
from tailorder.patterns import ScanConfig

print("=== sign-change bound vs actual roots ===")
examples = [
    ExpPoly(((1.0, 1.0), (-1.0, 2.0))),
    ExpPoly(((1.0, 1.0), (-3.0, 2.0), (2.05, 3.0))),
    ExpPoly(((1.0, 0.5), (1.0, 1.5), (-4.0, 2.5), (1.0, 4.0))),
]
for p in examples:
    rep = p.isolate_roots(-5.0, p.dominance_horizon(-5.0) + 1.0)
    mids = [round(0.5 * (a + b), 6) for a, b in rep.isolated_roots]
    print(f"  signs {tuple('+' if c > 0 else '-' for c in p.coefficients)}: "
          f"bound {rep.sign_change_bound}, found {len(rep.isolated_roots)} at {mids}")

print()
print("=== exact sign patterns on (0, inf) ===")
h = ExpPoly(((1.0, 1.0), (1.0, 2.0), (-1.0, 3.0), (-1.0, 0.5)))
print(f"  rises-then-decays example: pattern {h.sign_pattern_exact(0.0)}")
print(f"  sampled scan agrees:       pattern "
      f"{scan(h.eval, ScanConfig(x_max=60.0))}")

print()
print("=== integrating from x to infinity can only shorten the pattern ===")
rng = np.random.default_rng(5)
for _ in range(4):
    n = int(rng.integers(2, 5))
    rates = np.sort(rng.uniform(0.2, 6.0, n)) + np.arange(n) * 1e-6
    coefs = rng.uniform(-4.0, 4.0, n)
    coefs[np.abs(coefs) < 0.1] = 0.1
    f = ExpPoly(tuple(zip(coefs, rates)))
    g = f.integrate_upper()
    print(f"  f pattern {str(f.sign_pattern_exact(0.0)):>8s} -> "
          f"integral pattern {str(g.sign_pattern_exact(0.0)):>8s}   "
          f"(final part: {check_integration_lemma(f)})")
