"""Monotonicity of iterated failure rates, and how iteration changes it.

The iterated rate r_s is the hazard of the s-iterate.  Increasing r_s
defines the s-IFR class; the running average (1/x) int_0^x r_s defines the
s-IFRA class.  Increasing rate is hereditary under iteration, but the
averaged version is not, and a system can even turn DFR at a later order.
"""
import numpy as np

from tailorder import (
    Exponential,
    MaxExp,
    PolyExpExample,
    classify_ifr,
    classify_ifra,
    dfr_onset,
    failure_rate,
)

print("=== density (x^2 + c) e^{-x} / (c + 2): monotone only after iteration ===")
d = PolyExpExample(1.0)
xs = np.array([0.0, 0.2, 0.4142, 1.0, 3.0])
print("  x:     ", "  ".join(f"{x:7.3f}" for x in xs))
print("  r_1(x):", "  ".join(f"{v:7.4f}" for v in failure_rate(d, 1, xs)),
      "  <- dips then rises")
print("  r_2(x):", "  ".join(f"{v:7.4f}" for v in failure_rate(d, 2, xs)),
      "  <- increasing")
c1 = classify_ifr(d, 1)
print(f"  class at order 1: {c1.verdict}, slope change bracketed in "
      f"{tuple(round(v, 5) for v in c1.change_points[0])}")
print(f"  class at order 2: {classify_ifr(d, 2).verdict}")
print(f"  averaged-rate class at order 1: {classify_ifra(d, 1).verdict}")

print()
print("=== two-component parallel system: averaged monotonicity is not hereditary ===")
mx = MaxExp(1.0, 2.0)
print(f"  avg-rate class, order 1: {classify_ifra(mx, 1).verdict}")
a2 = classify_ifra(mx, 2)
print(f"  avg-rate class, order 2: {a2.verdict}  "
      f"(witnesses {[(round(x, 3), d) for x, d in a2.turning_witnesses]})")
for s in (3, 4, 5, 6):
    print(f"  rate class, order {s}: {classify_ifr(mx, s).verdict}")
print(f"  first decreasing order: {dfr_onset(mx, s_max=16)}  "
      "(origin-slope sign flips between orders 4 and 5)")

print()
print("=== the exponential sits on every boundary ===")
e = Exponential(2.0)
print(f"  rate class, any order: {classify_ifr(e, 3).verdict}")
print(f"  avg class, any order:  {classify_ifra(e, 2).verdict}")
