"""Iterated tail-weight distributions: the basics.

The s-iterate of a lifetime distribution normalizes the (s-1)-th residual
moment: tail_s(x) = E (X - x)_+^{s-1} / E X^{s-1}.  Repeated iteration
re-weights the tail; the exponential is the unique fixed point.
"""
import numpy as np

from tailorder import BranchedPareto, Exponential, Gamma, MaxExp, iterate, iterated_moment

xs = np.array([0.0, 0.5, 1.0, 2.0, 4.0])

print("=== the exponential is the fixed point ===")
exp1 = Exponential(1.0)
for s in (1, 2, 4, 6):
    it = iterate(exp1, s)
    err = np.max(np.abs(it.eval_tail(xs) - np.exp(-xs)))
    print(f"  order {s}: max |tail_s - exp(-x)| = {err:.2e}")

print()
print("=== Gamma(2,1): each iteration shifts weight into the tail ===")
g = Gamma(2.0, 1.0)
print("  x:        ", "  ".join(f"{x:7.2f}" for x in xs))
for s in (1, 2, 3):
    vals = iterate(g, s).eval_tail(xs)
    print(f"  tail_{s}(x):", "  ".join(f"{v:7.4f}" for v in vals))
print("  normalizers:", [round(iterated_moment(g, s), 6) for s in (1, 2, 3)],
      " (mean 2, then (1/2) E X^2/E X = 1.5, ...)")

print()
print("=== a parallel system of exponentials stays in closed form ===")
mx = MaxExp(1.0, 2.0)
it2 = iterate(mx, 2)
print("  base tail   terms:", mx.exp_poly_tail().terms)
print("  2-iterate   terms:", tuple((round(c, 6), r) for c, r in it2.poly.terms))
print("  (coefficients divided by rate^(s-1), then renormalized)")

print()
print("=== heavy tails: the branched Pareto keeps closed forms up to s = 2 ===")
bp = BranchedPareto(5.0, 10.0)
it = iterate(bp, 2)
print(f"  tail_1(5) = {bp.tail(5.0):.4f}   (kink value 1/4 for any parameters)")
print(f"  tail_2(5) = {it.eval_tail(5.0):.4f}   (both branch formulas agree: 3/5)")
try:
    iterate(bp, 3)
except Exception as exc:
    print(f"  order 3 is rejected: {type(exc).__name__}: {exc}")
