"""Exact algebra on exponential polynomials  sum_j a_j * exp(-l_j * x).

Terms are kept sorted by increasing decay rate, so the first term is the
slowest-decaying one and fixes the sign at +infinity.  The number of real
zeros of such a sum is bounded by the number of strict sign alternations in
the coefficient sequence taken in that order; root isolation below uses a
Rolle-style recursion whose depth equals the term count minus one, with no
numerical differentiation anywhere.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import ResidualUncertainty
from .patterns import EXACT, SignPattern

logger = logging.getLogger(__name__)

#: Coefficients below this fraction of the largest one are pruned.
PRUNE_REL = 1e-14
#: Rates closer than this (relative to the largest rate) are merged.
RATE_MERGE_REL = 1e-12
#: Target width for isolated root intervals.
ROOT_WIDTH = 1e-12
#: |f| below this fraction of the local term scale counts as a numeric zero
#: when classifying partition points during isolation.
TOUCH_REL = 5e-13

_EXP_LO, _EXP_HI = -745.0, 709.0


def _exp(z):
    return np.exp(np.clip(z, _EXP_LO, _EXP_HI))


def _merge_terms(pairs) -> tuple[tuple[float, float], ...]:
    pairs = [(float(c), float(r)) for c, r in pairs]
    for _, r in pairs:
        if not r > 0:
            raise ValueError("rates must be strictly positive")
    pairs.sort(key=lambda t: t[1])
    if not pairs:
        raise ValueError("at least one term is required")
    tol = RATE_MERGE_REL * pairs[-1][1]
    merged: list[list[float]] = []
    for c, r in pairs:
        if merged and abs(r - merged[-1][1]) <= tol:
            merged[-1][0] += c
        else:
            merged.append([c, r])
    top = max(abs(c) for c, _ in merged)
    if top == 0.0:
        return ()
    kept = []
    for c, r in merged:
        if c == 0.0:
            continue
        if abs(c) < PRUNE_REL * top:
            # pure cancellation residue (a few ulps) is routine; anything
            # larger deserves attention
            level = logging.DEBUG if abs(c) < 100 * np.finfo(float).eps * top \
                else logging.WARNING
            logger.log(level, "pruning negligible coefficient %.3e at rate %.6g", c, r)
            continue
        kept.append((c, r))
    return tuple(kept)


@dataclass(frozen=True)
class ExpPoly:
    """Finite sum of exponential terms with distinct positive rates."""

    terms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", _merge_terms(self.terms))
        if not self.terms:
            raise ValueError("all coefficients cancelled; empty polynomial")

    @staticmethod
    def maybe(pairs) -> "ExpPoly | None":
        """Build from (coefficient, rate) pairs; None if everything cancels."""
        merged = _merge_terms(pairs)
        return ExpPoly(merged) if merged else None

    # ------------------------------------------------------------------
    # basic algebra
    # ------------------------------------------------------------------

    @property
    def coefficients(self) -> tuple[float, ...]:
        return tuple(c for c, _ in self.terms)

    @property
    def rates(self) -> tuple[float, ...]:
        return tuple(r for _, r in self.terms)

    def __call__(self, x):
        return self.eval(x)

    def eval(self, x):
        """Evaluate with compensated (Kahan) summation over terms."""
        xa = np.asarray(x, dtype=float)
        total = np.zeros(xa.shape)
        comp = np.zeros(xa.shape)
        for c, r in self.terms:
            term = c * _exp(-r * xa)
            y = term - comp
            t = total + y
            comp = (t - total) - y
            total = t
        return float(total) if xa.ndim == 0 else total

    def differentiate(self, k: int = 1) -> "ExpPoly":
        """k-th derivative: term-wise multiplication by (-rate)**k."""
        if k < 0:
            raise ValueError("k must be nonnegative")
        return ExpPoly(tuple((c * (-r) ** k, r) for c, r in self.terms))

    def integrate_upper(self) -> "ExpPoly":
        """g(x) = integral of p from x to infinity; term-wise c/r."""
        return ExpPoly(tuple((c / r, r) for c, r in self.terms))

    def scaled(self, factor: float) -> "ExpPoly":
        if factor == 0:
            raise ValueError("zero scale collapses the polynomial")
        return ExpPoly(tuple((c * factor, r) for c, r in self.terms))

    def compose_affine(self, a: float, b: float) -> "ExpPoly":
        """The polynomial x -> p(a*x + b); requires a > 0."""
        if a <= 0:
            raise ValueError("composition slope must be positive")
        return ExpPoly(tuple((c * math.exp(-r * b), r * a) for c, r in self.terms))

    def __neg__(self) -> "ExpPoly":
        return self.scaled(-1.0)

    def subtract(self, other: "ExpPoly") -> "ExpPoly | None":
        return ExpPoly.maybe(list(self.terms) + [(-c, r) for c, r in other.terms])

    def multiply(self, other: "ExpPoly") -> "ExpPoly | None":
        prods = [(c1 * c2, r1 + r2) for c1, r1 in self.terms for c2, r2 in other.terms]
        return ExpPoly.maybe(prods)

    # ------------------------------------------------------------------
    # sign-variation bound and root isolation
    # ------------------------------------------------------------------

    def sign_change_bound(self) -> int:
        """Strict alternations of coefficient signs, terms ordered by
        increasing rate.  Bounds the number of real zeros."""
        signs = [math.copysign(1.0, c) for c in self.coefficients]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def dominance_horizon(self, start: float = 0.0) -> float:
        """Smallest verified x >= start beyond which the slowest-decaying
        term outweighs the sum of all the others, fixing the sign."""
        c0, r0 = self.terms[0]
        rest = self.terms[1:]
        if not rest:
            return start
        x = start
        for c, r in rest:
            ratio = abs(c / c0) * len(rest)
            if ratio > 1.0:
                x = max(x, math.log(ratio) / (r - r0))
        # verify relative to the head term (immune to underflow), nudging
        # rightward until the bound actually holds
        for _ in range(200):
            rel = sum(abs(c / c0) * _exp(-(r - r0) * x) for c, r in rest)
            if rel < 1.0:
                return x
            x += max(1.0, 0.5 * abs(x))
        raise ResidualUncertainty("could not certify a dominance horizon")

    def isolate_roots(self, lo: float, hi: float, tol: float = ROOT_WIDTH) -> "RootReport":
        """Certified isolation of the real roots in [lo, hi].

        Recursion: after factoring out the slowest exponential the derivative
        has one term fewer, so between consecutive critical points the
        function is strictly monotone and plain bisection is certified.
        """
        if not lo < hi:
            raise ValueError("domain must be a nondegenerate interval")
        coefs = np.array(self.coefficients)
        rates = np.array(self.rates)
        roots, uncertain = _isolate(coefs, rates, float(lo), float(hi), tol)
        bound = self.sign_change_bound()
        if len(roots) > bound:
            # mathematically impossible; only numerical duplication can do it
            uncertain = True
            roots = roots[:bound]
        return RootReport(bound, tuple(roots), uncertain)

    def sign_pattern_exact(self, start: float = 0.0) -> SignPattern:
        """Full sign sequence on (start, inf).

        Roots are isolated on a bounded window ending at the dominance
        horizon; beyond it the sign is the analytic limit sign (slowest
        term).  A tangential root (no crossing) yields no sign change.
        """
        horizon = self.dominance_horizon(start)
        shift = max(ROOT_WIDTH, 1e-12 * max(abs(start), 1.0))
        lo = start + shift
        hi = max(horizon + 1.0, lo + 1.0)
        report = self.isolate_roots(lo, hi, ROOT_WIDTH)

        coefs = np.array(self.coefficients)
        rates = np.array(self.rates)
        cuts = [lo] + [0.5 * (a + b) for a, b in report.isolated_roots] + [hi]
        regions = list(zip(cuts, cuts[1:]))
        signs: list[str] = []
        witnesses: list[float] = []
        changes: list[tuple[float, float]] = []
        uncertain = report.residual_uncertainty
        prev_root = None
        for (a, b), root in zip(regions, list(report.isolated_roots) + [None]):
            xs = np.linspace(a, b, 9)[1:-1]
            vals = self.eval(xs)
            idx = int(np.argmax(np.abs(vals)))
            v = vals[idx]
            if abs(v) <= TOUCH_REL * _local_scale(coefs, rates, xs[idx]):
                # whole region below the noise floor: decide by derivatives
                sn = _sign_near(coefs, rates, 0.5 * (a + b), +1)
                if sn == 0.0:
                    uncertain = True
                    prev_root = root
                    continue
                v = sn
            s = "+" if v > 0 else "-"
            if signs and signs[-1] == s:
                prev_root = root
                continue
            if signs:
                changes.append(prev_root if prev_root is not None else (a, a))
            signs.append(s)
            witnesses.append(float(xs[idx]))
            prev_root = root
        if not signs:
            # single-term polynomials and degenerate windows: limit sign only
            s = "+" if self.terms[0][0] > 0 else "-"
            signs, witnesses = [s], [hi]
        return SignPattern(tuple(signs), tuple(witnesses), tuple(changes),
                           EXACT, uncertain)


@dataclass(frozen=True)
class RootReport:
    """Outcome of certified root isolation.

    isolated_roots are disjoint intervals each containing exactly one root;
    residual_uncertainty flags candidates that could not be separated at
    working precision (they are retained, never dropped).
    """

    sign_change_bound: int
    isolated_roots: tuple[tuple[float, float], ...]
    residual_uncertainty: bool = False

    def __post_init__(self):
        if len(self.isolated_roots) > self.sign_change_bound and not self.residual_uncertainty:
            raise ValueError("more isolated roots than the sign-change bound allows")


def _kahan_eval(coefs, rates, x):
    total = 0.0
    comp = 0.0
    for c, r in zip(coefs, rates):
        term = c * math.exp(min(max(-r * x, _EXP_LO), _EXP_HI))
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def _local_scale(coefs, rates, x):
    return sum(abs(c) * math.exp(min(max(-r * x, _EXP_LO), _EXP_HI))
               for c, r in zip(coefs, rates))


def _sign_near(coefs, rates, x, side):
    """Sign of the function just to one side of x (side = +1 right, -1 left).

    When the value at x sits below the roundoff floor, the sign follows
    from the first Taylor derivative that is resolvable; derivatives are
    exact coefficient arithmetic, so a root of any finite order at x is
    handled without sampling inside the noise.  Returns 0.0 when the
    function is numerically flat to high order.
    """
    val = _kahan_eval(coefs, rates, x)
    if abs(val) > TOUCH_REL * _local_scale(coefs, rates, x):
        return 1.0 if val > 0 else -1.0
    dc = np.asarray(coefs, dtype=float)
    dr = np.asarray(rates, dtype=float)
    for k in range(1, len(dc) + 3):
        dc = dc * (-dr)
        dval = _kahan_eval(dc, dr, x)
        dscale = _local_scale(dc, dr, x)
        if dscale > 0 and abs(dval) > 1e-12 * dscale:
            s = 1.0 if dval > 0 else -1.0
            return s if side > 0 else s * (-1.0) ** k
    return 0.0


def _bisect_root(coefs, rates, a, b, sa, tol):
    """One certified root in (a, b) where the function is monotone and the
    side-corrected signs at the endpoints differ."""
    while b - a > tol:
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        fm = _kahan_eval(coefs, rates, m)
        if abs(fm) <= 1e-16 * _local_scale(coefs, rates, m):
            w = max(tol / 4, abs(m) * 1e-16)
            return (max(a, m - w), min(b, m + w))
        if (fm > 0) == (sa > 0):
            a = m
        else:
            b = m
    return (a, b)


def _isolate(coefs, rates, lo, hi, tol):
    """Roots of sum c_i exp(-r_i x) on [lo, hi] as (intervals, uncertain)."""
    n = len(coefs)
    if n == 1:
        return [], False
    # factor out the slowest exponential: same roots, derivative loses a term
    shifted = rates - rates[0]
    dcoefs = -shifted[1:] * coefs[1:]
    drates = shifted[1:]
    crit_iv, uncertain = _isolate(dcoefs, drates, lo, hi, tol)
    crit = [0.5 * (a + b) for a, b in crit_iv]

    qc = np.concatenate(([coefs[0]], coefs[1:]))
    qr = np.concatenate(([0.0], shifted[1:]))

    pts = [lo] + crit + [hi]
    roots: list[tuple[float, float]] = []
    for i in range(len(pts) - 1):
        a, b = pts[i], pts[i + 1]
        if i > 0 and abs(_kahan_eval(qc, qr, a)) <= TOUCH_REL * _local_scale(qc, qr, a):
            # value below the noise floor at a critical point: a crossing or
            # tangential root, or a mere noise plateau.  The one-sided signs
            # from exact Taylor derivatives decide which.
            sl = _sign_near(qc, qr, a, -1)
            sr = _sign_near(qc, qr, a, +1)
            if sl == 0.0 or sr == 0.0:
                uncertain = True
            elif sl != sr or _kahan_eval(qc, qr, a) == 0.0:
                w = max(tol / 2, abs(a) * 1e-15)
                iv = (a - w, a + w)
                if not roots or roots[-1][1] < iv[0]:
                    roots.append(iv)
        sa = _sign_near(qc, qr, a, +1)
        sb = _sign_near(qc, qr, b, -1)
        if sa == 0.0 or sb == 0.0:
            uncertain = True
            continue
        if sa != sb:
            iv = _bisect_root(qc, qr, a, b, sa, tol)
            if roots and iv[0] - roots[-1][1] < tol:
                uncertain = True
            if not roots or roots[-1] != iv:
                roots.append(iv)
    return roots, uncertain
