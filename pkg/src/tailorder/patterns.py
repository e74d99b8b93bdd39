"""Sign patterns on (0, inf) and the pattern-matching rule used by every
order criterion.

A sign pattern is the ordered sequence of strict signs a function shows as
x traverses from 0 to infinity, together with witness abscissae (points
where the function is beyond the deadband in that direction) and bracketing
intervals for each sign change.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

PLUS = "+"
MINUS = "-"

#: Admissible patterns for the convex-transform (s-IFR) comparisons: at most
#: two sign changes and, when exactly two occur, in the order "+,-,+".
#: Matching accepts final parts, so listing the two maximal chains covers
#: every admissible pattern ("+", "-", "-,+", "+,-", "+,-,+") and nothing else.
ALLOWED_IFR: tuple[tuple[str, ...], ...] = ((PLUS, MINUS, PLUS), (PLUS, MINUS))

#: Admissible patterns for the star-shape (s-IFRA) comparisons: at most one
#: sign change and, when it occurs, in the order "-,+".
ALLOWED_IFRA: tuple[tuple[str, ...], ...] = ((MINUS, PLUS), (MINUS,))

EXACT = "exact"
SAMPLED = "sampled"


def _normalize(seq: Iterable[str]) -> tuple[str, ...]:
    out = []
    for s in seq:
        s = s.strip()
        if s not in (PLUS, MINUS):
            raise ValueError(f"invalid sign {s!r}")
        out.append(s)
    return tuple(out)


@dataclass(frozen=True)
class ScanConfig:
    """Controls for adaptive sign scanning on (0, x_max].

    deadband is relative to the largest sampled |f|; samples inside the
    deadband carry no sign evidence.  deadband_abs adds an absolute floor
    for functions whose evaluation noise is not tied to their magnitude
    (quadrature-backed tails).
    """

    x_max: float = 50.0
    initial_grid: int = 512
    deadband: float = 1e-11
    max_refinement_depth: int = 12
    deadband_abs: float = 0.0

    def __post_init__(self):
        if self.x_max <= 0:
            raise ValueError("x_max must be positive")
        if self.initial_grid < 64:
            raise ValueError("initial_grid must be at least 64")
        if self.deadband <= 0:
            raise ValueError("deadband must be positive")
        if self.max_refinement_depth < 0:
            raise ValueError("max_refinement_depth must be nonnegative")


@dataclass(frozen=True)
class SignPattern:
    """Ordered sequence of strict signs with supporting evidence.

    witnesses[i] is an abscissa where the function exceeds the deadband with
    sign signs[i]; change_points[i] brackets the i-th sign change and lies
    between witnesses[i] and witnesses[i+1].  confidence is "exact" when the
    pattern came from certified root isolation and "sampled" otherwise.
    uncertain marks an inconclusive-grade pattern (root isolation could not
    separate candidates); such patterns must not be used as evidence.
    """

    signs: tuple[str, ...]
    witnesses: tuple[float, ...]
    change_points: tuple[tuple[float, float], ...]
    confidence: str = SAMPLED
    uncertain: bool = False

    def __post_init__(self):
        object.__setattr__(self, "signs", _normalize(self.signs))
        if len(self.witnesses) != len(self.signs):
            raise ValueError("one witness per sign is required")
        if len(self.change_points) != max(0, len(self.signs) - 1):
            raise ValueError("one change point per adjacent sign pair")
        for a, b in zip(self.signs, self.signs[1:]):
            if a == b:
                raise ValueError("adjacent signs must differ")
        if any(b < a for a, b in zip(self.witnesses, self.witnesses[1:])):
            raise ValueError("witnesses must be increasing")

    @property
    def n_changes(self) -> int:
        return max(0, len(self.signs) - 1)

    def negated(self) -> "SignPattern":
        flip = {PLUS: MINUS, MINUS: PLUS}
        return SignPattern(
            tuple(flip[s] for s in self.signs),
            self.witnesses,
            self.change_points,
            self.confidence,
            self.uncertain,
        )

    def __str__(self) -> str:
        return ",".join(self.signs) if self.signs else "(none)"


def matches(pattern: SignPattern | Sequence[str], allowed: Iterable[Sequence[str]]) -> bool:
    """True iff the pattern is a final part (suffix) of some allowed sequence.

    The empty pattern (a function with no sign evidence, e.g. identically
    zero within the deadband) is a final part of everything.
    """
    signs = pattern.signs if isinstance(pattern, SignPattern) else _normalize(pattern)
    n = len(signs)
    if n == 0:
        return True
    for cand in allowed:
        cand = _normalize(cand)
        if n <= len(cand) and cand[len(cand) - n:] == signs:
            return True
    return False
