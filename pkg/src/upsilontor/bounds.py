"""Lower bounds on cobordisms between knots from ``ΥTor(t)/t``.

Every bound here is a supremum over ``t`` in (0, 2] of an expression built
from ``ΥTor_K(t)/t``.  On each linear piece ``a*t + b`` of a torsion function
the quotient is ``a + b/t``, which is monotone, so suprema are found exactly
by inspecting piece endpoints and the limit ``t -> 0+``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .plfunction import PLFunction, crossings, pl_sub
from .upsilon import upsilon_tor_function

LIMIT_AT_ZERO = "limit at 0"


@dataclass(frozen=True)
class QuotientPiece:
    t0: Fraction
    t1: Fraction
    slope: Fraction  # constant term a of a + b/t
    residue: Fraction  # b

    def __call__(self, t: Fraction) -> Fraction:
        return self.slope + self.residue / t


@dataclass(frozen=True)
class QuotientPiecewise:
    """``t -> f(t)/t`` on (0, 2], piece by piece."""

    pieces: tuple[QuotientPiece, ...]
    limit_at_zero: Fraction

    def __call__(self, t) -> Fraction:
        t = Fraction(t)
        if not 0 < t <= 2:
            raise ValueError("quotients are defined on (0, 2]")
        for p in self.pieces:
            if p.t0 < t <= p.t1:
                return p(t)
        raise AssertionError("pieces do not tile (0, 2]")

    def breakpoints(self) -> list[Fraction]:
        return [p.t1 for p in self.pieces]


def quotient_by_t(f: PLFunction) -> QuotientPiecewise:
    if f.values[0] != 0:
        raise ValueError(f"f(0) = {f.values[0]}; the quotient f(t)/t needs f(0) = 0")
    pieces = tuple(QuotientPiece(a, b, slope, intercept)
                   for a, b, slope, intercept in f.pieces())
    return QuotientPiecewise(pieces, pieces[0].slope)


def sup_difference(q0: QuotientPiecewise, q1: QuotientPiecewise
                   ) -> tuple[Fraction, Fraction | str]:
    """Exact ``sup (q0 - q1)`` over (0, 2] and a point attaining it.

    The witness is the smallest attaining breakpoint, or ``"limit at 0"``
    when the supremum is only the limit.
    """
    best: Fraction = q0.limit_at_zero - q1.limit_at_zero
    witness: Fraction | str = LIMIT_AT_ZERO
    for t in sorted(set(q0.breakpoints()) | set(q1.breakpoints())):
        v = q0(t) - q1(t)
        if v > best or (v == best and witness == LIMIT_AT_ZERO):
            best, witness = v, t
    return best, witness


@dataclass(frozen=True)
class BoundForm:
    supremum: Optional[Fraction]  # None when the form does not apply
    witness_t: Fraction | str | None
    value: int


@dataclass(frozen=True)
class BoundReport:
    kind: str  # maxima | minima | genus | crossings
    value: int
    witness_t: Fraction | str | None
    supremum: Optional[Fraction]
    forms: dict[str, BoundForm] = field(default_factory=dict)
    # True when the headline supremum is an integer attained at some t > 0;
    # the slice-disk corollary's "greater than" reading then adds one.
    attained_integer: bool = False

    @property
    def strict_value(self) -> int:
        return self.value + 1 if self.attained_integer else self.value


def _ceil0(x: Optional[Fraction]) -> int:
    return 0 if x is None else max(0, math.ceil(x))


def _function(c) -> PLFunction:
    return c if isinstance(c, PLFunction) else upsilon_tor_function(c)


def _dominance_form(f0: PLFunction, f1: PLFunction) -> tuple[BoundForm, bool]:
    """``sup f0(t)/t`` over the set where ``f0(t) > f1(t)``.

    The set is a finite union of open intervals.  ``f0/t`` is monotone
    between breakpoints of ``f0``, so its supremum over each interval is the
    larger endpoint value (a limit when the endpoint is excluded).  Also
    returns whether the supremum is attained inside the set.
    """
    d = pl_sub(f0, f1)
    ts = sorted(set(crossings(f0, f1)) | set(f0.breakpoints))
    q0 = quotient_by_t(f0)
    candidates = []
    for a, b in zip(ts, ts[1:]):
        if d((a + b) / 2) <= 0:
            continue
        for t in (a, b):
            if t == 0:
                candidates.append((q0.limit_at_zero, LIMIT_AT_ZERO, False))
            else:
                candidates.append((q0(t), t, d(t) > 0))
    if not candidates:
        return BoundForm(None, None, 0), False
    best = max(v for v, _, _ in candidates)
    top = [(t, inside) for v, t, inside in candidates if v == best]
    attained = any(inside for _, inside in top)
    witness = next((t for t, inside in top if inside), top[0][0])
    return BoundForm(best, witness, _ceil0(best)), attained


def maxima_bound(c0, c1) -> BoundReport:
    """Local maxima needed in a concordance from ``c0`` to ``c1``.

    Two forms are computed: the difference form
    ``M >= sup (f0(t) - f1(t))/t`` and the form
    ``M >= f0(t)/t wherever f0(t) > f1(t)``.  The larger is the headline.
    Either argument may be a complex or an already computed torsion function.
    """
    f0, f1 = _function(c0), _function(c1)
    sup, w = sup_difference(quotient_by_t(f0), quotient_by_t(f1))
    diff = BoundForm(sup, w, _ceil0(sup))
    dom, dom_attained = _dominance_form(f0, f1)
    if dom.value > diff.value:
        head, attained = dom, dom_attained
    else:
        head, attained = diff, w != LIMIT_AT_ZERO
    integral = head.value > 0 and head.supremum.denominator == 1 and attained
    return BoundReport("maxima", head.value, head.witness_t, head.supremum,
                       {"difference": diff, "dominance": dom}, integral)


def minima_bound(c0, c1) -> BoundReport:
    """Local minima in a concordance from ``c0`` to ``c1``: maxima turned upside down."""
    r = maxima_bound(c1, c0)
    return BoundReport("minima", r.value, r.witness_t, r.supremum, r.forms, r.attained_integer)


def _two_sided(c0, c1) -> tuple[Fraction, Fraction | str]:
    q0, q1 = quotient_by_t(_function(c0)), quotient_by_t(_function(c1))
    up = sup_difference(q0, q1)
    down = sup_difference(q1, q0)
    return max(up, down, key=lambda r: r[0])


def genus_bound(c0, c1) -> BoundReport:
    """Genus of a cobordism without local maxima: ``2g >= |f0/t - f1/t|``."""
    sup, w = _two_sided(c0, c1)
    return BoundReport("genus", _ceil0(sup / 2), w, sup,
                       {"absolute": BoundForm(sup, w, _ceil0(sup / 2))})


def crossing_bound(c0, c1) -> BoundReport:
    """Signed Gordian distance: ``max(c-, c+) >= sup |f0/t - f1/t| / 2``."""
    sup, w = _two_sided(c0, c1)
    return BoundReport("crossings", _ceil0(sup / 2), w, sup,
                       {"absolute": BoundForm(sup, w, _ceil0(sup / 2))})


BOUNDS = {
    "maxima": maxima_bound,
    "minima": minima_bound,
    "genus": genus_bound,
    "crossings": crossing_bound,
}
