"""Exact piecewise-linear functions on [0, 2]."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

DOMAIN = (Fraction(0), Fraction(2))


@dataclass(frozen=True)
class PLFunction:
    """Continuous piecewise-linear function given by its breakpoints.

    Always stored in canonical form: breakpoints strictly increasing from 0 to
    2, with no point lying on the segment joining its neighbours.
    """

    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self):
        bps = tuple(Fraction(b) for b in self.breakpoints)
        vals = tuple(Fraction(v) for v in self.values)
        if len(bps) != len(vals) or len(bps) < 2:
            raise ValueError("need matching breakpoints and values, at least two")
        if bps[0] != DOMAIN[0] or bps[-1] != DOMAIN[1]:
            raise ValueError("breakpoints must start at 0 and end at 2")
        if any(a >= b for a, b in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        bps, vals = _drop_collinear(bps, vals)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", vals)

    @classmethod
    def zero(cls) -> "PLFunction":
        return cls(DOMAIN, (Fraction(0), Fraction(0)))

    @classmethod
    def from_points(cls, points: Iterable[tuple[Fraction, Fraction]]) -> "PLFunction":
        """Build from (t, value) pairs; duplicates must agree."""
        merged: dict[Fraction, Fraction] = {}
        for t, v in points:
            t, v = Fraction(t), Fraction(v)
            if t in merged and merged[t] != v:
                raise ValueError(f"conflicting values at t={t}: {merged[t]} vs {v}")
            merged[t] = v
        ts = sorted(merged)
        return cls(tuple(ts), tuple(merged[t] for t in ts))

    def __call__(self, t) -> Fraction:
        return pl_eval(self, t)

    def pieces(self) -> list[tuple[Fraction, Fraction, Fraction, Fraction]]:
        """``(t0, t1, slope, intercept)`` for each linear piece."""
        out = []
        for (a, fa), (b, fb) in zip(self.points(), self.points()[1:]):
            slope = (fb - fa) / (b - a)
            out.append((a, b, slope, fa - slope * a))
        return out

    def points(self) -> list[tuple[Fraction, Fraction]]:
        return list(zip(self.breakpoints, self.values))

    def initial_slope(self) -> Fraction:
        return self.pieces()[0][2]

    def __repr__(self) -> str:
        pts = ", ".join(f"({t}, {v})" for t, v in self.points())
        return f"PLFunction[{pts}]"


def _drop_collinear(bps, vals):
    keep_t, keep_v = [bps[0]], [vals[0]]
    for n in range(1, len(bps) - 1):
        t0, v0 = keep_t[-1], keep_v[-1]
        t1, v1 = bps[n], vals[n]
        t2, v2 = bps[n + 1], vals[n + 1]
        if (v1 - v0) * (t2 - t1) != (v2 - v1) * (t1 - t0):
            keep_t.append(t1)
            keep_v.append(v1)
    keep_t.append(bps[-1])
    keep_v.append(vals[-1])
    return tuple(keep_t), tuple(keep_v)


def pl_eval(f: PLFunction, t) -> Fraction:
    if isinstance(t, float):
        raise TypeError("evaluate at exact rationals")
    t = Fraction(t)
    if not DOMAIN[0] <= t <= DOMAIN[1]:
        raise ValueError(f"t = {t} is outside [0, 2]")
    bps, vals = f.breakpoints, f.values
    lo, hi = 0, len(bps) - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if bps[mid] <= t:
            lo = mid
        else:
            hi = mid
    a, b = bps[lo], bps[hi]
    if t == a:
        return vals[lo]
    return vals[lo] + (vals[hi] - vals[lo]) * (t - a) / (b - a)


def crossings(f: PLFunction, g: PLFunction) -> list[Fraction]:
    """Union of breakpoints plus every point where f - g changes sign."""
    ts = sorted(set(f.breakpoints) | set(g.breakpoints))
    out = [ts[0]]
    for a, b in zip(ts, ts[1:]):
        da, db = f(a) - g(a), f(b) - g(b)
        if da * db < 0:
            out.append(a + (b - a) * da / (da - db))
        out.append(b)
    return out


def pl_sub(f: PLFunction, g: PLFunction) -> PLFunction:
    ts = sorted(set(f.breakpoints) | set(g.breakpoints))
    return PLFunction(tuple(ts), tuple(f(t) - g(t) for t in ts))


def pl_add(f: PLFunction, g: PLFunction) -> PLFunction:
    ts = sorted(set(f.breakpoints) | set(g.breakpoints))
    return PLFunction(tuple(ts), tuple(f(t) + g(t) for t in ts))


def pl_max(f: PLFunction, g: PLFunction) -> PLFunction:
    ts = crossings(f, g)
    return PLFunction(tuple(ts), tuple(max(f(t), g(t)) for t in ts))


def pl_max_all(fs: Sequence[PLFunction]) -> PLFunction:
    out = PLFunction.zero() if not fs else fs[0]
    for f in fs[1:]:
        out = pl_max(out, f)
    return out


def upper_envelope(lines: Iterable[tuple[int, int]], a: Fraction, b: Fraction
                   ) -> list[tuple[Fraction, Fraction]]:
    """Points of ``max(intercept + slope * t)`` over ``[a, b]``.

    ``lines`` holds ``(slope, intercept)`` pairs; the result lists the value
    at ``a``, every kink inside ``(a, b)`` and the value at ``b``.
    """
    lines = set(lines)
    if not lines:
        raise ValueError("empty envelope")

    def at(line, t):
        return line[1] + line[0] * t

    cur = max(lines, key=lambda ln: (at(ln, a), ln[0]))
    pts = [(a, at(cur, a))]
    t = a
    while True:
        best = None
        for ln in lines:
            if ln[0] <= cur[0]:
                continue
            x = Fraction(cur[1] - ln[1], ln[0] - cur[0])
            if x <= t:
                continue
            if best is None or x < best[0] or (x == best[0] and ln[0] > best[1][0]):
                best = (x, ln)
        if best is None or best[0] >= b:
            break
        t, cur = best
        pts.append((t, at(cur, t)))
    pts.append((b, at(cur, b)))
    return pts
