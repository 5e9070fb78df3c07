"""The Upsilon torsion function and the torsion orders derived from it."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .complex import BifilteredComplex
from .filtration import Prepared, Rational, parameter, reduce, reduce_pairs
from .plfunction import PLFunction, pl_max, upper_envelope

WORKERS_ENV = "UPSILONTOR_WORKERS"


@dataclass(frozen=True)
class TorsionProfile:
    total: PLFunction
    even: Optional[PLFunction]
    odd: Optional[PLFunction]


@dataclass(frozen=True)
class Scan:
    """Everything learned while sweeping t over [0, 2]."""

    total: PLFunction
    even: Optional[PLFunction]
    odd: Optional[PLFunction]
    critical: tuple[Fraction, ...]
    windows: tuple[int, ...]


def _prepared(c) -> Prepared:
    return c if isinstance(c, Prepared) else Prepared(c)


def upsilon_tor_at(c: BifilteredComplex | Prepared, t: Rational) -> Fraction:
    """Twice the longest finite bar at ``t``."""
    return 2 * reduce(_prepared(c), t, representatives=False).max_length()


def critical_values(prep: Prepared) -> list[Fraction]:
    """Parameters in (0, 2) where two monomials of equal grading swap levels.

    Swapping monomials of different gradings never changes the persistence
    pairing, so between consecutive values returned here every bar is born
    and dies at fixed monomials.
    """
    out = set()
    i, j, gr = prep.i, prep.j, prep.gr
    for x in range(prep.n):
        for y in range(x + 1, prep.n):
            dg = gr[y] - gr[x]
            if dg % 2:
                continue
            k = dg // 2  # U^k y has the grading of x
            di = i[x] - i[y] + k
            dj = j[x] - j[y] + k
            if di == dj:
                continue
            t = Fraction(2 * di, di - dj)
            if 0 < t < 2:
                out.add(t)
    return sorted(out)


def _lines(prep: Prepared, pairing) -> list[tuple[int, int, int]]:
    """``(slope, intercept, parity)`` of twice each bar length as a function of t."""
    i, j, gr = prep.i, prep.j, prep.gr
    out = []
    for (b, kb), (d, kd) in pairing.pairs:
        di = (i[d] - kd) - (i[b] - kb)
        da = (j[d] - i[d]) - (j[b] - i[b])
        out.append((da, 2 * di, gr[b] % 2))
    return out


def _sample(prep: Prepared, ts: list[Fraction]):
    res = []
    for t in ts:
        p = reduce_pairs(prep, t)
        res.append((_lines(prep, p), p.window))
    return res


def _sample_complex(c: BifilteredComplex, ts: list[Fraction]):
    return _sample(Prepared(c), ts)


def _workers(workers: Optional[int]) -> int:
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1") or 1)
    return max(1, workers)


def scan(c: BifilteredComplex | Prepared, workers: Optional[int] = None) -> Scan:
    """Compute the torsion function and its parity parts exactly.

    One reduction inside every interval between critical values gives each
    bar as a linear function of t there; the upper envelope of those lines is
    the function on that interval.  A second reduction at every critical
    value (and at 0, 2) checks that the pieces glue continuously.
    """
    prep = _prepared(c)
    crit = critical_values(prep)
    grid = [Fraction(0)] + crit + [Fraction(2)]
    mids = [(a + b) / 2 for a, b in zip(grid, grid[1:])]
    ts = mids + grid
    n = _workers(workers)
    if n > 1 and len(ts) > 8:
        chunks = [ts[k::n] for k in range(n)]
        with ProcessPoolExecutor(n) as pool:
            parts = list(pool.map(_sample_complex, [prep.complex] * n, chunks))
        samples = {}
        for chunk, part in zip(chunks, parts):
            samples.update(zip(chunk, part))
    else:
        samples = dict(zip(ts, _sample(prep, ts)))

    graded = prep.complex.graded
    selections = {"total": None}
    if graded:
        selections.update(even=0, odd=1)
    points = {name: [] for name in selections}
    for a, b, mid in zip(grid, grid[1:], mids):
        lines, _ = samples[mid]
        for name, parity in selections.items():
            chosen = [(s, c0) for s, c0, par in lines if parity is None or par == parity]
            pts = upper_envelope(chosen + [(0, 0)], a, b)
            _glue(points[name], pts)
    for t in grid:
        lines, _ = samples[t]
        for name, parity in selections.items():
            exact = max([c0 + s * t for s, c0, par in lines if parity is None or par == parity]
                        + [Fraction(0)])
            piece = dict(points[name])
            if piece[t] != exact:
                raise AssertionError(f"{name} pieces do not glue at t={t}: "
                                     f"{piece[t]} from the sides, {exact} by reduction")
    fns = {name: PLFunction.from_points(pts) for name, pts in points.items()}
    windows = tuple(sorted({w for _, w in samples.values()}))
    return Scan(fns["total"], fns.get("even"), fns.get("odd"), tuple(crit), windows)


def _glue(acc: list, pts: list) -> None:
    if acc:
        t, v = pts[0]
        if acc[-1][0] != t or acc[-1][1] != v:
            raise AssertionError(f"pieces do not glue at t={t}: {acc[-1][1]} vs {v}")
        pts = pts[1:]
    acc.extend(pts)


def upsilon_tor_function(c: BifilteredComplex | Prepared, workers: Optional[int] = None
                         ) -> PLFunction:
    return scan(c, workers).total


def parity_functions(c: BifilteredComplex | Prepared, workers: Optional[int] = None
                     ) -> TorsionProfile:
    prep = _prepared(c)
    if not prep.complex.graded:
        raise ValueError("parity functions need absolute Maslov gradings")
    s = scan(prep, workers)
    return TorsionProfile(s.total, s.even, s.odd)


def _limit_ord_v(prep: Prepared) -> Fraction:
    """Initial slope from a reduction in the t -> 0+ order.

    Monomials are sorted by ``i`` then ``j``; the pairing is then the one
    valid for all small positive t, where twice a bar length is
    ``2 * (i-drop) + t * (Alexander drop)``.  The largest such line near
    zero decides the slope; for knot complexes every i-drop is zero and the
    slope is the largest j-drop.
    """
    p = reduce_pairs(prep, Fraction(0),
                     tiebreak=lambda g, k: (g.i - k, g.j - k, g.maslov - 2 * k))
    best = (0, 0)
    for s, c0, _ in _lines(prep, p):
        best = max(best, (c0, s))
    return Fraction(best[1])


def ord_v(c: BifilteredComplex | Prepared, function: Optional[PLFunction] = None) -> Fraction:
    """Torsion order under ``v``: the slope of the first linear piece."""
    prep = _prepared(c)
    f = function if function is not None else upsilon_tor_function(prep)
    slope = f.initial_slope()
    independent = _limit_ord_v(prep)
    if slope != independent:
        raise AssertionError(f"ord_v mismatch: first piece slope {slope}, "
                             f"limit reduction {independent}")
    return slope


def ord_u(c: BifilteredComplex | Prepared) -> Fraction:
    return upsilon_tor_at(c, 1)


def small_t_threshold(f: PLFunction) -> Fraction:
    """First positive breakpoint: the function is linear on [0, this]."""
    return f.breakpoints[1]


def connected_sum_function(fs) -> PLFunction:
    out = PLFunction.zero()
    for f in fs:
        out = pl_max(out, f)
    return out
