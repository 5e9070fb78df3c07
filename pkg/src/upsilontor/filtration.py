"""The t-filtration, canonical-form reduction and torsion barcodes.

For ``t`` in [0, 2] the monomial ``U^k [x, i, j]`` sits at filtration level
``(t/2)(j - k) + (1 - t/2)(i - k)``.  A filtered column reduction of the
boundary matrix, with columns in level order, realises the splitting into
one free summand and two-generator pieces ``X -> Y``; each piece is a
finite bar from the level of ``Y`` to the level of ``X``.

Internally levels are scaled by ``2n`` (for ``t = m/n``) so that all sorting
and comparison happens on integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

from .complex import BifilteredComplex, ComplexError, Generator, check

Rational = Union[Fraction, int, str]
Monomial = tuple[int, int]  # (generator index, power of U)


class HomologyRankError(ComplexError):
    """The complex does not have homology of rank one over F2[U, U^-1]."""


class WindowError(RuntimeError):
    """The truncation window was too small to see every bar."""


class OracleSizeError(RuntimeError):
    pass


def parameter(t: Rational) -> Fraction:
    """Coerce ``t`` to an exact rational in [0, 2]."""
    if isinstance(t, float):
        raise TypeError("filtration parameters must be exact rationals, not floats")
    t = Fraction(t)
    if not 0 <= t <= 2:
        raise ValueError(f"t = {t} is outside [0, 2]")
    return t


def level_of_monomial(t: Rational, g: Generator, k: int = 0) -> Fraction:
    t = parameter(t)
    return t / 2 * (g.j - k) + (1 - t / 2) * (g.i - k)


def level_of_chain(t: Rational, chain: Iterable[tuple[Generator, int]]) -> Fraction:
    """Level of a formal F2-sum of monomials: the largest level of its terms."""
    terms: dict[tuple[Generator, int], int] = {}
    for g, k in chain:
        terms[(g, k)] = terms.get((g, k), 0) ^ 1
    live = [key for key, v in terms.items() if v]
    if not live:
        raise ValueError("the zero chain has no filtration level")
    return max(level_of_monomial(t, g, k) for g, k in live)


def window_size(c: BifilteredComplex, t: Rational) -> int:
    levels = [level_of_monomial(t, g) for g in c.generators] or [Fraction(0)]
    return math.ceil(max(levels) - min(levels)) + 2


@dataclass(frozen=True)
class Bar:
    birth: Fraction
    death: Fraction
    parity: Optional[int]  # Maslov grading of Y mod 2; None when ungraded
    # (Y, X) as tuples of (generator id, U power), with dX = Y
    representative: Optional[tuple[tuple[tuple[str, int], ...], tuple[tuple[str, int], ...]]] = \
        field(default=None, compare=False)

    @property
    def length(self) -> Fraction:
        return self.death - self.birth


@dataclass(frozen=True)
class Barcode:
    finite_bars: tuple[Bar, ...]
    infinite_birth: Fraction
    # 0 means the complex split into U-translates of one fundamental domain
    # and no truncation was needed.
    window: int

    def lengths(self) -> list[Fraction]:
        return sorted(b.length for b in self.finite_bars)

    def max_length(self, parity: Optional[int] = None) -> Fraction:
        bars = [b.length for b in self.finite_bars if parity is None or b.parity == parity]
        return max(bars, default=Fraction(0))

    def normalized(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return tuple(sorted((b.birth, b.death) for b in self.finite_bars))


# ---------------------------------------------------------------------------
# prepared complexes


class Prepared:
    """Index-based view of a validated complex, shared by all reductions."""

    def __init__(self, c: BifilteredComplex):
        check(c)
        self.complex = c
        self.gens = list(c.generators)
        self.n = len(self.gens)
        index = {g.id: n for n, g in enumerate(self.gens)}
        self.i = [g.i for g in self.gens]
        self.j = [g.j for g in self.gens]
        self.gr = [g.maslov for g in self.gens]
        self.bd: list[list[tuple[int, int]]] = [[] for _ in self.gens]
        for e in c.differential:
            self.bd[index[e.source]].append((index[e.target], e.u_power))
        self.shift = self._potential()
        self._rank: Optional[int] = None

    def _potential(self) -> Optional[list[int]]:
        """U-shifts making every arrow have power 0, if they exist.

        Replacing ``x`` by ``U^s(x) x`` turns ``x -> U^k y`` into an arrow with
        power ``k + s(x) - s(y)``.  When all powers can be made 0 the complex is
        a direct sum of U-translates of one finite subcomplex.
        """
        adj: list[list[tuple[int, int]]] = [[] for _ in self.gens]
        for x, out in enumerate(self.bd):
            for y, k in out:
                adj[x].append((y, k))
                adj[y].append((x, -k))
        shift: list[Optional[int]] = [None] * self.n
        for root in range(self.n):
            if shift[root] is not None:
                continue
            shift[root] = 0
            stack = [root]
            while stack:
                x = stack.pop()
                for y, k in adj[x]:
                    want = shift[x] + k
                    if shift[y] is None:
                        shift[y] = want
                        stack.append(y)
                    elif shift[y] != want:
                        return None
        return shift  # type: ignore[return-value]

    @property
    def split(self) -> bool:
        return self.shift is not None

    def laurent_rank(self) -> int:
        """Rank of the homology over F2[U, U^-1]."""
        if self._rank is None:
            self._rank = self.n - 2 * _laurent_matrix_rank(self.bd, self.n)
        return self._rank

    def scaled(self, t: Fraction) -> tuple[list[int], int]:
        """Generator levels times ``2n`` (for ``t = m/n``) and the scaled unit."""
        m, n = t.numerator, t.denominator
        base = [m * jj + (2 * n - m) * ii for ii, jj in zip(self.i, self.j)]
        return base, 2 * n

    def key(self, base: list[int], unit: int, tiebreak=None):
        i, j, gr, gens = self.i, self.j, self.gr, self.gens
        if tiebreak is None:
            return lambda mono: (base[mono[0]] - unit * mono[1], i[mono[0]] - mono[1],
                                 j[mono[0]] - mono[1], gr[mono[0]] - 2 * mono[1], mono[0])
        return lambda mono: (base[mono[0]] - unit * mono[1],
                             tiebreak(gens[mono[0]], mono[1]), mono[0])


def _clmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _pdivmod(a: int, b: int) -> tuple[int, int]:
    q = 0
    db = b.bit_length()
    while a and a.bit_length() >= db:
        s = a.bit_length() - db
        q ^= 1 << s
        a ^= b << s
    return q, a


def _pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return a


def _laurent_matrix_rank(bd: list[list[tuple[int, int]]], n: int) -> int:
    """Rank of the differential over the field F2(U).

    Entries are polynomials over F2 stored as int bitmasks; the matrix is
    first multiplied by a power of U to clear negative exponents, then
    eliminated fraction-free.
    """
    kmin = min((k for out in bd for _, k in out), default=0)
    rows: list[dict[int, int]] = []
    for x, out in enumerate(bd):
        row: dict[int, int] = {}
        for y, k in out:
            row[y] = row.get(y, 0) ^ (1 << (k - kmin))
        row = {y: p for y, p in row.items() if p}
        if row:
            rows.append(row)
    rank = 0
    while rows:
        col = min(min(r) for r in rows)
        with_col = [r for r in rows if col in r]
        if not with_col:
            continue
        pivot = min(with_col, key=lambda r: (r[col].bit_length(), len(r)))
        rows.remove(pivot)
        rank += 1
        p = pivot[col]
        nxt = []
        for r in rows:
            e = r.get(col)
            if e:
                new: dict[int, int] = {}
                for y in set(r) | set(pivot):
                    v = _clmul(p, r.get(y, 0)) ^ _clmul(e, pivot.get(y, 0))
                    if v:
                        new[y] = v
                r = new
                if r:
                    g = 0
                    for v in r.values():
                        g = _pgcd(g, v) if g else v
                    if g != 1:
                        r = {y: _pdivmod(v, g)[0] for y, v in r.items()}
            if r:
                nxt.append(r)
        rows = nxt
    return rank


# ---------------------------------------------------------------------------
# column reduction


@dataclass
class Pairing:
    """Raw output of one reduction: monomials, not yet levels."""

    pairs: list[tuple[Monomial, Monomial]]  # (birth = Y's top term, death = X's top term)
    essential: list[Monomial]
    unit: int
    base: list[int]
    window: int
    reps: Optional[list[tuple[list[Monomial], list[Monomial]]]] = None

    def level(self, mono: Monomial) -> int:
        return self.base[mono[0]] - self.unit * mono[1]


def _column_reduce(monos: list[Monomial], boundary: Callable[[Monomial], Iterable[Monomial]],
                   key, track: bool):
    monos = sorted(monos, key=key)
    where = {m: n for n, m in enumerate(monos)}
    pivots: dict[int, int] = {}
    R: list[int] = []
    V: list[int] = []
    for c, m in enumerate(monos):
        col = 0
        for tgt in boundary(m):
            pos = where.get(tgt)
            if pos is not None:
                col ^= 1 << pos
        v = 1 << c
        while col:
            low = col.bit_length() - 1
            other = pivots.get(low)
            if other is None:
                pivots[low] = c
                break
            col ^= R[other]
            if track:
                v ^= V[other]
        R.append(col)
        if track:
            V.append(v)
    return monos, pivots, R, V


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def reduce_pairs(prep: Prepared, t: Fraction, tiebreak=None, window: Optional[int] = None,
                 track: bool = False) -> Pairing:
    """Persistence pairing of one U-orbit of bars at parameter ``t``.

    Zero-length pairs are kept; callers decide what to discard.
    """
    base, unit = prep.scaled(t)
    key = prep.key(base, unit, tiebreak)
    bd = prep.bd

    if prep.split and window is None:
        shift = prep.shift
        monos = [(x, shift[x]) for x in range(prep.n)]

        def boundary(m):
            return [(y, m[1] + k) for y, k in bd[m[0]]]

        monos, pivots, R, V = _column_reduce(monos, boundary, key, track)
        pairs = [(monos[low], monos[c]) for low, c in pivots.items()]
        essential = [monos[c] for c in range(len(monos)) if R[c] == 0 and c not in pivots]
        reps = None
        if track:
            reps = [([monos[b] for b in _bits(R[c])], [monos[b] for b in _bits(V[c])])
                    for _, c in pivots.items()]
        if len(essential) != 1:
            raise HomologyRankError(
                f"homology rank violation: {len(essential)} free summands, expected 1")
        return Pairing(pairs, essential, unit, base, 0, reps)

    if prep.laurent_rank() != 1:
        raise HomologyRankError(
            f"homology rank violation: rank {prep.laurent_rank()} over F2[U, U^-1], expected 1")

    fixed = window is not None
    N = window if fixed else max(window_size(prep.complex, t), 2)
    while True:
        result = _windowed(prep, base, unit, key, bd, N, track)
        if result is not None:
            return result
        if fixed or N > 64 * max(window_size(prep.complex, t), 2):
            raise WindowError(f"window N={N} too small: bars reach the window boundary")
        N *= 2


def _windowed(prep, base, unit, key, bd, N, track) -> Optional[Pairing]:
    lo_base, hi_base = min(base), max(base)
    lo, hi = lo_base - N * unit, hi_base + N * unit
    monos = []
    for x in range(prep.n):
        kmin = -((hi - base[x]) // unit)
        kmax = (base[x] - lo - 1) // unit
        monos.extend((x, k) for k in range(kmin, kmax + 1))

    def boundary(m):
        return [(y, m[1] + k) for y, k in bd[m[0]]]

    monos, pivots, R, V = _column_reduce(monos, boundary, key, track)

    def level(m):
        return base[m[0]] - unit * m[1]

    def interior(m):
        return lo_base <= level(m) < lo_base + unit

    pairs, reps = [], []
    for low, c in pivots.items():
        if interior(monos[low]):
            pairs.append((monos[low], monos[c]))
            if track:
                reps.append(([monos[b] for b in _bits(R[c])], [monos[b] for b in _bits(V[c])]))
    essential = [monos[c] for c in range(len(monos))
                 if R[c] == 0 and c not in pivots and interior(monos[c])]
    if len(essential) != 1:
        return None
    return Pairing(pairs, essential, unit, base, N, reps if track else None)


def _normalize(level: Fraction) -> int:
    return math.floor(level)


def barcode_from_pairing(prep: Prepared, t: Fraction, p: Pairing) -> Barcode:
    scale = Fraction(1, p.unit)
    bars = []
    for n, (b, d) in enumerate(p.pairs):
        birth, death = p.level(b) * scale, p.level(d) * scale
        if death == birth:
            continue
        if death < birth:
            raise AssertionError("death before birth: reduction order is not filtered")
        shift = _normalize(birth)
        parity = (prep.gr[b[0]] - 2 * b[1]) % 2 if prep.complex.graded else None
        rep = None
        if p.reps is not None:
            ys, xs = p.reps[n]
            ids = prep.gens
            rep = (tuple((ids[g].id, k + shift) for g, k in ys),
                   tuple((ids[g].id, k + shift) for g, k in xs))
        bars.append(Bar(birth - shift, death - shift, parity, rep))
    bars.sort(key=lambda b: (b.birth, b.death))
    e = p.essential[0]
    inf = p.level(e) * scale
    return Barcode(tuple(bars), inf - _normalize(inf), p.window)


def reduce(c: BifilteredComplex | Prepared, t: Rational, tiebreak=None,
           window: Optional[int] = None, representatives: bool = True) -> Barcode:
    """Torsion barcode of ``c`` at parameter ``t``.

    Bars are reported once per U-orbit, translated so that the birth lies in
    [0, 1).  Passing ``window`` forces the truncated reduction with that
    window size even when the complex splits.
    """
    prep = c if isinstance(c, Prepared) else Prepared(c)
    t = parameter(t)
    p = reduce_pairs(prep, t, tiebreak, window, track=representatives)
    return barcode_from_pairing(prep, t, p)


# ---------------------------------------------------------------------------
# brute-force oracle


class _Echelon:
    def __init__(self):
        self.rows: dict[int, int] = {}

    def insert(self, v: int) -> bool:
        rows = self.rows
        while v:
            p = v.bit_length() - 1
            r = rows.get(p)
            if r is None:
                rows[p] = v
                return True
            v ^= r
        return False

    def __len__(self):
        return len(self.rows)

    def copy(self):
        e = _Echelon()
        e.rows = dict(self.rows)
        return e


def brute_force_barcode(c: BifilteredComplex, t: Rational, limit: int = 800,
                        extra_window: int = 1) -> Barcode:
    """Barcode recovered from ranks of ``H(F_s) -> H(F_s')`` (test oracle).

    Works on the truncation ``F_hi / F_lo`` of the periodic complex, one
    homological grading at a time, with dense elimination only.  Finite bars
    are counted by inclusion-exclusion on persistent Betti numbers.
    """
    t = parameter(t)
    check(c)
    gens = list(c.generators)
    idx = {g.id: n for n, g in enumerate(gens)}
    bd = [[] for _ in gens]
    for e in c.differential:
        bd[idx[e.source]].append((idx[e.target], e.u_power))

    base = [level_of_monomial(t, g) for g in gens]
    N = window_size(c, t) + extra_window
    lo, hi = min(base) - N, max(base) + N
    monos = []
    for x, g in enumerate(gens):
        k = math.ceil(base[x] - hi)
        while base[x] - k > lo:
            monos.append((x, k))
            k += 1
    if len(monos) > limit:
        raise OracleSizeError(f"{len(monos)} monomials exceed the oracle limit {limit}")

    def level(m):
        return base[m[0]] - m[1]

    def grading(m):
        return gens[m[0]].maslov - 2 * m[1]

    levels = sorted({level(m) for m in monos})
    lvl_index = {s: n for n, s in enumerate(levels)}
    by_grading: dict[int, list] = {}
    for m in monos:
        by_grading.setdefault(grading(m), []).append(m)
    pos = {}
    for d, ms in by_grading.items():
        for n, m in enumerate(ms):
            pos[m] = n

    def boundary_vec(m):
        v = 0
        for y, k in bd[m[0]]:
            tgt = (y, m[1] + k)
            if tgt in pos:
                v ^= 1 << pos[tgt]
        return v

    lo_unit = min(base)
    interior = [n for n, s in enumerate(levels) if lo_unit <= s < lo_unit + 1]
    L = len(levels)
    bars: list[Bar] = []
    infinite: list[Fraction] = []
    for d, chains in by_grading.items():
        above = by_grading.get(d + 1, [])
        # boundaries of grading d+1 chains, grouped by level index
        b_at = [[] for _ in range(L)]
        for m in above:
            b_at[lvl_index[level(m)]].append(boundary_vec(m))
        # cumulative dim B_j
        dimB = []
        eb = _Echelon()
        for jj in range(L):
            for v in b_at[jj]:
                eb.insert(v)
            dimB.append(len(eb))

        def cycles_up_to(ii):
            """Basis of cycles of grading d at level <= levels[ii]."""
            if ii < 0:
                return []
            col = _Echelon()
            combos: dict[int, int] = {}
            kernel = []
            for m in chains:
                if lvl_index[level(m)] > ii:
                    continue
                v, combo = boundary_vec(m), 1 << pos[m]
                while v:
                    p = v.bit_length() - 1
                    if p in col.rows:
                        v ^= col.rows[p]
                        combo ^= combos[p]
                    else:
                        col.rows[p] = v
                        combos[p] = combo
                        break
                if not v:
                    kernel.append(combo)
            return kernel

        cache: dict[int, list[int]] = {}

        def betti_row(ii):
            """beta(ii, jj) for every jj (meaningful for jj >= ii)."""
            if ii in cache:
                return cache[ii]
            Z = cycles_up_to(ii)
            ez = _Echelon()
            for z in Z:
                ez.insert(z)
            row = []
            for jj in range(L):
                for v in b_at[jj]:
                    ez.insert(v)
                inter = len(Z) + dimB[jj] - len(ez)
                row.append(len(Z) - inter)
            cache[ii] = row
            return row

        for ii in interior:
            if not any(lvl_index[level(m)] == ii for m in chains):
                continue
            cur = betti_row(ii)
            prev = betti_row(ii - 1) if ii > 0 else [0] * L
            for jj in range(ii + 1, L):
                mu = cur[jj - 1] - prev[jj - 1] - cur[jj] + prev[jj]
                for _ in range(mu):
                    birth, death = levels[ii], levels[jj]
                    shift = _normalize(birth)
                    bars.append(Bar(birth - shift, death - shift, d % 2 if c.graded else None))
            for _ in range(cur[L - 1] - prev[L - 1]):
                infinite.append(levels[ii])
    if len(infinite) != 1:
        raise WindowError(f"oracle saw {len(infinite)} surviving classes per U-orbit")
    bars.sort(key=lambda b: (b.birth, b.death))
    inf = infinite[0]
    return Barcode(tuple(bars), inf - _normalize(inf), N)
