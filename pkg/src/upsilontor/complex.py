"""Bifiltered F2 chain complexes with a U-action.

A complex is stored as one fundamental domain of the U-action: generators
``[x, i, j]`` with a Maslov grading, and differential entries ``x -> U^k y``.
Multiplying by ``U`` lowers both filtration coordinates by one and the grading
by two, so every U-translate is implicit.
"""

from __future__ import annotations

import math
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, Optional


class ComplexError(ValueError):
    """Raised when a complex cannot be constructed."""


@dataclass(frozen=True)
class Generator:
    id: str
    i: int
    j: int
    maslov: int

    @property
    def alexander(self) -> int:
        return self.j - self.i


@dataclass(frozen=True)
class DifferentialEntry:
    """``source`` has ``U^u_power * target`` in its boundary."""

    source: str
    target: str
    u_power: int = 0


@dataclass(frozen=True)
class BifilteredComplex:
    generators: tuple[Generator, ...]
    differential: tuple[DifferentialEntry, ...] = ()
    label: str = ""
    # False when the gradings were inferred rather than supplied; the
    # even/odd split is then meaningless.
    graded: bool = True

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "differential", tuple(self.differential))

    def __len__(self) -> int:
        return len(self.generators)

    @property
    def ids(self) -> list[str]:
        return [g.id for g in self.generators]

    def generator(self, gid: str) -> Generator:
        for g in self.generators:
            if g.id == gid:
                return g
        raise KeyError(gid)

    def boundary_map(self) -> dict[str, list[tuple[str, int]]]:
        out: dict[str, list[tuple[str, int]]] = {g.id: [] for g in self.generators}
        for e in self.differential:
            out.setdefault(e.source, []).append((e.target, e.u_power))
        return out

    def relabel(self, prefix: str = "", label: Optional[str] = None) -> "BifilteredComplex":
        gens = [Generator(prefix + g.id, g.i, g.j, g.maslov) for g in self.generators]
        diff = [DifferentialEntry(prefix + e.source, prefix + e.target, e.u_power)
                for e in self.differential]
        return BifilteredComplex(gens, diff, self.label if label is None else label, self.graded)

    def shift(self, di: int = 0, dj: int = 0, dmaslov: int = 0) -> "BifilteredComplex":
        """Translate every generator; the differential is unchanged."""
        gens = [Generator(g.id, g.i + di, g.j + dj, g.maslov + dmaslov) for g in self.generators]
        return BifilteredComplex(gens, self.differential, self.label, self.graded)

    def flip(self) -> "BifilteredComplex":
        """Swap the two filtrations, ``(i, j) -> (j, i)``."""
        gens = [Generator(g.id, g.j, g.i, g.maslov) for g in self.generators]
        return BifilteredComplex(gens, self.differential, self.label, self.graded)


@dataclass
class ValidationReport:
    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, rule: str, detail: str) -> None:
        self.violations.append((rule, detail))

    def rules(self) -> set[str]:
        return {r for r, _ in self.violations}

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(f"{rule}: {detail}" for rule, detail in self.violations)


def validate(c: BifilteredComplex) -> ValidationReport:
    """Check the structural rules of a complex.

    Rules: ``unique-id``, ``dangling-ref``, ``duplicate-entry``, ``filtered``,
    ``grading`` and ``d-squared``.  Homology rank is not checked here.
    """
    report = ValidationReport()
    gens: dict[str, Generator] = {}
    for g in c.generators:
        if g.id in gens:
            report.add("unique-id", f"generator id {g.id!r} appears more than once")
        gens[g.id] = g

    seen = set()
    usable = []
    for e in c.differential:
        key = (e.source, e.target, e.u_power)
        missing = [x for x in (e.source, e.target) if x not in gens]
        if missing:
            report.add("dangling-ref", f"entry {e.source}->U^{e.u_power} {e.target} "
                                       f"references unknown id {missing[0]!r}")
            continue
        if key in seen:
            report.add("duplicate-entry", f"entry {e.source}->U^{e.u_power} {e.target} repeated")
            continue
        seen.add(key)
        usable.append(e)
        s, t, k = gens[e.source], gens[e.target], e.u_power
        if t.i - k > s.i or t.j - k > s.j:
            report.add("filtered", f"{e.source}->U^{k} {e.target}: target sits at "
                                   f"({t.i - k},{t.j - k}), not below ({s.i},{s.j})")
        if t.maslov - 2 * k != s.maslov - 1:
            report.add("grading", f"{e.source}->U^{k} {e.target}: grading "
                                  f"{s.maslov} -> {t.maslov - 2 * k}, expected a drop of 1")

    bd: dict[str, list[tuple[str, int]]] = defaultdict(list)
    for e in usable:
        bd[e.source].append((e.target, e.u_power))
    for src in gens:
        acc: dict[tuple[str, int], int] = defaultdict(int)
        for mid, k1 in bd.get(src, ()):
            for tgt, k2 in bd.get(mid, ()):
                acc[(tgt, k1 + k2)] ^= 1
        bad = sorted(key for key, v in acc.items() if v)
        if bad:
            tgt, k = bad[0]
            report.add("d-squared", f"d(d({src})) contains U^{k} {tgt}")
    return report


def check(c: BifilteredComplex) -> BifilteredComplex:
    report = validate(c)
    if not report.ok:
        raise ComplexError(f"invalid complex {c.label!r}:\n{report}")
    return c


def unknot() -> BifilteredComplex:
    return BifilteredComplex([Generator("x", 0, 0, 0)], [], "unknot")


def _letters(n: int) -> list[str]:
    if n <= 26:
        return [chr(ord("a") + m) for m in range(n)]
    return [f"x{m}" for m in range(n)]


def alexander_exponents(p: int, q: int) -> list[int]:
    """Exponents of the Alexander polynomial of T(p, q), highest first.

    Read off the numerical semigroup generated by ``p`` and ``q``: the
    polynomial is ``(1 - t) * sum(t^s for s in S)``, truncated at the
    conductor ``2g``.  Signs alternate, starting with ``+``.
    """
    conductor = (p - 1) * (q - 1)
    in_s = [False] * (conductor + 2)
    for a in range(conductor // p + 2):
        for b in range(conductor // q + 2):
            s = a * p + b * q
            if s <= conductor + 1:
                in_s[s] = True
    exps = []
    for s in range(conductor + 1):
        prev = s > 0 and in_s[s - 1]
        if in_s[s] != prev:
            exps.append(s)
    return exps[::-1]


def torus_knot_staircase(p: int, q: int) -> BifilteredComplex:
    """Staircase complex of the positive torus knot T(p, q)."""
    if p < 1 or q < 1:
        raise ComplexError(f"torus({p},{q}): parameters must be positive")
    if math.gcd(p, q) != 1:
        raise ComplexError(f"torus({p},{q}): parameters not coprime")
    if p == 1 or q == 1:
        c = unknot()
        return BifilteredComplex(c.generators, (), f"T({p},{q})")
    genus = (p - 1) * (q - 1) // 2
    exps = alexander_exponents(p, q)
    steps = [a - b for a, b in zip(exps, exps[1:])]
    names = _letters(len(exps))
    i, j = 0, genus
    gens = [Generator(names[0], i, j, 0)]
    diff = []
    for m, step in enumerate(steps, start=1):
        if m % 2:
            i += step
        else:
            j -= step
        gens.append(Generator(names[m], i, j, m % 2))
    for m in range(1, len(gens), 2):
        diff.append(DifferentialEntry(names[m], names[m - 1], 0))
        diff.append(DifferentialEntry(names[m], names[m + 1], 0))
    return BifilteredComplex(gens, diff, f"T({p},{q})")


def staircase(steps: Iterable[int], label: str = "staircase") -> BifilteredComplex:
    """Staircase with the given alternating horizontal/vertical step lengths.

    The steps must come in pairs; the top generator sits at ``(0, sum of
    vertical steps)`` and all cycles have grading 0.
    """
    steps = list(steps)
    if len(steps) % 2 or any(s < 1 for s in steps):
        raise ComplexError("staircase steps must be positive and even in number")
    names = _letters(len(steps) + 1)
    i, j = 0, sum(steps[1::2])
    gens = [Generator(names[0], i, j, 0)]
    diff = []
    for m, step in enumerate(steps, start=1):
        if m % 2:
            i += step
        else:
            j -= step
        gens.append(Generator(names[m], i, j, m % 2))
    for m in range(1, len(gens), 2):
        diff.append(DifferentialEntry(names[m], names[m - 1], 0))
        diff.append(DifferentialEntry(names[m], names[m + 1], 0))
    return BifilteredComplex(gens, diff, label)


def tensor(c1: BifilteredComplex, c2: BifilteredComplex) -> BifilteredComplex:
    """Tensor product over F2[U, U^-1]; models the connected sum."""
    check(c1)
    check(c2)
    gens = [Generator(f"({a.id},{b.id})", a.i + b.i, a.j + b.j, a.maslov + b.maslov)
            for a in c1.generators for b in c2.generators]
    bd1, bd2 = c1.boundary_map(), c2.boundary_map()
    diff = []
    for a in c1.generators:
        for b in c2.generators:
            src = f"({a.id},{b.id})"
            for t, k in bd1[a.id]:
                diff.append(DifferentialEntry(src, f"({t},{b.id})", k))
            for t, k in bd2[b.id]:
                diff.append(DifferentialEntry(src, f"({a.id},{t})", k))
    label = f"{c1.label} # {c2.label}" if c1.label and c2.label else ""
    return BifilteredComplex(gens, diff, label, c1.graded and c2.graded)


def dual(c: BifilteredComplex) -> BifilteredComplex:
    """Dual complex, the knot Floer complex of the mirror.

    Each generator is rotated through the origin, ``(i, j) -> (-i, -j)``, its
    grading negated, and every arrow reversed with the same power of ``U``.
    """
    check(c)
    gens = [Generator(g.id + "*", -g.i, -g.j, -g.maslov) for g in c.generators]
    diff = [DifferentialEntry(e.target + "*", e.source + "*", e.u_power)
            for e in c.differential]
    return BifilteredComplex(gens, diff, f"-({c.label})" if c.label else "", c.graded)


def infer_gradings(gens: list[tuple[str, int, int]],
                   entries: list[DifferentialEntry]) -> dict[str, int]:
    """Relative Maslov gradings forced by the differential.

    Each connected component of the arrow graph gets its first generator in
    grading 0.  Raises ComplexError when the constraints are inconsistent.
    """
    adj: dict[str, list[tuple[str, int]]] = defaultdict(list)
    for e in entries:
        # gr(target) = gr(source) - 1 + 2k
        adj[e.source].append((e.target, 2 * e.u_power - 1))
        adj[e.target].append((e.source, 1 - 2 * e.u_power))
    grading: dict[str, int] = {}
    for gid, _, _ in gens:
        if gid in grading:
            continue
        grading[gid] = 0
        queue = deque([gid])
        while queue:
            x = queue.popleft()
            for y, delta in adj[x]:
                want = grading[x] + delta
                if y not in grading:
                    grading[y] = want
                    queue.append(y)
                elif grading[y] != want:
                    raise ComplexError(f"inconsistent gradings around {y!r}")
    return grading


def is_isomorphic(c1: BifilteredComplex, c2: BifilteredComplex) -> bool:
    """Relabeling isomorphism test (exact, by backtracking on positions).

    Two complexes are isomorphic here when some bijection of generators
    preserving ``(i, j, maslov)`` carries one differential onto the other.
    Intended for small complexes in tests.
    """
    if len(c1) != len(c2) or len(c1.differential) != len(c2.differential):
        return False

    def sig(g):
        return (g.i, g.j, g.maslov)

    if sorted(map(sig, c1.generators)) != sorted(map(sig, c2.generators)):
        return False
    out1 = {(e.source, e.target, e.u_power) for e in c1.differential}
    out2 = {(e.source, e.target, e.u_power) for e in c2.differential}
    g1 = list(c1.generators)
    cands = {a.id: [b.id for b in c2.generators if sig(b) == sig(a)] for a in g1}
    g1.sort(key=lambda g: len(cands[g.id]))
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def consistent(a: str) -> bool:
        for s, t, k in out1:
            if s in mapping and t in mapping and (s == a or t == a):
                if (mapping[s], mapping[t], k) not in out2:
                    return False
        return True

    def go(n: int) -> bool:
        if n == len(g1):
            return True
        a = g1[n].id
        for b in cands[a]:
            if b in used:
                continue
            mapping[a] = b
            used.add(b)
            if consistent(a) and go(n + 1):
                return True
            del mapping[a]
            used.discard(b)
        return False

    return go(0)
