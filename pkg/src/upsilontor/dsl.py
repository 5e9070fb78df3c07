"""A small language for naming knots.

::

    expr := "unknot" | "torus(" int "," int ")" | "mirror(" expr ")"
          | "sum(" expr { "," expr } ")" | "file(" path ")"

Whitespace is ignored between tokens.  ``sum`` with several arguments folds
to the right.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

from .complex import (BifilteredComplex, ComplexError, dual, tensor,
                      torus_knot_staircase, unknot)


class KnotSyntaxError(ValueError):
    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        self.offset = offset
        self.expected = tuple(sorted(expected))
        where = f" at offset {offset}"
        if self.expected:
            where += f" (expected {' or '.join(self.expected)})"
        super().__init__(message + where)


class KnotArityError(KnotSyntaxError):
    pass


class BuildError(ValueError):
    """Elaboration failed; ``path`` locates the failing node in the tree."""

    def __init__(self, path: tuple[str, ...], cause: Exception):
        self.path = path
        self.cause = cause
        where = "/".join(path[:-1])
        super().__init__(f"in {where}: {cause}" if where else str(cause))


@dataclass(frozen=True)
class Unknot:
    pass


@dataclass(frozen=True)
class Torus:
    p: int
    q: int


@dataclass(frozen=True)
class Mirror:
    inner: "KnotExpr"


@dataclass(frozen=True)
class Sum:
    left: "KnotExpr"
    right: "KnotExpr"


@dataclass(frozen=True)
class File:
    path: str


KnotExpr = Union[Unknot, Torus, Mirror, Sum, File]

KEYWORDS = ("file", "mirror", "sum", "torus", "unknot")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos:self.pos + 1]

    def expect(self, ch: str):
        if self.peek() != ch:
            got = repr(self.peek()) if self.peek() else "end of input"
            raise KnotSyntaxError(f"unexpected {got}", self.pos, (repr(ch),))
        self.pos += 1

    def word(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        return self.text[start:self.pos]

    def integer(self) -> int:
        self.skip()
        start = self.pos
        if self.text[self.pos:self.pos + 1] in ("-", "+"):
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        token = self.text[start:self.pos]
        if not token.lstrip("+-"):
            self.pos = start
            raise KnotSyntaxError("expected an integer", start, ("integer",))
        return int(token)

    def expr(self) -> KnotExpr:
        self.skip()
        start = self.pos
        name = self.word()
        if name not in KEYWORDS:
            self.pos = start
            raise KnotSyntaxError(f"unknown knot {name!r}" if name else "expected a knot",
                                  start, KEYWORDS)
        if name == "unknot":
            return Unknot()
        if name == "file":
            return File(self.path())
        self.expect("(")
        if name == "torus":
            args = self.args(self.integer)
            if len(args) != 2:
                raise KnotArityError(f"torus takes 2 arguments, got {len(args)}", self.pos)
            return Torus(*args)
        args = self.args(self.expr)
        if name == "mirror":
            if len(args) != 1:
                raise KnotArityError(f"mirror takes 1 argument, got {len(args)}", self.pos)
            return Mirror(args[0])
        out = args[-1]
        for a in reversed(args[:-1]):
            out = Sum(a, out)
        return out

    def args(self, item: Callable):
        """Comma-separated items up to and including the closing parenthesis."""
        out = [item()]
        while True:
            ch = self.peek()
            if ch == ",":
                self.pos += 1
                out.append(item())
            elif ch == ")":
                self.pos += 1
                return out
            else:
                got = repr(ch) if ch else "end of input"
                raise KnotSyntaxError(f"unexpected {got}", self.pos, ("','", "')'"))

    def path(self) -> str:
        self.expect("(")
        self.skip()
        if self.peek() == '"':
            end = self.text.find('"', self.pos + 1)
            if end < 0:
                raise KnotSyntaxError("unterminated string", self.pos, ("'\"'",))
            path = self.text[self.pos + 1:end]
            self.pos = end + 1
            self.expect(")")
        else:
            end = self.text.find(")", self.pos)
            if end < 0:
                raise KnotSyntaxError("unterminated file(...)", len(self.text), ("')'",))
            path = self.text[self.pos:end].strip()
            self.pos = end + 1
        if not path:
            raise KnotSyntaxError("empty path", self.pos, ("path",))
        return path


def parse(text: str) -> KnotExpr:
    """Parse a knot expression.

    >>> parse("sum(torus(9,11), mirror(torus(9,11)))")
    Sum(left=Torus(p=9, q=11), right=Mirror(inner=Torus(p=9, q=11)))
    """
    p = _Parser(text)
    e = p.expr()
    p.skip()
    if p.pos != len(text):
        raise KnotSyntaxError(f"trailing text {text[p.pos:]!r}", p.pos, ("end of input",))
    return e


def to_text(e: KnotExpr) -> str:
    """Canonical printer; ``parse(to_text(e)) == e``."""
    if isinstance(e, Unknot):
        return "unknot"
    if isinstance(e, Torus):
        return f"torus({e.p},{e.q})"
    if isinstance(e, Mirror):
        return f"mirror({to_text(e.inner)})"
    if isinstance(e, Sum):
        return f"sum({to_text(e.left)},{to_text(e.right)})"
    if isinstance(e, File):
        if any(ch in e.path for ch in ')"') or e.path != e.path.strip():
            return f'file("{e.path}")'
        return f"file({e.path})"
    raise TypeError(f"not a knot expression: {e!r}")


def build(e: KnotExpr, loader: Optional[Callable[[str], BifilteredComplex]] = None,
          _path: tuple[str, ...] = ()) -> BifilteredComplex:
    """Elaborate an expression into its knot complex."""
    if loader is None:
        from .io import load_complex as loader
    try:
        if isinstance(e, Unknot):
            return unknot()
        if isinstance(e, Torus):
            return torus_knot_staircase(e.p, e.q)
        if isinstance(e, File):
            return loader(e.path)
    except BuildError:
        raise
    except (ComplexError, OSError, ValueError) as exc:
        raise BuildError(_path + (to_text(e),), exc) from exc
    if isinstance(e, Mirror):
        return dual(build(e.inner, loader, _path + ("mirror",)))
    if isinstance(e, Sum):
        left = build(e.left, loader, _path + ("sum.left",))
        right = build(e.right, loader, _path + ("sum.right",))
        return tensor(left, right)
    raise TypeError(f"not a knot expression: {e!r}")


def build_text(text: str, loader=None) -> BifilteredComplex:
    return build(parse(text), loader)
