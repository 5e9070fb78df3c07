"""File formats: complex files, result documents and plot data.

Rationals are always written as ``[numerator, denominator]`` integer pairs;
decimals appear only in CSV plot output.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any, Optional, Sequence

import jsonschema

from . import __version__
from .bounds import LIMIT_AT_ZERO, BoundReport, quotient_by_t
from .complex import (BifilteredComplex, ComplexError, DifferentialEntry, Generator,
                      check, infer_gradings)
from .plfunction import PLFunction

COMPLEX_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["generators", "differential"],
    "properties": {
        "label": {"type": "string"},
        "generators": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["id", "i", "j"],
                "properties": {
                    "id": {"type": "string", "minLength": 1},
                    "i": {"type": "integer"},
                    "j": {"type": "integer"},
                    "maslov": {"type": "integer"},
                },
            },
        },
        "differential": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["source", "target"],
                "properties": {
                    "source": {"type": "string"},
                    "target": {"type": "string"},
                    "u_power": {"type": "integer"},
                },
            },
        },
    },
}


class ComplexFileError(ValueError):
    """The document is not a well-formed complex file."""


def complex_from_dict(doc: Any) -> BifilteredComplex:
    """Decode a complex document without checking the complex invariants.

    ``maslov`` may be omitted on every generator (not just some); relative
    gradings are then inferred from the differential and the complex is
    marked ungraded.
    """
    try:
        jsonschema.validate(doc, COMPLEX_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<document>"
        raise ComplexFileError(f"{where}: {exc.message}") from None
    entries = [DifferentialEntry(e["source"], e["target"], e.get("u_power", 0))
               for e in doc["differential"]]
    raw = doc["generators"]
    have = sum("maslov" in g for g in raw)
    if have not in (0, len(raw)):
        raise ComplexFileError("give maslov for every generator or for none")
    graded = have == len(raw)
    if graded:
        grading = {g["id"]: g["maslov"] for g in raw}
    else:
        grading = infer_gradings([(g["id"], g["i"], g["j"]) for g in raw], entries)
    gens = [Generator(g["id"], g["i"], g["j"], grading[g["id"]]) for g in raw]
    return BifilteredComplex(gens, entries, doc.get("label", ""), graded)


def complex_to_dict(c: BifilteredComplex) -> dict:
    gens = []
    for g in c.generators:
        d = {"id": g.id, "i": g.i, "j": g.j}
        if c.graded:
            d["maslov"] = g.maslov
        gens.append(d)
    return {
        "label": c.label,
        "generators": gens,
        "differential": [{"source": e.source, "target": e.target, "u_power": e.u_power}
                         for e in c.differential],
    }


def read_complex(path: str) -> BifilteredComplex:
    """Read a complex file; structural problems raise ComplexFileError."""
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ComplexFileError(f"{path}: not JSON ({exc})") from None
    return complex_from_dict(doc)


def load_complex(path: str) -> BifilteredComplex:
    """Read and validate a complex file."""
    return check(read_complex(path))


def dump_complex(c: BifilteredComplex, path: Optional[str] = None) -> str:
    text = json.dumps(complex_to_dict(c), indent=2) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def rational_to_json(x: Fraction) -> list[int]:
    x = Fraction(x)
    return [x.numerator, x.denominator]


def rational_from_json(v) -> Fraction:
    if isinstance(v, list) and len(v) == 2 and all(isinstance(a, int) for a in v):
        return Fraction(v[0], v[1])
    raise ValueError(f"not a rational pair: {v!r}")


def pl_to_json(f: PLFunction) -> dict:
    return {"breakpoints": [rational_to_json(t) for t in f.breakpoints],
            "values": [rational_to_json(v) for v in f.values]}


def pl_from_json(d: dict) -> PLFunction:
    return PLFunction(tuple(map(rational_from_json, d["breakpoints"])),
                      tuple(map(rational_from_json, d["values"])))


@dataclass
class ResultDocument:
    expression: str
    upsilon_tor: PLFunction
    ord_v: Fraction
    ord_u: Fraction
    even: Optional[PLFunction] = None
    odd: Optional[PLFunction] = None
    at: Optional[tuple[Fraction, Fraction]] = None
    windows: list[int] = field(default_factory=list)
    engine_version: str = __version__

    def to_json(self) -> dict:
        doc = {
            "expression": self.expression,
            "engine_version": self.engine_version,
            "upsilon_tor": pl_to_json(self.upsilon_tor),
            "parity": None,
            "ord_v": rational_to_json(self.ord_v),
            "ord_u": rational_to_json(self.ord_u),
            "windows": list(self.windows),
        }
        if self.even is not None:
            doc["parity"] = {"even": pl_to_json(self.even), "odd": pl_to_json(self.odd)}
        else:
            doc["parity_unavailable"] = "the complex carries no absolute gradings"
        if self.at is not None:
            doc["at"] = {"t": rational_to_json(self.at[0]),
                         "value": rational_to_json(self.at[1])}
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "ResultDocument":
        parity = doc.get("parity")
        at = doc.get("at")
        return cls(
            expression=doc["expression"],
            upsilon_tor=pl_from_json(doc["upsilon_tor"]),
            ord_v=rational_from_json(doc["ord_v"]),
            ord_u=rational_from_json(doc["ord_u"]),
            even=pl_from_json(parity["even"]) if parity else None,
            odd=pl_from_json(parity["odd"]) if parity else None,
            at=(rational_from_json(at["t"]), rational_from_json(at["value"])) if at else None,
            windows=list(doc.get("windows", [])),
            engine_version=doc.get("engine_version", ""),
        )

    def to_table(self) -> str:
        lines = [f"knot: {self.expression}",
                 f"Ord_v = {self.ord_v}    Ord_U = {self.ord_u}"]
        if self.at is not None:
            lines.append(f"UpsilonTor({self.at[0]}) = {self.at[1]}")
        header = f"{'t':>10}  {'UpsilonTor':>12}"
        if self.even is not None:
            header += f"  {'even':>10}  {'odd':>10}"
        lines += ["", header]
        ts = sorted(set(self.upsilon_tor.breakpoints)
                    | set(self.even.breakpoints if self.even else ())
                    | set(self.odd.breakpoints if self.odd else ()))
        for t in ts:
            row = f"{str(t):>10}  {str(self.upsilon_tor(t)):>12}"
            if self.even is not None:
                row += f"  {str(self.even(t)):>10}  {str(self.odd(t)):>10}"
            lines.append(row)
        return "\n".join(lines) + "\n"


def bound_to_json(r: BoundReport, source: str = "", target: str = "") -> dict:
    def witness(w):
        if w is None or w == LIMIT_AT_ZERO:
            return w
        return rational_to_json(w)

    return {
        "kind": r.kind,
        "from": source,
        "to": target,
        "value": r.value,
        "supremum": None if r.supremum is None else rational_to_json(r.supremum),
        "witness_t": witness(r.witness_t),
        "attained_integer": r.attained_integer,
        "forms": {name: {"supremum": None if f.supremum is None else rational_to_json(f.supremum),
                         "witness_t": witness(f.witness_t),
                         "value": f.value}
                  for name, f in r.forms.items()},
        "engine_version": __version__,
    }


def decimal(x: Fraction, precision: int = 12) -> str:
    """Round to ``precision`` places after the point, trailing zeros dropped."""
    with localcontext() as ctx:
        ctx.prec = precision + 30
        d = (Decimal(x.numerator) / Decimal(x.denominator)).quantize(Decimal(1).scaleb(-precision))
    text = format(d, "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


_PAIR = re.compile(r"\[\s*(-?\d+),\s*(-?\d+)\s*\]")


def dumps(doc) -> str:
    """Indented JSON with rational pairs kept on one line."""
    return _PAIR.sub(r"[\1, \2]", json.dumps(doc, indent=2)) + "\n"


def plot_rows(f: PLFunction, samples: int, quotient: bool = False
              ) -> list[tuple[Fraction, Fraction]]:
    """Exact ``(t, value)`` rows: every breakpoint plus ``samples`` uniform points."""
    if samples < 2:
        raise ValueError("need at least two samples")
    ts = set(f.breakpoints) | {Fraction(2 * k, samples - 1) for k in range(samples)}
    if not quotient:
        return [(t, f(t)) for t in sorted(ts)]
    q = quotient_by_t(f)
    return [(Fraction(0), q.limit_at_zero)] + [(t, q(t)) for t in sorted(ts) if t > 0]


def plot_csv(f: PLFunction, samples: int, quotient: bool = False, precision: int = 12) -> str:
    head = "t,value_over_t" if quotient else "t,value"
    rows = [f"{decimal(t, precision)},{decimal(v, precision)}"
            for t, v in plot_rows(f, samples, quotient)]
    return "\n".join([head] + rows) + "\n"
