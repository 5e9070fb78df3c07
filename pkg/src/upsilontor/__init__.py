"""Upsilon torsion functions of knot Floer complexes, in exact arithmetic."""

__version__ = "0.1.0"

from .complex import (BifilteredComplex, ComplexError, DifferentialEntry, Generator,
                      ValidationReport, dual, staircase, tensor, torus_knot_staircase,
                      unknot, validate)
from .filtration import (Bar, Barcode, HomologyRankError, WindowError, brute_force_barcode,
                         level_of_chain, level_of_monomial, reduce, window_size)
from .plfunction import PLFunction, pl_eval, pl_max, pl_sub
from .upsilon import (TorsionProfile, ord_u, ord_v, parity_functions, upsilon_tor_at,
                      upsilon_tor_function)
from .bounds import (BoundReport, QuotientPiecewise, crossing_bound, genus_bound,
                     maxima_bound, minima_bound, quotient_by_t, sup_difference)
from .dsl import build, parse

__all__ = [
    "BifilteredComplex", "ComplexError", "DifferentialEntry", "Generator", "ValidationReport",
    "dual", "staircase", "tensor", "torus_knot_staircase", "unknot", "validate",
    "Bar", "Barcode", "HomologyRankError", "WindowError", "brute_force_barcode",
    "level_of_chain", "level_of_monomial", "reduce", "window_size",
    "PLFunction", "pl_eval", "pl_max", "pl_sub",
    "TorsionProfile", "ord_u", "ord_v", "parity_functions", "upsilon_tor_at",
    "upsilon_tor_function",
    "BoundReport", "QuotientPiecewise", "crossing_bound", "genus_bound", "maxima_bound",
    "minima_bound", "quotient_by_t", "sup_difference",
    "build", "parse",
]
