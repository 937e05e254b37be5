"""Exact Hessian maps of quartic plane curves and cubic surfaces, with inversion on Fermat transversals."""

from .families import (
    Case,
    CoeffTable,
    CubicSurfParams,
    QuarticParams,
    build_cubic3,
    build_quartic,
    forward_map,
    symbolic_coeff_table,
    verify_published_formulas,
)
from .formio import parse_form, print_form
from .hessmap import Form, LinearChange, hessian, hessian_matrix, pullback
from .inversion import GenericityFailure, NotInImage, invert, invert_cubic3, invert_quartic
from .polyring import MultiPoly

__all__ = [
    "Case",
    "CoeffTable",
    "CubicSurfParams",
    "Form",
    "GenericityFailure",
    "LinearChange",
    "MultiPoly",
    "NotInImage",
    "QuarticParams",
    "build_cubic3",
    "build_quartic",
    "forward_map",
    "hessian",
    "hessian_matrix",
    "invert",
    "invert_cubic3",
    "invert_quartic",
    "parse_form",
    "print_form",
    "pullback",
    "symbolic_coeff_table",
    "verify_published_formulas",
]
