"""The two Fermat transversal families and their Hessian coefficient maps.

Quartic curves::

    f = x^4 + y^4 + z^4 + a1*y^2*z^2 + b1*x^2*z^2 + c1*x^2*y^2
        + a2*x^2*y*z + b2*x*y^2*z + c2*x*y*z^2

Cubic surfaces::

    f = x^3 + y^3 + z^3 + t^3 + 6*a*y*z*t + 6*b*x*z*t + 6*c*x*y*t + 6*d*x*y*z
"""

from __future__ import annotations

import enum
from dataclasses import astuple, dataclass, fields
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Union

from .formio import format_poly
from .hessmap import Form, hessian, hessian_matrix_of
from .polyring import Exponent, MultiPoly, determinant, multi_indices


class Case(str, enum.Enum):
    QUARTIC = "quartic-curve"
    CUBIC = "cubic-surface"

    @property
    def form_vars(self) -> tuple:
        return ("x", "y", "z") if self is Case.QUARTIC else ("x", "y", "z", "t")

    @property
    def param_vars(self) -> tuple:
        return ("a1", "a2", "b1", "b2", "c1", "c2") if self is Case.QUARTIC else ("a", "b", "c", "d")

    @property
    def form_degree(self) -> int:
        return 4 if self is Case.QUARTIC else 3

    @property
    def hessian_degree(self) -> int:
        return len(self.form_vars) * (self.form_degree - 2)

    @property
    def params_type(self):
        return QuarticParams if self is Case.QUARTIC else CubicSurfParams


class _Params:
    """Mixin for parameter tuples: exact coercion and keyword parsing."""

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, Fraction(getattr(self, f.name)))

    def as_tuple(self) -> tuple:
        return astuple(self)

    def as_dict(self) -> Dict[str, Fraction]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_mapping(cls, values: Mapping[str, object]):
        """Build from ``{name: value}``; missing names are zero, unknown names rejected."""
        names = [f.name for f in fields(cls)]
        extra = set(values) - set(names)
        if extra:
            raise ValueError(f"unknown parameter(s) {sorted(extra)}; expected {names}")
        return cls(*(Fraction(values.get(n, 0)) for n in names))


@dataclass(frozen=True)
class QuarticParams(_Params):
    a1: Fraction = Fraction(0)
    a2: Fraction = Fraction(0)
    b1: Fraction = Fraction(0)
    b2: Fraction = Fraction(0)
    c1: Fraction = Fraction(0)
    c2: Fraction = Fraction(0)

    case = Case.QUARTIC


@dataclass(frozen=True)
class CubicSurfParams(_Params):
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    d: Fraction = Fraction(0)

    case = Case.CUBIC


Params = Union[QuarticParams, CubicSurfParams]


@dataclass(frozen=True)
class CoeffTable:
    """All coefficients of a form of fixed degree, zeros included."""

    nvars: int
    degree: int
    entries: Mapping[Exponent, Fraction]

    def __post_init__(self):
        keys = set(multi_indices(self.nvars, self.degree))
        entries = {tuple(k): Fraction(v) for k, v in self.entries.items()}
        if set(entries) != keys:
            missing = sorted(keys - set(entries), reverse=True)
            extra = sorted(set(entries) - keys)
            raise ValueError(f"incomplete coefficient table: missing {missing[:3]}, unexpected {extra[:3]}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_poly(cls, p: MultiPoly, degree: int) -> "CoeffTable":
        if any(sum(e) != degree for e in p.terms):
            raise ValueError(f"polynomial is not homogeneous of degree {degree}")
        return cls(p.nvars, degree, {a: p.coefficient_of(a) for a in multi_indices(p.nvars, degree)})

    @classmethod
    def for_case(cls, case: Case, entries: Mapping[Exponent, Fraction]) -> "CoeffTable":
        """Complete a sparse mapping with zeros."""
        full = {a: Fraction(0) for a in multi_indices(len(case.form_vars), case.hessian_degree)}
        for k, v in entries.items():
            k = tuple(k)
            if k not in full:
                raise KeyError(f"{k} is not a multi-index of degree {case.hessian_degree} in {len(case.form_vars)} variables")
            full[k] = Fraction(v)
        return cls(len(case.form_vars), case.hessian_degree, full)

    def __getitem__(self, alpha) -> Fraction:
        return self.entries[tuple(alpha)]

    def __len__(self) -> int:
        return len(self.entries)

    def case(self) -> Case:
        for c in Case:
            if (self.nvars, self.degree) == (len(c.form_vars), c.hessian_degree):
                return c
        raise ValueError(f"no family has Hessian tables of shape ({self.nvars}, {self.degree})")

    def scaled(self, factor) -> "CoeffTable":
        return CoeffTable(self.nvars, self.degree, {k: v * factor for k, v in self.entries.items()})

    def with_entry(self, alpha, value) -> "CoeffTable":
        entries = dict(self.entries)
        entries[tuple(alpha)] = Fraction(value)
        return CoeffTable(self.nvars, self.degree, entries)

    def to_poly(self, ring) -> MultiPoly:
        return MultiPoly(ring, self.entries)


# -- family forms ----------------------------------------------------

def _quartic_poly(ring, coeffs) -> MultiPoly:
    x, y, z = (MultiPoly.var(ring, v) for v in "xyz")
    a1, a2, b1, b2, c1, c2 = coeffs
    return (x**4 + y**4 + z**4
            + a1 * y**2 * z**2 + b1 * x**2 * z**2 + c1 * x**2 * y**2
            + a2 * x**2 * y * z + b2 * x * y**2 * z + c2 * x * y * z**2)


def _cubic_poly(ring, coeffs) -> MultiPoly:
    x, y, z, t = (MultiPoly.var(ring, v) for v in "xyzt")
    a, b, c, d = coeffs
    return (x**3 + y**3 + z**3 + t**3
            + 6 * a * y * z * t + 6 * b * x * z * t + 6 * c * x * y * t + 6 * d * x * y * z)


_BUILDERS = {Case.QUARTIC: _quartic_poly, Case.CUBIC: _cubic_poly}


def build_quartic(p: QuarticParams) -> Form:
    return Form(_quartic_poly(Case.QUARTIC.form_vars, p.as_tuple()), 4)


def build_cubic3(p: CubicSurfParams) -> Form:
    return Form(_cubic_poly(Case.CUBIC.form_vars, p.as_tuple()), 3)


def build_form(p: Params) -> Form:
    return build_quartic(p) if p.case is Case.QUARTIC else build_cubic3(p)


def forward_map(p: Params) -> CoeffTable:
    """Complete table of Hessian coefficients of the family member at ``p``."""
    h = hessian(build_form(p))
    return CoeffTable.from_poly(h.poly, p.case.hessian_degree)


# -- symbolic coefficient tables ---------------------------------------

def extended_ring(case: Case) -> tuple:
    return case.form_vars + case.param_vars


@lru_cache(maxsize=None)
def symbolic_hessian(case: Case) -> MultiPoly:
    """Hessian of the generic family member, over form variables plus parameters."""
    ring = extended_ring(case)
    params = [MultiPoly.var(ring, v) for v in case.param_vars]
    f = _BUILDERS[case](ring, params)
    return determinant(hessian_matrix_of(f, range(len(case.form_vars))))


@lru_cache(maxsize=None)
def _symbolic_table(case: Case) -> Dict[Exponent, MultiPoly]:
    nf = len(case.form_vars)
    buckets: Dict[Exponent, Dict[Exponent, Fraction]] = {}
    for exp, c in symbolic_hessian(case).terms.items():
        buckets.setdefault(exp[:nf], {})[exp[nf:]] = c
    return {
        alpha: MultiPoly(case.param_vars, buckets.get(alpha, {}))
        for alpha in multi_indices(nf, case.hessian_degree)
    }


def symbolic_coeff_table(case: Case) -> Dict[Exponent, MultiPoly]:
    """Every Hessian coefficient as a polynomial in the family parameters."""
    return dict(_symbolic_table(Case(case)))


def evaluate_table(table: Mapping[Exponent, MultiPoly], p: Params) -> CoeffTable:
    point = p.as_tuple()
    return CoeffTable.for_case(p.case, {a: poly.evaluate(point) for a, poly in table.items()})


# -- published formulas -------------------------------------------------

def published_formulas(case: Case) -> Dict[Exponent, MultiPoly]:
    """The closed-form coefficients printed for each family, expanded."""
    case = Case(case)
    if case is Case.CUBIC:
        a, b, c, d = MultiPoly.gens(case.param_vars)
        k = 2**5 * 3**4
        return {
            (4, 0, 0, 0): k * b * c * d,
            (0, 4, 0, 0): k * a * c * d,
            (0, 0, 4, 0): k * a * b * d,
            (0, 0, 0, 4): k * a * b * c,
            (2, 2, 0, 0): -k * a * b,
            (0, 0, 2, 2): -k * c * d,
        }
    a1, a2, b1, b2, c1, c2 = MultiPoly.gens(case.param_vars)
    return {
        (6, 0, 0): 12 * (4 * b1 * c1 - a2**2),
        (0, 6, 0): 12 * (4 * a1 * c1 - b2**2),
        (0, 0, 6): 12 * (4 * a1 * b1 - c2**2),
        (5, 1, 0): 48 * (c1 * c2 - a2 * b2),
        (1, 5, 0): 48 * (c1 * c2 - a2 * b2),
        (5, 0, 1): 48 * (b1 * b2 - a2 * c2),
        (1, 0, 5): 48 * (b1 * b2 - a2 * c2),
        (0, 5, 1): 48 * (a1 * a2 - b2 * c2),
        (0, 1, 5): 48 * (a1 * a2 - b2 * c2),
        (3, 3, 0): 24 * (a2 * b2 * c1 - c1**2 * c2 + 12 * c2),
        (3, 0, 3): 24 * (a2 * b1 * c2 - b1**2 * b2 + 12 * b2),
        (0, 3, 3): 24 * (-a1**2 * a2 + a1 * b2 * c2 + 12 * a2),
        (4, 2, 0): 6 * (8 * a1 * c1 + a2**2 * c1 - 4 * b1 * c1**2 + 48 * b1 - 8 * b2**2),
        (4, 0, 2): 6 * (8 * a1 * b1 + a2**2 * b1 - 4 * b1**2 * c1 + 48 * c1 - 8 * c2**2),
        (2, 4, 0): 6 * (8 * b1 * c1 + b2**2 * c1 - 4 * a1 * c1**2 + 48 * a1 - 8 * a2**2),
        (0, 4, 2): 6 * (8 * a1 * b1 + a1 * b2**2 - 4 * a1**2 * c1 + 48 * c1 - 8 * c2**2),
        (2, 0, 4): 6 * (8 * b1 * c1 + b1 * c2**2 - 4 * a1 * b1**2 + 48 * a1 - 8 * a2**2),
        (0, 2, 4): 6 * (8 * a1 * c1 + a1 * c2**2 - 4 * a1**2 * b1 + 48 * b1 - 8 * b2**2),
        (3, 2, 1): 12 * (-12 * a1 * b2 + a2**2 * b2 + 2 * b1 * b2 * c1),
        (3, 1, 2): 12 * (-12 * a1 * c2 + a2**2 * c2 + 2 * b1 * c1 * c2),
    }


@dataclass(frozen=True)
class FormulaCheck:
    alpha: Exponent
    expected: MultiPoly
    computed: MultiPoly

    @property
    def match(self) -> bool:
        return self.expected == self.computed

    def as_record(self) -> dict:
        return {
            "alpha": list(self.alpha),
            "expected": format_poly(self.expected),
            "computed": format_poly(self.computed),
            "match": self.match,
        }


@dataclass(frozen=True)
class FormulaReport:
    case: Case
    checks: List[FormulaCheck]

    @property
    def matched(self) -> int:
        return sum(c.match for c in self.checks)

    @property
    def ok(self) -> bool:
        return self.matched == len(self.checks)

    def mismatches(self) -> List[FormulaCheck]:
        return [c for c in self.checks if not c.match]

    def summary(self) -> str:
        return f"{self.case.value}: {self.matched}/{len(self.checks)} MATCH"

    def render(self) -> str:
        lines = [self.summary()]
        for c in self.checks:
            alpha = ",".join(map(str, c.alpha))
            if c.match:
                lines.append(f"  ({alpha}) MATCH  {format_poly(c.computed)}")
            else:
                lines.append(f"  ({alpha}) MISMATCH")
                lines.append(f"      expected: {format_poly(c.expected)}")
                lines.append(f"      computed: {format_poly(c.computed)}")
        return "\n".join(lines)

    def as_record(self) -> dict:
        return {
            "case": self.case.value,
            "matched": self.matched,
            "total": len(self.checks),
            "entries": [c.as_record() for c in self.checks],
        }


def verify_published_formulas(case: Case, formulas: Optional[Mapping[Exponent, MultiPoly]] = None) -> FormulaReport:
    """Compare printed formulas (or a supplied table) against the computed symbolic table."""
    case = Case(case)
    if formulas is None:
        formulas = published_formulas(case)
    table = _symbolic_table(case)
    checks = [FormulaCheck(tuple(alpha), expected, table[tuple(alpha)]) for alpha, expected in formulas.items()]
    return FormulaReport(case, checks)
