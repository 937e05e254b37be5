"""Recover family parameters from Hessian coefficient tables.

Cubic surfaces are inverted by four quotients of coefficients.  Quartic
curves need more work: the coefficients are first divided by their group
constants (12, 48, 24 or 6), a 3x3 linear system in (a1, b1, c1) is solved
exactly, and (a2, b2, c2) follow linearly.  Every recovery is confirmed by
recomputing the forward map and comparing all coefficients.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Mapping, Optional, Tuple

from .families import (
    Case,
    CoeffTable,
    CubicSurfParams,
    Params,
    QuarticParams,
    forward_map,
    symbolic_coeff_table,
)
from .formio import format_poly
from .polyring import Exponent, MultiPoly, PolyMatrix, SingularMatrix, determinant, rational_det, rational_solve

NORMALIZERS: Dict[Exponent, int] = {
    **dict.fromkeys([(6, 0, 0), (0, 6, 0), (0, 0, 6), (3, 2, 1), (3, 1, 2)], 12),
    **dict.fromkeys([(5, 1, 0), (1, 5, 0), (5, 0, 1), (1, 0, 5), (0, 5, 1), (0, 1, 5)], 48),
    **dict.fromkeys([(3, 3, 0), (3, 0, 3), (0, 3, 3)], 24),
    **dict.fromkeys([(4, 2, 0), (2, 4, 0), (4, 0, 2), (2, 0, 4), (0, 4, 2), (0, 2, 4)], 6),
}

NormalizedCoeffs = Dict[Exponent, Fraction]


class InversionError(Exception):
    pass


class GenericityFailure(InversionError):
    def __init__(self, message: str, diagnostics: Mapping[str, Fraction]):
        super().__init__(message)
        self.diagnostics = dict(diagnostics)


class NotInImage(InversionError):
    def __init__(self, message: str, result: "InversionResult"):
        super().__init__(message)
        self.result = result


@dataclass(frozen=True)
class InversionResult:
    params: Params
    diagnostics: Dict[str, Fraction] = field(default_factory=dict)
    consistent: bool = False
    mismatched: Tuple[Exponent, ...] = ()

    @property
    def case(self) -> Case:
        return self.params.case


@dataclass(frozen=True)
class LinearSystem3:
    matrix: Tuple[Tuple[Fraction, ...], ...]
    rhs: Tuple[Fraction, ...]
    unknowns: Tuple[str, ...] = ("a1", "b1", "c1")

    @property
    def det(self) -> Fraction:
        return rational_det(self.matrix)

    def solve(self) -> Tuple[Fraction, ...]:
        return tuple(rational_solve(self.matrix, self.rhs))


def _check_consistency(params: Params, table: CoeffTable, diagnostics, strict: bool) -> InversionResult:
    image = forward_map(params)
    bad = tuple(a for a in table.entries if image.entries[a] != table.entries[a])
    result = InversionResult(params, diagnostics, consistent=not bad, mismatched=bad)
    if bad and strict:
        raise NotInImage(f"recovered parameters reproduce the table except at {len(bad)} entries, e.g. {bad[0]}", result)
    return result


def _require_case(table: CoeffTable, case: Case) -> None:
    if table.case() is not case:
        raise ValueError(f"expected a {case.value} table, got shape ({table.nvars}, {table.degree})")


# -- cubic surfaces ------------------------------------------------------

def invert_cubic3(table: CoeffTable, strict: bool = True) -> InversionResult:
    """a = -h0400/h0022, b = -h4000/h0022, c = -h0004/h2200, d = -h0040/h2200."""
    _require_case(table, Case.CUBIC)
    h = table.entries
    den_cd = h[(0, 0, 2, 2)]
    den_ab = h[(2, 2, 0, 0)]
    diagnostics = {"h(0,0,2,2)": den_cd, "h(2,2,0,0)": den_ab}
    if not den_cd or not den_ab:
        raise GenericityFailure("a vanishing denominator h(0,0,2,2) or h(2,2,0,0); need abcd != 0", diagnostics)
    params = CubicSurfParams(
        a=-h[(0, 4, 0, 0)] / den_cd,
        b=-h[(4, 0, 0, 0)] / den_cd,
        c=-h[(0, 0, 0, 4)] / den_ab,
        d=-h[(0, 0, 4, 0)] / den_ab,
    )
    return _check_consistency(params, table, diagnostics, strict)


# -- quartic curves --------------------------------------------------------

def normalize(table: CoeffTable) -> NormalizedCoeffs:
    _require_case(table, Case.QUARTIC)
    return {alpha: table[alpha] / k for alpha, k in NORMALIZERS.items()}


def _system_rows(hp, zero):
    """Rows (coefficients of a1, b1, c1) and right-hand sides of the three equations.

    Works on both numeric and symbolic normalized coefficients.
    """
    matrix = (
        (hp[(0, 0, 6)], zero, -hp[(6, 0, 0)]),
        (hp[(0, 6, 0)], -hp[(6, 0, 0)], zero),
        (zero, hp[(1, 0, 5)] * hp[(3, 1, 2)], -(hp[(1, 5, 0)] * hp[(3, 2, 1)])),
    )
    rhs = (
        hp[(4, 2, 0)] - hp[(0, 2, 4)],
        hp[(4, 0, 2)] - hp[(0, 4, 2)],
        hp[(3, 3, 0)] * hp[(3, 2, 1)] - hp[(3, 0, 3)] * hp[(3, 1, 2)],
    )
    return matrix, rhs


def assemble_system(hp: NormalizedCoeffs) -> LinearSystem3:
    matrix, rhs = _system_rows(hp, Fraction(0))
    return LinearSystem3(matrix, rhs)


def h_quantity(hp):
    """h'(0,0,6) h'(3,2,1) - h'(0,6,0) h'(3,1,2)."""
    return hp[(0, 0, 6)] * hp[(3, 2, 1)] - hp[(0, 6, 0)] * hp[(3, 1, 2)]


def displayed_delta(hp):
    """The factored determinant as printed: h'(1,5,0) h'(6,0,0) H."""
    return hp[(1, 5, 0)] * hp[(6, 0, 0)] * h_quantity(hp)


def quartic_diagnostics(hp: NormalizedCoeffs, system: LinearSystem3) -> Dict[str, Fraction]:
    return {
        "delta_sys": system.det,
        "delta_displayed": displayed_delta(hp),
        "H": h_quantity(hp),
        "h'(1,5,0)": hp[(1, 5, 0)],
        "h'(6,0,0)": hp[(6, 0, 0)],
    }


def second_params(hp, a1, b1, c1):
    """(a2, b2, c2) from (a1, b1, c1), each linear in its partner."""
    a2 = (a1 * hp[(0, 1, 5)] + hp[(0, 3, 3)]) / 12
    b2 = (b1 * hp[(1, 0, 5)] + hp[(3, 0, 3)]) / 12
    c2 = (c1 * hp[(1, 5, 0)] + hp[(3, 3, 0)]) / 12
    return a2, b2, c2


def invert_quartic(table: CoeffTable, strict: bool = True) -> InversionResult:
    hp = normalize(table)
    system = assemble_system(hp)
    diagnostics = quartic_diagnostics(hp, system)
    try:
        a1, b1, c1 = system.solve()
    except SingularMatrix:
        raise GenericityFailure("the linear system in (a1, b1, c1) is singular", diagnostics) from None
    a2, b2, c2 = second_params(hp, a1, b1, c1)
    params = QuarticParams(a1=a1, a2=a2, b1=b1, b2=b2, c1=c1, c2=c2)
    return _check_consistency(params, table, diagnostics, strict)


def invert(table: CoeffTable, strict: bool = True) -> InversionResult:
    if table.case() is Case.QUARTIC:
        return invert_quartic(table, strict)
    return invert_cubic3(table, strict)


# -- symbolic reports ------------------------------------------------------

def symbolic_normalized() -> Dict[Exponent, MultiPoly]:
    table = symbolic_coeff_table(Case.QUARTIC)
    return {alpha: table[alpha] / k for alpha, k in NORMALIZERS.items()}


def symbolic_system_matrix() -> PolyMatrix:
    hp = symbolic_normalized()
    matrix, _ = _system_rows(hp, MultiPoly.zero(Case.QUARTIC.param_vars))
    return PolyMatrix(matrix)


PROBE_POINT = (1, 2, 3, 4, 5, 6)


@dataclass(frozen=True)
class DeltaReport:
    delta_sys: MultiPoly
    delta_displayed: MultiPoly
    difference: MultiPoly
    counterexample: Optional[Tuple[int, ...]]
    values_at_counterexample: Optional[Tuple[Fraction, Fraction]]
    values_at_probe: Tuple[Fraction, Fraction]

    @property
    def equal(self) -> bool:
        return self.difference.is_zero()

    @property
    def verdict(self) -> str:
        return "EQUAL" if self.equal else "UNEQUAL"

    def render(self) -> str:
        probe = ",".join(map(str, PROBE_POINT))
        lines = [
            f"delta (system determinant) = {format_poly(self.delta_sys)}",
            f"delta (displayed product)  = {format_poly(self.delta_displayed)}",
            f"verdict: {self.verdict}",
            f"at (a1,a2,b1,b2,c1,c2) = ({probe}): system {self.values_at_probe[0]}, displayed {self.values_at_probe[1]}",
        ]
        if not self.equal:
            pt = ",".join(map(str, self.counterexample))
            u, v = self.values_at_counterexample
            lines.append(f"difference = {format_poly(self.difference)}")
            lines.append(f"counterexample ({pt}): system {u}, displayed {v}")
        return "\n".join(lines)

    def as_record(self) -> dict:
        return {
            "verdict": self.verdict,
            "delta_sys": format_poly(self.delta_sys),
            "delta_displayed": format_poly(self.delta_displayed),
            "difference": format_poly(self.difference),
            "counterexample": list(self.counterexample) if self.counterexample else None,
            "values_at_counterexample": [str(v) for v in self.values_at_counterexample] if self.values_at_counterexample else None,
            "probe": list(PROBE_POINT),
            "values_at_probe": [str(v) for v in self.values_at_probe],
        }


def _small_points(nparams: int, values=range(3)):
    yield PROBE_POINT
    yield from itertools.product(values, repeat=nparams)


def delta_discrepancy_report() -> DeltaReport:
    hp = symbolic_normalized()
    delta_sys = determinant(symbolic_system_matrix())
    delta_disp = displayed_delta(hp)
    diff = delta_sys - delta_disp
    point = values = None
    if not diff.is_zero():
        point = next(p for p in _small_points(6, range(-2, 3)) if diff.evaluate(p))
        values = (delta_sys.evaluate(point), delta_disp.evaluate(point))
    probe = (delta_sys.evaluate(PROBE_POINT), delta_disp.evaluate(PROBE_POINT))
    return DeltaReport(delta_sys, delta_disp, diff, point, values, probe)


@dataclass(frozen=True)
class HReport:
    H: MultiPoly
    witness: Optional[Tuple[int, ...]]
    value: Optional[Fraction]

    @property
    def nonzero(self) -> bool:
        return not self.H.is_zero()

    def render(self) -> str:
        if not self.nonzero:
            return "H is identically zero"
        pt = ",".join(map(str, self.witness))
        return (f"H = {format_poly(self.H)}\n"
                f"H is not identically zero ({len(self.H)} terms); "
                f"witness (a1,a2,b1,b2,c1,c2) = ({pt}) gives H = {self.value}")

    def as_record(self) -> dict:
        return {
            "nonzero": self.nonzero,
            "terms": len(self.H),
            "H": format_poly(self.H),
            "witness": list(self.witness) if self.witness else None,
            "value": str(self.value) if self.value is not None else None,
        }


def verify_h_nonzero() -> HReport:
    H = h_quantity(symbolic_normalized())
    if H.is_zero():
        return HReport(H, None, None)
    witness = next((p for p in itertools.product(range(3), repeat=6) if H.evaluate(p)), None)
    return HReport(H, witness, H.evaluate(witness) if witness else None)
