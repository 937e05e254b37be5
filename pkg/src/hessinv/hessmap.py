"""Hessian polynomials of homogeneous forms and the linear group action on them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .polyring import (
    ANY_DEGREE,
    DimensionMismatch,
    MultiPoly,
    PolyMatrix,
    determinant,
    rational_det,
    substitute_linear,
)


class NotHomogeneous(ValueError):
    def __init__(self, message: str, terms: Tuple = ()):
        super().__init__(message)
        self.terms = terms


@dataclass(frozen=True)
class Form:
    """A homogeneous polynomial of a declared degree.

    The zero polynomial is accepted with any declared degree.
    """

    poly: MultiPoly
    degree: int

    def __post_init__(self):
        if not 2 <= self.poly.nvars <= 4:
            raise ValueError(f"forms need 2 to 4 variables, got {self.poly.nvars}")
        if self.degree < 0:
            raise ValueError("degree must be non-negative")
        bad = [e for e in self.poly.terms if sum(e) != self.degree]
        if bad:
            raise NotHomogeneous(
                f"term with exponent {bad[0]} has degree {sum(bad[0])}, expected {self.degree}",
                terms=tuple(bad[:2]),
            )

    @classmethod
    def of(cls, poly: MultiPoly, degree: Optional[int] = None) -> "Form":
        """Wrap ``poly``, inferring the degree unless given (zero defaults to 0)."""
        if degree is None:
            d = poly.homogeneous_degree()
            if d is None:
                top = poly.sorted_terms()
                low = top[-1][0]
                raise NotHomogeneous(
                    f"terms {top[0][0]} and {low} have degrees {sum(top[0][0])} and {sum(low)}",
                    terms=(top[0][0], low),
                )
            degree = 0 if d is ANY_DEGREE else d
        return cls(poly, degree)

    @property
    def nvars(self) -> int:
        return self.poly.nvars

    @property
    def ring(self) -> Tuple[str, ...]:
        return self.poly.ring

    def is_zero(self) -> bool:
        return self.poly.is_zero()


@dataclass(frozen=True)
class LinearChange:
    """Invertible rational matrix acting on variables by ``x -> A x``."""

    matrix: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(v) for v in r) for r in self.matrix)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise DimensionMismatch("LinearChange needs a square matrix")
        object.__setattr__(self, "matrix", rows)
        if not self.det:
            raise ValueError("LinearChange matrix is singular")

    @classmethod
    def identity(cls, n: int) -> "LinearChange":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @property
    def det(self) -> Fraction:
        return rational_det(self.matrix)

    def __matmul__(self, other: "LinearChange") -> "LinearChange":
        n = self.dim
        if other.dim != n:
            raise DimensionMismatch("cannot compose matrices of different size")
        return LinearChange(tuple(
            tuple(sum((self.matrix[i][k] * other.matrix[k][j] for k in range(n)), Fraction(0))
                  for j in range(n))
            for i in range(n)
        ))


def hessian_matrix_of(poly: MultiPoly, variables: Sequence[int]) -> PolyMatrix:
    """Second partials of ``poly`` with respect to the given variable indices.

    Variables outside ``variables`` are treated as constants, which is how
    parameter-dependent families are handled.
    """
    firsts = [poly.partial(i) for i in variables]
    n = len(variables)
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = firsts[i].partial(variables[j])
    return PolyMatrix(tuple(tuple(r) for r in rows))


def hessian_matrix(f: Form) -> PolyMatrix:
    return hessian_matrix_of(f.poly, range(f.nvars))


def hessian(f: Form) -> Form:
    """Determinant of the Hessian matrix, a form of degree nvars*(d-2), possibly zero."""
    h = determinant(hessian_matrix(f))
    if h.is_zero():
        return Form(h, max(f.nvars * (f.degree - 2), 0))
    return Form.of(h)


def pullback(f: Form, change: LinearChange) -> Form:
    if change.dim != f.nvars:
        raise DimensionMismatch(f"{change.dim}x{change.dim} matrix for a form in {f.nvars} variables")
    return Form(substitute_linear(f.poly, change.matrix), f.degree)


def equivariance_holds(f: Form, change: LinearChange) -> bool:
    """Check hess(f o A) == det(A)^2 * (hess f) o A exactly."""
    lhs = hessian(pullback(f, change)).poly
    rhs = pullback(hessian(f), change).poly.scale(change.det**2)
    return lhs == rhs

