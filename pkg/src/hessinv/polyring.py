"""Exact sparse multivariate polynomials over the rationals.

A polynomial lives in a fixed ring given by an ordered tuple of variable
names.  Its terms map exponent tuples (one entry per ring variable) to
``Fraction`` coefficients; zero coefficients are never stored, so two
polynomials over the same ring are equal exactly when their term maps are.

Terms are listed in graded lexicographic order, highest first: larger total
degree wins, ties are broken lexicographically with the first ring variable
most significant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, Mapping, Optional, Sequence, Tuple, Union

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]


class RingMismatch(ValueError):
    """Operands live in rings with different variable lists."""


class DimensionMismatch(ValueError):
    """A matrix or point has the wrong size for the ring."""


class _AnyDegree:
    """Degree marker of the zero polynomial (homogeneous of every degree)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ANY_DEGREE"


ANY_DEGREE = _AnyDegree()


def monomial_key(exp: Exponent) -> Tuple[int, Exponent]:
    """Sort key for graded lex order; sort with ``reverse=True`` for leading-first."""
    return (sum(exp), exp)


def _as_fraction(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


class MultiPoly:
    """Immutable polynomial with exact rational coefficients."""

    __slots__ = ("_ring", "_terms", "_hash")

    def __init__(self, ring: Sequence[str], terms: Optional[Mapping[Exponent, Scalar]] = None):
        self._ring: Tuple[str, ...] = tuple(ring)
        if len(set(self._ring)) != len(self._ring):
            raise ValueError(f"duplicate variable names in ring {self._ring}")
        n = len(self._ring)
        clean: Dict[Exponent, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != n:
                raise DimensionMismatch(f"exponent {exp} has length {len(exp)}, ring has {n} variables")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = _as_fraction(coeff)
            if c:
                clean[exp] = c
        self._terms = clean
        self._hash: Optional[int] = None

    @classmethod
    def _raw(cls, ring: Tuple[str, ...], terms: Dict[Exponent, Fraction]) -> "MultiPoly":
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj._ring = ring
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, ring: Sequence[str]) -> "MultiPoly":
        return cls(ring)

    @classmethod
    def constant(cls, ring: Sequence[str], value: Scalar) -> "MultiPoly":
        ring = tuple(ring)
        return cls(ring, {(0,) * len(ring): value})

    @classmethod
    def var(cls, ring: Sequence[str], name: Union[str, int]) -> "MultiPoly":
        ring = tuple(ring)
        idx = ring.index(name) if isinstance(name, str) else name
        if not 0 <= idx < len(ring):
            raise IndexError(f"variable index {idx} out of range for ring {ring}")
        exp = [0] * len(ring)
        exp[idx] = 1
        return cls._raw(ring, {tuple(exp): Fraction(1)})

    @classmethod
    def gens(cls, ring: Sequence[str]) -> Tuple["MultiPoly", ...]:
        """All ring variables as polynomials, in ring order."""
        return tuple(cls.var(ring, i) for i in range(len(tuple(ring))))

    # -- accessors ----------------------------------------------------

    @property
    def ring(self) -> Tuple[str, ...]:
        return self._ring

    @property
    def nvars(self) -> int:
        return len(self._ring)

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        """A copy of the term map."""
        return dict(self._terms)

    def sorted_terms(self) -> list[Tuple[Exponent, Fraction]]:
        return sorted(self._terms.items(), key=lambda item: monomial_key(item[0]), reverse=True)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Tuple[Exponent, Fraction]]:
        return iter(self.sorted_terms())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient_of(self, alpha: Sequence[int]) -> Fraction:
        alpha = tuple(alpha)
        if len(alpha) != self.nvars:
            raise DimensionMismatch(f"multi-index {alpha} has wrong length for ring {self._ring}")
        return self._terms.get(alpha, Fraction(0))

    def total_degree(self) -> int:
        """Largest total degree of a term; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def homogeneous_degree(self):
        """Common total degree of all terms, ``ANY_DEGREE`` for zero, else None."""
        degrees = {sum(e) for e in self._terms}
        if not degrees:
            return ANY_DEGREE
        if len(degrees) == 1:
            return degrees.pop()
        return None

    # -- arithmetic ---------------------------------------------------

    def _check_ring(self, other: "MultiPoly") -> None:
        if self._ring != other._ring:
            raise RingMismatch(f"ring {self._ring} vs {other._ring}")

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check_ring(other)
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self._ring, other)
        return NotImplemented

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for exp, c in other._terms.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return MultiPoly._raw(self._ring, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self._ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, factor: Scalar) -> "MultiPoly":
        factor = _as_fraction(factor)
        if not factor:
            return MultiPoly._raw(self._ring, {})
        return MultiPoly._raw(self._ring, {e: c * factor for e, c in self._terms.items()})

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_ring(other)
        out: Dict[Exponent, Fraction] = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                exp = tuple(i + j for i, j in zip(ea, eb))
                out[exp] = out.get(exp, 0) + ca * cb
        return MultiPoly._raw(self._ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / _as_fraction(other))
        return NotImplemented

    def __pow__(self, n: int) -> "MultiPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MultiPoly.constant(self._ring, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self._ring == other._ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == MultiPoly.constant(self._ring, other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._ring, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*{e}" for e, c in self.sorted_terms()) or "0"
        return f"MultiPoly({body}; ring={','.join(self._ring)})"

    # -- calculus and evaluation -------------------------------------

    def partial(self, var: Union[int, str]) -> "MultiPoly":
        """Formal partial derivative with respect to one ring variable."""
        i = self._ring.index(var) if isinstance(var, str) else var
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for ring {self._ring}")
        out: Dict[Exponent, Fraction] = {}
        for exp, c in self._terms.items():
            k = exp[i]
            if k:
                new = exp[:i] + (k - 1,) + exp[i + 1:]
                out[new] = c * k
        return MultiPoly._raw(self._ring, out)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.nvars:
            raise RingMismatch(f"point of length {len(point)} for ring of {self.nvars} variables")
        pt = [_as_fraction(v) for v in point]
        total = Fraction(0)
        for exp, c in self._terms.items():
            term = c
            for v, k in zip(pt, exp):
                if k:
                    term *= v**k
            total += term
        return total


def substitute_linear(p: MultiPoly, matrix: Sequence[Sequence[Scalar]]) -> MultiPoly:
    """Pullback ``p(A x)``: variable i is replaced by sum_j A[i][j] * x_j."""
    n = p.nvars
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise DimensionMismatch(f"matrix must be {n}x{n} for ring {p.ring}")
    gens = MultiPoly.gens(p.ring)
    images = []
    for row in matrix:
        img = MultiPoly.zero(p.ring)
        for a, g in zip(row, gens):
            if a:
                img = img + g.scale(a)
        images.append(img)

    powers: Dict[Tuple[int, int], MultiPoly] = {}

    def power(i: int, k: int) -> MultiPoly:
        if (i, k) not in powers:
            powers[(i, k)] = images[i] if k == 1 else power(i, k - 1) * images[i]
        return powers[(i, k)]

    result = MultiPoly.zero(p.ring)
    for exp, c in p.terms.items():
        term = MultiPoly.constant(p.ring, c)
        for i, k in enumerate(exp):
            if k:
                term = term * power(i, k)
        result = result + term
    return result


@dataclass(frozen=True)
class PolyMatrix:
    """Square matrix of polynomials over a common ring."""

    entries: Tuple[Tuple[MultiPoly, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise DimensionMismatch("PolyMatrix must be square and non-empty")
        ring = rows[0][0].ring
        if any(e.ring != ring for r in rows for e in r):
            raise RingMismatch("PolyMatrix entries must share one ring")

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def ring(self) -> Tuple[str, ...]:
        return self.entries[0][0].ring

    def __getitem__(self, ij: Tuple[int, int]) -> MultiPoly:
        i, j = ij
        return self.entries[i][j]

    def is_symmetric(self) -> bool:
        n = self.dim
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(i))

    def minor(self, row: int, col: int) -> "PolyMatrix":
        return PolyMatrix(tuple(
            tuple(e for j, e in enumerate(r) if j != col)
            for i, r in enumerate(self.entries) if i != row
        ))

    def evaluate(self, point: Sequence[Scalar]) -> list[list[Fraction]]:
        return [[e.evaluate(point) for e in r] for r in self.entries]


def determinant(m: PolyMatrix, row: int = 0) -> MultiPoly:
    """Exact determinant by Laplace expansion along ``row``.

    Only small matrices (dim <= 4) are needed here, where cofactor expansion is
    cheap and keeps every intermediate a polynomial.
    """
    n = m.dim
    if n == 1:
        return m[0, 0]
    if n == 2:
        return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    total = MultiPoly.zero(m.ring)
    for j in range(n):
        e = m[row, j]
        if not e:
            continue
        cof = determinant(m.minor(row, j))
        if not cof:
            continue
        term = e * cof
        total = total - term if (row + j) % 2 else total + term
    return total


# -- exact rational linear algebra ------------------------------------

class SingularMatrix(ArithmeticError):
    pass


def _eliminate(matrix: Sequence[Sequence[Scalar]], rhs: Optional[Sequence[Scalar]]):
    n = len(matrix)
    if any(len(r) != n for r in matrix):
        raise DimensionMismatch("matrix must be square")
    a = [[_as_fraction(v) for v in r] + ([_as_fraction(rhs[i])] if rhs is not None else [])
         for i, r in enumerate(matrix)]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return Fraction(0), None
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det, a


def rational_det(matrix: Sequence[Sequence[Scalar]]) -> Fraction:
    """Determinant of a rational matrix by Gaussian elimination."""
    if not matrix:
        return Fraction(1)
    return _eliminate(matrix, None)[0]


def rational_solve(matrix: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar]) -> list[Fraction]:
    """Unique solution of ``A x = b`` over Q; raises SingularMatrix if det A = 0."""
    n = len(matrix)
    if len(rhs) != n:
        raise DimensionMismatch("right-hand side length does not match matrix")
    det, a = _eliminate(matrix, rhs)
    if not det:
        raise SingularMatrix("matrix is singular")
    x = [Fraction(0)] * n
    for i in reversed(range(n)):
        s = a[i][n] - sum(a[i][j] * x[j] for j in range(i + 1, n))
        x[i] = s / a[i][i]
    return x


def multi_indices(nvars: int, degree: int) -> list[Exponent]:
    """All exponent vectors of the given total degree, leading-first in grlex."""
    out: list[Exponent] = []

    def rec(prefix: Tuple[int, ...], remaining: int, slots: int) -> None:
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for k in range(remaining, -1, -1):
            rec(prefix + (k,), remaining - k, slots - 1)

    if nvars == 0:
        return [()] if degree == 0 else []
    rec((), degree, nvars)
    return out


def matmul(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]]) -> list[list[Fraction]]:
    n, m, k = len(a), len(b), len(b[0])
    if any(len(r) != m for r in a):
        raise DimensionMismatch("inner dimensions differ")
    return [[sum((_as_fraction(a[i][t]) * b[t][j] for t in range(m)), Fraction(0)) for j in range(k)]
            for i in range(n)]

