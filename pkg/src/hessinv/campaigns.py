"""Seeded random batch checks: round trips, equivariance, degeneracy probes."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

from .families import Case, Params, forward_map
from .hessmap import Form, LinearChange, equivariance_holds
from .inversion import GenericityFailure, NotInImage, assemble_system, invert, normalize, symbolic_system_matrix
from .polyring import MultiPoly, SingularMatrix, determinant, multi_indices

PARAM_RANGE = range(-9, 10)


def random_params(case: Case, rng: random.Random, values=PARAM_RANGE) -> Params:
    case = Case(case)
    return case.params_type(*(rng.choice(values) for _ in case.param_vars))


def random_form(rng: random.Random, degree: int, ring, coeff_range=range(-3, 4)) -> Form:
    """Dense form with small integer coefficients; never the zero form."""
    while True:
        terms = {a: rng.choice(coeff_range) for a in multi_indices(len(ring), degree)}
        p = MultiPoly(ring, terms)
        if p:
            return Form(p, degree)


def random_rational_form(rng: random.Random, max_degree: int = 6, bound: int = 1000) -> Form:
    """Sparse form in 2-4 variables, degree <= max_degree, coefficients p/q with |p|, q <= bound."""
    ring = ("x", "y", "z", "t")[: rng.randint(2, 4)]
    degree = rng.randint(0, max_degree)
    monos = multi_indices(len(ring), degree)
    chosen = rng.sample(monos, rng.randint(0, min(len(monos), 8)))
    terms = {m: Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for m in chosen}
    return Form(MultiPoly(ring, terms), degree)


def random_change(rng: random.Random, n: int) -> LinearChange:
    """Random invertible matrix with entries k/m, |k| <= 2, m in {1, 2}."""
    while True:
        rows = [[Fraction(rng.randint(-2, 2), rng.choice((1, 2))) for _ in range(n)] for _ in range(n)]
        try:
            return LinearChange(rows)
        except ValueError:
            continue


@dataclass
class RoundTripSummary:
    case: Case
    samples: int
    exact: int = 0
    rejected: int = 0
    failures: List[Tuple[Params, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.exact == self.samples and not self.failures

    def render(self) -> str:
        line = f"{self.case.value}: {self.exact}/{self.samples} exact, {self.rejected} rejected"
        for p, why in self.failures:
            line += f"\n  FAILED {p.as_tuple()}: {why}"
        return line

    def as_record(self) -> dict:
        return {
            "case": self.case.value,
            "samples": self.samples,
            "exact": self.exact,
            "rejected": self.rejected,
            "failures": [{"params": [str(v) for v in p.as_tuple()], "reason": why} for p, why in self.failures],
        }


def _cubic_degenerate(p: Params) -> bool:
    return p.case is Case.CUBIC and not (p.a * p.b * p.c * p.d)


def roundtrip_campaign(case: Case, samples: int, seed: int) -> RoundTripSummary:
    """Forward then inverse on ``samples`` generic parameter draws.

    Degenerate draws (abcd = 0 for cubics, singular system for quartics) are
    redrawn and counted as rejections.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    case = Case(case)
    rng = random.Random(seed)
    summary = RoundTripSummary(case, samples)
    done = 0
    while done < samples:
        p = random_params(case, rng)
        if _cubic_degenerate(p):
            summary.rejected += 1
            continue
        try:
            result = invert(forward_map(p))
        except GenericityFailure:
            summary.rejected += 1
            continue
        except NotInImage as exc:
            summary.failures.append((p, str(exc)))
        else:
            if result.params == p and result.consistent:
                summary.exact += 1
            else:
                summary.failures.append((p, f"recovered {result.params.as_tuple()}"))
        done += 1
    return summary


@dataclass
class EquivarianceSummary:
    degree: int
    nvars: int
    samples: int
    exact: int = 0

    @property
    def ok(self) -> bool:
        return self.exact == self.samples

    def render(self) -> str:
        return f"equivariance (d={self.degree}, nvars={self.nvars}): {self.exact}/{self.samples} exact"

    def as_record(self) -> dict:
        return {"degree": self.degree, "nvars": self.nvars, "samples": self.samples, "exact": self.exact}


EQUIVARIANCE_CASES = ((4, ("x", "y", "z")), (3, ("x", "y", "z", "t")))


def equivariance_campaign(samples: int, seed: int) -> List[EquivarianceSummary]:
    """hess(f o A) = det(A)^2 (hess f) o A on random (f, A), for both family shapes."""
    if samples < 1:
        raise ValueError("samples must be at least 1")
    rng = random.Random(seed)
    out = []
    for degree, ring in EQUIVARIANCE_CASES:
        s = EquivarianceSummary(degree, len(ring), samples)
        for _ in range(samples):
            f = random_form(rng, degree, ring)
            change = random_change(rng, len(ring))
            s.exact += equivariance_holds(f, change)
        out.append(s)
    return out


@dataclass
class ProbeSummary:
    probes: int
    agree: int = 0
    degenerate: int = 0

    @property
    def ok(self) -> bool:
        return self.agree == self.probes

    def render(self) -> str:
        return (f"delta probes: {self.agree}/{self.probes} agree "
                f"({self.degenerate} degenerate)")


def delta_probe_campaign(probes: int, seed: int, values=(-1, 0, 1)) -> ProbeSummary:
    """Symbolic system determinant vanishes exactly where the numeric solve fails.

    Small value sets make degenerate probes common, so both outcomes get exercised.
    """
    rng = random.Random(seed)
    delta = determinant(symbolic_system_matrix())
    summary = ProbeSummary(probes)
    for _ in range(probes):
        p = random_params(Case.QUARTIC, rng, values)
        system = assemble_system(normalize(forward_map(p)))
        try:
            system.solve()
            singular = False
        except SingularMatrix:
            singular = True
        summary.degenerate += singular
        summary.agree += singular == (delta.evaluate(p.as_tuple()) == 0)
    return summary
