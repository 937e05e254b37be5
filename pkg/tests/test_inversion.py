import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hessinv.campaigns import delta_probe_campaign, random_params
from hessinv.families import Case, CoeffTable, CubicSurfParams, QuarticParams, forward_map
from hessinv.inversion import (
    NORMALIZERS,
    GenericityFailure,
    NotInImage,
    assemble_system,
    delta_discrepancy_report,
    invert,
    invert_cubic3,
    invert_quartic,
    normalize,
    symbolic_normalized,
    symbolic_system_matrix,
    verify_h_nonzero,
)
from hessinv.polyring import determinant

fracs = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 7))
nonzero_fracs = fracs.filter(bool)


# -- cubic surfaces --------------------------------------------------------

@pytest.mark.parametrize("params", [(1, 1, 1, 1), (2, -3, Fraction(1, 2), 5)])
def test_invert_cubic_examples(params):
    p = CubicSurfParams(*params)
    result = invert_cubic3(forward_map(p))
    assert result.params == p and result.consistent


def test_invert_cubic_denominators():
    result = invert_cubic3(forward_map(CubicSurfParams(2, -3, Fraction(1, 2), 5)))
    # -2592*c*d and -2592*a*b
    assert result.diagnostics == {"h(0,0,2,2)": -6480, "h(2,2,0,0)": 15552}


def test_invert_cubic_fermat_is_not_generic():
    with pytest.raises(GenericityFailure) as err:
        invert_cubic3(forward_map(CubicSurfParams()))
    assert err.value.diagnostics["h(0,0,2,2)"] == 0


@settings(max_examples=60)
@given(nonzero_fracs, nonzero_fracs, nonzero_fracs, nonzero_fracs)
def test_cubic_round_trip_property(a, b, c, d):
    p = CubicSurfParams(a, b, c, d)
    assert invert_cubic3(forward_map(p)).params == p


# -- quartic curves ---------------------------------------------------------

def test_normalize_examples():
    hp = normalize(forward_map(QuarticParams(1, 0, 1, 0, 1, 0)))
    assert hp[(6, 0, 0)] == 4
    assert set(hp) == set(NORMALIZERS) and len(hp) == 20
    zero = normalize(CoeffTable.for_case(Case.QUARTIC, {}))
    assert all(v == 0 for v in zero.values())
    q = Fraction(-7, 3)
    assert normalize(CoeffTable.for_case(Case.QUARTIC, {(3, 3, 0): 24 * q}))[(3, 3, 0)] == q


def test_invert_quartic_example():
    p = QuarticParams(1, 2, 3, 4, 5, 6)
    result = invert_quartic(forward_map(p))
    assert result.params == p and result.consistent
    # values cross-checked with an independent CAS expansion
    assert result.diagnostics["delta_sys"] == -2601984
    assert result.diagnostics["delta_displayed"] == -3252480
    assert result.diagnostics["H"] == -2640
    assert result.diagnostics["h'(1,5,0)"] == 22
    assert result.diagnostics["h'(6,0,0)"] == 56


def test_invert_quartic_fermat_is_not_generic():
    with pytest.raises(GenericityFailure) as err:
        invert_quartic(forward_map(QuarticParams()))
    assert all(v == 0 for v in err.value.diagnostics.values())


def test_quartic_round_trip_seeded_batch():
    rng = random.Random(2024)
    recovered = rejected = 0
    while recovered < 100:
        p = random_params(Case.QUARTIC, rng)
        try:
            result = invert_quartic(forward_map(p))
        except GenericityFailure:
            rejected += 1
            continue
        assert result.params == p and result.consistent
        recovered += 1
    assert rejected < 50


@settings(max_examples=60)
@given(fracs, fracs, fracs, fracs, fracs, fracs)
def test_quartic_round_trip_property(a1, a2, b1, b2, c1, c2):
    p = QuarticParams(a1, a2, b1, b2, c1, c2)
    table = forward_map(p)
    assume(assemble_system(normalize(table)).det != 0)
    result = invert_quartic(table)
    assert result.params == p and result.consistent
    assert result.diagnostics["delta_sys"] != 0


@settings(max_examples=30)
@given(fracs, fracs, fracs, fracs, fracs, fracs)
def test_linear_relations_vanish_on_recovered_solutions(a1, a2, b1, b2, c1, c2):
    table = forward_map(QuarticParams(a1, a2, b1, b2, c1, c2))
    try:
        result = invert_quartic(table)
    except GenericityFailure:
        assume(False)
    hp = normalize(table)
    r = result.params
    assert 12 * r.c2 - r.c1 * hp[(1, 5, 0)] - hp[(3, 3, 0)] == 0
    assert 12 * r.a2 - r.a1 * hp[(0, 1, 5)] - hp[(0, 3, 3)] == 0
    assert 12 * r.b2 - r.b1 * hp[(1, 0, 5)] - hp[(3, 0, 3)] == 0


def test_consistency_flag_is_sound():
    rng = random.Random(8)
    for case in Case:
        for _ in range(20):
            table = forward_map(random_params(case, rng))
            if rng.random() < 0.5:
                alpha = rng.choice(list(table.entries))
                table = table.with_entry(alpha, table[alpha] + rng.randint(1, 3))
            try:
                result = invert(table, strict=False)
            except GenericityFailure:
                continue
            assert result.consistent == (forward_map(result.params) == table)


def test_perturbed_table_is_not_in_image():
    for p in (QuarticParams(1, 2, 3, 4, 5, 6), CubicSurfParams(1, 2, 3, 4)):
        table = forward_map(p)
        # (2,2,2) / (1,1,1,1) are not used by the formulas, only by the recheck
        alpha = (2, 2, 2) if p.case is Case.QUARTIC else (1, 1, 1, 1)
        with pytest.raises(NotInImage) as err:
            invert(table.with_entry(alpha, table[alpha] + 1))
        assert err.value.result.params == p
        assert err.value.result.mismatched == (alpha,)


def test_scaling_never_silently_recovers():
    rng = random.Random(99)
    checked = 0
    while checked < 10:
        p = random_params(Case.QUARTIC, rng)
        table = forward_map(p)
        try:
            invert_quartic(table)
        except GenericityFailure:
            continue
        checked += 1
        try:
            result = invert_quartic(table.scaled(2), strict=False)
        except GenericityFailure:
            continue
        assert not (result.consistent and result.params == p)
        assert not result.consistent


def test_wrong_table_shape_is_rejected():
    with pytest.raises(ValueError):
        invert_quartic(forward_map(CubicSurfParams(1, 1, 1, 1)))


# -- symbolic reports -----------------------------------------------------------

def test_system_determinant_structure():
    hp = symbolic_normalized()
    report = delta_discrepancy_report()
    expected = hp[(6, 0, 0)] * (hp[(0, 0, 6)] * hp[(1, 5, 0)] * hp[(3, 2, 1)]
                                - hp[(0, 6, 0)] * hp[(1, 0, 5)] * hp[(3, 1, 2)])
    assert report.delta_sys == expected


def test_delta_report_verdict_and_values():
    report = delta_discrepancy_report()
    assert report.verdict in ("EQUAL", "UNEQUAL")
    assert report.values_at_probe == (-2601984, -3252480)
    assert report.verdict == "UNEQUAL"
    u, v = report.values_at_counterexample
    assert u != v
    assert report.difference.evaluate(report.counterexample) == u - v
    assert report.render() == delta_discrepancy_report().render()


def test_delta_probes_agree_with_linear_solve():
    summary = delta_probe_campaign(20, seed=0)
    assert summary.ok
    assert 0 < summary.degenerate < 20


def test_system_determinant_evaluates_to_numeric_det():
    delta = determinant(symbolic_system_matrix())
    rng = random.Random(4)
    for _ in range(10):
        p = random_params(Case.QUARTIC, rng)
        assert delta.evaluate(p.as_tuple()) == assemble_system(normalize(forward_map(p))).det


def test_h_is_not_identically_zero():
    report = verify_h_nonzero()
    assert report.nonzero
    # first tuple of {0,1,2}^6 in lexicographic order with H != 0; by hand with
    # a1 = a2 = 0, H = 2 b1 b2 c1 c2 (b2 - c2)
    assert report.witness == (0, 0, 1, 1, 1, 2)
    assert report.value == -4
    assert report.H.evaluate((0,) * 6) == 0
