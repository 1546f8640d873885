import math

import pytest

from service.classify import (BoundViolation, EnumerationReport, bound_values, check_bounds, check_conjecture,
                              check_nonempty, check_recursion, classify_solution, cross_system_consistency,
                              enumerate_degree, solve_variant, stein_filter)
from service.homotopy import TrackOptions
from utils.poly_core import MonicPoly, satisfies_eq3
from utils.systems import ClassTag, SolutionPoint, Variant

EXPECTED_COUNTS = {
    2: {'total_distinct': 2, 'p0': 1, 'p1_minus_p0': 1, 'pt': 0},
    3: {'total_distinct': 6, 'p0': 2, 'p1_minus_p0': 1, 'pt': 3},
    4: {'total_distinct': 23, 'p0': 6, 'p1_minus_p0': 3, 'pt': 14},
    5: {'total_distinct': 119, 'p0': 23, 'p1_minus_p0': 18, 'pt': 78},
    6: {'total_distinct': 719, 'p0': 119, 'p1_minus_p0': 96, 'pt': 504},
}

STEIN_COUNTS = {2: 1, 3: 2, 4: 1, 5: 0, 6: 0}


def _point(*y):
    return SolutionPoint(y=y, coords=y, residual=0.0)


def _subset(counts):
    return {key: counts[key] for key in EXPECTED_COUNTS[2]}


def test_classify_precedence():
    assert classify_solution(_point(1, -2), 1e-6) is ClassTag.P1_MINUS_P0
    assert classify_solution(_point(1, -1, -1, 0), 1e-6) is ClassTag.P0
    assert classify_solution(_point(0.5, 2j), 1e-6) is ClassTag.PT


def test_bound_values():
    assert bound_values(2) == {}
    assert bound_values(4) == {'ineq1': 24, 'ineq2': 6, 'ineq3': 6, 'ineq4': 18, 'ineq5': 4, 'ineq6': 14}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_census_counts(census, n):
    report = census(n)
    assert _subset(report.counts) == EXPECTED_COUNTS[n]
    assert report.counts['unverified'] == 0
    assert report.path_accounting.bezout == math.factorial(n)
    assert report.audits['accounting_balanced']
    assert report.audits['partition']
    assert report.audits['conjugation_closed']
    assert report.audits['residual_certificate']
    assert report.path_accounting.failed == 0
    assert report.path_accounting.at_infinity == 0


@pytest.mark.parametrize("n", [2, 3, 4])
def test_peculiar_solutions_satisfy_eq3(census, n):
    assert all(satisfies_eq3(MonicPoly(s.y)) for s in census(n).verified)


def test_n4_double_point(census):
    report = census(4)
    assert report.audits['multiplicity_sum'] + report.path_accounting.at_infinity == 24
    doubles = [s for s in report.solutions if s.multiplicity > 1]
    assert len(doubles) == 1
    assert doubles[0].multiplicity == 2
    assert doubles[0].class_tag is ClassTag.P0
    assert all(abs(a - b) < 1e-8 for a, b in zip(doubles[0].y, (1, -1, -1, 0)))


def test_solutions_are_sorted_by_class(census):
    tags = [s.class_tag for s in census(4).solutions]
    assert tags == sorted(tags, key=[ClassTag.P0, ClassTag.P1_MINUS_P0, ClassTag.PT].index)


@pytest.mark.parametrize("n", [3, 4])
def test_recursion(census, n):
    assert check_recursion(census(n), census(n - 1))
    with pytest.raises(ValueError):
        check_recursion(census(n), census(n))


def test_bounds_at_n3(census):
    audit = check_bounds(census(3))
    relations = {name: item['relation'] for name, item in audit['inequalities'].items()}
    assert relations['ineq2'] == relations['ineq5'] == relations['ineq6'] == 'equal'
    assert audit['passed']


def test_bounds_at_n4_are_strict(census):
    audit = check_bounds(census(4))
    assert audit['strict'] == {'strict1': True, 'strict2': True, 'strict3': True}
    assert audit['inequalities']['ineq5'] == {'count': 3, 'bound': 4, 'relation': 'strict'}
    assert audit['conditional_equalities'] is None


def test_bound_violation_raises(census):
    report = census(3)
    inflated = EnumerationReport(**{**report.__dict__, 'counts': {**report.counts, 'pt': 4}})
    with pytest.raises(BoundViolation):
        check_bounds(inflated)


def test_bounds_not_applicable_below_three(census):
    assert check_bounds(census(2)) == {'applicable': False, 'passed': True}


def test_nonempty(census):
    assert check_nonempty(census(3))['passed']
    small = check_nonempty(census(2))
    assert not small['applicable'] and small['pt_empty']


@pytest.mark.parametrize("n", [2, 3, 4])
def test_stein_counts(census, n):
    survivors = stein_filter(census(n))
    assert len(survivors) == STEIN_COUNTS[n]
    assert census(n).counts['real_all_nonzero'] == STEIN_COUNTS[n]


def test_stein_n4_survivor(census):
    (survivor,) = stein_filter(census(4))
    y = [v.real for v in survivor.y]
    assert y[0] == pytest.approx(1.0, abs=1e-8)
    assert y[1] == pytest.approx(-1.7548777, abs=1e-5)
    assert y[2] == pytest.approx(-0.5698403, abs=1e-5)
    assert y[3] == pytest.approx(0.3247180, abs=1e-5)


def test_stein_n3_survivors(census):
    survivors = stein_filter(census(3))
    assert any(all(abs(a - b) < 1e-8 for a, b in zip(s.y, (1, -1, -1))) for s in survivors)
    # 另一个：y_2 = −1/y_1
    assert any(abs(s.y[1] * s.y[0] + 1) < 1e-8 for s in survivors if s.class_tag is ClassTag.PT)


def test_report_dict_round_trip(census):
    report = census(3)
    restored = EnumerationReport.from_dict(report.to_dict())
    assert restored.to_dict() == report.to_dict()
    with pytest.raises(ValueError):
        EnumerationReport.from_dict({**report.to_dict(), 'schema_version': 99})


def test_enumerate_degree_range():
    with pytest.raises(ValueError):
        enumerate_degree(1)
    with pytest.raises(ValueError):
        enumerate_degree(9)


def test_p0_reduced_variant_matches_census(census, track_options):
    report = solve_variant(Variant.P0_REDUCED, 4, track_options)
    assert len(report.solutions) == census(4).counts['p0']
    assert all(s.class_tag is ClassTag.P0 for s in report.solutions)


def test_conjecture_fails_at_n4(census, track_options):
    summary = check_conjecture(4, track_options, full_report=census(4))
    assert summary['degenerate']['y_n_zero'] >= 1
    assert summary['degenerate']['y_n_minus_1_minus_one'] >= 1
    assert not summary['consistent']
    assert summary['census']['p1_minus_p0']
    assert summary['census']['cross_system']
    assert summary['subsets'] == {'p1_reduced': True, 'y1_one_chart': True}
    with pytest.raises(ValueError):
        check_conjecture(3, track_options)


def _assert_conjecture_counts(summary, n):
    f2 = math.factorial(n - 2)
    assert summary['p1_nonzero']['distinct'] == (n - 2) * f2
    assert summary['degenerate'] == {'y_n_zero': 0, 'y_n_minus_1_minus_one': 0}
    assert summary['pt']['truly_peculiar'] == summary['pt']['distinct'] == (n * n - 3 * n + 3) * f2
    accounting = summary['pt']['path_accounting']
    assert accounting['failed'] == 0
    assert accounting['at_infinity'] > 0
    assert accounting['converged'] + accounting['at_infinity'] == accounting['bezout'] == (n - 1) ** 2 * f2
    assert summary['subsets'] == {'p1_reduced': True, 'y1_one_chart': True}
    assert summary['consistent']


def test_conjecture_holds_at_n5(track_options):
    _assert_conjecture_counts(check_conjecture(5, track_options), 5)


@pytest.mark.slow
def test_conjecture_holds_at_n6_against_census(census, track_options):
    summary = check_conjecture(6, track_options, full_report=census(6))
    _assert_conjecture_counts(summary, 6)
    assert summary['census'] == {'p1_minus_p0': True, 'pt': True, 'cross_system': True}


def test_cross_system_consistency_rejects_other_degree(census, track_options):
    p1 = solve_variant(Variant.P1_NONZERO, 4, track_options)
    assert cross_system_consistency(census(4), p1)
    with pytest.raises(ValueError):
        cross_system_consistency(census(3), p1)


@pytest.mark.slow
@pytest.mark.parametrize("n", [5, 6])
def test_large_census_counts(census, n):
    report = census(n)
    assert _subset(report.counts) == EXPECTED_COUNTS[n]
    assert report.path_accounting.failed == report.path_accounting.at_infinity == 0
    assert len(stein_filter(report)) == STEIN_COUNTS[n]
    audit = check_bounds(report)
    assert audit['conditional_equalities']['conclusions']['holds']
    assert not audit['conditional_equalities']['text']['holds']
    assert check_recursion(report, census(n - 1))


@pytest.mark.slow
@pytest.mark.parametrize("n", [3, 4, 5])
def test_gamma_robustness(n):
    profiles = []
    for seed in (1, 7, 42):
        report = enumerate_degree(n, TrackOptions(gamma_seed=seed))
        profiles.append((report.counts['total_distinct'],
                         sorted(s.multiplicity for s in report.solutions)))
    assert profiles[0] == profiles[1] == profiles[2]
