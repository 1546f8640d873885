from fractions import Fraction

import numpy as np
import pytest

from utils.intpoly import (BadPrime, Certificate, Inconclusive, IntPoly, MismatchReport, certify_irreducible,
                           exact_remainders, irreducible_mod_p, known_answer_points, load_known_answers,
                           rational_roots, to_monic, verify_known_answers)
from utils.systems import ClassTag, build_full, build_pt, residual

N3_PT = IntPoly((-1, 0, 2, 2))
N4_P1 = IntPoly((1, 1, 2, 1))


def _answer(degree, tag):
    return next(a for a in load_known_answers() if a.degree_n == degree and a.class_tag is tag)


def test_parse_and_evaluate():
    f = IntPoly.parse("2*w**3 + 2*w**2 - 1")
    assert f == N3_PT
    assert f.degree == 3 and f.leading == 2
    assert f.descending() == [2, 2, 0, -1]
    assert f(Fraction(1, 2)) == Fraction(-1, 4)
    with pytest.raises(ValueError):
        IntPoly.parse("w**2 / 2")


def test_irreducible_mod_p():
    assert irreducible_mod_p(IntPoly((1, 1, 1)), 2)
    assert not irreducible_mod_p(IntPoly((1, 0, 1)), 2)
    with pytest.raises(BadPrime):
        irreducible_mod_p(N3_PT, 2)
    with pytest.raises(ValueError):
        irreducible_mod_p(N3_PT, 4)


def test_rational_roots():
    assert rational_roots(IntPoly((-1, 0, 1))) == [Fraction(-1), Fraction(1)]
    assert rational_roots(IntPoly((0, -1, 2))) == [Fraction(0), Fraction(1, 2)]
    assert rational_roots(N3_PT) == []


def test_certificates_for_cubics():
    # 2w³ + 2w² − 1 在 F_3 上有根 w = 1，F_5 上没有
    assert certify_irreducible(N3_PT) == Certificate(5)
    assert certify_irreducible(N4_P1) == Certificate(2)


def test_certificate_for_degree_fourteen():
    result = certify_irreducible(_answer(4, ClassTag.PT).defining_poly)
    assert isinstance(result, Certificate)
    assert result.prime <= 200


def test_inconclusive_results():
    assert certify_irreducible(IntPoly((-1, 0, 1))) == Inconclusive("rational_root", 200)
    # (w² + 1)(w² + 2) 在每个素数下都可约
    assert certify_irreducible(IntPoly((2, 0, 3, 0, 1)), prime_bound=50) == Inconclusive("no_prime", 50)
    with pytest.raises(ValueError):
        certify_irreducible(IntPoly((3,)))


def test_to_monic():
    assert to_monic(N3_PT).coeffs == (1, 0, -0.5)


def test_load_known_answers():
    answers = load_known_answers()
    assert [(a.degree_n, a.class_tag.value, a.expected_count) for a in answers] == [
        (2, 'P1minusP0', 1), (3, 'P1minusP0', 1), (3, 'Pt', 3), (4, 'P1minusP0', 3), (4, 'Pt', 14),
    ]


def test_load_known_answers_rejects_version(tmp_path):
    path = tmp_path / "answers.json"
    path.write_text('{"version": 2, "answers": []}', encoding="utf-8")
    with pytest.raises(ValueError):
        load_known_answers(str(path))


@pytest.mark.parametrize("index", range(5))
def test_transcribed_formulas_satisfy_the_system_exactly(index):
    ka = load_known_answers()[index]
    assert all(r.is_zero for r in exact_remainders(ka))


@pytest.mark.parametrize("precision", ["double", "extended"])
def test_known_answer_points(precision):
    ka = _answer(3, ClassTag.PT)
    points = known_answer_points(ka, precision)
    assert len(points) == 3
    assert all(residual(build_full(3), p) < 1e-12 for p in points)
    # 排印的末方程（k 从 1 开始）在这些点上不成立
    assert all(residual(build_pt(3), p) < 1e-12 for p in points)
    assert all(residual(build_pt(3, printed=True), p) > 1e-3 for p in points)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_census_contains_known_answers(census, n):
    audit = verify_known_answers(n, census(n))
    assert all(entry['matched'] == entry['expected'] for entry in audit)


def test_mismatch_report_lists_unmatched(census):
    report = census(3)
    report_without_pt = type(report)(**{**report.__dict__, 'solutions': report.by_class(ClassTag.P0)})
    with pytest.raises(MismatchReport) as excinfo:
        verify_known_answers(3, report_without_pt)
    assert len(excinfo.value.unmatched) == 4
    with pytest.raises(ValueError):
        verify_known_answers(5, report)


def test_real_root_of_n4_unit_family():
    points = known_answer_points(_answer(4, ClassTag.P1_MINUS_P0))
    real = [p for p in points if np.all(np.abs(p.imag) < 1e-10)]
    assert len(real) == 1
    assert real[0][1].real == pytest.approx(-1.7548777, abs=1e-6)
