import asyncio
import csv
import io
import json

import pytest

from api.report_writer import ReportWriter
from service.homotopy import PathResult, PathStatus
from utils.locales import Locale


def test_render_json_keeps_schema(census):
    report = census(2)
    payload = json.loads(ReportWriter().render("json", report.to_dict(), report))
    assert payload['schema_version'] == 1
    assert payload['degree'] == 2
    assert payload['path_accounting'] == {'bezout': 2, 'converged': 2, 'at_infinity': 0, 'failed': 0}
    assert [s['class'] for s in payload['solutions']] == ['P0', 'P1minusP0']
    assert payload['solutions'][1]['y'] == [[pytest.approx(1.0), pytest.approx(0.0, abs=1e-12)],
                                            [pytest.approx(-2.0), pytest.approx(0.0, abs=1e-12)]]


def test_render_csv_one_row_per_solution(census):
    report = census(3)
    rows = list(csv.reader(io.StringIO(ReportWriter().render_csv(report))))
    assert rows[0] == ['degree', 'class', 'multiplicity', 'residual',
                       'y1_re', 'y1_im', 'y2_re', 'y2_im', 'y3_re', 'y3_im']
    assert len(rows) == 1 + 6
    assert {row[1] for row in rows[1:]} == {'P0', 'P1minusP0', 'Pt'}


@pytest.mark.parametrize("lang, header", [("en", "class"), ("zh", "类别"), ("ja", "分類")])
def test_render_table_is_localized(census, lang, header):
    report = census(2)
    text = ReportWriter(Locale(lang)).render("table", report.to_dict(), report)
    assert header in text.splitlines()[1]
    assert "P1\\P0" in text


def test_render_mapping_without_report():
    text = ReportWriter().render("table", {'degree': 3, 'bounds': {'ineq1': 6}, 'items': [1, 2]})
    assert text == "degree: 3\nbounds:\n  ineq1: 6\nitems:\n  - 1\n  - 2\n"
    with pytest.raises(ValueError):
        ReportWriter().render("xml", {})


def test_write_is_atomic(tmp_path):
    path = tmp_path / "out" / "report.json"
    asyncio.run(ReportWriter().write("{}\n", str(path)))
    assert path.read_text(encoding="utf-8") == "{}\n"
    assert not (tmp_path / "out" / "report.json.tmp").exists()


def test_write_trace(tmp_path):
    results = [PathResult(0, PathStatus.CONVERGED, None, 2, 1.0, 1.5, [(1, 0.5, 0.5, 1.2), (2, 1.0, 0.5, 1.5)])]
    path = tmp_path / "trace.log"
    asyncio.run(ReportWriter().write_trace(results, str(path)))
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines == [
        "path=0 step=1 t=0.5 h=0.5 norm=1.2",
        "path=0 step=2 t=1.0 h=0.5 norm=1.5",
        "path=0 status=Converged steps=2",
    ]


def test_render_bounds_not_applicable_below_three():
    payload = {'degree': 2, 'bounds': {'applicable': False, 'passed': True}, 'recursion': True, 'passed': True}
    text = ReportWriter(Locale("en")).render("table", payload)
    assert text == "N = 2\nnot applicable (N < 3)\nrecursion: True\n✅ all audits passed\n"


def test_render_certificates_marks_inconclusive():
    payload = {'prime_bound': 7, 'certificates': [
        {'source': 'poly', 'poly': 'w**2 - 1', 'degree': 2, 'irreducible': None,
         'inconclusive': 'rational_root', 'prime_bound': 7},
    ]}
    text = ReportWriter(Locale("ja")).render("csv", payload)
    assert text == "poly: w**2 - 1  [判定不能 (rational_root, p <= 7)]\n"
