import csv
import io
import json
from fractions import Fraction

from core.classno import census
from core.report import (
    CosetPayload,
    OutputRecord,
    csv_header,
    csv_row,
    decimal_string,
    render_census,
    render_payload,
    render_table,
    render_verification,
    SuiteResult,
    table_row,
    VerificationPayload,
)


def _rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_decimal_string():
    assert decimal_string(Fraction(1, 3)) == "0.333333"
    assert decimal_string(Fraction(-1, 2)) == "-0.500000"
    assert decimal_string(Fraction(342, 49)) == "6.979592"
    assert decimal_string(Fraction(5), digits=2) == "5.00"


def test_census_json_envelope():
    record = json.loads(render_census(census(7), "json"))
    assert record["schema_version"] == "1.0"
    assert record["kind"] == "census"
    payload = record["payload"]
    assert payload["p"] == 7
    assert payload["total"] == 38
    assert payload["terms"]["1,2"] == 7
    assert payload["terms"]["2,4"] == 6
    assert len(payload["terms"]) == 19


def test_partial_census_json_has_nulls():
    payload = json.loads(render_census(census(2), "json"))["payload"]
    assert payload["assumptions_ok"] is False
    assert payload["total"] is None
    assert payload["terms"]["1,2"] is None
    assert payload["notes"]


def test_census_csv():
    header, row = _rows(render_census(census(11), "csv"))
    assert header == csv_header()
    assert header[0] == "p" and header[-2:] == ["total", "ratio"]
    assert len(header) == 22
    record = dict(zip(header, row))
    assert record["p"] == "11"
    assert record["total"] == "106"
    assert record["3,6"] == "8"


def test_partial_csv_row_leaves_cells_empty():
    row = csv_row(census(3))
    assert row[-1] == "" and row[-2] == ""


def test_census_text():
    text = render_census(census(13), "text")
    assert "total: 29" in text
    assert "✓" in text
    assert "o(2,4) vanishes" in text
    assert "✗" in render_census(census(5), "text")


def test_table_row_ratio_is_exact():
    assert table_row(census(7)).ratio == "342/49"
    assert table_row(census(2)).ratio is None


def test_render_table_json_lines():
    chunks = list(render_table([census(p) for p in (7, 11, 13)], "json"))
    assert len(chunks) == 3
    records = [json.loads(chunk) for chunk in chunks]
    assert [r["payload"]["p"] for r in records] == [7, 11, 13]
    assert all(r["kind"] == "table-row" for r in records)


def test_render_table_csv():
    text = "".join(render_table([census(p) for p in (5, 7)], "csv"))
    rows = _rows(text)
    assert len(rows) == 3
    assert rows[1][0] == "5" and rows[1][-2] == ""
    assert rows[2][-2] == "38"


def test_render_verification():
    payload = VerificationPayload(
        bound=11,
        passed=False,
        suites=[
            SuiteResult(name="cosets", passed=True, checked=1, details={"table": [[6, 3, 2]]}),
            SuiteResult(name="units", passed=False, checked=2, counterexample="p=7: expected 1, got 2"),
        ],
    )
    text = render_verification(payload, "text")
    assert "✓ cosets" in text
    assert "first counterexample: p=7" in text
    assert "VERIFICATION FAILED" in text
    record = json.loads(render_verification(payload, "json"))
    assert record["kind"] == "verify"
    assert record["payload"]["suites"][1]["passed"] is False


def test_render_payload():
    payload = CosetPayload(table=[[6, 3, 2], [3, 2, 1], [2, 1, 2]])
    record = json.loads(render_payload("oracle-cosets", payload, "json"))
    assert record == OutputRecord.wrap("oracle-cosets", payload).model_dump()
    assert "table:" in render_payload("oracle-cosets", payload, "text")
