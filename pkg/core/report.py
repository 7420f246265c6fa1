import csv
import io
from fractions import Fraction
from typing import Any, Dict, Iterable, Iterator, List, Optional

from pydantic import BaseModel, Field

from config import Config
from .classno import TERM_KEYS, CensusReport


class CensusPayload(BaseModel):
    p: int
    assumptions_ok: bool
    terms: Dict[str, Optional[int]]
    total: Optional[int]
    notes: List[str] = Field(default_factory=list)


class TableRow(CensusPayload):
    ratio: Optional[str] = None


class SuiteResult(BaseModel):
    name: str
    passed: bool
    checked: int = 0
    counterexample: Optional[str] = None
    error: Optional[str] = None
    details: Dict[str, Any] = Field(default_factory=dict)


class VerificationPayload(BaseModel):
    bound: int
    passed: bool
    suites: List[SuiteResult]


class IdealClassEntry(BaseModel):
    denominator: int
    hnf: List[List[int]]
    norm: int
    unit_order: int


class IdealClassPayload(BaseModel):
    p: int
    level: int
    discriminant: int
    class_number: int
    mass: str
    classes: List[IdealClassEntry]


class UnitCensusPayload(BaseModel):
    p: int
    class_number: int
    unit_orders: List[int]


class CosetPayload(BaseModel):
    table: List[List[int]]


class OutputRecord(BaseModel):
    schema_version: str = Config.SCHEMA_VERSION
    kind: str
    payload: Dict[str, Any]

    @classmethod
    def wrap(cls, kind: str, payload: BaseModel) -> "OutputRecord":
        return cls(kind=kind, payload=payload.model_dump())


def census_payload(report: CensusReport) -> CensusPayload:
    return CensusPayload(
        p=report.p,
        assumptions_ok=report.assumptions_ok,
        terms={key.key: report.terms[key] for key in TERM_KEYS},
        total=report.total,
        notes=list(report.notes),
    )


def exact_ratio(report: CensusReport) -> Optional[Fraction]:
    if report.total is None:
        return None
    return Fraction(9 * report.total, report.p * report.p)


def decimal_string(value: Fraction, digits: int = 6) -> str:
    scaled = round(value * 10 ** digits)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10 ** digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def table_row(report: CensusReport) -> TableRow:
    ratio = exact_ratio(report)
    return TableRow(
        **census_payload(report).model_dump(),
        ratio=None if ratio is None else f"{ratio.numerator}/{ratio.denominator}",
    )


def csv_header() -> List[str]:
    return ["p", *(key.key for key in TERM_KEYS), "total", "ratio"]


def csv_row(report: CensusReport) -> List[str]:
    ratio = exact_ratio(report)

    def cell(value: Optional[int]) -> str:
        return "" if value is None else str(value)

    return [
        str(report.p),
        *(cell(report.terms[key]) for key in TERM_KEYS),
        cell(report.total),
        "" if ratio is None else decimal_string(ratio),
    ]


def _csv_lines(rows: Iterable[List[str]]) -> Iterator[str]:
    for row in rows:
        buffer = io.StringIO()
        csv.writer(buffer, lineterminator="\n").writerow(row)
        yield buffer.getvalue()


def render_text(report: CensusReport) -> str:
    lines = ["=" * 60, f"H(2, D_{{{report.p},inf}}) census", "=" * 60]
    for key in TERM_KEYS:
        value = report.terms[key]
        lines.append(f"  o{key}: {'deferred' if value is None else value}")
    lines.append("-" * 60)
    lines.append(f"  total: {'unavailable' if report.total is None else report.total}")
    mark = "✓" if report.assumptions_ok else "✗"
    lines.append(f"  {mark} assumptions p not in {{2, 3, 5}}")
    for note in report.notes:
        lines.append(f"  note: {note}")
    lines.append("=" * 60)
    return "\n".join(lines) + "\n"


def render_census(report: CensusReport, fmt: str) -> str:
    if fmt == "json":
        return OutputRecord.wrap("census", census_payload(report)).model_dump_json(indent=2) + "\n"
    if fmt == "csv":
        return "".join(_csv_lines([csv_header(), csv_row(report)]))
    if fmt == "text":
        return render_text(report)
    raise ValueError(f"unknown format {fmt!r}")


def render_table(reports: Iterable[CensusReport], fmt: str) -> Iterator[str]:
    """One chunk per prime, JSON lines for json, header plus rows for csv."""
    if fmt == "json":
        for report in reports:
            yield OutputRecord.wrap("table-row", table_row(report)).model_dump_json() + "\n"
    elif fmt == "csv":
        yield from _csv_lines([csv_header()])
        for report in reports:
            yield from _csv_lines([csv_row(report)])
    elif fmt == "text":
        width = 8
        yield " ".join(f"{name:>{width}}" for name in csv_header()) + "\n"
        for report in reports:
            yield " ".join(f"{cell or '-':>{width}}" for cell in csv_row(report)) + "\n"
    else:
        raise ValueError(f"unknown format {fmt!r}")


def render_verification(payload: VerificationPayload, fmt: str) -> str:
    if fmt == "json":
        return OutputRecord.wrap("verify", payload).model_dump_json(indent=2) + "\n"

    lines = ["=" * 60, "VERIFICATION SUMMARY", "=" * 60]
    for suite in payload.suites:
        mark = "✓" if suite.passed else "✗"
        lines.append(f"  {mark} {suite.name}: {suite.checked} checks")
        if suite.counterexample:
            lines.append(f"      first counterexample: {suite.counterexample}")
        if suite.error:
            lines.append(f"      error: {suite.error}")
        table = suite.details.get("table")
        if table:
            for row in table:
                lines.append("      " + " ".join(str(c) for c in row))
    lines.append("=" * 60)
    lines.append("ALL SUITES PASSED" if payload.passed else "VERIFICATION FAILED")
    return "\n".join(lines) + "\n"


def render_payload(kind: str, payload: BaseModel, fmt: str) -> str:
    if fmt == "json":
        return OutputRecord.wrap(kind, payload).model_dump_json(indent=2) + "\n"
    lines = []
    for name, value in payload.model_dump().items():
        if isinstance(value, list):
            lines.append(f"{name}:")
            lines.extend(f"  {item}" for item in value)
        else:
            lines.append(f"{name}: {value}")
    return "\n".join(lines) + "\n"
