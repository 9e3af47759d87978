"""Verification records, their JSON schema, and report writers."""
from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Iterable

from .cyclotomic import CyclotomicNumber
from .qseries import FractionalQSeries, TruncatedQSeries

__all__ = [
    "VerificationRecord",
    "serialize_value",
    "report_schema",
    "render_report",
    "write_report",
    "record_sort_key",
]

STATUSES = ("equal", "mismatch", "skipped")
FORMATS = ("json", "csv", "text")


def _frac(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def serialize_value(v) -> Any:
    """Lossless JSON form of an exact value (numeric values become {re, im})."""
    if v is None:
        return None
    if isinstance(v, CyclotomicNumber):
        return {"kind": "cyclotomic", "order": v.order, "coeffs": [_frac(c) for c in v.coeffs]}
    if isinstance(v, FractionalQSeries):
        return {"kind": "series", "order": v.body.order, "denominator": v.denominator,
                "coeffs": [_frac(c) for c in v.body.coeffs]}
    if isinstance(v, TruncatedQSeries):
        return {"kind": "series", "order": v.order, "denominator": 1,
                "coeffs": [_frac(c) for c in v.coeffs]}
    if isinstance(v, (int, Fraction)):
        return {"kind": "rational", "order": 1, "coeffs": [_frac(v)]}
    z = complex(v)
    return {"kind": "numeric", "re": z.real, "im": z.imag}


@dataclass
class VerificationRecord:
    suite: str
    parameters: dict
    status: str
    lhs: Any = None
    rhs: Any = None
    field_order: int | None = None
    wall_time: float = 0.0
    note: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"status must be one of {STATUSES}, got {self.status!r}")

    def to_dict(self) -> dict:
        return asdict(self)


def _key_part(v):
    return (0, v, "") if isinstance(v, (int, float)) else (1, 0, str(v))


def record_sort_key(rec: VerificationRecord):
    return (rec.suite, tuple((k, _key_part(v)) for k, v in rec.parameters.items()))


_EXACT = {
    "type": "object",
    "required": ["kind", "order", "coeffs"],
    "properties": {
        "kind": {"enum": ["cyclotomic", "series", "rational"]},
        "order": {"type": "integer", "minimum": 0},
        "denominator": {"type": "integer", "minimum": 1},
        "coeffs": {"type": "array", "items": {"type": "string", "pattern": r"^-?\d+/\d+$"}},
    },
}
_NUMERIC = {
    "type": "object",
    "required": ["kind", "re", "im"],
    "properties": {"kind": {"const": "numeric"}, "re": {"type": "number"}, "im": {"type": "number"}},
}


def report_schema() -> dict:
    """JSON schema for one VerificationRecord; a JSON report is an array of these."""
    value = {"oneOf": [{"type": "null"}, _EXACT, _NUMERIC]}
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "VerificationRecord",
        "type": "object",
        "required": ["suite", "parameters", "status", "lhs", "rhs", "field_order"],
        "properties": {
            "suite": {"enum": ["hikami", "example1", "example2", "example3",
                               "quantum", "bailey", "series", "radial"]},
            "parameters": {"type": "object"},
            "status": {"enum": list(STATUSES)},
            "lhs": value,
            "rhs": value,
            "field_order": {"type": ["integer", "null"]},
            "wall_time": {"type": "number", "minimum": 0},
            "note": {"type": "string"},
        },
        "additionalProperties": False,
    }


def _text_line(rec: VerificationRecord) -> str:
    params = " ".join(f"{k}={v}" for k, v in rec.parameters.items())
    line = f"{rec.suite:9s} {params:40s} {rec.status}"
    return f"{line}  # {rec.note}" if rec.note else line


def render_report(records: Iterable[VerificationRecord], fmt: str = "json") -> str:
    records = list(records)
    if fmt == "json":
        return json.dumps([r.to_dict() for r in records], indent=1) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "parameters", "status", "lhs", "rhs", "field_order", "wall_time", "note"])
        for r in records:
            w.writerow([r.suite, json.dumps(r.parameters), r.status, json.dumps(r.lhs),
                        json.dumps(r.rhs), "" if r.field_order is None else r.field_order,
                        f"{r.wall_time:.6f}", r.note])
        return buf.getvalue()
    if fmt == "text":
        lines = [_text_line(r) for r in records]
        counts = {s: sum(r.status == s for r in records) for s in STATUSES}
        lines.append(" ".join(f"{k}={v}" for k, v in counts.items()))
        return "\n".join(lines) + "\n"
    raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")


def write_report(records: Iterable[VerificationRecord], path: str | os.PathLike, fmt: str = "json") -> None:
    """Render and write atomically: a temp file in the target directory, then os.replace."""
    text = render_report(records, fmt)
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".falsetheta-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
