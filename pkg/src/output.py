#!/usr/bin/env python3
# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""Serialization of reports and evaluator results, as JSON or as a text table."""

import json
import logging
from fractions import Fraction
from typing import Any, Iterable, Mapping, Optional, Union

import jinja2
import jsonschema

from arith import Residue
from congruence import CongruenceReport
from types_ import ReportDict, ReportDocument, ValueDocument

logger = logging.getLogger(__name__)

_INT = {"type": "string", "pattern": "^[0-9]+$"}
_VALUE = {"type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$"}

REPORT_SCHEMA = {
    "type": "object",
    "properties": {
        "id": {"type": "string"},
        "params": {"type": "object", "additionalProperties": {"type": "string"}},
        "modulus": {"anyOf": [_INT, {"type": "null"}]},
        "lhs": {"anyOf": [_VALUE, {"type": "null"}]},
        "rhs": {"anyOf": [_VALUE, {"type": "null"}]},
        "pass": {"type": "boolean"},
        "method": {"enum": ["naive", "fast", "both"]},
        "elapsed_ms": {"type": "number", "minimum": 0},
        "notes": {"type": "array", "items": {"type": "string"}},
    },
    "required": [
        "id",
        "params",
        "modulus",
        "lhs",
        "rhs",
        "pass",
        "method",
        "elapsed_ms",
        "notes",
    ],
    "additionalProperties": False,
}
REPORT_DOCUMENT_SCHEMA = {
    "type": "object",
    "properties": {
        "reports": {"type": "array", "items": REPORT_SCHEMA},
        "passed": {"type": "boolean"},
    },
    "required": ["reports", "passed"],
    "additionalProperties": False,
}
VALUE_DOCUMENT_SCHEMA = {
    "type": "object",
    "properties": {
        "kind": {"type": "string"},
        "params": {"type": "object", "additionalProperties": {"type": "string"}},
        "value": _VALUE,
        "modulus": {"anyOf": [_INT, {"type": "null"}]},
        "method": {"anyOf": [{"enum": ["naive", "fast", "both"]}, {"type": "null"}]},
        "agree": {"type": ["boolean", "null"]},
    },
    "required": ["kind", "params", "value", "modulus", "method", "agree"],
    "additionalProperties": False,
}

# no elapsed_ms column: table output is byte-stable across runs
REPORT_TABLE = """\
{% for row in rows %}
{{ row.status }}  {{ row.id }}  {{ row.params }}  lhs={{ row.lhs }}  rhs={{ row.rhs }}  mod={{ row.modulus }}  method={{ row.method }}
{% for note in row.notes %}
    - {{ note }}
{% endfor %}
{% endfor %}
{{ passed }}/{{ total }} passed
"""

VALUE_TABLE = """\
{{ value }}
{% if agree is not none %}
naive and fast {{ "agree" if agree else "DISAGREE" }}
{% endif %}
"""


class DocumentValidationError(RuntimeError):
    """Raised when an emitted document does not match its schema."""


def _validate_data(data, schema):
    """Checks whether `data` matches `schema`.

    Will raise DocumentValidationError if the data is not valid, else return None.
    """
    try:
        jsonschema.validate(instance=data, schema=schema)
    except jsonschema.ValidationError as e:
        raise DocumentValidationError(f"document does not match its schema: {e.message}") from e


def format_value(value: Optional[Union[Residue, Fraction, int]]) -> Optional[str]:
    """Decimal string for a residue or an integer, "a/b" for a non-integral fraction."""
    if value is None:
        return None
    if isinstance(value, Residue):
        return str(value.value)
    return str(value)


def report_to_dict(report: CongruenceReport) -> ReportDict:
    """Wire form of a report: values as decimal strings, `passed` under `pass`."""
    return {
        "id": report.id,
        "params": dict(report.params),
        "modulus": None if report.modulus is None else str(report.modulus),
        "lhs": format_value(report.lhs),
        "rhs": format_value(report.rhs),
        "pass": report.passed,
        "method": report.method.value,
        "elapsed_ms": report.elapsed_ms,
        "notes": list(report.notes),
    }


def report_document(reports: Iterable[CongruenceReport]) -> ReportDocument:
    """Collect reports into one document and validate it.

    Raises:
        DocumentValidationError: if the result does not match REPORT_DOCUMENT_SCHEMA.
    """
    dicts = [report_to_dict(r) for r in reports]
    document: ReportDocument = {
        "reports": dicts,
        "passed": all(d["pass"] for d in dicts),
    }
    _validate_data(document, REPORT_DOCUMENT_SCHEMA)
    return document


def value_document(
    kind: str,
    params: Mapping[str, Any],
    value: Union[Residue, Fraction],
    method: Optional[str] = None,
    agree: Optional[bool] = None,
) -> ValueDocument:
    """Wrap a single evaluator result, validated against VALUE_DOCUMENT_SCHEMA."""
    document: ValueDocument = {
        "kind": kind,
        "params": {k: str(v) for k, v in params.items()},
        "value": format_value(value),  # type: ignore
        "modulus": str(value.modulus) if isinstance(value, Residue) else None,
        "method": method,
        "agree": agree,
    }
    _validate_data(document, VALUE_DOCUMENT_SCHEMA)
    return document


def render_json(document: Union[ReportDocument, ValueDocument]) -> str:
    """Indented JSON with a trailing newline."""
    return json.dumps(document, indent=2) + "\n"


def _render(source: str, **context) -> str:
    # StrictUndefined raises if the template asks for something we did not provide
    template = jinja2.Template(
        source, undefined=jinja2.StrictUndefined, trim_blocks=True, keep_trailing_newline=True
    )
    return template.render(**context)


def render_table(document: ReportDocument) -> str:
    """One line per report, failing notes indented beneath, and a pass count.

    Timings are left out so that tables compare equal across runs.
    """
    rows = []
    for report in document["reports"]:
        rows.append(
            {
                "status": "PASS" if report["pass"] else "FAIL",
                "id": report["id"],
                "params": " ".join(f"{k}={v}" for k, v in report["params"].items()),
                "lhs": "-" if report["lhs"] is None else report["lhs"],
                "rhs": "-" if report["rhs"] is None else report["rhs"],
                "modulus": "exact" if report["modulus"] is None else report["modulus"],
                "method": report["method"],
                "notes": report["notes"],
            }
        )
    passed = sum(1 for r in document["reports"] if r["pass"])
    logger.debug(f"rendering {len(rows)} report rows")
    return _render(REPORT_TABLE, rows=rows, passed=passed, total=len(rows))


def render_value_table(document: ValueDocument) -> str:
    """The bare value, plus an agreement line when both methods ran."""
    return _render(VALUE_TABLE, value=document["value"], agree=document["agree"])


def render(document: Union[ReportDocument, ValueDocument], fmt: str) -> str:
    """Render either document kind in the requested format."""
    if fmt == "json":
        return render_json(document)
    if "reports" in document:
        return render_table(document)  # type: ignore
    return render_value_table(document)  # type: ignore
