#!/usr/bin/env python3
# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""Shapes of the JSON documents emitted by the command line."""

from typing import Dict, List, Optional

try:
    from typing import TypedDict
except ImportError:
    from typing_extensions import TypedDict

# integers travel as decimal strings, fractions as "a/b"
IntStr = ValueStr = str


# the wire key `pass` is a Python keyword
ReportDict = TypedDict(
    "ReportDict",
    {
        "id": str,
        "params": Dict[str, str],
        "modulus": Optional[IntStr],
        "lhs": Optional[ValueStr],
        "rhs": Optional[ValueStr],
        "pass": bool,
        "method": str,
        "elapsed_ms": float,
        "notes": List[str],
    },
)


class ReportDocument(TypedDict):
    """Output of `verify` and `selftest`."""

    reports: List[ReportDict]
    passed: bool


class ValueDocument(TypedDict):
    """Output of `sum` and `bernoulli`."""

    kind: str
    params: Dict[str, str]
    value: ValueStr
    modulus: Optional[IntStr]
    method: Optional[str]
    agree: Optional[bool]
