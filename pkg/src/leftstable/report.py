"""Line-oriented verification reports.

A report serializes as one ``FIELD=value`` pair per line followed by a final
``RESULT=PASS|FAIL|VACUOUS`` line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

PASS = "PASS"
FAIL = "FAIL"
VACUOUS = "VACUOUS"
RESULTS = (PASS, FAIL, VACUOUS)


def format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return "(" + ",".join(format_value(v) for v in value) + ")"
    if value is None:
        return "none"
    return str(value)


@dataclass
class Report:
    result: str
    fields: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.result not in RESULTS:
            raise ValueError(f"unknown result {self.result!r}")
        for key in self.fields:
            if not key or "=" in key or "\n" in key:
                raise ValueError(f"bad field name {key!r}")

    @property
    def passed(self) -> bool:
        return self.result != FAIL

    def to_text(self) -> str:
        lines = [f"{key}={format_value(val)}" for key, val in self.fields.items()]
        lines.append(f"RESULT={self.result}")
        return "\n".join(lines) + "\n"

    __str__ = to_text


def parse_report(text: str) -> tuple[dict[str, str], str]:
    """Read a serialized report back as raw strings.

    Returns the field mapping (without RESULT) and the result token.
    """
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty report")
    pairs = []
    for ln in lines:
        key, sep, val = ln.partition("=")
        if not sep:
            raise ValueError(f"malformed report line {ln!r}")
        pairs.append((key, val))
    last_key, result = pairs[-1]
    if last_key != "RESULT" or result not in RESULTS:
        raise ValueError("report must end with RESULT=PASS|FAIL|VACUOUS")
    return dict(pairs[:-1]), result
