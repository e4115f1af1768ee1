"""Report values and their JSON / text rendering.

Numbers are carried as strings: exact rationals as "p/q", reals as decimal
strings with enough digits to round-trip at their precision, complex values as
[re, im] pairs.  Integers and integer matrices stay JSON integers.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import mpmath as mp

from .exact import ApComplex, Cyclotomic

SCHEMA_VERSION = "1"
PASS, FAIL = "pass", "fail"


def digits_for(precision: int) -> int:
    """Decimal digits that round-trip an mpf of the given bit precision."""
    return math.ceil(precision * math.log10(2)) + 1


def fmt_rational(r: Fraction) -> str:
    r = Fraction(r)
    return f"{r.numerator}/{r.denominator}"


def fmt_real(x, precision: int) -> str:
    with mp.workprec(precision):
        return mp.nstr(mp.mpf(x), digits_for(precision), min_fixed=-3, max_fixed=6)


def fmt_complex(z, precision: int) -> list[str]:
    if isinstance(z, ApComplex):
        precision = min(precision, z.precision)
        z = z.value
    with mp.workprec(precision):
        z = mp.mpc(z)
    return [fmt_real(z.real, precision), fmt_real(z.imag, precision)]


def fmt_cyclotomic(c: Cyclotomic) -> dict[str, Any]:
    """Power-basis coordinates in Q(zeta_d)."""
    return {"order": c.order, "coeffs": [fmt_rational(x) for x in c.coeffs]}


def to_jsonable(value, precision: int):
    """Convert library values to JSON-ready data at the given precision."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return fmt_rational(value)
    if isinstance(value, Cyclotomic):
        return fmt_cyclotomic(value)
    if isinstance(value, ApComplex):
        return fmt_complex(value, precision)
    if isinstance(value, mp.mpc):
        return fmt_complex(value, precision)
    if isinstance(value, (mp.mpf, float)):
        return fmt_real(value, precision)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v, precision) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v, precision) for v in value]
    raise TypeError(f"cannot serialise {type(value).__name__}")


@dataclass
class Report:
    input: str
    command: str
    sections: dict[str, Any] = field(default_factory=dict)
    verdicts: dict[str, dict[str, str]] = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def add_section(self, name: str, value, precision: int = 128) -> None:
        self.sections[name] = to_jsonable(value, precision)

    def add_verdict(self, name: str, ok: bool, detail: str = "") -> None:
        self.verdicts[name] = {"status": PASS if ok else FAIL, "detail": detail}

    @property
    def passed(self) -> bool:
        return all(v["status"] == PASS for v in self.verdicts.values())

    def to_dict(self) -> dict[str, Any]:
        return {
            "schemaVersion": self.schema_version,
            "command": self.command,
            "input": self.input,
            "sections": self.sections,
            "verdicts": self.verdicts,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Report":
        if data.get("schemaVersion") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {data.get('schemaVersion')!r}")
        return cls(
            input=data["input"],
            command=data["command"],
            sections=data["sections"],
            verdicts=data["verdicts"],
        )


def emit_json(report: Report) -> str:
    return json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"


def parse_json(text: str) -> Report:
    return Report.from_dict(json.loads(text))


def _is_matrix(value) -> bool:
    return (
        isinstance(value, list)
        and bool(value)
        and all(isinstance(row, list) and row and not any(isinstance(x, (list, dict)) for x in row) for row in value)
        and len({len(row) for row in value}) == 1
    )


def render_matrix(rows: list[list], indent: str = "    ") -> list[str]:
    cells = [[str(x) for x in row] for row in rows]
    widths = [max(len(row[j]) for row in cells) for j in range(len(cells[0]))]
    return [indent + "  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]


def _render_value(value) -> str:
    if isinstance(value, list) and len(value) == 2 and all(isinstance(x, str) for x in value):
        re_, im = value
        return f"{re_} + {im}i" if not im.startswith("-") else f"{re_} - {im[1:]}i"
    if isinstance(value, list):
        return "[" + ", ".join(_render_value(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {_render_value(v)}" for k, v in value.items()) + "}"
    return str(value)


def emit_text(report: Report) -> str:
    lines = [f"{report.command} {report.input}"]
    if report.sections:
        width = max(len(k) for k in report.sections)
        for name, value in report.sections.items():
            if _is_matrix(value) and len(value) > 1:
                lines.append(f"{name}:")
                lines.extend(render_matrix(value))
            else:
                lines.append(f"{name.ljust(width)}  {_render_value(value)}")
    if report.verdicts:
        lines.append("")
        width = max(len(k) for k in report.verdicts)
        for name, v in report.verdicts.items():
            status = v["status"].upper()
            detail = f"  {v['detail']}" if v["detail"] else ""
            lines.append(f"{name.ljust(width)}  {status}{detail}")
        lines.append("")
        lines.append("ALL PASS" if report.passed else "FAILED")
    return "\n".join(lines) + "\n"


def emit_report(report: Report, fmt: str = "text") -> bytes:
    if fmt == "json":
        return emit_json(report).encode()
    if fmt == "text":
        return emit_text(report).encode()
    raise ValueError(f"unknown format {fmt!r}")


__all__ = [
    "SCHEMA_VERSION",
    "Report",
    "digits_for",
    "fmt_rational",
    "fmt_real",
    "fmt_complex",
    "fmt_cyclotomic",
    "to_jsonable",
    "emit_json",
    "emit_text",
    "emit_report",
    "parse_json",
    "render_matrix",
]
