"""Verification reports and their json / csv / text renderings.

CSV columns are fixed: check,status,field,value,seconds.  A check with no
values still gets one row with an empty field.  Exact quantities are always
"num/den" strings; floats only appear in fields whose name starts with
"oracle_".
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import fraction_str

CSV_HEADER = ("check", "status", "field", "value", "seconds")
STATUSES = ("pass", "fail", "skip")


def render_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, Fraction)):
        return fraction_str(Fraction(v))
    if v is None:
        return "none"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(render_value(x) for x in v) + "]"
    return str(v)


@dataclass
class CheckResult:
    name: str
    status: str
    values: dict = field(default_factory=dict)
    seconds: float = 0.0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def rendered(self) -> dict:
        return {k: render_value(v) for k, v in self.values.items()}


@dataclass
class VerificationReport:
    config: dict
    version: str
    checks: list = field(default_factory=list)

    def add(self, result: CheckResult) -> CheckResult:
        self.checks.append(result)
        return result

    @property
    def exit_code(self) -> int:
        return 0 if all(c.status != "fail" for c in self.checks) else 1

    def sorted_checks(self) -> list:
        return sorted(self.checks, key=lambda c: c.name)

    def to_dict(self) -> dict:
        return {
            "tool": "pencilforge",
            "version": self.version,
            "config": {k: render_value(v) for k, v in sorted(self.config.items())},
            "checks": [
                {"check": c.name, "status": c.status, "values": c.rendered(), "seconds": round(c.seconds, 3)}
                for c in self.sorted_checks()
            ],
            "exit_code": self.exit_code,
        }


def emit_report(report: VerificationReport, fmt: str) -> bytes:
    if fmt == "json":
        return (json.dumps(report.to_dict(), indent=2) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for c in report.sorted_checks():
            secs = f"{c.seconds:.3f}"
            rendered = c.rendered()
            if not rendered:
                w.writerow((c.name, c.status, "", "", secs))
            for k, v in rendered.items():
                w.writerow((c.name, c.status, k, v, secs))
        return buf.getvalue().encode()
    if fmt == "text":
        cfg = " ".join(f"{k}={render_value(v)}" for k, v in sorted(report.config.items()))
        lines = [f"pencilforge {report.version}  {cfg}"]
        for c in report.sorted_checks():
            lines.append(f"[{c.status.upper()}] {c.name} ({c.seconds:.2f}s)")
            for k, v in c.rendered().items():
                lines.append(f"    {k} = {v}")
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown report format {fmt!r}")
