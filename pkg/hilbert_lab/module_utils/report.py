"""Verification report: one record per executed check, text and JSON-lines renderings.

JSON-lines records carry ``id``, ``status`` (pass, fail, diagnostic or skipped),
``measured``, ``expected``, ``tolerance``, ``message`` and a free-form ``detail`` mapping.
Only ``fail`` affects the exit status.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

PASS = "pass"
FAIL = "fail"
DIAGNOSTIC = "diagnostic"
SKIPPED = "skipped"
STATUSES = (PASS, FAIL, DIAGNOSTIC, SKIPPED)


def plain(value):
    """JSON-safe copy: numpy scalars and arrays to Python, non-finite floats to strings."""
    if isinstance(value, dict):
        return dict((str(k), plain(v)) for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return plain(value.tolist())
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if math.isfinite(value) else repr(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


@dataclass(frozen=True)
class CheckRecord:
    id: str
    status: str
    measured: object = None
    expected: object = None
    tolerance: object = None
    message: str = ""
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError("unknown check status {0!r}".format(self.status))

    def as_dict(self):
        return plain(
            {
                "id": self.id,
                "status": self.status,
                "measured": self.measured,
                "expected": self.expected,
                "tolerance": self.tolerance,
                "message": self.message,
                "detail": self.detail,
            }
        )


def assertion(check_id, measured, bound, expected=None, message="", **detail):
    """Record passing when ``measured <= bound``."""
    ok = bool(np.isfinite(measured) and measured <= bound)
    return CheckRecord(check_id, PASS if ok else FAIL, measured, expected, bound, message, detail)


def diagnostic(check_id, measured, expected=None, message="", **detail):
    return CheckRecord(check_id, DIAGNOSTIC, measured, expected, None, message, detail)


class VerificationReport(object):
    def __init__(self, seed=None, preset=None):
        self.seed = seed
        self.preset = preset
        self.records = []
        self.files = []
        self._ids = set()

    def add(self, record):
        if record.id in self._ids:
            raise ValueError("check {0} recorded twice".format(record.id))
        self._ids.add(record.id)
        self.records.append(record)

    def counts(self):
        out = dict((status, 0) for status in STATUSES)
        for record in self.records:
            out[record.status] += 1
        return out

    @property
    def failed_checks(self):
        return [r.id for r in self.records if r.status == FAIL]

    @property
    def rc(self):
        return 1 if self.failed_checks else 0

    def summary(self):
        return dict(self.counts(), total=len(self.records))

    def as_dict(self):
        return {
            "seed": self.seed,
            "preset": self.preset,
            "summary": self.summary(),
            "failed_checks": self.failed_checks,
            "checks": [r.as_dict() for r in self.records],
        }

    def write_jsonl(self, stream):
        for record in self.records:
            stream.write(json.dumps(record.as_dict(), sort_keys=True) + "\n")

    def render_text(self):
        lines = ["hilbert-lab verification: preset={0} seed={1}".format(self.preset, self.seed)]
        width = max([len(r.id) for r in self.records] + [8])
        for r in self.records:
            line = "{0:<{w}}  {1:<10}  measured={2}".format(
                r.id, r.status.upper(), _short(r.measured), w=width
            )
            if r.expected is not None:
                line += "  expected={0}".format(_short(r.expected))
            if r.tolerance is not None:
                line += "  tol={0}".format(_short(r.tolerance))
            if r.message:
                line += "  # " + r.message
            lines.append(line)
        counts = self.counts()
        lines.append(
            "{0} checks: {1} passed, {2} failed, {3} diagnostic, {4} skipped".format(
                len(self.records), counts[PASS], counts[FAIL], counts[DIAGNOSTIC], counts[SKIPPED]
            )
        )
        return "\n".join(lines) + "\n"


def _short(value):
    value = plain(value)
    if isinstance(value, float):
        return format(value, ".6g")
    if isinstance(value, list):
        return "[" + ", ".join(_short(v) for v in value) + "]"
    return str(value)
