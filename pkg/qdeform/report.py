"""Check outcomes and suite aggregation."""

from __future__ import annotations

import dataclasses
import functools
import logging
import time
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)

EXACT = "exact"
NUMERIC = "numeric"

PASS = "pass"
FAIL = "fail"
ERROR = "error"


@dataclass(frozen=True)
class CheckReport:
    name: str
    mode: str
    status: str
    residual: float | None = None
    witness: str | None = None
    duration_ms: float = 0.0
    convention_notes: str | None = None

    def __post_init__(self):
        if self.mode not in (EXACT, NUMERIC):
            raise ValueError(f"bad mode {self.mode!r}")
        if self.status not in (PASS, FAIL, ERROR):
            raise ValueError(f"bad status {self.status!r}")
        if self.mode == EXACT and self.status == PASS and self.residual is not None:
            raise ValueError("exact pass carries no residual")
        if self.status == FAIL and not self.witness:
            raise ValueError("failed check needs a witness")

    @property
    def passed(self):
        return self.status == PASS

    def as_row(self):
        """Deterministic fields only; timing is reported separately."""
        return {
            "name": self.name,
            "mode": self.mode,
            "status": self.status,
            "residual": self.residual,
            "witness": self.witness,
        }

    def text_line(self):
        parts = [self.name, self.mode, self.status]
        if self.residual is not None:
            parts.append(f"{self.residual:.3e}")
        if self.witness:
            parts.append(self.witness)
        return " ".join(parts)


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    reports: tuple = field(default_factory=tuple)

    @property
    def status(self):
        return PASS if all(r.passed for r in self.reports) else FAIL

    @property
    def convention_notes(self):
        return {r.name: r.convention_notes for r in self.reports if r.convention_notes}

    @property
    def timings_ms(self):
        return {r.name: round(r.duration_ms, 3) for r in self.reports}

    def to_dict(self):
        return {
            "suite": self.suite,
            "status": self.status,
            "checks": [r.as_row() for r in self.reports],
            "convention_notes": self.convention_notes,
            "timings_ms": self.timings_ms,
        }


def exact_report(name, failures, notes=None):
    """Pass when `failures` is empty, else fail on its first entry."""
    failures = list(failures)
    if failures:
        return CheckReport(name, EXACT, FAIL, witness=failures[0], convention_notes=notes)
    return CheckReport(name, EXACT, PASS, convention_notes=notes)


def numeric_report(name, residual, tol, witness=None, notes=None):
    residual = float(residual)
    if residual < tol:
        return CheckReport(name, NUMERIC, PASS, residual=residual, convention_notes=notes)
    return CheckReport(name, NUMERIC, FAIL, residual=residual,
                       witness=witness or f"residual {residual:.3e} >= {tol:.0e}",
                       convention_notes=notes)


def timed_check(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        report = fn(*args, **kwargs)
        return dataclasses.replace(report, duration_ms=(time.perf_counter() - start) * 1000.0)
    return wrapper


def run_check(name, mode, fn, *args, **kwargs):
    """Run one check, turning an escaping exception into an error report."""
    logger.info("[RUN] %s", name)
    start = time.perf_counter()
    try:
        report = fn(*args, **kwargs)
    except Exception as e:
        elapsed = (time.perf_counter() - start) * 1000.0
        logger.info("[ERR] %s: %s", name, e)
        return CheckReport(name, mode, ERROR, witness=f"{type(e).__name__}: {e}",
                           duration_ms=elapsed)
    if report.name != name:
        report = dataclasses.replace(report, name=name)
    logger.info("[%s] %s in %.1f ms", report.status.upper(), name, report.duration_ms)
    return report
