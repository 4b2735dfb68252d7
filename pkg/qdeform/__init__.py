"""Exact verification of q-deformed algebra identities."""

from .errors import QDeformError
from .report import CheckReport, SuiteResult
from .scalars import ONE, Q, RHO, S, ZERO, QScalar

__all__ = ["QDeformError", "CheckReport", "SuiteResult", "QScalar", "ZERO", "ONE", "S", "Q", "RHO"]
