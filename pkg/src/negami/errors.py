"""Exception types and search budget configuration."""
from __future__ import annotations

import os

BUDGET_ENV = "NEGAMI_BUDGET"
_FALLBACK_BUDGET = 2_000_000


def default_budget() -> int:
    """Search budget used when a caller passes ``budget=None``.

    Read on every call so the environment override also reaches long-lived
    processes such as the CLI.
    """
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return _FALLBACK_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"{BUDGET_ENV} must be positive, got {value}")
    return value


class NegamiError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(NegamiError, ValueError):
    """Malformed graph or embedding scheme."""


class CoverError(NegamiError, ValueError):
    """A dart map that is not a cover; ``witness`` names an offending dart."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PreconditionError(NegamiError, ValueError):
    """An operation was called on inputs outside its domain."""


class BudgetExceeded(NegamiError):
    """An exhaustive search would exceed its configured budget."""

    def __init__(self, message, estimate=None, budget=None):
        super().__init__(message)
        self.estimate = estimate
        self.budget = budget


class InternalConsistencyError(NegamiError, AssertionError):
    """A mathematically guaranteed identity failed; indicates a bug."""
