"""Enumeration budget plumbing.

Point enumerations check their total work against a budget before
starting.  Resolution order: explicit argument, then the ARITH_LG_BUDGET
environment variable, then the default of 10**9 points.
"""

from __future__ import annotations

import os

from .errors import BudgetExceeded, InputError

DEFAULT_BUDGET = 10**9

_ENV_VAR = "ARITH_LG_BUDGET"


def resolve_budget(budget: int | None = None) -> int:
    if budget is not None:
        if budget <= 0:
            raise InputError("budget must be positive")
        return budget
    raw = os.environ.get(_ENV_VAR)
    if raw is not None:
        try:
            value = int(raw)
        except ValueError as exc:
            raise InputError(f"{_ENV_VAR} must be an integer, got {raw!r}") from exc
        if value <= 0:
            raise InputError(f"{_ENV_VAR} must be positive, got {value}")
        return value
    return DEFAULT_BUDGET


def charge(description: str, required: int, budget: int | None = None) -> int:
    """Check `required` units of work against the budget; return the budget."""
    limit = resolve_budget(budget)
    if required > limit:
        raise BudgetExceeded(description, required=required, budget=limit)
    return limit
