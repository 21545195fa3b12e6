"""Exception types shared across the solver library and the CLI.

The CLI maps these onto its exit-code contract: parse failures exit 1,
infeasible requests and tripped enumeration budgets exit 2.
"""


class DispersionError(Exception):
    """Base class for all library-specific errors."""


class ParseError(DispersionError, ValueError):
    """Malformed instance or solution input."""


class InfeasibleError(DispersionError, ValueError):
    """Request that no solver run can satisfy (k out of range, wrong dimension)."""


class BudgetExceededError(DispersionError, RuntimeError):
    """Enumeration would exceed the configured work budget; nothing was run."""
