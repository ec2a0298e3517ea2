"""Exception hierarchy shared by all coxlab modules.

Each class maps to one CLI exit code, see ``coxlab.cli``.
"""


class CoxlabError(Exception):
    """Base class for all coxlab errors."""

    exit_code = 1


class InvalidInputError(CoxlabError):
    """Malformed user input: bad matrix, unknown generator, bad labeling."""

    exit_code = 1


class NotReducedError(CoxlabError):
    """A reduced expression was required but the given word is not reduced."""

    exit_code = 2


class BudgetExceededError(CoxlabError):
    """An enumeration exceeded its configured budget; never silent truncation."""

    exit_code = 3


class InternalInvariantError(CoxlabError):
    """An internal consistency check failed.  Always a bug, never user error."""

    exit_code = 4
