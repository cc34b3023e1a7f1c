"""Exception taxonomy shared by the library and the CLI.

The CLI maps these to process exit codes; library callers catch them as
ordinary exceptions.  TheoremViolationError marks states the underlying
mathematics rules out, so seeing one means an implementation bug, not a
bad input.
"""

from __future__ import annotations


class CcpError(Exception):
    """Base class for all package errors."""


class ParseError(CcpError):
    """Malformed instance, point set, report, or encoding text."""


class BudgetExceededError(CcpError):
    """A walk or search ran past its step budget."""


class GeneralPositionError(CcpError):
    """A runtime audit found the general-position guarantees violated."""


class PreconditionError(CcpError):
    """Input violates a documented precondition (bad sizes, no embrace, ...)."""


class SingularMatrixError(CcpError):
    """Square solve on a singular matrix where regularity was required."""


class LpInfeasibleError(CcpError):
    """Feasibility was required but the system admits no solution."""


class LpUnboundedError(CcpError):
    """The objective is unbounded below on the feasible region."""


class TheoremViolationError(CcpError):
    """A state occurred that the supporting theory proves impossible."""


#: CLI exit codes.  Anything not listed exits 1.
EXIT_CODES = {
    ParseError: 2,
    BudgetExceededError: 3,
    GeneralPositionError: 4,
    PreconditionError: 5,
}


def exit_code_for(exc: BaseException) -> int:
    for klass, code in EXIT_CODES.items():
        if isinstance(exc, klass):
            return code
    return 1
