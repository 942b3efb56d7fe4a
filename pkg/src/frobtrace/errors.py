"""Shared exception types.

The CLI maps these onto exit codes: ValidationError -> 1, RefusalError -> 2.
Verdict failures (a pipeline that ran fine but found a mismatch) are not
exceptions; they are reported in the result objects and exit with code 3.
"""


class FrobtraceError(Exception):
    """Base class for all package errors."""


class ValidationError(FrobtraceError):
    """Malformed or inconsistent input: bad primes as moduli, wrong shapes,
    out-of-range precision requests, non-involutive matrices and the like."""


class RefusalError(FrobtraceError):
    """Structurally valid input that the implementation deliberately refuses:
    counting at a bad prime of the variety, congruence classes for which the
    resolution bookkeeping is not validated, unsupported twist shapes."""
