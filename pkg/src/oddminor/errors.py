"""Exception types shared across the package.

The command line maps them onto exit statuses: precondition failures exit 2,
verification failures exit 3 and theorem-contradiction events exit 4.
"""

from __future__ import annotations


class PreconditionError(ValueError):
    """An input does not satisfy the hypotheses of the requested construction."""


class VerificationError(RuntimeError):
    """A constructed certificate was rejected by the independent verifier."""

    def __init__(self, message: str, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class TheoremContradiction(RuntimeError):
    """A step that the underlying theorem guarantees has failed.

    Carries the offending graph and the construction trace so the event can be
    dumped and re-examined; under the theorem this is never raised.
    """

    def __init__(self, message: str, graph=None, trace=None):
        super().__init__(message)
        self.graph = graph
        self.trace = trace if trace is not None else []
