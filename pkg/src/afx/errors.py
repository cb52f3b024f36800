"""Exception hierarchy; each class carries the CLI exit code it maps to."""

from __future__ import annotations


class AfxError(Exception):
    exit_code = 1
    error_kind = "error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details


class MalformedInput(AfxError, ValueError):
    exit_code = 2
    error_kind = "malformed_input"


class PreconditionRefused(AfxError, ValueError):
    exit_code = 3
    error_kind = "refused"


class NotSupercritical(PreconditionRefused):
    error_kind = "not_supercritical"


class NotDelzant(PreconditionRefused):
    error_kind = "not_delzant"


class NotSummand(PreconditionRefused):
    error_kind = "not_summand"


class DegenerateInput(PreconditionRefused):
    error_kind = "degenerate"


class ConsistencyFailure(AfxError, AssertionError):
    """Internal cross-checks disagree; never expected on a correct build."""

    exit_code = 4
    error_kind = "consistency_failure"


class EngineDisagreement(ConsistencyFailure):
    error_kind = "engine_disagreement"


class TheoremViolation(ConsistencyFailure):
    error_kind = "theorem_violation"
