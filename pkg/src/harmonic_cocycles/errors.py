"""Exception hierarchy.

Every exception carries an ``exit_code`` used by the command line tool:
1 for invalid input, 2 for numerical failures, 3 for internal invariant
violations.
"""


class HarmonicError(Exception):
    exit_code = 3

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details

    def to_dict(self):
        return {"error": type(self).__name__, "message": str(self),
                "details": _jsonable(self.details)}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (str, int, bool)) or obj is None:
        return obj
    if isinstance(obj, float):
        return obj
    try:
        return float(obj)
    except (TypeError, ValueError):
        return repr(obj)


class InputError(HarmonicError, ValueError):
    """Bad input: malformed objects or violated preconditions."""
    exit_code = 1


class KindMismatch(InputError):
    pass


class WorkspaceError(InputError):
    pass


class ValidationFailed(InputError):
    pass


class RelatorViolation(InputError):
    pass


class NotSymmetric(InputError):
    pass


class NotGenerating(InputError):
    pass


class NotAProduct(InputError):
    pass


class MembershipFailure(InputError):
    pass


class MissingBoundaryValue(InputError):
    pass


class NotHarmonic(InputError):
    pass


class NumericalError(HarmonicError, ArithmeticError):
    """A computation could not be completed."""
    exit_code = 2


class RadiusExceeded(NumericalError):
    pass


class BallTooLarge(NumericalError):
    pass


class NoConvergence(NumericalError):
    pass


class SingularSystem(NumericalError):
    pass


class InconsistentSystem(NumericalError):
    pass


class InvariantViolation(HarmonicError, AssertionError):
    exit_code = 3
