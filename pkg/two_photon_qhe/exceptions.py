from typing import Any, Dict, Optional


class QheError(Exception):
    """Base class for the errors raised by the package.

    Attributes:
        exit_code: Process exit status the CLI maps this error to.
        invariant: Optional name of the violated invariant, reported in the error JSON.
    """

    exit_code: int = 1

    def __init__(self, message: str, invariant: Optional[str] = None, **details: Any):
        super().__init__(message)
        self.message = message
        self.invariant = invariant
        self.details = details

    def to_dict(self) -> Dict[str, Any]:
        """Machine-readable form written to stderr by the CLI."""
        payload: Dict[str, Any] = {
            'error': type(self).__name__,
            'message': self.message,
            'exit_code': self.exit_code,
        }
        if self.invariant is not None:
            payload['invariant'] = self.invariant
        if self.details:
            payload['details'] = {key: _jsonable(value) for key, value in self.details.items()}
        return payload


class ConfigurationError(QheError, ValueError):
    exit_code = 2


class NumericError(QheError, ArithmeticError):
    exit_code = 3


class SingularityError(NumericError):
    pass


class DomainError(NumericError):
    pass


class RegimeError(NumericError):
    pass


class IntegrationError(NumericError):
    pass


class SteadyStateError(NumericError):
    pass


class NonUniqueSteadyStateError(SteadyStateError):
    pass


class OracleFailure(QheError):
    exit_code = 4

    def __init__(self, message: str, report: Optional[Any] = None, **details: Any):
        super().__init__(message, **details)
        self.report = report


def _jsonable(value: Any) -> Any:
    if isinstance(value, (str, int, bool)) or value is None:
        return value
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    return str(value)
