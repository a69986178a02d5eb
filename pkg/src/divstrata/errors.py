"""Exception hierarchy.

Every error carries a stable ``code`` string so the CLI and JSON reports can
name the failure without parsing messages.
"""


class DivstrataError(Exception):
    code = "error"


class InputError(DivstrataError, ValueError):
    """Malformed input data (files, characteristics, polynomials)."""

    code = "invalid-input"


class InvalidModulus(InputError):
    code = "invalid-modulus"


class ShapeError(InputError):
    code = "shape-error"


class InvalidCharacteristic(InputError):
    code = "invalid-characteristic"


class IncompleteGerm(InputError):
    code = "incomplete-germ"


class InvalidArity(InputError):
    code = "invalid-arity"


class InvalidExponent(InputError):
    code = "invalid-exponent"


class InvalidIndex(InputError):
    code = "invalid-index"


class NeedsMoreTerms(DivstrataError):
    """A truncated parametrization is too short to certify an order."""

    code = "needs-more-terms"

    def __init__(self, message, required_order=None):
        super().__init__(message)
        self.required_order = required_order


class ValidationFailed(DivstrataError):
    """Raised when an operation needs a divide that passes validation."""

    code = "must-validate-first"

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InconsistentDivide(ValidationFailed):
    code = "inconsistent-divide"


class NotApplicable(DivstrataError):
    code = "not-applicable"


class BudgetExceeded(DivstrataError):
    code = "budget-exceeded"


class EnumerationTooLarge(BudgetExceeded):
    code = "enumeration-too-large"
