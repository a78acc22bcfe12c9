class TripotentError(Exception):
    """Base exception for the tripotent package."""

    pass


# Shared error messages
SHAPE_MISMATCH = "Matrices differ in modulus or dimension"
NOT_SQUARE = "Matrix rows must all have length equal to the dimension"
UNSUPPORTED_FAMILY = "modulus must be of the form 2^k * 3^l * 5^m"


class UnsupportedModulus(TripotentError, ValueError):
    """Raised when a modulus has a prime factor other than 2, 3 or 5."""

    def __init__(self, modulus: int, prime: int | None = None, message: str = ""):
        self.modulus = modulus
        self.prime = prime
        detail = message or UNSUPPORTED_FAMILY
        if prime is not None:
            detail = f"{detail}; offending prime {prime}"
        super().__init__(f"Unsupported modulus {modulus}: {detail}")


class ComponentMismatch(TripotentError, ValueError):
    """CRT components do not match the factorization of the modulus."""

    pass


class ShapeMismatch(TripotentError, ValueError):
    """Operands disagree in modulus or dimension."""

    pass


class EmptyInput(TripotentError, ValueError):
    """An operation that needs at least one item received none."""

    pass


class NotAUnit(TripotentError, ValueError):
    """A residue or matrix that must be invertible is not."""

    pass


class DivisionByZeroPoly(TripotentError, ZeroDivisionError):
    """Polynomial division by the zero polynomial."""

    pass


class NotApproxIdempotent(TripotentError, ValueError):
    """Lifting input is not idempotent modulo 2."""

    pass


class NotApproxTripotent(TripotentError, ValueError):
    """Lifting input is not tripotent modulo p."""

    pass


class NotUpperTriangular(TripotentError, ValueError):
    """Input to the triangular decomposition has entries below the diagonal."""

    pass


class BudgetExceeded(TripotentError):
    """The oracle search space exceeds the configured budget."""

    def __init__(self, candidates: int, budget: int):
        self.candidates = candidates
        self.budget = budget
        super().__init__(
            f"Search space of {candidates} candidates exceeds budget {budget}"
        )


class MalformedInput(TripotentError, ValueError):
    """Matrix input could not be parsed."""

    pass


class CertificateError(TripotentError, ValueError):
    """A certificate file is missing, unreadable or inconsistent."""

    pass


class InvariantViolation(TripotentError):
    """An internal postcondition failed. Always a bug."""

    pass


class JacobianNotUnit(InvariantViolation):
    """The Newton Jacobian 3T^2 - I was not invertible."""

    pass


class VerificationFailed(InvariantViolation):
    """A produced decomposition did not verify."""

    pass


__all__ = [
    "TripotentError",
    "UnsupportedModulus",
    "ComponentMismatch",
    "ShapeMismatch",
    "EmptyInput",
    "NotAUnit",
    "DivisionByZeroPoly",
    "NotApproxIdempotent",
    "NotApproxTripotent",
    "NotUpperTriangular",
    "BudgetExceeded",
    "MalformedInput",
    "CertificateError",
    "InvariantViolation",
    "JacobianNotUnit",
    "VerificationFailed",
    "SHAPE_MISMATCH",
    "NOT_SQUARE",
    "UNSUPPORTED_FAMILY",
]
