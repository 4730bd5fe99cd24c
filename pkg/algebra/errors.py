"""Exception hierarchy shared by the algebra, solver, CLI and API layers."""


class SolverError(Exception):
    """Base class for every error raised by the solver stack."""


class AlgebraError(SolverError):
    """Misuse of towers or elements (incompatible towers, unsupported inversion)."""


class ZeroDivisorError(AlgebraError):
    def __init__(self, message="zero divisor"):
        super().__init__(message)


class PreconditionError(SolverError):
    """An operation was called outside its contract."""


class ParseError(SolverError):
    def __init__(self, text, position, message):
        self.text = text
        self.position = position
        self.message = message
        super().__init__(f"{message} at position {position}")

    def pointer(self):
        return f"{self.text}\n{' ' * self.position}^"


class DegenerateEquationError(SolverError):
    def __init__(self, removed_factors):
        self.removed_factors = list(removed_factors)
        super().__init__(
            "degenerate equation: F is a product of factors in y alone or p alone "
            f"({', '.join(self.removed_factors)})"
        )


class VerificationError(SolverError):
    def __init__(self, failures):
        self.failures = list(failures)
        super().__init__(f"verification failed for {len(self.failures)} solution(s)")
