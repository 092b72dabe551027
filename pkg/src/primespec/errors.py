"""Exception hierarchy shared by all primespec modules."""


class PrimespecError(Exception):
    """Base class for every error raised by this package."""


class ContextMismatchError(PrimespecError):
    """Operands live in different variable contexts."""


class PolynomialSyntaxError(PrimespecError):
    """Input text violates the polynomial grammar."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownVariableError(PolynomialSyntaxError):
    """An identifier in the input is not declared in the context."""

    def __init__(self, name, position):
        super().__init__(f"unknown variable '{name}'", position)
        self.name = name


class BudgetExceededError(PrimespecError):
    """A computation hit its configured pair/size/time budget.

    Raised instead of returning a possibly-wrong partial answer.
    """


class HypothesisViolationError(PrimespecError):
    """The parameter-independence hypothesis fails: the ideal meets K[T].

    Carries a nonzero witness polynomial in the parameters alone.
    """

    def __init__(self, witness):
        super().__init__(f"ideal meets the parameter ring: witness {witness}")
        self.witness = witness


class ConfigError(PrimespecError):
    """Invalid experiment configuration or ideal-definition file."""
