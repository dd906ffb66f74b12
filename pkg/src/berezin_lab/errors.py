"""Exception hierarchy shared by all modules."""


class BerezinError(Exception):
    """Base class for every error raised by berezin_lab."""


class ParamOutOfRange(BerezinError, ValueError):
    """A scalar parameter is outside its admissible range."""


class NonHermitianInput(BerezinError, ValueError):
    """A matrix expected to be Hermitian is not, beyond tolerance."""


class NotPSD(BerezinError, ValueError):
    """A matrix expected to be positive semidefinite has a negative eigenvalue."""


class NoConvergence(BerezinError, ArithmeticError):
    """An iterative method exhausted its iteration budget."""


class DomainMismatch(BerezinError, ValueError):
    """A parameter point does not belong to the space it is used with."""


class OutOfDomain(BerezinError, ValueError):
    """A disc parameter has modulus >= 1."""


class LengthMismatch(BerezinError, ValueError):
    """Coefficient vectors have incompatible lengths."""


class UnsupportedModel(BerezinError, TypeError):
    """The operator model cannot provide the requested quantity."""


class GenerationFailure(BerezinError, RuntimeError):
    """A random instance satisfying the claim hypotheses could not be built."""


class ConfigError(BerezinError, ValueError):
    """A run configuration failed validation."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
