"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command-line front end:
2 for bad input, 3 for numerical trouble.
"""


class ScarfError(Exception):
    exit_code = 2


class InputError(ScarfError):
    exit_code = 2


class NumericalError(ScarfError):
    exit_code = 3


class ExactPole(NumericalError):
    """Gamma evaluated exactly at a non-positive integer."""


class BelowKMin(InputError):
    """Wavenumber magnitude below ``K_MIN``."""


KTooSmall = BelowKMin


class ExactSingularity(NumericalError):
    """A numerator Gamma argument of the transmission amplitude is exactly a pole."""

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class DomainError(InputError):
    pass


class TailTooLarge(InputError):
    pass


class IllConditioned(NumericalError):
    pass


class Inconclusive(NumericalError):
    def __init__(self, message, prop=None, violation=None):
        super().__init__(message)
        self.prop = prop
        self.violation = violation


class SingularGridPoint(NumericalError):
    pass
