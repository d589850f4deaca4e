"""Exception hierarchy shared by every module."""


class SpectralError(Exception):
    """Base class for all errors raised by nhresponse."""


class SingularMatrix(SpectralError):
    pass


class NoConvergence(SpectralError):
    pass


class BadIndexSet(SpectralError, ValueError):
    pass


class BadOrder(SpectralError, ValueError):
    pass


class DegenerateInput(SpectralError):
    pass


class ZeroMode(SpectralError):
    pass


class DivergentStrength(SpectralError):
    """A response-strength function whose denominator coefficient vanishes."""


class NotAnEigenvalue(SpectralError):
    pass


class OnResonance(SpectralError):
    """The energy sits on a pole of the Green's function."""


class ZeroElement(SpectralError):
    """The perturbation does not lift any leading sector at first order."""
