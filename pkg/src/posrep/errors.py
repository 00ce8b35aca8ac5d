"""Exception hierarchy shared by every posrep module."""


class PosrepError(Exception):
    """Base class for all library errors."""


class PrecisionExhausted(PosrepError, ArithmeticError):
    """A decision depends on series terms beyond the truncation order."""


class TowerExtensionRequired(PosrepError, ArithmeticError):
    """A square root is not expressible in the square-root tower.

    ``radicand`` holds a printable form of the element whose root is needed.
    """

    def __init__(self, radicand, message=None):
        self.radicand = radicand
        super().__init__(message or f"square root of {radicand} needs a tower extension")


class RamificationCapExceeded(PosrepError, ArithmeticError):
    pass


class NegativeInput(PosrepError, ValueError):
    pass


class ZeroInput(PosrepError, ValueError):
    pass


class NotBig(PosrepError, ValueError):
    pass


class NotNested(PosrepError, ValueError):
    pass


class DegenerateInput(PosrepError, ValueError):
    pass


class OrbitCollision(PosrepError):
    """Two points of a finite orbit segment coincide."""


class NotTransverse(PosrepError, ValueError):
    pass


class NotFactorable(PosrepError, ArithmeticError):
    pass


class NotWeaklyProximal(PosrepError, ValueError):
    pass


class ComplexEigenvalues(PosrepError, ValueError):
    pass


class LinkageFailed(PosrepError, ValueError):
    pass


class BadConfiguration(PosrepError, ValueError):
    pass


class RelatorViolation(PosrepError, ValueError):
    pass
