"""Exception hierarchy. Everything raised by the library derives from CritsliceError
so grid renderers can turn any per-pixel degeneracy into a Singular label."""


class CritsliceError(Exception):
    """Base class for all library errors."""


class DegenerateMap(CritsliceError):
    """gamma - alpha*beta vanishes: the map drops degree and is excluded."""


class PoleEvaluation(CritsliceError):
    """Derivative requested at (or too close to) the pole -gamma/beta."""


class BetaZero(CritsliceError):
    """beta = 0 with no free critical points left (monomial limit)."""


class NotACycle(CritsliceError):
    """Point list fails the approximate-cycle precondition."""


class SingularParameter(CritsliceError):
    """Slice coordinate hits an excluded value of its parametrization."""

    def __init__(self, value, reason=""):
        self.value = value
        self.reason = reason
        msg = f"singular slice parameter {value!r}"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)


class LambdaEqualsDegree(CritsliceError):
    """Fixed-point slice requested with multiplier equal to the degree d."""


class DegenerateT(CritsliceError):
    """Two-cycle slice coordinate t in {0, 1}: the cycle collapses."""


class NoSolution(CritsliceError):
    """The quadratic defining the two-cycle slice degenerates completely."""


class PoleAtMinusI(CritsliceError):
    """Cayley view transform evaluated at its pole s = -i."""


class ConfigError(CritsliceError):
    """Malformed run configuration (unknown key, bad value, conflict)."""
