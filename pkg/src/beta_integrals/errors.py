"""Typed failures shared by the numerical kernels.

Every kernel reports an undefined value (a gamma pole, a divergent series,
an integral that does not settle) through one of these exceptions instead of
returning NaN, so callers can tell "identity undefined here" apart from
"numerical failure".
"""


class BetaIntegralsError(Exception):
    """Base class for all package errors."""


class PoleError(BetaIntegralsError, ArithmeticError):
    """A gamma function or Pochhammer symbol was evaluated at a pole.

    Parameters
    ----------
    argument : complex
        The offending argument.
    context : str, optional
        Where the pole was met.
    """

    def __init__(self, argument, context=""):
        self.argument = complex(argument)
        self.context = context
        where = f" in {context}" if context else ""
        super().__init__(f"gamma pole at argument {self.argument!r}{where}")


class GammaOverflowError(BetaIntegralsError, OverflowError):
    """A gamma ratio falls outside the double-precision exponent range."""


class DivergenceError(BetaIntegralsError):
    """A hypergeometric series is outside its region of convergence."""


class NonConvergenceError(BetaIntegralsError):
    """A quadrature or summation did not reach the requested tolerance."""


class ContourCollisionError(BetaIntegralsError):
    """No vertical line separates the left and right pole series."""

    def __init__(self, left_pole, right_pole):
        self.left_pole = left_pole
        self.right_pole = right_pole
        super().__init__(
            f"left pole {left_pole!r} is not separated from right pole {right_pole!r}"
        )


class CoincidentPoleError(BetaIntegralsError):
    """Two poles on the same side differ by an integer (non-simple residues)."""


class DomainError(BetaIntegralsError, ValueError):
    """Parameters lie outside the domain where an identity is defined."""


class ConfigError(BetaIntegralsError, ValueError):
    """A run configuration could not be parsed."""
