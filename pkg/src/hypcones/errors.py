"""Exception types shared across the package.

The CLI maps these onto exit codes: input and usage problems (the ValueError
family below) exit with 2, numerical failures with 3.  A property that is
merely false (a point outside a cone, a failed verification) is not an
exception; those surface as return values and exit code 1.
"""


class DimensionMismatchError(ValueError):
    """Vector, basis, or polynomial dimensions do not agree."""


class ModeMismatchError(ValueError):
    """Exact-rational and float objects were mixed in one operation."""


class HomogeneityError(ValueError):
    """Polynomial terms are not homogeneous of the declared degree."""


class ZeroPolynomialError(ValueError):
    """An operation that needs a nonzero polynomial got an identically zero one."""


class NotHyperbolicError(ValueError):
    """Hyperbolicity validation failed.

    ``witness`` holds a point x for which t -> p(te - x) is not real rooted,
    or None when the rejection is structural (for example p(e) <= 0).
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotCertifiedError(ValueError):
    """A root-extraction or face operation was called without the required certificate."""


class NumericalInconsistencyError(RuntimeError):
    """Computed values contradict a structural guarantee (a tolerance problem, not math)."""


class ConvergenceError(RuntimeError):
    """An iterative routine hit its cap or a verdict stayed inconclusive."""
