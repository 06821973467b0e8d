"""Exception types shared across the package."""


class GammaPoleError(ValueError):
    """Gamma function evaluated at a pole (zero or a negative integer)."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of the function."""


class ParameterError(ValueError):
    """Hypergeometric lower parameter sits at a nonpositive integer."""


class ConvergenceError(RuntimeError):
    """A hypergeometric series did not converge within ``max_terms``."""


class UnsupportedDimensionError(ValueError):
    """Bosonic coefficient requested at an integer conformal dimension < 3,
    where the factorial form is undefined."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature exceeded its maximum recursion depth."""


class FrozenDynamicsError(RuntimeError):
    """The averaged generator norm vanished while the initial and target
    states still differ; the bound denominator is inconsistent."""
