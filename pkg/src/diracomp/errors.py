"""Exception hierarchy shared across the package."""


class DiracompError(Exception):
    """Base class for all errors raised by diracomp."""


class ConfigError(DiracompError):
    """Malformed problem or case description (bad family, params, geometry)."""


class UnsupportedPotentialError(DiracompError):
    """Potential falls outside the supported classes (e.g. does not vanish)."""


class SupercriticalCouplingError(DiracompError):
    """Singular coupling too strong for the angular sector: f0 >= |kappa|."""


class NoBoundStateError(DiracompError):
    """No eigenvalue with the requested node structure inside (-m, m)."""


class SolverError(DiracompError):
    """Shooting failed to converge or converged to the wrong state."""


class QuadratureError(DiracompError):
    """Adaptive integration failed; carries the best available estimate."""

    def __init__(self, message, value=None, error=None):
        super().__init__(message)
        self.value = value
        self.error = error
