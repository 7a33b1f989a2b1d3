"""Exceptions raised by hilbert_lab.

Command modules catch ``HilbertLabError`` at the boundary and turn it into ``fail_json``;
``InputError`` and its subclasses map to exit code 2.
"""


class HilbertLabError(Exception):
    """Base class of every error raised by the library."""


class InputError(HilbertLabError, ValueError):
    """Arguments outside the documented range."""


class DomainError(InputError):
    """A point is not strictly interior, or a domain cannot be built."""


class NonConvexDomainError(DomainError):
    def __init__(self, msg, phi=None):
        super(NonConvexDomainError, self).__init__(msg)
        self.phi = phi


class ConfigError(InputError):
    def __init__(self, errors):
        self.errors = list(errors)
        lines = ["line {0}: {1}".format(lineno, msg) for lineno, msg in self.errors]
        super(ConfigError, self).__init__("; ".join(lines) or "invalid config")


class UnknownCheckError(InputError):
    pass


class SolverError(HilbertLabError):
    def __init__(self, msg, bracket=None):
        if bracket is not None:
            msg = "{0} (bracket {1!r})".format(msg, tuple(bracket))
        super(SolverError, self).__init__(msg)
        self.bracket = bracket


class ConditioningError(HilbertLabError):
    """Near-boundary or near-tangent evaluation refused."""


class HorizonError(HilbertLabError):
    """Projective denominator vanishes on the requested point or domain."""


class NormalizationError(HilbertLabError):
    pass


class FitError(HilbertLabError):
    pass
