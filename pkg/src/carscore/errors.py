"""Exception hierarchy.

Three branches matter to callers (and to the CLI exit codes): configuration
problems, data problems, and numerical failures.
"""


class CarScoreError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(CarScoreError):
    """A request that can never succeed: bad parameters, unavailable method."""


class DataError(CarScoreError):
    """The supplied data is unusable for the requested computation."""


class NumericalError(CarScoreError):
    """The computation is well-posed but fails numerically on this input."""


# --- configuration -----------------------------------------------------------

class InvalidCriterion(ConfigError):
    pass


class InvalidAlpha(ConfigError):
    pass


class InvalidParameters(ConfigError):
    pass


class InvalidConfig(ConfigError):
    pass


class LambdaOutOfRange(ConfigError):
    pass


class FoldTooSmall(ConfigError):
    pass


class EmptyGroup(ConfigError):
    pass


class MethodUnavailable(ConfigError):
    pass


class NullUnavailable(ConfigError):
    """Exact null distributions exist only for empirical (lambda == 0) estimates."""


class OutOfSupport(ConfigError):
    pass


# --- data --------------------------------------------------------------------

class DegenerateData(DataError):
    pass


class DimensionMismatch(DataError):
    pass


class EmptyInput(DataError):
    pass


class IndexOutOfRange(DataError):
    pass


class DegenerateFold(DataError):
    pass


# --- numerics ----------------------------------------------------------------

class NotPositiveDefinite(NumericalError):
    pass


class RankDeficient(NumericalError):
    pass


class PerfectFit(NumericalError):
    pass


class TooManyVariables(NumericalError):
    pass
