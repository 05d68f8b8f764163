"""Exception hierarchy shared across the library."""


class WalshLabError(Exception):
    """Base class for all library errors."""


class DepthError(WalshLabError):
    """A dyadic depth is too small to evaluate, or too large to materialize."""


class BudgetError(WalshLabError):
    """A term/pair/materialization budget was exceeded."""


class HorizonError(WalshLabError):
    """A basis index or frequency falls outside the block plan's horizon."""


class ScheduleError(WalshLabError):
    """A growth schedule violates its invariants."""


class ConfigError(WalshLabError):
    """An experiment or CLI configuration is invalid."""
