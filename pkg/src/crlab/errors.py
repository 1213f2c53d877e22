"""Exception hierarchy shared by every module."""


class CrlabError(Exception):
    """Base class for all library errors."""


class DegenerateTuple(CrlabError, ValueError):
    """Two entries of a tuple that must be pairwise distinct coincide."""


class SetTooSmall(CrlabError, ValueError):
    pass


class NotCongruent(CrlabError):
    """No Moebius map carries one tuple onto the other."""


class IdentityViolation(CrlabError, AssertionError):
    """An exact algebraic identity failed. Signals an implementation bug."""


class BudgetExceeded(CrlabError):
    def __init__(self, estimate, budget):
        super().__init__(f"estimated {estimate:.3g} elementary operations exceeds budget {budget:.3g}")
        self.estimate = estimate
        self.budget = budget


class OriginInSet(CrlabError, ValueError):
    pass


class LineThroughOrigin(CrlabError, ValueError):
    pass


class InvalidThreshold(CrlabError, ValueError):
    pass


class ConfigError(CrlabError, ValueError):
    """Bad configuration or input file. ``where`` carries a line/field hint."""

    def __init__(self, message, where=None):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where
