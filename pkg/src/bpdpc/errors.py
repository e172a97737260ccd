"""Exception hierarchy shared by every module."""


class BPError(Exception):
    """Base class for all package errors."""


class DomainError(BPError, ValueError):
    """An argument lies outside the operation's domain (bad vertex, index, ...)."""


class PreconditionError(DomainError):
    """The request is well formed but lies outside the proven bounds."""


class ConstructionError(BPError, RuntimeError):
    """A construction step failed where existence was guaranteed.

    Raised only when the implementation contradicts a proven statement, so the
    CLI maps it to its own exit code.
    """


class SearchBudgetExceeded(BPError, RuntimeError):
    """Exhaustive search hit its node budget before deciding the instance."""


class TableError(BPError):
    """Problem reading a persisted 2-DPC table."""


class CorruptTableError(TableError):
    pass


class TableVersionError(TableError):
    pass


class NoPathFound(ConstructionError):
    """A search leaf proved that the requested object does not exist.

    Constructions catch this to try their next candidate before giving up.
    """
