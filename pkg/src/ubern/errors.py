"""Shared exception types."""


class PreconditionError(ValueError):
    """An operation was called outside its stated domain."""


class CeilingExceeded(PreconditionError):
    """Resource guard: requested weight exceeds the configured ceiling."""


class CacheError(RuntimeError):
    """A coefficient cache file failed its integrity check."""
