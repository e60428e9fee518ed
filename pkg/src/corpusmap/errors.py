"""Error hierarchy shared across the pipeline.

Exit-code mapping (see cli): usage error -> 1, InputError -> 2,
ConfigError -> 3.
"""


class CorpusMapError(Exception):
    """Base class for all pipeline errors."""


class InputError(CorpusMapError):
    """A source file is missing, unreadable, or malformed."""


class ValidationError(CorpusMapError):
    """Input parsed but violates a documented invariant."""


class ConfigError(CorpusMapError):
    """Pipeline configuration is invalid."""


class InternalConsistencyError(CorpusMapError):
    """A cross-stage invariant broke; indicates a bug, not bad input."""
