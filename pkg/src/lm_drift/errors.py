"""
Error hierarchy - every failure the toolkit reports maps to one exit code
"""

from typing import Iterable, Optional, Sequence


EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_SERVICE = 3


class LmDriftError(Exception):
    """Base class for all errors raised by lm_drift."""

    exit_code = EXIT_DATA


# ---------- usage ----------

class UsageError(LmDriftError):
    exit_code = EXIT_USAGE


class ConfigError(UsageError):
    """Bad or unknown configuration key, unresolvable path."""


class UnknownVenueError(UsageError):
    def __init__(self, venue: str, known: Iterable[str]):
        self.venue = venue
        self.known = tuple(known)
        super().__init__(f"unknown venue {venue!r} (known: {', '.join(self.known)})")


# ---------- data ----------

class DataError(LmDriftError):
    exit_code = EXIT_DATA


class RecordFormatError(DataError):
    """Bad line in a line-delimited record file."""

    def __init__(self, path: str, line_number: int, reason: str):
        self.path = path
        self.line_number = line_number
        super().__init__(f"{path}: line {line_number}: {reason}")


class CorpusFormatError(RecordFormatError):
    pass


class DuplicatePaperError(DataError):
    def __init__(self, paper_id: str):
        self.paper_id = paper_id
        super().__init__(f"duplicate paper_id {paper_id!r}")


class LexiconError(DataError):
    """Lexicon invariant violation."""


class LexiconFormatError(LexiconError):
    def __init__(self, location: str, reason: str):
        self.location = location
        super().__init__(f"{location}: {reason}")


class DuplicateAliasError(LexiconError):
    def __init__(self, alias: str, first: str, second: str):
        self.alias = alias
        self.entries = (first, second)
        super().__init__(f"alias {alias!r} is claimed by both {first!r} and {second!r}")


class DependencyError(LexiconError):
    def __init__(self, chain: Sequence[str], reason: str):
        self.chain = tuple(chain)
        super().__init__(f"{reason}: {' -> '.join(self.chain)}")


class ContainmentError(LexiconError):
    def __init__(self, candidate: str, entry_id: str):
        self.candidate = candidate
        self.entry_id = entry_id
        super().__init__(
            f"variation {candidate!r} contains no alias of {entry_id!r}"
        )


class UnknownEntryError(LexiconError):
    def __init__(self, entry_id: str):
        self.entry_id = entry_id
        super().__init__(f"unknown lexicon entry {entry_id!r}")


class TermSetError(LexiconError):
    """Invalid generic LM term set."""


class StatsError(DataError):
    """Degenerate input to a statistic (empty sample, zero total, ...)."""

    def __init__(self, message: str, scope: Optional[str] = None):
        self.scope = scope
        super().__init__(f"{scope}: {message}" if scope else message)


class SchemaError(DataError):
    def __init__(self, kind: str, field: str, reason: str = "missing or invalid"):
        self.kind = kind
        self.field = field
        super().__init__(f"{kind} chart data: field {field!r} {reason}")


class OutputExistsError(UsageError):
    def __init__(self, path: str):
        self.path = path
        super().__init__(f"output directory {path} is not empty (use --force to overwrite)")


# ---------- external services ----------

class ServiceError(LmDriftError):
    exit_code = EXIT_SERVICE


class MetadataFetchError(ServiceError):
    """Network failure while fetching a proceedings volume; safe to retry."""

    retryable = True

    def __init__(self, venue: str, year: int, reason: str):
        self.venue = venue
        self.year = year
        super().__init__(f"fetching {venue} {year} failed: {reason}")


class VolumeNotFoundError(ServiceError):
    retryable = False

    def __init__(self, venue: str, year: int):
        self.venue = venue
        self.year = year
        super().__init__(f"no proceedings volume for {venue} {year}")


class MissingCredentialError(ServiceError):
    def __init__(self, env_var: str):
        self.env_var = env_var
        super().__init__(f"API credential not set: export {env_var}")


class ExtractionServiceError(ServiceError):
    def __init__(self, paper_id: str, reason: str):
        self.paper_id = paper_id
        super().__init__(f"extraction request for {paper_id} failed: {reason}")


class OutputWriteError(UsageError):
    def __init__(self, path: str, reason: str):
        self.path = path
        super().__init__(f"cannot write {path}: {reason}")
