"""Exception hierarchy for hypercsa.

The CLI maps these onto exit codes: usage errors (2), input parse or
validation errors (3), index file errors (4), internal invariant
failures (5).
"""


class HypercsaError(Exception):
    """Base class for all hypercsa errors."""


class EdgeListParseError(HypercsaError):
    """A line of an edge-list file could not be tokenized as integers."""

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class ValidationError(HypercsaError):
    """A hypergraph (or a structure derived from one) violates an invariant."""

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class UnknownLabelError(HypercsaError, LookupError):
    """A queried node label does not occur in the indexed hypergraph."""


class QueryUsageError(HypercsaError, ValueError):
    """A query is malformed (empty, or repeated labels where forbidden)."""


class IndexFormatError(HypercsaError):
    """Base class for errors while loading a serialized index."""


class BadMagicError(IndexFormatError):
    """The input does not start with the index file magic."""


class UnsupportedVersionError(IndexFormatError):
    """The index file declares a format version this build cannot read."""


class TruncatedIndexError(IndexFormatError):
    """The index file ends before all declared sections are present."""


class ChecksumMismatchError(IndexFormatError):
    """The index file checksum does not match its payload."""


class InternalInvariantError(HypercsaError, RuntimeError):
    """A should-be-impossible state was reached; indicates a bug."""
