"""Exception types shared across the package."""


class InsightdError(Exception):
    """Base class for all package-specific errors."""


# --- table ingestion ---

class MalformedInput(InsightdError):
    """Input bytes could not be parsed as a table."""


class EmptyTable(InsightdError):
    """Table has a header but zero data rows."""


class DuplicateHeader(InsightdError):
    """Two columns share the same name."""


class KindMismatch(InsightdError):
    """A field (or result) of the wrong kind was passed to an operation."""


# --- analytics ---

class TooFewValues(InsightdError):
    """Not enough data points for the requested computation."""


class ZeroVariance(InsightdError):
    """A coordinate is constant; correlation/regression is undefined."""


class LengthMismatch(InsightdError):
    """Paired columns have different lengths."""


class SingularSystem(InsightdError):
    """Least-squares system is rank deficient."""


# --- charts ---

class UnrenderableCardinality(InsightdError):
    """Too many distinct categories for the chart type."""


class InvalidChart(InsightdError):
    """A chart spec failed validation."""


# --- feed ---

class DuplicateId(InsightdError):
    """An insight with this id is already in the feed."""
