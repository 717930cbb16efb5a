"""insightd: a proactive insight engine for tabular data.

Upload or point it at a table; it enumerates every applicable analysis
(descriptive stats, frequency counts, correlation, clustering, regression),
runs them on a worker pool, and streams ranked findings with chart specs
to a live feed.
"""

from .analytics import BACKEND
from .feed import FeedQuery, FeedStore
from .insight import Insight, ModuleKind
from .scheduler import EngineConfig, run_dataset
from .tabular import Dataset, Field, FieldKind, parse_table

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Dataset",
    "EngineConfig",
    "FeedQuery",
    "FeedStore",
    "Field",
    "FieldKind",
    "Insight",
    "ModuleKind",
    "parse_table",
    "run_dataset",
    "__version__",
]
