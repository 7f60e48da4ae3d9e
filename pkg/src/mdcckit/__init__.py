"""Three-qubit correlation measures, dense-coding advantage, and
complementarity-bound verification."""

from . import complementarity, densecoding, linalg, measures, states
from .complementarity import BoundReport, MdccPoint, MeasureRecord
from .densecoding import AdvantageResult, CapacityResult
from .measures import DiscordResult, MeasurementBasis

__version__ = "0.1.0"

__all__ = [
    "linalg",
    "states",
    "measures",
    "densecoding",
    "complementarity",
    "MeasureRecord",
    "BoundReport",
    "MdccPoint",
    "AdvantageResult",
    "CapacityResult",
    "DiscordResult",
    "MeasurementBasis",
    "__version__",
]
