from .errors import (
    BipartiteMapsError,
    CensusGuardError,
    ChartMismatchError,
    DivergentSubstitutionError,
    GradingError,
    InconsistentSystemError,
    NonUnitError,
    StructuralError,
    TruncationError,
    UnderdeterminedFitError,
)
from .map_engine import MapEngine
from .models import (
    BasisTerm,
    CensusTable,
    CheckResult,
    ClosedFormF,
    ClosedFormL,
    ClosedFormTerm,
    CommandConfig,
    FitReport,
    MarkedTotals,
    RootedTable,
)
from .series.series import Chart, Series

__all__ = [
    "BasisTerm",
    "BipartiteMapsError",
    "CensusGuardError",
    "CensusTable",
    "Chart",
    "ChartMismatchError",
    "CheckResult",
    "ClosedFormF",
    "ClosedFormL",
    "ClosedFormTerm",
    "CommandConfig",
    "DivergentSubstitutionError",
    "FitReport",
    "GradingError",
    "InconsistentSystemError",
    "MapEngine",
    "MarkedTotals",
    "NonUnitError",
    "RootedTable",
    "Series",
    "StructuralError",
    "TruncationError",
    "UnderdeterminedFitError",
]
