"""Frames of translates on an exact finite-window model of the Vilenkin group."""

__version__ = "0.1.0"

from .bracket import (
    BracketTable,
    SupportSets,
    c_bracket,
    minimal_filter,
    mixed_periodization,
    periodization,
    support_sets,
)
from .duals import (
    GeneratorFamily,
    DualVerdict,
    check_cross_condition,
    check_dilation_condition,
    check_multi_dual,
    check_pair_dual,
    dilate,
)
from .errors import (
    DegenerateGeneratorError,
    DimensionError,
    NonHermitianError,
    SchemaError,
    TruncationError,
    VilenkinError,
    WindowOverflowError,
)
from .frames import (
    CoefficientVector,
    FrameReport,
    analysis_operator,
    analyze,
    canonical_dual,
    filter_to_function,
    frame_operator_apply,
    membership,
    synthesis_operator,
    tight_generator,
)
from .group import DigitVector, ModelConfig, Side
from .walsh import Signal, SpectralSignal, character, forward, inverse, translate, walsh_function

__all__ = [
    "__version__",
    "BracketTable",
    "SupportSets",
    "c_bracket",
    "minimal_filter",
    "mixed_periodization",
    "periodization",
    "support_sets",
    "GeneratorFamily",
    "DualVerdict",
    "check_cross_condition",
    "check_dilation_condition",
    "check_multi_dual",
    "check_pair_dual",
    "dilate",
    "DegenerateGeneratorError",
    "DimensionError",
    "NonHermitianError",
    "SchemaError",
    "TruncationError",
    "VilenkinError",
    "WindowOverflowError",
    "CoefficientVector",
    "FrameReport",
    "analysis_operator",
    "analyze",
    "canonical_dual",
    "filter_to_function",
    "frame_operator_apply",
    "membership",
    "synthesis_operator",
    "tight_generator",
    "DigitVector",
    "ModelConfig",
    "Side",
    "Signal",
    "SpectralSignal",
    "character",
    "forward",
    "inverse",
    "translate",
    "walsh_function",
]
