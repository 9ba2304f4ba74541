"""Random binary matrices whose row and column sums are prescribed constants."""

from .core import (
    BinaryMatrix,
    FeasibilityError,
    GcdDecomposition,
    MagicSpec,
    ValidationReport,
    complement,
    decompose,
    feasible_pairs,
    is_feasible,
    transpose,
    validate,
)
from .constructive import circulant, deterministic_rect, tile
from .generator import (
    BatchConfig,
    GenerationInvariantError,
    generate,
    generate_batch,
)
from .rng import RngStream, derive_seed

__version__ = "0.1.0"

__all__ = [
    "BatchConfig",
    "BinaryMatrix",
    "FeasibilityError",
    "GcdDecomposition",
    "GenerationInvariantError",
    "MagicSpec",
    "RngStream",
    "ValidationReport",
    "__version__",
    "circulant",
    "complement",
    "decompose",
    "derive_seed",
    "deterministic_rect",
    "feasible_pairs",
    "generate",
    "generate_batch",
    "is_feasible",
    "tile",
    "transpose",
    "validate",
]
