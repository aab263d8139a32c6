"""Numerical laboratory for multilinear pseudodifferential operators on periodic grids."""

from .grid import INF, ExponentTriple, Field, GridSpec, MultiField, forward_ft, inverse_ft, lp_norm, make_grid, \
    mixed_norm
from .lp_decomp import LittlewoodPaleyFamily, build_family
from .maximal import iterated_maximal, maximal_fn
from .operators import apply_linear, apply_multilinear, compute_kernel, fit_kernel_decay
from .report import BoundReport
from .symbols import SymbolClass, SymbolModel, estimate_seminorms, oscillatory_symbol
from .verify import EXPERIMENTS, HypothesisError
from .weights import WeightField, ap_constant, power_weight

__version__ = "0.1.0"

__all__ = [
    "INF", "ExponentTriple", "Field", "GridSpec", "MultiField", "forward_ft", "inverse_ft", "lp_norm",
    "make_grid", "mixed_norm", "LittlewoodPaleyFamily", "build_family", "iterated_maximal", "maximal_fn",
    "apply_linear", "apply_multilinear", "compute_kernel", "fit_kernel_decay", "BoundReport", "SymbolClass",
    "SymbolModel", "estimate_seminorms", "oscillatory_symbol", "EXPERIMENTS", "HypothesisError", "WeightField",
    "ap_constant", "power_weight", "__version__",
]
