"""Galois scaffolds and Galois module structure for degree p^2 extensions of F_p((t))."""

from .errors import (
    DecompositionStall,
    DegenerateData,
    GalScaffoldError,
    HypothesisViolated,
    NotFullyRamified,
    PrecisionExhausted,
)
from .extension import ExtensionData, ExtensionKind, build_extension
from .galois_module import associated_order_basis, dw_tables, freeness_by_r, freeness_by_w
from .group_algebra import GroupAlgebraElement, Scaffold, build_scaffold
from .scaffold_verify import verify_valuation_law
from .series import LaurentSeries

__all__ = [
    "DecompositionStall", "DegenerateData", "GalScaffoldError", "HypothesisViolated",
    "NotFullyRamified", "PrecisionExhausted", "ExtensionData", "ExtensionKind",
    "build_extension", "associated_order_basis", "dw_tables", "freeness_by_r",
    "freeness_by_w", "GroupAlgebraElement", "Scaffold", "build_scaffold",
    "verify_valuation_law", "LaurentSeries",
]
