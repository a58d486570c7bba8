"""Subset-sum arithmetic in Z_n and exhaustive completeness audits."""

from .bounds import (
    chowla_bound,
    conjecture_params,
    lamb_bound_holds,
    main_threshold,
    mainlemma_bound_holds,
    olson_threshold,
)
from .sums import (
    ClosurePair,
    escape_count,
    escape_profile,
    is_complete,
    k_fold_layers,
    k_fold_sums,
    subset_sums,
    sumset,
)
from .zn import ResidueSet, ZnSet, negate, shift, subgroup_generated, units

__version__ = "0.1.0"

__all__ = [
    "ClosurePair",
    "ResidueSet",
    "ZnSet",
    "chowla_bound",
    "conjecture_params",
    "escape_count",
    "escape_profile",
    "is_complete",
    "k_fold_layers",
    "k_fold_sums",
    "lamb_bound_holds",
    "main_threshold",
    "mainlemma_bound_holds",
    "negate",
    "olson_threshold",
    "shift",
    "subgroup_generated",
    "subset_sums",
    "sumset",
    "units",
]
