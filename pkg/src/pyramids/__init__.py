"""Pyramids of pieces: enumeration, bijections, series and growth estimates."""

from ._validation import DEFAULT_BUDGET, BudgetExceeded
from .admissible import Factor, NoComposition, compose_admissible, factorize_walk
from .bijections import (
    AryTree,
    LatticePath,
    Walk,
    dyck_to_tree,
    pyramid_to_string_a2,
    right_pyramid_to_string,
    string_to_pyramid_a2,
    string_to_right_pyramid,
    tree_to_dyck,
)
from .enumeration import PyramidClass, count_pyramids, enumerate_pyramids
from .growth import GrowthFitter, fit_growth
from .heap import Heap, Piece, Pyramid, decompose, drop_piece, left_width, recompose, render_ascii
from .lego import (
    FlatStructure,
    GrowthEstimate,
    count_flat_exhaustive,
    growth_lower_bound,
    klarner_depth1_bound,
    mc_estimate,
    growth_report,
)
from .series import count_A, count_B, series_A_recursive, series_B_bivariate, series_B_from_A, series_C
from .transfer import build_matrices, char_poly, compute_a_r

__version__ = "0.1.0"
