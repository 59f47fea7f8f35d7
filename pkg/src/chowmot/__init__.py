"""chowmot: exact decomposition tables for blow-up compactifications.

The package computes, with arbitrary-precision integer arithmetic and
no rounding anywhere, the additive decomposition of iterated blow-ups
of subvariety arrangements; its configuration-space specialisation with
generating-function, rank and Poincare outputs; and the symmetric
quotient via weighted-forest counting.  Independent computation routes
are cross-checked wherever two exist.
"""

from .arrangements import (Arrangement, Decomposition, admissible_orders,
                           blowup_arrangement, chain_arrangement, decompose,
                           decompose_iterative, enumerate_g_nests, fm_arrangement,
                           load_arrangement, sample_admissible_orders, weight_ranges)
from .chern import ChernWitness, FormalPoly, elementary_symmetric, twisted_chern_identity
from .errors import CapExceededError, CrossCheckError, ExactnessError, ValidationError
from .fm import (CoefficientSession, DecompTable, RankProfile, chow_rank,
                 decomposition_table, f_direct, f_recursive, f_sigma_form,
                 functional_equation_residual, multiplicity, nk_sigma_form,
                 partition_multiplicity, poincare, projective_ranks,
                 rank_polynomial, solve_N)
from .forests import (ForestType, WeightedForest, enumerate_weighted_forests,
                      forest_of_nest, labelings_count, weighted_trees)
from .macdonald import BettiVector, PoincareSeries, poincare_series, symmetric_product_poincare
from .nests import (Nest, NestStats, enumerate_nests, enumerate_partitions,
                    enumerate_weight_vectors, nest_stats, nest_weight_poly)
from .polynomials import IntPoly, SigmaPoly, sigma, twist_range_poly
from .quotient import QuotientDecomp, lambda_count, quotient_decomposition, quotient_poincare
from .series import ExpSeries, egf_compose, egf_exp, egf_mul, extract

__version__ = "0.1.0"

__all__ = [
    "Arrangement", "BettiVector", "CapExceededError", "ChernWitness",
    "CoefficientSession", "CrossCheckError", "DecompTable", "Decomposition",
    "ExactnessError", "ExpSeries", "ForestType", "FormalPoly", "IntPoly",
    "Nest", "NestStats", "PoincareSeries", "QuotientDecomp", "RankProfile",
    "SigmaPoly", "ValidationError", "WeightedForest", "admissible_orders",
    "blowup_arrangement", "chain_arrangement", "chow_rank", "decompose",
    "decompose_iterative", "decomposition_table", "egf_compose", "egf_exp",
    "egf_mul", "elementary_symmetric", "enumerate_g_nests", "enumerate_nests",
    "enumerate_partitions", "enumerate_weight_vectors", "enumerate_weighted_forests",
    "extract", "f_direct", "f_recursive", "f_sigma_form", "fm_arrangement",
    "forest_of_nest", "functional_equation_residual", "labelings_count",
    "lambda_count", "load_arrangement", "multiplicity", "nest_stats",
    "nest_weight_poly", "nk_sigma_form", "partition_multiplicity", "poincare",
    "poincare_series", "projective_ranks", "quotient_decomposition",
    "quotient_poincare", "rank_polynomial", "sample_admissible_orders", "sigma",
    "solve_N", "symmetric_product_poincare", "twist_range_poly",
    "twisted_chern_identity", "weight_ranges", "weighted_trees",
]
