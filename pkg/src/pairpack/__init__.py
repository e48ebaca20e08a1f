"""Exact pair partitions, translate packings and sumset bounds.

The package works over Z/(n) and small vector spaces with arbitrary
precision integers throughout: sparse multivariate polynomials, grid
interpolation coefficients, bijection sums over rings of roots of unity,
and certified backtracking solvers, plus a CLI that ties them together.
"""

from .algebra import ZZ, CycloInt, ModRing, cyclotomic_poly
from .dyson import dyson_bruteforce, dyson_formula, dyson_via_evaluation
from .nullstellensatz import GridSpec, cn_coefficient, cn_witness
from .poly import AffineProduct, MultiPoly
from .solvers import (Infeasible, PackingInstance, PairPartition,
                      PartitionInstance, VectorPartitionInstance,
                      solve_pair_partition, solve_translate_packing,
                      solve_vector_partition, verify_solution)

__version__ = "0.1.0"

__all__ = [
    "ZZ", "CycloInt", "ModRing", "cyclotomic_poly",
    "dyson_bruteforce", "dyson_formula", "dyson_via_evaluation",
    "GridSpec", "cn_coefficient", "cn_witness",
    "AffineProduct", "MultiPoly",
    "Infeasible", "PackingInstance", "PairPartition", "PartitionInstance",
    "VectorPartitionInstance", "solve_pair_partition",
    "solve_translate_packing", "solve_vector_partition", "verify_solution",
    "__version__",
]
