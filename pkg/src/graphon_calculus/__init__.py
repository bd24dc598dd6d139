"""Exact finite-dimensional calculus on step graphons: homomorphism densities,
injective densities, class-function polynomials, Gateaux derivatives and cut norms."""
from .calculus import (DerivativeRequest, gateaux_exact, gateaux_fd, iterated_difference,
                       lambda_expansion, verify_vanishing)
from .classpoly import (EdgePolynomial, decompose_t, decompose_tinj, density_polynomial,
                        evaluate, independence_rank, is_class_function, symmetrize)
from .errors import GraphonError
from .harness import TheoremReport, l1_density_demo, verify_if, verify_only_if
from .homdensity import (T, T_INJ, DensityCoefficients, graphon_density_consistency, t,
                         t_inj, t_to_tinj, transform_matrix)
from .multigraph import (EMPTY, Multigraph, automorphism_count, canonicalize, collapse_simple,
                         enumerate_classes, enumerate_up_to, from_edges, loopless_quotients)
from .norms import cut_distance_perm, cut_norm_exact, l1_distance, simplify_identity_check
from .weighted_graph import (DirectionMatrix, WeightedMatrix, blow_up, check_admissible, make,
                             make_direction, permute, random_matrix, step_graphon_eval)

__all__ = [
    "DerivativeRequest",
    "gateaux_exact",
    "gateaux_fd",
    "iterated_difference",
    "lambda_expansion",
    "verify_vanishing",
    "EdgePolynomial",
    "decompose_t",
    "decompose_tinj",
    "density_polynomial",
    "evaluate",
    "independence_rank",
    "is_class_function",
    "symmetrize",
    "GraphonError",
    "TheoremReport",
    "l1_density_demo",
    "verify_if",
    "verify_only_if",
    "T",
    "T_INJ",
    "DensityCoefficients",
    "graphon_density_consistency",
    "t",
    "t_inj",
    "t_to_tinj",
    "transform_matrix",
    "EMPTY",
    "Multigraph",
    "automorphism_count",
    "canonicalize",
    "collapse_simple",
    "enumerate_classes",
    "enumerate_up_to",
    "from_edges",
    "loopless_quotients",
    "cut_distance_perm",
    "cut_norm_exact",
    "l1_distance",
    "simplify_identity_check",
    "DirectionMatrix",
    "WeightedMatrix",
    "blow_up",
    "check_admissible",
    "make",
    "make_direction",
    "permute",
    "random_matrix",
    "step_graphon_eval",
]

__version__ = "0.1.0"
