"""Certified lower bounds for relative and maximal projection constants.

Pi(n, d) is the maximum of pi_n(sqrt(D) A sqrt(D)) over sign matrices A of
order d and weight vectors D on the simplex. The package evaluates and
optimizes that objective, organizes the search over sign matrices by
two-graph switching classes, and writes recomputable certificates.
"""

__version__ = "0.1.0"

from .bounds import Cubic, bohnenblust_upper, cubic_root_upper, kadets_snobar, kll_upper, lift_upper, pair_sum_cubic
from .families import (
    a6,
    canonical_form,
    enumerate_two_graphs,
    kronecker_double,
    omega_members,
    polygon_matrix,
    signature_42_representatives,
)
from .search import Certificate, OptimizerConfig, best_constant, maximize_weights, sign_flip_local_search
from .spectra import eigenvalues, objective_gradient, partial_sum, signature, weighted_objective
from .twograph import (
    TwoGraph,
    blow_up,
    blow_up_profile,
    complement,
    is_clique_free,
    orbit_decomposition,
    stabilizer,
    switch,
    two_graph_of,
)

__all__ = [
    "__version__",
    "Certificate",
    "Cubic",
    "OptimizerConfig",
    "TwoGraph",
    "a6",
    "best_constant",
    "blow_up",
    "blow_up_profile",
    "bohnenblust_upper",
    "canonical_form",
    "complement",
    "cubic_root_upper",
    "eigenvalues",
    "enumerate_two_graphs",
    "is_clique_free",
    "kadets_snobar",
    "kll_upper",
    "kronecker_double",
    "lift_upper",
    "maximize_weights",
    "objective_gradient",
    "omega_members",
    "orbit_decomposition",
    "pair_sum_cubic",
    "partial_sum",
    "polygon_matrix",
    "sign_flip_local_search",
    "signature",
    "signature_42_representatives",
    "stabilizer",
    "switch",
    "two_graph_of",
    "weighted_objective",
]
