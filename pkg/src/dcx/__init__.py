"""Discrete convexity classes on the integer lattice.

Recognizers, polyhedral descriptions, generators and relation suites for
separable, integrally convex, L / L-natural / L2 / L2-natural, M / M-natural /
M2 / M2-natural, multimodular, and (globally, directed) discrete midpoint
convex sets and functions.  All arithmetic is exact.
"""

from .catalog import CatalogEntry, catalog, paper_example
from .classifiers import (
    CLASSES,
    NO,
    UNKNOWN,
    YES,
    YES_WINDOW,
    InconsistencyError,
    Verdict,
    is_directed_dmc,
    is_global_dmc,
    is_integrally_convex,
    is_l,
    is_lnat,
    is_m,
    is_mnat,
    is_multimodular,
    is_separable,
    is_submodular,
    is_translation_submodular,
)
from .composite import Certificate, ClassReport, classify_all, refute_or_search_composite, verify_certificate
from .descriptions import (
    IntervalBounds,
    IntervalRank,
    LnatDescription,
    RankFunction,
    build_lnat_set,
    build_multimodular_set,
    extract_interval_bounds,
    extract_interval_rank,
    extract_lnat_description,
    m_base_from_rho,
    polymatroid_from_rank,
    polymatroid_from_rho,
    rank_to_rho,
    rho_from_rank,
    validate_interval_rank,
)
from .generators import GenSpec, generate
from .geometry import HPolytope, cell_hull_equal, convex_hull, local_extension_value, lp_solve
from .lattice_core import (
    INF,
    Box,
    DiscreteFunction,
    DiscreteSet,
    argmin_set,
    box_ops,
    d_transform,
    directed_rounding,
    indicator,
    infimal_convolution,
    intersect,
    join_meet,
    midpoint_roundings,
    minkowski_sum,
    mnat_to_m_lift,
    pointwise_sum,
    supports,
    tilt,
)
from .rules import check_pair, recheck

__version__ = "0.1.0"
