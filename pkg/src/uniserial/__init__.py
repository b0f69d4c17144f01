"""Exact computations on finite permutation groups: chief series, maximal
subgroup zeta functions, generation probabilities, and the uniserial-group
constructions exercising them."""

from .perm import PermGroup, Permutation, compose, coset_action, direct_product
from .structure import (
    ChiefFactor,
    ChiefSeries,
    NormalSubgroupSet,
    chief_series,
    frattini,
    identify_chief_factor,
    is_uniserial,
    minimal_normal_subgroups,
    normal_subgroups,
    quotient,
    width_sequence,
)
from .maximal import (
    ZetaResult,
    classify_maximal_projection,
    complement_classes,
    maximal_avoiding,
    maximal_subgroups,
    subgroup_classes,
    verify_zeta_bound,
    zeta,
    zeta_by_classes,
)
from .genprob import (
    GenProbability,
    MonteCarloEstimate,
    gaschutz_check,
    p_conditional,
    p_exact_enum,
    p_exact_mobius,
    p_montecarlo,
    tower_product_bound,
)
from .alpha import SimpleGroupDescriptor, alpha, alpha_star, order_of_simple, out_metadata
from .constructions import (
    FpModule,
    Subspace,
    affine_group,
    all_submodules,
    acts_faithfully_on_top,
    build_affine_equality_group,
    build_wreath_quasisimple,
    is_uniserial_module,
    module_composition_series,
    permutation_module,
    spin,
    wreath_product,
)
from .intervals import RatInterval

__version__ = "0.1.0"
