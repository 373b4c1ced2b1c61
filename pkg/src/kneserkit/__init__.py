"""Exact tools for unions of intersecting families and list colourings of
Kneser graphs: bounds in exact arithmetic, the improved construction, a
set-cover builder, and brute-force oracles at small sizes."""

from .bounds import (
    ChoiceParams,
    CoverSpec,
    InequalityReport,
    choice_exponent_check,
    choice_prob_ratio,
    expected_centers,
    kn_lower_bound,
    kn_step,
    mainlemma_check,
    prop21_check,
    star_union_bound,
)
from .construction import (
    build_families,
    build_ground,
    exceptional_set,
    star_uncovered_count,
    uncovered_count_formula,
    verify_construction,
)
from .core import (
    CapacityError,
    DomainError,
    GraphOnN,
    KSubset,
    binomial,
    count_independent_ksets,
    covering_number,
    enumerate_ksubsets,
)
from .families import (
    SetFamily,
    hilton_milner_family,
    hm_bound,
    is_intersecting,
    star,
    trivial_center,
    union_size,
)
from .search import (
    KneserGraph,
    ListAssignment,
    list_coloring_feasible,
    max_union_intersecting,
    monte_carlo_choice,
    verify_star_optimality,
)
from .setcover import SetCoverInstance, build_set_cover, verify_set_cover

__version__ = "0.1.0"
