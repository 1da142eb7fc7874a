"""braidax: braid words, exchange-move families, axis-addition links, and
truncated Conway polynomial coefficients in exact integer arithmetic."""

from .words import (
    Admissibility,
    BraidWord,
    CriterionVerdict,
    CycleDecomposition,
    ExchangeForm,
    Permutation,
    WordError,
    admits_exchange,
    canonical_joint_cycle_braid,
    canonical_odd_knot_braid,
    canonical_split_cycle_braid,
    compose,
    cycle_decomposition,
    cyclic_free_reduce,
    cyclic_rotate,
    exchange_split,
    exponent_sum,
    family_member,
    free_reduce,
    full_twist_word,
    inverse,
    kappa_word,
    mirror,
    nonconjugacy_criterion,
    parse_word,
    permutation_of,
    reverse_word,
    square,
    stabilize,
    strand_linking,
    word_str,
)
from .diagram import (
    ComponentInfo,
    ComponentLabeling,
    DiagramError,
    LinkDiagram,
    LinkingMatrix,
    axis_link_diagram,
    closure_diagram,
    component_count,
    delete_component,
    from_pd_json,
    is_split,
    linking_matrix,
    mirror_diagram,
    simplify,
    smooth_crossing,
    switch_crossing,
    to_pd_json,
    trace_components,
)
from .conway import (
    ConwayError,
    SkeinEngine,
    TruncatedPoly,
    a_coefficient,
    conway_truncated,
    full_conway,
    hoste_lowest,
    spanning_tree_sum_enumerate,
    spanning_tree_sum_matrix_tree,
)
from .burau import (
    LaurentPoly,
    alexander_burau,
    conway_matches_alexander,
    conway_to_laurent,
    equal_up_to_units,
)
from .experiments import (
    CoefficientSequence,
    EXPERIMENTS,
    ExperimentError,
    ExperimentReport,
    FitError,
    PolynomialFit,
    axis_sequence,
    corpus_check,
    fit_polynomial,
    joint_cycle_check,
    load_corpus,
    progression_check,
    second_difference_target,
    squared_family_check,
    two_cycle_check,
)
from .kernels import get_kernels

__version__ = "0.1.0"
