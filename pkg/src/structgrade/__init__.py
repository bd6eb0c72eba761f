"""Exact counting and classification of good gradings of structural matrix rings.

The pipeline: a preordered digraph yields a transitivity matrix over its
non-loop arrows; the Smith normal form of that system counts homomorphisms
into any finite abelian group in closed form and extracts grading sets;
brute-force enumeration validates the closed forms and supports arbitrary
finite groups; orbit counting under the digraph automorphism group
classifies gradings up to equivalence, with a cycle-structure formula for
full matrix rings.
"""

from .digraph import (
    Digraph,
    GraphFormatError,
    GraphTooLargeError,
    TransitiveTriple,
    VertexPermutation,
    antichain_graph,
    arrow_map,
    automorphisms,
    catalog,
    catalog_entries,
    chain_graph,
    closure,
    complete_graph,
    parse_digraph,
    transitive_triples,
    validate,
)
from .groups import (
    AbelianGroup,
    CayleyGroup,
    CayleyTableError,
    GroupSpecError,
    parse_cayley_file,
    parse_group_spec,
    validate_cayley,
)
from .homs import (
    BudgetExceededError,
    GradingReport,
    GradingSetVerdict,
    Homomorphism,
    act,
    enumerate_homs,
    fixed_hom_count,
    grading_report,
    hom_from_vertex_labels,
    is_elementary,
    orbit_count,
    verify_grading_set,
)
from .knformula import (
    CycleStructure,
    FormulaTerm,
    corollary_residue_check,
    count_nonequivalent_elementary,
    cycle_structures,
    expand_formula,
    evaluate_formula,
    fixed_count_kn,
    format_formula,
    p_alpha,
    qn_eval,
    representative_permutation,
)
from .transmat import (
    ArrowIndex,
    GradingSetSearch,
    IntegerMatrix,
    NotTransitiveError,
    SnfResult,
    count_homs_abelian,
    grading_set_mod_p,
    hom_count_from_invariants,
    hom_system,
    smith_normal_form,
    transitivity_matrix,
    try_grading_set,
)

__version__ = "0.1.0"
