"""Exact-arithmetic Coxeter-group analysis.

Root sequences and inversion sets over the real cyclotomic field
Q(2cos(pi/N)), dihedral-plane segment structures, deletion lengths,
reduced-expression correspondences, and element classification, all
cross-checked against brute-force oracles.
"""

from .analysis import (
    BraidMove,
    Budget,
    ClassificationReport,
    classify,
    commutation_classes,
    commutation_order,
    contracted_reduced_expression,
    contractible_long_sets,
    deletion_length,
    enumerate_reduced,
    find_braid_moves,
    is_freely_braided,
    is_fully_covering,
    is_short_braid_avoiding,
)
from .builtins import builtin_names, builtin_system
from .coxeter import (
    CoxeterSystem,
    GroupElement,
    act,
    evaluate_word,
    simple_reflection,
    system_from_json,
    validate_system,
)
from .dihedral import Line, canonical_endpoint_test, chebyshev_u, line_through, local_sequence
from .errors import (
    BudgetExceededError,
    CoxlabError,
    InternalInvariantError,
    InvalidInputError,
    NotReducedError,
)
from .exact import ExactScalar, RingSpec, build_ring, cos_entry
from .labelings import (
    Labeling,
    Tournament,
    decode,
    encode,
    enumerate_all,
    is_standard,
    labeling_from_tournament,
    satisfies_restrictions,
    tournament_from_labeling,
)
from .roots import (
    InversionOfElement,
    Root,
    RootCache,
    delete_generator,
    element_from_biconvex,
    inversion_set,
    length_and_reducedness,
    reflect,
    root_from_json,
    root_sequence,
    simple_root,
)
from .segment import (
    SegmentStructure,
    between,
    build_structure,
    distance,
    endpoint_report,
    theta_norm,
    to_dot,
)

__version__ = "0.1.0"
