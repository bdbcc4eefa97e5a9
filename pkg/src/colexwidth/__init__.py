"""Co-lexicographic state orders on DFAs, width computation, and convex minimization."""

from .automaton import (
    Alphabet,
    ColexWidthError,
    Dfa,
    EmptyLanguageError,
    InputError,
    InvariantViolationError,
    NotTrimError,
    StatePartition,
    accepts,
    colex_compare,
    colex_key,
    enumerate_prefixes,
    language_equivalent,
    minimize,
    nerode_classes,
    trim,
    validate_trim,
)
from .colex import (
    Antichain,
    ChainPartition,
    ColexRelation,
    StateOrder,
    WidthResult,
    existential_leq,
    hasse_cover_edges,
    is_chain_partition,
    state_order,
    width_dfa,
)
from .convexmn import (
    ChainAssignment,
    StateEquivalence,
    cs_split,
    cv_split,
    is_p_sortable,
    minimize_p_sortable,
    r_split,
)
from .langwidth import (
    GAMMA_BELOW_MUS,
    MUS_BELOW_GAMMA,
    BoundOverflowError,
    DpBounds,
    LangWidthResult,
    WitnessCertificate,
    bound_n,
    entangled_tuple,
    extremal_cycles,
    extremal_paths,
    verify_certificate,
    width_at_least,
    width_lang,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
