"""Error-resilient weakly constrained coding over binary first-order chains."""

from .array import (
    CompositionViolation,
    build_u_pi,
    extract_row,
    place_row,
    sigma_left,
    validate_array,
)
from .chain import (
    BadTotal,
    BinaryChain,
    BudgetExceeded,
    ChainError,
    NonStationary,
    NotPrimitive,
    compute_Z,
    load_chain,
    max_steps_check,
    steps_required,
    validate_chain,
)
from .codec import Codeword, DecodeReport, decode, encode, pattern_counts, read_container, stitch, split, write_container
from .composition import CompositionPair, rank_cc, rank_message, row_capacity, unrank_cc, unrank_message
from .planner import flow_profile, plan_transition, two_step

__version__ = "0.1.0"
