"""Normalised pattern matching: exact L2 and Hamming distance profiles under
shift, shift-scale and polynomial transformations of an integer pattern."""

from .core import (
    DEFAULT_LENGTH_BOUND,
    DEFAULT_VALUE_BOUND,
    WILDCARD,
    DistanceProfile,
    InputError,
    Sequence,
    as_sequence,
    build_masks,
    parse_sequence,
    rational_reduce,
    render_sequence,
)
from .correlation import ExactnessError, chunked_correlate, cross_correlate, direct_correlate
from .generators import (
    GeomBaseInstance,
    ThreeSumInstance,
    geombase_brute,
    geombase_to_ssham,
    notconv_adversary,
    threesum_brute,
    threesum_to_sham,
)
from .hamming import (
    Run,
    difference_string,
    kmismatch_locations,
    run_length_decompose,
    sham_profile,
    shift_array,
    skmismatch_profile,
)
from .l2 import (
    CorrelationSix,
    correlation_six,
    exact_shift_match,
    exact_shift_scale_match,
    function_match_fallback,
    poly_l2_profile,
    shift_l2_profile,
    shift_scale_l2_profile,
)
from .oracles import brute_poly_l2, brute_sham, brute_shift_l2, brute_shift_scale_l2, brute_ssham
from .randomised import CyclicPermutation, k_tight_check, permuted_views, single_round, skdecision

__version__ = "0.1.0"
