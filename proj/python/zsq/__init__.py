"""Zero-sum invariants, extremal-sequence structure and block decompositions
over the rank-2 group C_n + C_n.

The heavy lifting lives in the compiled extension ``zsq._core``; the wrappers
here decode JSON report payloads into plain dictionaries.
"""

import json as _json

from ._core import (  # noqa: F401
    ArgumentError,
    ContextMismatchError,
    DomainError,
    Error,
    FeasibilityError,
    GroupCtx,
    InternalError,
    Limits,
    ParseError,
    Sequence,
    SubsequenceError,
    __version__,
    automorphism_count,
    canonicalize,
    compute_davenport,
    compute_s_le,
    construct_conjectured,
    enumerate_extremal,
    find_zero_sum_le,
    has_property_a,
    has_property_b,
    has_property_c,
    has_zero_sum_le,
    is_basis,
    is_canonical,
    is_good_term,
    sigma_le,
    stats,
    zero_sum_classify,
)
from . import _core as _c


def eta(n, limits=None):
    """eta(C_n + C_n): least L forcing a zero-sum of length at most n."""
    return compute_s_le(n, n, limits or Limits())


def match_conjecture(seq, k):
    return _json.loads(_c.match_conjecture_json(seq, k))


def verify_conjecture(n, k, limits=None):
    return _json.loads(_c.verify_conjecture_json(n, k, limits or Limits()))


def verify_multiplicative(m, n, k_m, k_n, limits=None):
    return _json.loads(_c.verify_multiplicative_json(m, n, k_m, k_n, limits or Limits()))


def verify_hamidoune(n, trials=10000, seed=0, limits=None):
    return _json.loads(_c.verify_hamidoune_json(n, trials, seed, limits or Limits()))


def verify_fixedprop(n, s, limits=None):
    return _json.loads(_c.verify_fixedprop_json(n, s, limits or Limits()))


def round_trip_lemmas(n, k, limits=None):
    return _json.loads(_c.round_trip_lemmas_json(n, k, limits or Limits()))


def block_decompose(seq, m, n, k_m, k_n):
    return _json.loads(_c.block_decompose_json(seq, m, n, k_m, k_n))
