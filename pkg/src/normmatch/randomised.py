"""Randomised k-mismatch decision under shifts via cyclic permuted differences.

For a cyclic permutation pi_q(j) = (j + q) mod m the permuted difference
string S_pi[j] = S[pi(j)] - S[j] matches between pattern and window exactly
where both positions need the same shift. Any alignment with shift-Hamming
distance <= k has at most 2k permuted mismatches for every q, and a random q
separates distance > k with probability >= 1/6 once m > 6k^2. Repeating with
independent q and intersecting the answers drives false positives down.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .core import InputError, as_sequence, check_pair, log2_ceil
from .hamming import OVER_BUDGET, kmismatch_locations, skmismatch_profile


@dataclass(frozen=True)
class CyclicPermutation:
    q: int
    m: int

    def __post_init__(self):
        if not 1 <= self.q <= self.m - 1:
            raise InputError(f"cyclic shift q={self.q} outside 1..{self.m - 1}")

    def __call__(self, j: int) -> int:
        return (j + self.q) % self.m

    def inverse(self, j: int) -> int:
        return (j - self.q) % self.m


@dataclass(frozen=True)
class PermutedDifferenceViews:
    """Pattern and text pieces whose sliding comparison gives ham(P_pi, (T_i)_pi).

    ``t_minus`` is stored from its first usable index m - q, so entry x holds
    T[x] - T[x + m - q].
    """

    q: int
    p_plus: np.ndarray
    p_minus: np.ndarray
    t_plus: np.ndarray
    t_minus: np.ndarray


def _q_of(q, m):
    if isinstance(q, CyclicPermutation):
        if q.m != m:
            raise InputError("permutation length does not match the pattern")
        return q.q
    return CyclicPermutation(int(q), m).q


def permuted_difference(seq, q) -> np.ndarray:
    """S[(j + q) mod m] - S[j] for the whole string."""
    v = as_sequence(seq).values
    return np.roll(v, -q) - v


def permuted_views(text, pattern, q) -> PermutedDifferenceViews:
    text, pattern = as_sequence(text), as_sequence(pattern)
    text.require_no_wildcards("text")
    pattern.require_no_wildcards("pattern")
    check_pair(text, pattern)
    m, n = len(pattern), len(text)
    q = _q_of(q, m)
    t, p = text.values, pattern.values
    pp = permuted_difference(pattern, q)
    return PermutedDifferenceViews(
        q=q,
        p_plus=pp[: m - q],
        p_minus=pp[m - q :],
        t_plus=t[q:] - t[: n - q],
        t_minus=t[: n - m + q] - t[m - q :],
    )


def window_permuted(views: PermutedDifferenceViews, i: int, m: int) -> np.ndarray:
    """Reassemble (T_i)_pi from the views."""
    q = views.q
    return np.concatenate([views.t_plus[i : i + m - q], views.t_minus[i : i + q]])


def permuted_counts(views: PermutedDifferenceViews, budget: int, alignments=None) -> list:
    """Per alignment, ham(P_pi, (T_i)_pi) or None when it exceeds ``budget``."""
    plus = kmismatch_locations(views.t_plus, views.p_plus, budget, alignments)
    todo = [i for i, r in enumerate(plus) if r is not None and r is not OVER_BUDGET]
    minus = kmismatch_locations(views.t_minus, views.p_minus, budget, todo)
    out = [None] * len(plus)
    for i in todo:
        r = minus[i]
        if r is not OVER_BUDGET and len(plus[i]) + len(r) <= budget:
            out[i] = len(plus[i]) + len(r)
    return out


def _check_k(m, k):
    if k < 0:
        raise InputError("k must be non-negative")
    if 6 * k * k >= m:
        raise InputError(
            f"randomised decision needs k < sqrt(m/6) (m={m}, k={k}); use skmismatch_profile"
        )


def single_round(text, pattern, q, k: int, alignments=None) -> list:
    """One permutation: True where ham(P_pi, (T_i)_pi) <= 2k."""
    text, pattern = as_sequence(text), as_sequence(pattern)
    m = len(pattern)
    if k < 2:
        raise InputError("single_round requires k >= 2")
    _check_k(m, k)
    views = permuted_views(text, pattern, q)
    counts = permuted_counts(views, 2 * k, alignments)
    return [c is not None for c in counts]


def repeat_count(n: int, c: int) -> int:
    return max(1, 4 * (c + 1) * log2_ceil(n))


def skdecision(text, pattern, k: int, c: int = 2, *, seed) -> list:
    """True where the shift-Hamming distance is (declared) at most k.

    Never misses a true alignment; each false one survives all
    4(c+1)ceil(log2 n) rounds with probability below n^-(c+1). ``seed`` is
    required so that every run can be replayed.
    """
    text, pattern = as_sequence(text), as_sequence(pattern)
    text.require_no_wildcards("text")
    pattern.require_no_wildcards("pattern")
    check_pair(text, pattern)
    m, n = len(pattern), len(text)
    _check_k(m, k)
    if k < 2:
        prof = skmismatch_profile(text, pattern, k)
        return [d <= k for d in prof.distances]
    rng = np.random.default_rng(seed)
    qs = rng.integers(1, m, size=repeat_count(n, c)).tolist()
    alive = list(range(n - m + 1))
    for q in qs:
        if not alive:
            break
        views = permuted_views(text, pattern, q)
        counts = permuted_counts(views, 2 * k, alive)
        alive = [i for i in alive if counts[i] is not None]
    out = [False] * (n - m + 1)
    for i in alive:
        out[i] = True
    return out


# --- brute-force helpers used to validate the permutation family ------------------


def brute_sham_pair(pattern, window) -> int:
    p = as_sequence(pattern).values.tolist()
    w = as_sequence(window).values.tolist()
    return len(p) - max(Counter(b - a for a, b in zip(p, w)).values())


def permuted_hamming(pattern, window, q) -> int:
    return int(np.count_nonzero(permuted_difference(pattern, q) != permuted_difference(window, q)))


def k_tight_check(pattern, window, q, k: int) -> bool:
    """Whether pi_q separates dist <= k from dist > k for this pair."""
    pattern, window = as_sequence(pattern), as_sequence(window)
    if len(pattern) != len(window):
        raise InputError("pattern and window lengths differ")
    pattern.require_no_wildcards("pattern")
    window.require_no_wildcards("window")
    q = _q_of(q, len(pattern))
    return (brute_sham_pair(pattern, window) <= k) == (permuted_hamming(pattern, window, q) <= 2 * k)


def tight_fraction(pattern, window, k: int) -> float:
    m = len(pattern)
    hits = sum(k_tight_check(pattern, window, q, k) for q in range(1, m))
    return hits / (m - 1)


def failure_bound(n: int, c: int) -> float:
    """Union bound on any false positive after amplification."""
    return n * (5 / 6) ** repeat_count(n, c)

