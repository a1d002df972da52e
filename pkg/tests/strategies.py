"""Shared hypothesis strategies and random-instance builders for the test suite."""

from __future__ import annotations

import numpy as np
from hypothesis import strategies as st

from normmatch.core import WILDCARD, Sequence


def symbols(lo=-100, hi=100, wildcard_percent=10):
    ints = st.integers(lo, hi)
    if wildcard_percent <= 0:
        return ints
    return st.tuples(st.integers(0, 99), ints).map(lambda t: WILDCARD if t[0] < wildcard_percent else t[1])


@st.composite
def pairs(draw, max_m=8, max_extra=10, lo=-20, hi=20, wildcards=True):
    """(text, pattern) with 1 <= m <= n."""
    sym = symbols(lo, hi, 15 if wildcards else 0)
    m = draw(st.integers(1, max_m))
    n = m + draw(st.integers(0, max_extra))
    pattern = draw(st.lists(sym, min_size=m, max_size=m))
    text = draw(st.lists(sym, min_size=n, max_size=n))
    return Sequence(tuple(text)), Sequence(tuple(pattern))


def random_pair(rng, max_n=200, max_m=50, lo=-100, hi=100, wildcard_rate=0.1, min_m=1):
    m = int(rng.integers(min_m, max_m + 1))
    n = int(rng.integers(m, max(m, max_n) + 1))

    def seq(length):
        vals = rng.integers(lo, hi + 1, size=length).tolist()
        holes = rng.random(length) < wildcard_rate
        return Sequence(tuple(WILDCARD if h else v for h, v in zip(holes, vals)))

    return seq(n), seq(m)


def planted_hamming_pair(rng, m, n, k_errors, sigma=6):
    """Random text with a shifted copy of the pattern planted at a random
    alignment and corrupted at ``k_errors`` positions. Returns (text, pattern, i)."""
    pattern = rng.integers(-sigma, sigma + 1, size=m)
    text = rng.integers(-sigma, sigma + 1, size=n)
    i = int(rng.integers(0, n - m + 1))
    window = pattern + int(rng.integers(-20, 21))
    if k_errors:
        idx = rng.choice(m, size=k_errors, replace=False)
        window[idx] += rng.integers(50, 90, size=k_errors)
    text[i : i + m] = window
    return Sequence(tuple(text.tolist())), Sequence(tuple(pattern.tolist())), i


def as_list(seq):
    return list(np.asarray(seq.values).tolist())
