"""Longest common extension queries between a pattern and a text.

Suffix array (prefix doubling) + Kasai LCP + sparse-table RMQ over
``pattern + [sep] + text``, giving O(1) deterministic LCE queries.
"""

from __future__ import annotations

import numpy as np


def rank_compress(values) -> np.ndarray:
    """Map arbitrary integers to dense ranks 1..sigma (0 is reserved)."""
    arr = np.asarray(values)
    if arr.dtype == object:
        uniq = sorted(set(arr.tolist()))
        lookup = {v: i + 1 for i, v in enumerate(uniq)}
        return np.array([lookup[v] for v in arr.tolist()], dtype=np.int64)
    _, inv = np.unique(arr, return_inverse=True)
    return inv.astype(np.int64) + 1


def suffix_array(s: np.ndarray) -> np.ndarray:
    """Prefix-doubling suffix array of a non-negative integer array."""
    n = len(s)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    rank = np.unique(s, return_inverse=True)[1].astype(np.int64)
    k = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        if k < n:
            second[: n - k] = rank[k:]
        sa = np.lexsort((second, rank))
        r0, r1 = rank[sa], second[sa]
        diff = np.empty(n, dtype=bool)
        diff[0] = True
        diff[1:] = (r0[1:] != r0[:-1]) | (r1[1:] != r1[:-1])
        new = np.empty(n, dtype=np.int64)
        new[sa] = np.cumsum(diff) - 1
        rank = new
        if rank.max() == n - 1:
            return sa.astype(np.int64)
        k *= 2


def lcp_array(s: np.ndarray, sa: np.ndarray) -> np.ndarray:
    """Kasai: lcp[r] = LCP(suffix sa[r-1], suffix sa[r]); lcp[0] = 0."""
    n = len(s)
    seq = s.tolist()
    sa_l = sa.tolist()
    rank = [0] * n
    for r, p in enumerate(sa_l):
        rank[p] = r
    lcp = [0] * n
    h = 0
    for i in range(n):
        r = rank[i]
        if r > 0:
            j = sa_l[r - 1]
            while i + h < n and j + h < n and seq[i + h] == seq[j + h]:
                h += 1
            lcp[r] = h
            if h:
                h -= 1
        else:
            h = 0
    return np.array(lcp, dtype=np.int64)


class SparseTable:
    """Static range-minimum in O(1) per query after O(n log n) build."""

    def __init__(self, arr):
        arr = np.asarray(arr, dtype=np.int64)
        self.levels = [arr]
        w = 1
        while 2 * w <= len(arr):
            prev = self.levels[-1]
            self.levels.append(np.minimum(prev[:-w], prev[w:]))
            w *= 2
        self._lists = [lv.tolist() for lv in self.levels]

    def query(self, lo: int, hi: int) -> int:
        """min(arr[lo..hi]) inclusive; requires lo <= hi."""
        k = (hi - lo + 1).bit_length() - 1
        lv = self._lists[k]
        a, b = lv[lo], lv[hi - (1 << k) + 1]
        return a if a < b else b


class LCEIndex:
    """LCE(pattern suffix j, text suffix x) over a shared suffix array."""

    def __init__(self, pattern, text):
        p = np.asarray(pattern)
        t = np.asarray(text)
        joint = rank_compress(np.concatenate([p, t]))
        self.m = len(p)
        self.n = len(t)
        # separator 0 sits below every real rank and occurs once
        s = np.concatenate([joint[: self.m], [0], joint[self.m :]]).astype(np.int64)
        self.s = s
        sa = suffix_array(s)
        rank = np.empty(len(s), dtype=np.int64)
        rank[sa] = np.arange(len(s))
        self._rank = rank.tolist()
        self._rmq = SparseTable(lcp_array(s, sa))

    def lce(self, j: int, x: int) -> int:
        """Length of the longest common prefix of pattern[j:] and text[x:]."""
        if j >= self.m or x >= self.n:
            return 0
        a = self._rank[j]
        b = self._rank[self.m + 1 + x]
        if a > b:
            a, b = b, a
        return self._rmq.query(a + 1, b)
