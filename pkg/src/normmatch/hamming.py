"""Shift-normalised Hamming distance: unbounded and k-bounded.

The bounded algorithm works on difference strings. A shift-Hamming distance
of at most k forces at most 2k mismatches between the pattern's and the
window's difference strings, and between consecutive difference mismatches
the shift array T[i+j] - P[j] is constant. So each surviving alignment is
scored from a run-length encoding with O(k) runs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DistanceProfile, InputError, as_sequence, check_pair
from .lce import LCEIndex


class OverBudget:
    """Marker: more mismatches than the budget at this alignment."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "OverBudget"

    def __bool__(self):
        return False


OVER_BUDGET = OverBudget()


@dataclass(frozen=True)
class Run:
    start: int
    length: int
    value: int


def _plain(seq, what):
    seq = as_sequence(seq)
    seq.require_no_wildcards(what)
    return seq


def _vec(x) -> np.ndarray:
    if isinstance(x, np.ndarray):
        return x
    return _plain(x, "mismatch search").values


def difference_string(seq) -> np.ndarray:
    """S[j+1] - S[j] for j in 0..len-2."""
    seq = _plain(seq, "difference strings")
    if len(seq) < 2:
        raise InputError("difference string needs at least two symbols")
    return np.diff(seq.values)


def shift_array(text, pattern, i: int) -> np.ndarray:
    t, p = as_sequence(text).values, as_sequence(pattern).values
    return t[i : i + len(p)] - p


def _row_modes(rows: np.ndarray):
    """Per-row (count, value) of the most frequent entry; smallest value on ties."""
    srt = np.sort(rows, axis=1)
    nrows, width = srt.shape
    starts = np.ones_like(srt, dtype=bool)
    starts[:, 1:] = srt[:, 1:] != srt[:, :-1]
    flat_starts = starts.reshape(-1)
    run_id = np.cumsum(flat_starts) - 1
    counts = np.bincount(run_id)
    start_pos = np.flatnonzero(flat_starts)
    run_row = start_pos // width
    # first maximal run per row in sorted order == smallest modal value
    best = np.full(nrows, -1, dtype=np.int64)
    best_count = np.zeros(nrows, dtype=np.int64)
    order = np.lexsort((start_pos, -counts, run_row))
    first = np.ones(len(order), dtype=bool)
    first[1:] = run_row[order][1:] != run_row[order][:-1]
    sel = order[first]
    best[run_row[sel]] = srt.reshape(-1)[start_pos[sel]]
    best_count[run_row[sel]] = counts[sel]
    return best_count, best


def sham_profile(text, pattern, block: int = 1 << 20) -> DistanceProfile:
    """Unbounded shift-Hamming profile by sorting every shift array.

    distance[i] = m - (multiplicity of the most frequent T[i+j] - P[j]); the
    reported shift is the smallest most-frequent value.
    """
    text, pattern = _plain(text, "text"), _plain(pattern, "pattern")
    check_pair(text, pattern)
    m = len(pattern)
    t, p = text.values, pattern.values
    windows = np.lib.stride_tricks.sliding_window_view(t, m)
    per = max(1, block // m)
    dists, alphas = [], []
    for lo in range(0, len(windows), per):
        cnt, val = _row_modes(windows[lo : lo + per] - p)
        dists.append(m - cnt)
        alphas.append(val)
    dist = np.concatenate(dists)
    alpha = np.concatenate(alphas)
    return DistanceProfile(dist, None, ((alpha.astype(object), None),))


def kmismatch_locations(text, pattern, budget: int, alignments=None, index: LCEIndex | None = None):
    """Leftmost mismatch positions of pattern against every text window.

    Kangaroo jumps: one LCE query per mismatch, so at most budget + 1 queries
    per alignment. Returns a list with, per alignment, either the sorted
    mismatch positions (when there are at most ``budget``) or OVER_BUDGET.
    ``alignments`` restricts work to a subset; others are reported as None.
    """
    if budget < 0:
        raise InputError("budget must be non-negative")
    p, t = _vec(pattern), _vec(text)
    m, n = len(p), len(t)
    if n < m:
        raise InputError(f"text length {n} is shorter than pattern length {m}")
    outs = n - m + 1
    if m == 0:
        return [[] for _ in range(outs)]
    idx = index if index is not None else LCEIndex(p, t)
    lce = idx.lce
    todo = range(outs) if alignments is None else alignments
    res = [None] * outs
    for i in todo:
        found = []
        j = 0
        while True:
            j += lce(j, i + j)
            if j >= m:
                res[i] = found
                break
            if len(found) == budget:
                res[i] = OVER_BUDGET
                break
            found.append(j)
            j += 1
            if j >= m:
                res[i] = found
                break
    return res


def run_length_decompose(pattern, window, delta_mismatches) -> list:
    """Run-length encode T_i - P using the difference-string mismatch positions.

    A matching difference at position q means A[q+1] = A[q], so the shift
    array is constant between consecutive mismatches and only the first
    position of each run needs an explicit subtraction.
    """
    p = as_sequence(pattern).values
    w = as_sequence(window).values
    m = len(p)
    runs = []
    start = 0
    for q in list(delta_mismatches) + [m - 1]:
        end = q + 1
        runs.append(Run(start, end - start, int(w[start] - p[start])))
        start = end
    return runs


def expand_runs(runs) -> list:
    out = []
    for r in runs:
        out.extend([r.value] * r.length)
    return out


def best_from_runs(runs, m: int):
    """(distance, shift) from runs: sort by value, sum lengths, take the best."""
    ordered = sorted(runs, key=lambda r: r.value)
    best_cnt, best_val = -1, None
    cur_val, cur_cnt = None, 0
    for r in ordered:
        if r.value == cur_val:
            cur_cnt += r.length
        else:
            cur_val, cur_cnt = r.value, r.length
        if cur_cnt > best_cnt:
            best_cnt, best_val = cur_cnt, cur_val
    return m - best_cnt, best_val


def skmismatch_profile(text, pattern, k: int) -> DistanceProfile:
    """min(shift-Hamming distance, k + 1) at every alignment in O(nk log k).

    Alignments surviving the 2k-mismatch filter report their optimal shift as
    the minimiser; filtered ones report None.
    """
    if k < 0:
        raise InputError("k must be non-negative")
    text, pattern = _plain(text, "text"), _plain(pattern, "pattern")
    check_pair(text, pattern)
    m, n = len(pattern), len(text)
    t, p = text.values, pattern.values
    outs = n - m + 1
    if m == 1:
        alpha = (t - p[0]).astype(object)
        return DistanceProfile(np.zeros(outs, dtype=np.int64), None, ((alpha, None),))
    pd, td = np.diff(p), np.diff(t)
    reports = kmismatch_locations(td, pd, 2 * k)
    dist = np.full(outs, k + 1, dtype=np.int64)
    alpha = np.full(outs, None, dtype=object)
    tl, pl = t.tolist(), p.tolist()
    for i, rep in enumerate(reports):
        if rep is OVER_BUDGET:
            continue
        runs = []
        start = 0
        for q in rep + [m - 1]:
            runs.append(Run(start, q + 1 - start, tl[i + start] - pl[start]))
            start = q + 1
        d, a = best_from_runs(runs, m)
        if d <= k:
            dist[i] = d
            alpha[i] = a
    return DistanceProfile(dist, None, ((alpha, None),))
