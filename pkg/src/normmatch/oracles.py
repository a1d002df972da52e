"""Brute-force reference profiles.

These deliberately share nothing with the fast modules beyond the core data
model: every sum is taken directly over the alignment, every system is
solved by plain Gauss-Jordan over Fractions, and every distance is obtained
by substituting the fitted map back into the raw squared residuals.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import lcm

from .core import WILDCARD, DistanceProfile, InputError, as_sequence, check_pair


def _pairs(text, pattern, i):
    """(P[j], T[i+j]) for the positions where neither side is a wildcard."""
    out = []
    for j, pv in enumerate(pattern.symbols):
        tv = text.symbols[i + j]
        if pv is not WILDCARD and tv is not WILDCARD:
            out.append((pv, tv))
    return out


def _prepare(text, pattern):
    text, pattern = as_sequence(text), as_sequence(pattern)
    check_pair(text, pattern)
    return text, pattern, range(len(text) - len(pattern) + 1)


def brute_shift_l2(text, pattern) -> DistanceProfile:
    text, pattern, alignments = _prepare(text, pattern)
    dists, alphas = [], []
    for i in alignments:
        pts = _pairs(text, pattern, i)
        if not pts:
            dists.append(Fraction(0))
            alphas.append((Fraction(0),))
            continue
        cnt = len(pts)
        tot = sum(t - p for p, t in pts)
        # alpha = tot / cnt; residual_j = (tot + cnt*(p - t)) / cnt
        num = sum((tot + cnt * (p - t)) ** 2 for p, t in pts)
        dists.append(Fraction(num, cnt * cnt))
        alphas.append((Fraction(tot, cnt),))
    return DistanceProfile.from_fractions(dists, alphas)


def _fit_line(pts):
    """Least-squares (alpha_num, beta_num, den) from raw sums, degenerate cases included."""
    cnt = len(pts)
    if cnt == 0:
        return 0, 0, 1
    sp = sum(p for p, _ in pts)
    spp = sum(p * p for p, _ in pts)
    st = sum(t for _, t in pts)
    spt = sum(p * t for p, t in pts)
    det = cnt * spp - sp * sp
    if det == 0:
        return st, 0, cnt
    return spp * st - sp * spt, cnt * spt - sp * st, det


def brute_shift_scale_l2(text, pattern) -> DistanceProfile:
    text, pattern, alignments = _prepare(text, pattern)
    dists, mins = [], []
    for i in alignments:
        pts = _pairs(text, pattern, i)
        a, b, den = _fit_line(pts)
        dists.append(Fraction(sum((a + b * p - den * t) ** 2 for p, t in pts), den * den))
        mins.append((Fraction(a, den), Fraction(b, den)))
    return DistanceProfile.from_fractions(dists, mins)


def _gauss_jordan(rows):
    """Reduced row echelon form of an augmented Fraction matrix; free vars -> 0."""
    k = len(rows)
    a = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    for c in range(k):
        pr = next((i for i in range(r, k) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(k):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == k:
            break
    x = [Fraction(0)] * k
    for row, c in enumerate(pivots):
        x[c] = a[row][k]
    return x


def brute_poly_l2(text, pattern, r: int) -> DistanceProfile:
    if r < 1:
        raise InputError("degree must be >= 1")
    text, pattern, alignments = _prepare(text, pattern)
    size = r + 1
    dists, mins = [], []
    for i in alignments:
        pts = _pairs(text, pattern, i)
        if not pts:
            dists.append(Fraction(0))
            mins.append((Fraction(0),) * size)
            continue
        pows = [[p**e for e in range(2 * r + 1)] for p, _ in pts]
        rows = []
        for a in range(size):
            row = [sum(pw[a + b] for pw in pows) for b in range(size)]
            row.append(sum(pw[a] * t for pw, (_, t) in zip(pows, pts)))
            rows.append(row)
        coef = _gauss_jordan(rows)
        den = lcm(*(c.denominator for c in coef))
        nums = [int(c * den) for c in coef]
        tot = sum((sum(nc * pw[e] for e, nc in enumerate(nums)) - den * t) ** 2
                  for pw, (_, t) in zip(pows, pts))
        dists.append(Fraction(tot, den * den))
        mins.append(tuple(coef))
    return DistanceProfile.from_fractions(dists, mins)


def _plain(seq):
    seq = as_sequence(seq)
    if seq.has_wildcards:
        raise InputError("wildcards are not allowed in Hamming problems")
    return seq


def brute_sham(text, pattern) -> DistanceProfile:
    text, pattern = _plain(text), _plain(pattern)
    check_pair(text, pattern)
    t, p = list(text.symbols), list(pattern.symbols)
    m = len(p)
    dists, shifts = [], []
    for i in range(len(t) - m + 1):
        counts = Counter(t[i + j] - p[j] for j in range(m))
        best = max(counts.values())
        dists.append(m - best)
        shifts.append((min(a for a, c in counts.items() if c == best),))
    return DistanceProfile.from_ints(dists, shifts)


def ssham_pair(pattern, window) -> int:
    """min over rational alpha, beta of |{j : alpha + beta P[j] != W[j]}|."""
    p, w = list(pattern), list(window)
    m = len(p)
    best = max(Counter(w).values())  # beta = 0, alpha = a repeated text value
    for j1 in range(m):
        for j2 in range(j1 + 1, m):
            dp = p[j2] - p[j1]
            if dp == 0:
                continue
            dw = w[j2] - w[j1]
            hits = sum(1 for j in range(m) if (w[j] - w[j1]) * dp == dw * (p[j] - p[j1]))
            if hits > best:
                best = hits
    return m - best


def brute_ssham(text, pattern) -> DistanceProfile:
    text, pattern = _plain(text), _plain(pattern)
    check_pair(text, pattern)
    t, p = list(text.symbols), list(pattern.symbols)
    m = len(p)
    return DistanceProfile.from_ints([ssham_pair(p, t[i : i + m]) for i in range(len(t) - m + 1)])


ORACLES = {
    "shift-l2": brute_shift_l2,
    "shift-scale-l2": brute_shift_scale_l2,
    "poly-l2": brute_poly_l2,
    "sham": brute_sham,
    "ssham": brute_ssham,
}
