"""Normalised L2 distance profiles under shift, shift-scale and polynomial maps.

Every profile is assembled from a handful of exact cross-correlations of
masked powers of the pattern and text, so wildcards drop out of every sum
automatically. Distances and minimising coefficients are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import (
    DistanceProfile,
    InputError,
    abs_max,
    as_sequence,
    check_pair,
    fits_int64,
    reduce_arrays,
    widen,
)
from .correlation import chunked_correlate

DEFAULT_MAX_DEGREE = 8


@dataclass(frozen=True)
class CorrelationSix:
    c1: np.ndarray
    c2: np.ndarray
    c3: np.ndarray
    c4: np.ndarray
    c5: np.ndarray
    c6: np.ndarray

    def __iter__(self):
        return iter((self.c1, self.c2, self.c3, self.c4, self.c5, self.c6))


def _masked(seq):
    return seq.values, seq.mask


def _power(vals, mask, e):
    """vals**e * mask, staying in int64 only while that is exact."""
    big = abs_max(vals) ** e
    if fits_int64(big):
        return vals**e * mask if e else mask.copy()
    return widen(vals) ** e * mask


def correlation_six(text, pattern) -> CorrelationSix:
    text, pattern = as_sequence(text), as_sequence(pattern)
    check_pair(text, pattern)
    t, tm = _masked(text)
    p, pm = _masked(pattern)
    t1 = _power(t, tm, 1)
    p1 = _power(p, pm, 1)
    return CorrelationSix(
        c1=chunked_correlate(_power(t, tm, 2), pm),
        c2=chunked_correlate(t1, p1),
        c3=chunked_correlate(tm, _power(p, pm, 2)),
        c4=chunked_correlate(t1, pm),
        c5=chunked_correlate(tm, p1),
        c6=chunked_correlate(tm, pm),
    )


def _unify(bound, *arrs):
    if fits_int64(bound):
        return tuple(a.astype(np.int64) for a in arrs)
    return tuple(a.astype(object) for a in arrs)


def shift_l2_profile(text, pattern, six: CorrelationSix | None = None) -> DistanceProfile:
    """Minimum over alpha of sum (alpha + P[j] - T[i+j])^2 at every alignment.

    Reported minimiser is alpha = (C4 - C5) / C6; alignments where every
    position is masked (C6 = 0) get distance 0 and alpha 0.
    """
    if six is None:
        six = correlation_six(text, pattern)
    c1, c2, c3, c4, c5, c6 = six
    mx = [abs_max(c) for c in six]
    s_bound = mx[0] + 2 * mx[1] + mx[2]
    d_bound = mx[3] + mx[4]
    c1, c2, c3, c4, c5, c6 = _unify(mx[5] * s_bound + d_bound**2, c1, c2, c3, c4, c5, c6)

    s = c1 - 2 * c2 + c3
    d = c4 - c5
    empty = c6 == 0
    den = np.where(empty, 1, c6)
    num = np.where(empty, 0, c6 * s - d * d)
    alpha = reduce_arrays(np.where(empty, 0, d), den)
    num, den = reduce_arrays(num, den)
    return DistanceProfile(num, den, (alpha,))


def shift_scale_l2_profile(text, pattern, six: CorrelationSix | None = None) -> DistanceProfile:
    """Minimum over alpha, beta of sum (alpha + beta P[j] - T[i+j])^2.

    alpha = B1/B2 and beta = B3/B4 with B1 = C3C4 - C2C5, B2 = C3C6 - C5^2,
    B3 = C2 - C4C5/C6, B4 = C3 - C5^2/C6; where B2 = 0 but C6 != 0 we take
    alpha = C4/C6, beta = 0, and where C6 = 0 both are 0. The distance is the
    fitted objective alpha^2 C6 + 2 alpha beta C5 - 2 alpha C4 + beta^2 C3
    - 2 beta C2 + C1, evaluated over the common denominator of alpha and beta.
    """
    if six is None:
        six = correlation_six(text, pattern)
    c1, c2, c3, c4, c5, c6 = widen(*six)

    b1 = c3 * c4 - c2 * c5
    b2 = c3 * c6 - c5 * c5
    # B3 = (C2 C6 - C4 C5) / C6 and B4 = B2 / C6, so beta = (C2 C6 - C4 C5) / B2
    b3 = c2 * c6 - c4 * c5

    empty = c6 == 0
    flat = (b2 == 0) & ~empty
    a_n = np.where(empty, 0, np.where(flat, c4, b1))
    b_n = np.where(empty | flat, 0, b3)
    den = np.where(empty, 1, np.where(flat, c6, b2))

    num = (
        a_n * a_n * c6
        + 2 * a_n * b_n * c5
        - 2 * a_n * c4 * den
        + b_n * b_n * c3
        - 2 * b_n * c2 * den
        + c1 * den * den
    )
    dist = reduce_arrays(num, den * den)
    alpha = reduce_arrays(a_n, den)
    beta = reduce_arrays(b_n, den)
    return DistanceProfile(dist[0], dist[1], (alpha, beta))


# --- polynomial transformations ---------------------------------------------


def _bareiss(matrix, rhs):
    """Fraction-free elimination with column pivoting.

    Returns (scaled, det, cols): the unknowns in pivot order satisfy
    x[cols[i]] = scaled[i] / det, with free unknowns fixed to 0. ``det`` is
    the last pivot, i.e. the determinant of the leading non-singular block,
    so by Cramer's rule every back-substitution division below is exact.
    """
    k = len(matrix)
    a = [[int(x) for x in row] + [int(b)] for row, b in zip(matrix, rhs)]
    cols = list(range(k))
    prev = 1
    rank = 0
    for s in range(k):
        piv = None
        for c in range(s, k):
            for r in range(s, k):
                if a[r][c] != 0:
                    piv = (r, c)
                    break
            if piv:
                break
        if piv is None:
            break
        r, c = piv
        a[s], a[r] = a[r], a[s]
        if c != s:
            for row in a:
                row[s], row[c] = row[c], row[s]
            cols[s], cols[c] = cols[c], cols[s]
        pv = a[s][s]
        for i in range(s + 1, k):
            ai = a[i]
            f = ai[s]
            for j in range(s + 1, k + 1):
                ai[j] = (pv * ai[j] - f * a[s][j]) // prev
            ai[s] = 0
        prev = pv
        rank = s + 1
    for i in range(rank, k):
        if a[i][k] != 0:
            raise ValueError("inconsistent linear system")
    det = a[rank - 1][rank - 1] if rank else 1
    y = [0] * k
    for i in range(rank - 1, -1, -1):
        acc = det * a[i][k] - sum(a[i][j] * y[j] for j in range(i + 1, rank))
        y[i] = acc // a[i][i]
    scaled = [0] * k
    for pos, var in enumerate(cols):
        scaled[var] = y[pos]
    if det < 0:
        det, scaled = -det, [-v for v in scaled]
    return scaled, det


def solve_exact(matrix, rhs):
    """Solve an integer linear system exactly; free unknowns are set to 0.

    Returns a list of Fractions. Raises ValueError if the system is
    inconsistent.
    """
    scaled, det = _bareiss(matrix, rhs)
    return [Fraction(v, det) for v in scaled]


def poly_l2_profile(text, pattern, r: int, max_degree: int = DEFAULT_MAX_DEGREE) -> DistanceProfile:
    """Minimum over degree-r polynomials f of sum (f(P[j]) - T[i+j])^2.

    Uses 3r + 3 correlations: G[e] = T' (x) (P^e P') for e <= 2r, V[a] =
    (T T') (x) (P^a P') for a <= r, and C1. Each alignment then solves the
    (r+1)x(r+1) normal equations G[a+b] alpha_b = V[a] exactly and
    substitutes back.
    """
    if r < 1:
        raise InputError("degree must be >= 1; use shift_l2_profile for shifts")
    if r > max_degree:
        raise InputError(f"degree {r} exceeds the configured maximum {max_degree}")
    text, pattern = as_sequence(text), as_sequence(pattern)
    check_pair(text, pattern)
    t, tm = _masked(text)
    p, pm = _masked(pattern)
    t1 = _power(t, tm, 1)
    gram = [chunked_correlate(tm, _power(p, pm, e)).tolist() for e in range(2 * r + 1)]
    rhs = [chunked_correlate(t1, _power(p, pm, a)).tolist() for a in range(r + 1)]
    c1 = chunked_correlate(_power(t, tm, 2), pm).tolist()

    size = r + 1
    dists, coefs = [], []
    for i in range(len(c1)):
        if gram[0][i] == 0:
            dists.append(Fraction(0))
            coefs.append((Fraction(0),) * size)
            continue
        g = [gram[e][i] for e in range(2 * r + 1)]
        v = [rhs[a][i] for a in range(size)]
        y, det = _bareiss([[g[a + b] for b in range(size)] for a in range(size)], v)
        # alpha = y / det; the distance over the common denominator det^2
        quad = sum(y[a] * y[b] * g[a + b] for a in range(size) for b in range(size))
        lin = sum(y[a] * v[a] for a in range(size))
        dists.append(Fraction(det * det * c1[i] - 2 * det * lin + quad, det * det))
        coefs.append(tuple(Fraction(c, det) for c in y))
    return DistanceProfile.from_fractions(dists, coefs)


def function_match_fallback(text, pattern) -> DistanceProfile:
    """O(nm) profile when the polynomial may map every pattern value freely.

    Each distinct pattern value is sent to the mean of the text values it
    covers, so the distance is the within-group sum of squared deviations.
    """
    text, pattern = as_sequence(text), as_sequence(pattern)
    check_pair(text, pattern)
    m = len(pattern)
    groups: dict = {}
    for j, v in enumerate(pattern.symbols):
        if pattern.mask[j]:
            groups.setdefault(v, []).append(j)
    tv = text.values.tolist()
    tmask = text.mask.tolist()
    out = []
    for i in range(len(text) - m + 1):
        total = Fraction(0)
        for idx in groups.values():
            xs = [tv[i + j] for j in idx if tmask[i + j]]
            if len(xs) > 1:
                s = sum(xs)
                total += Fraction(sum(x * x for x in xs)) - Fraction(s * s, len(xs))
        out.append(total)
    return DistanceProfile.from_fractions(out)


# --- exact matching ---------------------------------------------------------


def exact_shift_match(text, pattern) -> list:
    prof = shift_l2_profile(text, pattern)
    return [bool(v == 0) for v in prof.numerators.tolist()]


def exact_shift_scale_match(text, pattern) -> list:
    prof = shift_scale_l2_profile(text, pattern)
    return [bool(v == 0) for v in prof.numerators.tolist()]
