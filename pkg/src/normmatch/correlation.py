"""Exact integer cross-correlation for every alignment.

Two engines sit behind one contract. The fast engine is a float64 real FFT
whose outputs are rounded to integers; it is only used when an a-priori
error bound guarantees every output lands within 0.25 of the true integer,
and the rounding residual is checked again afterwards. Everything else goes
through a number theoretic transform over several word-sized primes with
CRT reconstruction, which is exact for any operand size.
"""

from __future__ import annotations

import math
import os
from functools import lru_cache

import numpy as np
import scipy.fft

from .core import INT64_SAFE, InputError, abs_max

# Per-engine constant. Observed worst-case rounding error of the float path
# is about 2**-52 * sqrt(L*m)*A*B for frame length L, pattern length m and
# operand magnitudes A, B; 2**-45 leaves two orders of magnitude of slack
# (tests/test_correlation.py::test_fft_error_constant_is_conservative).
EPS_FFT = 2.0**-45
FLOAT_RESIDUAL_LIMIT = 0.25
# beyond 2^52 a double cannot hold a fractional residual, so rounding checks are blind
FLOAT_MAGNITUDE_LIMIT = 2**52

# (prime, 2-adic order of p-1, primitive root); all below 2**31 so residue
# products fit in uint64.
NTT_PRIMES = (
    (2130706433, 24, 3),
    (2113929217, 25, 5),
    (2088763393, 23, 5),
    (2025848833, 22, 10),
    (2013265921, 27, 31),
    (1866465281, 22, 3),
    (1811939329, 26, 13),
    (1790967809, 22, 13),
    (1711276033, 25, 29),
    (1572864001, 22, 13),
    (1484783617, 23, 5),
    (1438646273, 22, 3),
    (1321205761, 22, 11),
    (1300234241, 23, 3),
    (1224736769, 24, 3),
    (1212153857, 22, 3),
    (1161822209, 22, 3),
    (1107296257, 25, 10),
    (998244353, 23, 3),
    (985661441, 22, 3),
    (943718401, 22, 7),
    (935329793, 22, 3),
    (918552577, 22, 5),
    (897581057, 23, 3),
    (880803841, 23, 26),
    (754974721, 24, 11),
    (683671553, 22, 3),
    (666894337, 22, 5),
    (645922817, 23, 3),
    (595591169, 23, 3),
    (469762049, 26, 3),
    (415236097, 22, 5),
    (377487361, 23, 7),
    (230686721, 22, 6),
    (167772161, 25, 3),
    (163577857, 22, 23),
    (155189249, 22, 6),
    (138412033, 22, 5),
    (113246209, 22, 7),
    (104857601, 22, 3),
)
NTT_MAX_LOG_LEN = 22


class ExactnessError(RuntimeError):
    """Operands too large for any exact engine available here."""


def fft_workers() -> int:
    raw = os.environ.get("NORMMATCH_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        return 1
    return -1 if n <= 0 else n


def _as_int_array(vec) -> np.ndarray:
    arr = np.asarray(vec)
    if arr.dtype == object or np.issubdtype(arr.dtype, np.integer):
        return arr
    if arr.dtype == bool:
        return arr.astype(np.int64)
    raise InputError(f"integer vector expected, got dtype {arr.dtype}")


def _check_shapes(text_vec, pat_vec):
    t = _as_int_array(text_vec)
    p = _as_int_array(pat_vec)
    if t.ndim != 1 or p.ndim != 1:
        raise InputError("correlation operands must be one-dimensional")
    m, n = len(p), len(t)
    if m == 0:
        raise InputError("cannot correlate against an empty pattern")
    if n < m:
        raise InputError(f"text length {n} is shorter than pattern length {m}")
    return t, p


def _result_array(values: np.ndarray, bound: int) -> np.ndarray:
    if bound < INT64_SAFE:
        return values.astype(np.int64)
    return values.astype(object)


def fft_error_bound(frame_len: int, m: int, amax: int, bmax: int) -> float:
    return math.sqrt(frame_len * m) * float(amax) * float(bmax) * EPS_FFT


def _frames(t: np.ndarray, m: int, frame_len: int):
    """Frames of length frame_len advancing by frame_len - m + 1.

    Each frame yields frame_len - m + 1 valid alignments, so consecutive
    frames overlap by m - 1 symbols and together cover every alignment.
    """
    n = len(t)
    outs = n - m + 1
    step = frame_len - m + 1
    nframes = -(-outs // step)
    padded_len = (nframes - 1) * step + frame_len
    pad = np.zeros(padded_len, dtype=t.dtype)
    pad[:n] = t
    view = np.lib.stride_tricks.sliding_window_view(pad, frame_len)[::step]
    return view, step, outs


def _float_correlate(t: np.ndarray, p: np.ndarray, frame_len: int) -> np.ndarray | None:
    m = len(p)
    frames, step, outs = _frames(t.astype(np.float64), m, frame_len)
    workers = fft_workers()
    ft = scipy.fft.rfft(frames, n=frame_len, axis=1, workers=workers)
    fp = scipy.fft.rfft(p.astype(np.float64), n=frame_len)
    corr = scipy.fft.irfft(ft * np.conj(fp), n=frame_len, axis=1, workers=workers)
    corr = corr[:, :step].reshape(-1)[:outs]
    rounded = np.rint(corr)
    if outs and np.max(np.abs(corr - rounded)) >= FLOAT_RESIDUAL_LIMIT:
        return None
    return rounded.astype(np.int64)


# --- limb splitting -----------------------------------------------------------

MAX_LIMBS = 6


def _split_limbs(vec: np.ndarray, width: int, count: int) -> list:
    """Signed limbs l_u with vec = sum_u l_u * 2^(u*width) and |l_u| < 2^width."""
    sign = np.sign(vec)
    mag = np.abs(vec)
    mask = (1 << width) - 1
    return [(sign * ((mag >> (u * width)) & mask)).astype(np.float64) for u in range(count)]


def _limb_plan(frame_len: int, m: int, abits: int, bbits: int):
    """Largest limb width whose grouped float correlations stay provably exact."""
    for width in range(min(26, max(abits, bbits)), 0, -1):
        la, lb = -(-abits // width), -(-bbits // width)
        if la > MAX_LIMBS or lb > MAX_LIMBS:
            return None
        terms = min(la, lb)
        lim = 1 << width
        if terms * m * lim * lim < FLOAT_MAGNITUDE_LIMIT and terms * fft_error_bound(
            frame_len, m, lim, lim
        ) < FLOAT_RESIDUAL_LIMIT:
            return width, la, lb
    return None


def _limb_correlate(t: np.ndarray, p: np.ndarray, frame_len: int, amax: int, bmax: int):
    """Exact correlation of int64 operands too wide for one float pass.

    Both operands are cut into signed limbs of equal width; the limb products
    of equal total weight are summed in the frequency domain, so only
    la + lb forward and la + lb - 1 inverse transforms are needed. Returns
    None when no plan fits or a residual check fails.
    """
    if t.dtype == object or p.dtype == object:
        return None
    m = len(p)
    plan = _limb_plan(frame_len, m, int(amax).bit_length(), int(bmax).bit_length())
    if plan is None:
        return None
    width, la, lb = plan
    workers = fft_workers()
    frames, step, outs = _frames(t, m, frame_len)
    ft = [scipy.fft.rfft(f, n=frame_len, axis=1, workers=workers) for f in _split_limbs(frames, width, la)]
    fp = [np.conj(scipy.fft.rfft(g, n=frame_len)) for g in _split_limbs(p, width, lb)]
    big = m * amax * bmax >= INT64_SAFE // 4
    acc = None
    for s in range(la + lb - 2, -1, -1):
        freq = sum(ft[u] * fp[s - u] for u in range(max(0, s - lb + 1), min(la, s + 1)))
        part = scipy.fft.irfft(freq, n=frame_len, axis=1, workers=workers)[:, :step].reshape(-1)[:outs]
        rounded = np.rint(part)
        if np.max(np.abs(part - rounded)) >= FLOAT_RESIDUAL_LIMIT:
            return None
        g = rounded.astype(np.int64)
        if big:
            g = g.astype(object)
        # Horner over limb weights, highest first
        acc = g if acc is None else acc * (1 << width) + g
    return acc


# --- number theoretic transform --------------------------------------------


@lru_cache(maxsize=None)
def _bit_reverse(log_len: int) -> np.ndarray:
    n = 1 << log_len
    rev = np.zeros(n, dtype=np.int64)
    for b in range(log_len):
        rev |= ((np.arange(n) >> b) & 1) << (log_len - 1 - b)
    return rev


@lru_cache(maxsize=None)
def _twiddles(p: int, g: int, log_len: int, inverse: bool) -> np.ndarray:
    n = 1 << log_len
    w = pow(g, (p - 1) >> log_len, p)
    if inverse:
        w = pow(w, p - 2, p)
    half = n // 2
    out = np.empty(max(half, 1), dtype=np.uint64)
    out[0] = 1
    # doubling: out[j + s] = out[j] * w^s
    filled = 1
    step = w
    while filled < half:
        take = min(filled, half - filled)
        out[filled : filled + take] = (out[:take] * np.uint64(step)) % np.uint64(p)
        filled += take
        step = step * step % p
    return out


def _ntt(a: np.ndarray, p: int, g: int, log_len: int, inverse: bool = False) -> np.ndarray:
    """In-place style radix-2 NTT along the last axis of a 2-D uint64 array."""
    n = 1 << log_len
    P = np.uint64(p)
    a = a[:, _bit_reverse(log_len)]
    tw = _twiddles(p, g, log_len, inverse)
    rows = a.shape[0]
    length = 2
    while length <= n:
        half = length // 2
        w = tw[:: n // length][:half]
        blk = a.reshape(rows, n // length, length)
        u = blk[:, :, :half].copy()
        v = (blk[:, :, half:] * w) % P
        blk[:, :, :half] = (u + v) % P
        blk[:, :, half:] = (u + P - v) % P
        length *= 2
    if inverse:
        a = (a * np.uint64(pow(n, p - 2, p))) % P
    return a


def _residues(vec: np.ndarray, p: int) -> np.ndarray:
    if vec.dtype == object:
        return np.array([int(v) % p for v in vec], dtype=np.uint64)
    return (vec % p).astype(np.uint64)


def _primes_for(bound: int, log_len: int) -> list:
    usable = [pr for pr in NTT_PRIMES if pr[1] >= log_len]
    need = 2 * bound + 1
    chosen, prod = [], 1
    for pr in usable:
        if prod > need:
            break
        chosen.append(pr)
        prod *= pr[0]
    if prod <= need:
        raise ExactnessError(
            f"correlation magnitude bound {bound} exceeds the NTT engine's CRT range"
        )
    return chosen


def _crt(residues: list, primes: list) -> np.ndarray:
    """Garner reconstruction to signed integers (object array when large)."""
    mods = [pr[0] for pr in primes]
    ys = []
    for i, (r, p) in enumerate(zip(residues, mods)):
        P = np.uint64(p)
        acc = np.zeros_like(r)
        coef = 1
        for j in range(i):
            acc = (acc + ys[j] % P * np.uint64(coef % p)) % P
            coef *= mods[j]
        inv = pow(coef % p, p - 2, p)
        ys.append(((r + P - acc) % P) * np.uint64(inv) % P)
    total = 1
    for p in mods:
        total *= p
    big = total >= INT64_SAFE
    x = np.zeros(len(residues[0]), dtype=object if big else np.int64)
    coef = 1
    for y, p in zip(ys, mods):
        x = x + (y.astype(object) if big else y.astype(np.int64)) * coef
        coef *= p
    if big:
        half = total // 2
        return np.array([v - total if v > half else v for v in x.tolist()], dtype=object)
    return np.where(x > total // 2, x - total, x)


def _ntt_correlate(t: np.ndarray, p: np.ndarray, bound: int) -> np.ndarray:
    m = len(p)
    log_len = max(1, (2 * m - 1).bit_length())
    if log_len > NTT_MAX_LOG_LEN:
        raise ExactnessError(f"pattern length {m} is too long for the NTT engine")
    frame_len = 1 << log_len
    primes = _primes_for(bound, log_len)
    frames, step, outs = _frames(t, m, frame_len)
    rev_p = p[::-1]
    results = []
    for prime, _, g in primes:
        P = np.uint64(prime)
        ft = _ntt(_residues(frames.reshape(-1), prime).reshape(frames.shape), prime, g, log_len)
        pp = np.zeros((1, frame_len), dtype=np.uint64)
        pp[0, :m] = _residues(rev_p, prime)
        fp = _ntt(pp, prime, g, log_len)
        conv = _ntt((ft * fp) % P, prime, g, log_len, inverse=True)
        # conv[x] with x = i + m - 1 is the correlation at alignment i
        results.append(conv[:, m - 1 : m - 1 + step].reshape(-1)[:outs])
    return _crt(results, primes)


# --- public API ---------------------------------------------------------------


# alignments per block in chunked mode; keeps the frame arrays cache-sized
BLOCK_OUTPUTS = 1 << 16


def _engine(t, p, frame_len, amax, bmax, bound):
    if bound < FLOAT_MAGNITUDE_LIMIT and fft_error_bound(frame_len, len(p), amax, bmax) < FLOAT_RESIDUAL_LIMIT:
        res = _float_correlate(t, p, frame_len)
        if res is not None:
            return res
    res = _limb_correlate(t, p, frame_len, amax, bmax)
    if res is not None:
        return _result_array(res, bound)
    return _result_array(_ntt_correlate(t, p, bound), bound)


def _correlate(text_vec, pat_vec, chunked: bool) -> np.ndarray:
    t, p = _check_shapes(text_vec, pat_vec)
    m, n = len(p), len(t)
    amax, bmax = abs_max(t), abs_max(p)
    bound = m * amax * bmax
    outs = n - m + 1
    if bound == 0:
        return np.zeros(outs, dtype=np.int64)
    if not chunked:
        return _engine(t, p, n, amax, bmax, bound)
    frame_len = min(scipy.fft.next_fast_len(2 * m, real=True), n)
    step = frame_len - m + 1
    block = max(1, BLOCK_OUTPUTS // step) * step
    if outs <= block:
        return _engine(t, p, frame_len, amax, bmax, bound)
    parts = [
        _engine(t[lo : min(lo + block, outs) + m - 1], p, frame_len, amax, bmax, bound)
        for lo in range(0, outs, block)
    ]
    return np.concatenate(parts)


def cross_correlate(text_vec, pat_vec) -> np.ndarray:
    """``out[i] = sum_j pat_vec[j] * text_vec[i + j]`` for i in 0..n-m, exactly.

    The float engine transforms the whole text in one frame.
    """
    return _correlate(text_vec, pat_vec, chunked=False)


def chunked_correlate(text_vec, pat_vec) -> np.ndarray:
    """Same contract as :func:`cross_correlate`, O(n log m) via ~2m-long frames."""
    return _correlate(text_vec, pat_vec, chunked=True)


def direct_correlate(text_vec, pat_vec) -> list:
    """O(nm) reference summation over Python ints."""
    t = [int(v) for v in np.asarray(text_vec).tolist()]
    p = [int(v) for v in np.asarray(pat_vec).tolist()]
    m = len(p)
    return [sum(p[j] * t[i + j] for j in range(m)) for i in range(len(t) - m + 1)]
