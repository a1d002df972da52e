import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from normmatch import correlation as corr
from normmatch.core import InputError
from normmatch.correlation import chunked_correlate, cross_correlate, direct_correlate

vectors = st.integers(1, 12).flatmap(
    lambda m: st.tuples(
        st.lists(st.integers(-1000, 1000), min_size=m, max_size=m + 40),
        st.lists(st.integers(-1000, 1000), min_size=m, max_size=m),
    )
)


def test_examples():
    assert cross_correlate([1, 2, 3, 4], [1, 1]).tolist() == [3, 5, 7]
    assert cross_correlate([0, 0, 0], [5]).tolist() == [0, 0, 0]
    rng = np.random.default_rng(0)
    t, p = rng.integers(-100, 101, 64), rng.integers(-100, 101, 7)
    assert cross_correlate(t, p).tolist() == direct_correlate(t, p)


@given(vectors)
def test_matches_direct_summation(tp):
    t, p = tp
    want = direct_correlate(t, p)
    assert cross_correlate(t, p).tolist() == want
    assert chunked_correlate(t, p).tolist() == want


@pytest.mark.parametrize("m", [1, 2, 5, 16, 33])
def test_chunk_edges(m):
    rng = np.random.default_rng(m)
    for n in (m, 2 * m, 2 * m + 1, 3 * m - 1, 7 * m + 3):
        t, p = rng.integers(-50, 51, n), rng.integers(-50, 51, m)
        assert chunked_correlate(t, p).tolist() == direct_correlate(t, p)


@given(vectors, st.data())
def test_linearity(tp, data):
    t, b = tp
    c = data.draw(st.lists(st.integers(-1000, 1000), min_size=len(b), max_size=len(b)))
    lhs = chunked_correlate(t, np.add(b, c))
    assert (lhs == chunked_correlate(t, b) + chunked_correlate(t, c)).all()


def test_all_ones_pattern_gives_window_sums():
    t = np.arange(-10, 30)
    m = 6
    want = [int(t[i : i + m].sum()) for i in range(len(t) - m + 1)]
    assert chunked_correlate(t, np.ones(m, dtype=np.int64)).tolist() == want


def test_large_operands_take_exact_path():
    rng = np.random.default_rng(1)
    t = rng.integers(-(2**40), 2**40, 300)
    p = rng.integers(-(2**20), 2**20, 20)
    got = chunked_correlate(t, p)
    assert got.tolist() == direct_correlate(t, p)


def test_object_arrays_beyond_int64():
    t = np.array([2**70, -(2**69), 3, 2**65], dtype=object)
    p = np.array([2**40, -5], dtype=object)
    got = chunked_correlate(t, p)
    assert got.dtype == object
    assert got.tolist() == direct_correlate(t, p)


def test_ntt_engine_alone(monkeypatch):
    monkeypatch.setattr(corr, "FLOAT_RESIDUAL_LIMIT", 0.0)
    rng = np.random.default_rng(2)
    for _ in range(30):
        m = int(rng.integers(1, 40))
        n = int(rng.integers(m, 200))
        t, p = rng.integers(-(2**30), 2**30, n), rng.integers(-(2**20), 2**20, m)
        assert chunked_correlate(t, p).tolist() == direct_correlate(t, p)
        assert cross_correlate(t, p).tolist() == direct_correlate(t, p)


def test_float_residual_check_falls_back(monkeypatch):
    # pretend the a-priori bound always passes: the residual check must still catch errors
    monkeypatch.setattr(corr, "fft_error_bound", lambda *a: 0.0)
    rng = np.random.default_rng(3)
    # results near 2^50: still representable, but the float error exceeds 1/4
    t = rng.integers(-(2**26), 2**26, 5000)
    p = rng.integers(-(2**20), 2**20, 64)
    assert corr._float_correlate(t, p, 5000) is None
    assert chunked_correlate(t, p).tolist() == direct_correlate(t, p)
    # past 2^52 rounding cannot be checked at all, so the float engine is skipped
    t = rng.integers(-(2**40), 2**40, 500)
    p = rng.integers(-(2**20), 2**20, 50)
    assert chunked_correlate(t, p).tolist() == direct_correlate(t, p)


def test_fft_error_constant_is_conservative():
    """Observed float error stays far below the bound the engine trusts."""
    rng = np.random.default_rng(4)
    worst_ratio = 0.0
    for log_m in (2, 5, 8):
        m = 1 << log_m
        for amag, bmag in ((2**12, 2**12), (2**20, 2**8), (2**16, 2**16)):
            t = rng.choice([-amag, amag], size=4 * m)
            p = rng.choice([-bmag, bmag], size=m)
            frame = 4 * m
            frames, step, outs = corr._frames(t.astype(np.float64), m, frame)
            import scipy.fft as sf

            raw = sf.irfft(sf.rfft(frames, n=frame, axis=1) * np.conj(sf.rfft(p.astype(float), n=frame)), n=frame, axis=1)
            raw = raw[:, :step].reshape(-1)[:outs]
            exact = np.array(direct_correlate(t, p), dtype=np.float64)
            err = float(np.max(np.abs(raw - exact)))
            bound = corr.fft_error_bound(frame, m, amag, bmag)
            worst_ratio = max(worst_ratio, err / bound)
    # the engine's constant leaves at least 2^4 headroom over what we observe
    assert worst_ratio < 2**-4, worst_ratio
    assert math.isclose(corr.EPS_FFT, 2.0**-45)


def test_errors():
    with pytest.raises(InputError):
        cross_correlate([1, 2], [])
    with pytest.raises(InputError):
        cross_correlate([1], [1, 2])
    with pytest.raises(InputError):
        cross_correlate([1.5, 2.0], [1])
    with pytest.raises(corr.ExactnessError):
        corr._primes_for(10**400, 10)


def test_thread_setting(monkeypatch):
    monkeypatch.setenv("NORMMATCH_THREADS", "0")
    assert corr.fft_workers() == -1
    monkeypatch.setenv("NORMMATCH_THREADS", "3")
    assert corr.fft_workers() == 3


@pytest.mark.parametrize("abits, bbits, m", [(30, 20, 16), (41, 21, 64), (45, 30, 7), (62, 1, 33), (50, 50, 5)])
def test_limb_engine(abits, bbits, m):
    rng = np.random.default_rng(abits + bbits + m)
    n = 5 * m + 3
    t = rng.integers(-(2**abits) + 1, 2**abits, n, dtype=np.int64)
    p = rng.integers(-(2**bbits) + 1, 2**bbits, m, dtype=np.int64)
    t[0], p[0] = 2**abits - 1, -(2**bbits) + 1
    frame = corr.scipy.fft.next_fast_len(2 * m, real=True)
    got = corr._limb_correlate(t, p, frame, corr.abs_max(t), corr.abs_max(p))
    assert got is not None
    assert list(map(int, got)) == direct_correlate(t, p)
    assert chunked_correlate(t, p).tolist() == direct_correlate(t, p)


def test_limb_plan_gives_up_when_too_wide():
    assert corr._limb_plan(1 << 21, 1 << 20, 62, 62) is None
    width, la, lb = corr._limb_plan(2048, 1024, 41, 21)
    assert la * width >= 41 and lb * width >= 21


@pytest.mark.parametrize("block", [1, 5, 64])
def test_block_boundaries(monkeypatch, block):
    monkeypatch.setattr(corr, "BLOCK_OUTPUTS", block)
    rng = np.random.default_rng(block)
    for m in (1, 3, 17):
        for n in (m, 3 * m + 1, 200):
            t = rng.integers(-(2**35), 2**35, n)
            p = rng.integers(-(2**20), 2**20, m)
            assert chunked_correlate(t, p).tolist() == direct_correlate(t, p)
            small = rng.integers(-9, 10, n)
            assert chunked_correlate(small, p).tolist() == direct_correlate(small, p)
