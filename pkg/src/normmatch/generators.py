"""Instance generators built from the 3SUM / GEOMBASE reductions and the
non-convergence adversary for permuted difference strings."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement

import numpy as np

from .core import DEFAULT_VALUE_BOUND, InputError, Sequence


@dataclass(frozen=True)
class ThreeSumInstance:
    elements: tuple

    def __post_init__(self):
        els = tuple(sorted(int(x) for x in self.elements))
        if any(x <= 0 for x in els):
            raise InputError("3SUM elements must be positive")
        if len(set(els)) != len(els):
            raise InputError("3SUM elements must be distinct")
        object.__setattr__(self, "elements", els)

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True)
class GeomBaseInstance:
    points: tuple

    def __post_init__(self):
        pts = tuple((int(x), int(y)) for x, y in self.points)
        if any(x not in (0, 1, 2) for x, _ in pts):
            raise InputError("GEOMBASE points must lie on x = 0, 1 or 2")
        if len(set(pts)) != len(pts):
            raise InputError("GEOMBASE points must be distinct")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)


@dataclass
class Generated:
    """A generated (text, pattern) pair plus what is known about its source."""

    text: Sequence
    pattern: Sequence
    meta: dict = field(default_factory=dict)


# --- 3SUM ------------------------------------------------------------------------


def threesum_witness(instance: ThreeSumInstance, distinct: bool = False):
    """Some (a, b, c) with a + b = c and a <= b, or None.

    By default a = b is allowed: the shift-Hamming construction matches a
    doubled element just like any other sum, so this is the labelling under
    which the reduction is exact. ``distinct=True`` demands a < b.
    """
    s = set(instance.elements)
    pairs = combinations(instance.elements, 2) if distinct else combinations_with_replacement(instance.elements, 2)
    for a, b in pairs:
        if a + b in s:
            return (a, b, a + b)
    return None


def threesum_brute(instance: ThreeSumInstance, distinct: bool = False) -> bool:
    return threesum_witness(instance, distinct) is not None


def threesum_to_sham(instance: ThreeSumInstance, value_bound: int | None = DEFAULT_VALUE_BOUND) -> Generated:
    """T = S0 S1 S2 S1 S3 and P = S4 S0 S0 (n = 5s, m = 3s)."""
    xs = list(instance.elements)
    s = len(xs)
    if s < 3:
        raise InputError("3SUM reduction needs at least 3 elements")
    y1 = 2 * xs[-1] + 1
    ys = [y1 + t for t in range(2 * s)]
    if value_bound is not None and ys[-1] > value_bound:
        raise InputError(f"generated value {ys[-1]} exceeds magnitude bound {value_bound}")
    zeros = [0] * s
    text = zeros + xs + ys[:s] + xs + ys[s:]
    pattern = xs[::-1] + zeros + zeros
    wit = threesum_witness(instance)
    meta = {
        "source": "3sum",
        "elements": xs,
        "has_triple": wit is not None,
        "witness": list(wit) if wit else None,
        "witness_reuses_element": bool(wit and wit[0] == wit[1]),
        "has_distinct_triple": threesum_brute(instance, distinct=True),
    }
    return Generated(Sequence(tuple(text)), Sequence(tuple(pattern)), meta)


def random_threesum(s: int, rng, planted: bool, max_value: int | None = None, tries: int = 1000):
    """Random s-element set, with a planted a + b = c or guaranteed triple-free."""
    if s < 3:
        raise InputError("need s >= 3")
    hi = max_value or max(8 * s, 16)
    for _ in range(tries):
        if planted:
            a, b = sorted(int(v) for v in rng.choice(np.arange(1, hi // 2), size=2, replace=False))
            base = {a, b, a + b}
            pool = [v for v in range(1, hi + 1) if v not in base]
            extra = rng.choice(pool, size=s - 3, replace=False).tolist() if s > 3 else []
            inst = ThreeSumInstance(tuple(base | set(extra)))
            return inst
        # sum-free: odd numbers never satisfy a + b = c
        vals = rng.choice(np.arange(1, 2 * hi, 2), size=s, replace=False).tolist()
        inst = ThreeSumInstance(tuple(vals))
        if not threesum_brute(inst):
            return inst
    raise RuntimeError("could not draw a 3SUM instance")


# --- GEOMBASE --------------------------------------------------------------------


def geombase_to_ssham(instance: GeomBaseInstance) -> Generated:
    """Pattern = x-coordinates, text = y-coordinates, n = m = s."""
    xs = [x for x, _ in instance.points]
    ys = [y for _, y in instance.points]
    return Generated(
        Sequence(tuple(ys)),
        Sequence(tuple(xs)),
        {"source": "geombase", "points": [list(p) for p in instance.points],
         "has_line": geombase_brute(instance)},
    )


def geombase_brute(instance: GeomBaseInstance) -> bool:
    """Is there a non-vertical line through three of the (distinct) points?"""
    pts = sorted(set(instance.points))
    cols = {x: {y for xx, y in pts if xx == x} for x in (0, 1, 2)}
    # a non-vertical line meets each vertical line once, so it must use one
    # point from every column: y0 + y2 = 2 y1
    return any((y0 + y2) % 2 == 0 and (y0 + y2) // 2 in cols[1] for y0 in cols[0] for y2 in cols[2])


def random_geombase(s: int, rng, planted: bool, spread: int = 50, tries: int = 1000) -> GeomBaseInstance:
    if s < 3:
        raise InputError("need s >= 3")
    for _ in range(tries):
        pts = set()
        if planted:
            a = int(rng.integers(-spread, spread + 1))
            d = int(rng.integers(-spread // 2, spread // 2 + 1))
            pts |= {(0, a), (1, a + d), (2, a + 2 * d)}
        while len(pts) < s:
            pts.add((int(rng.integers(0, 3)), int(rng.integers(-3 * spread, 3 * spread + 1))))
        order = list(pts)
        rng.shuffle(order)
        inst = GeomBaseInstance(tuple(order))
        if geombase_brute(inst) == planted:
            return inst
    raise RuntimeError("could not draw a GEOMBASE instance")


# --- adversary for permuted differences ------------------------------------------


def notconv_locations(q: int, k: int, m: int) -> list:
    """k' = floor(k/2) + 1 locations, each avoiding earlier ones and their images."""
    kk = k // 2 + 1
    taken: set = set()
    locs = []
    for _ in range(kk):
        loc = next(j for j in range(m) if j not in taken)
        locs.append(loc)
        taken |= {loc, (loc + q) % m, (loc - q) % m}
    return locs


def notconv_adversary(q, k: int, m: int) -> Generated:
    """All-zero pattern and a window of ones at the chosen locations and their images.

    Shift-Hamming distance is 2k' > k while the permuted Hamming distance
    under pi_q is at most 3k' <= 2k.
    """
    q = getattr(q, "q", q)
    if not (6 <= k and 4 * k < m):
        raise InputError(f"adversary needs 6 <= k < m/4 (k={k}, m={m})")
    if not 1 <= q <= m - 1:
        raise InputError(f"cyclic shift q={q} outside 1..{m - 1}")
    window = [0] * m
    locs = notconv_locations(q, k, m)
    for loc in locs:
        window[loc] = 1
        window[(loc + q) % m] = 1
    meta = {"source": "notconv", "q": q, "k": k, "m": m, "locations": locs}
    return Generated(Sequence(tuple(window)), Sequence((0,) * m), meta)
