"""Shared data model: integer sequences with wildcards, masks, exact profiles."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence as _Seq

import numpy as np

# Raw symbols are limited to |v| <= 2**20 so that T^2 * T' correlations stay
# well inside the exact engines; callers may override at their own risk.
DEFAULT_VALUE_BOUND = 2**20
DEFAULT_LENGTH_BOUND = 2**20

INT64_SAFE = 2**62


class _Wildcard:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "*"

    def __reduce__(self):
        return (_Wildcard, ())


WILDCARD = _Wildcard()


class InputError(ValueError):
    """Malformed or out-of-range input."""


def _coerce_symbol(tok):
    if tok is None or tok is WILDCARD or tok == "*":
        return WILDCARD
    if isinstance(tok, (bool, np.bool_)):
        raise InputError(f"not an integer symbol: {tok!r}")
    if isinstance(tok, (int, np.integer)):
        return int(tok)
    if isinstance(tok, str):
        try:
            return int(tok, 10)
        except ValueError:
            raise InputError(f"bad token {tok!r}") from None
    raise InputError(f"not an integer symbol: {tok!r}")


@dataclass(frozen=True)
class Sequence:
    """An integer string in which some positions may be wildcards."""

    symbols: tuple

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(_coerce_symbol(s) for s in self.symbols))

    def __len__(self):
        return len(self.symbols)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return Sequence(self.symbols[idx])
        return self.symbols[idx]

    def __iter__(self):
        return iter(self.symbols)

    def __repr__(self):
        return f"Sequence([{', '.join(map(repr, self.symbols))}])"

    @cached_property
    def has_wildcards(self) -> bool:
        return any(s is WILDCARD for s in self.symbols)

    @cached_property
    def max_abs(self) -> int:
        return max((abs(s) for s in self.symbols if s is not WILDCARD), default=0)

    @cached_property
    def mask(self) -> np.ndarray:
        return build_masks(self)

    @cached_property
    def values(self) -> np.ndarray:
        """Symbols as an integer array, wildcards set to 0.

        int64 when every entry fits, otherwise an object array of Python ints.
        """
        raw = [0 if s is WILDCARD else s for s in self.symbols]
        if self.max_abs < INT64_SAFE:
            return np.array(raw, dtype=np.int64)
        return np.array(raw, dtype=object)

    def require_no_wildcards(self, what="sequence"):
        if self.has_wildcards:
            raise InputError(f"wildcards are not allowed in {what} for Hamming problems")


def as_sequence(seq) -> Sequence:
    if isinstance(seq, Sequence):
        return seq
    if isinstance(seq, np.ndarray):
        seq = seq.tolist()
    return Sequence(tuple(seq))


def build_masks(seq) -> np.ndarray:
    """0/1 mask: 0 exactly at wildcard positions."""
    seq = seq.symbols if isinstance(seq, Sequence) else [_coerce_symbol(s) for s in seq]
    return np.array([0 if s is WILDCARD else 1 for s in seq], dtype=np.int64)


def rational_reduce(num: int, den: int) -> Fraction:
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    return Fraction(int(num), int(den))


def check_pair(text: Sequence, pattern: Sequence):
    m, n = len(pattern), len(text)
    if m < 1:
        raise InputError("pattern must be non-empty")
    if n < m:
        raise InputError(f"text length {n} is shorter than pattern length {m}")


# --- text format ---------------------------------------------------------


def parse_sequence(
    text: str,
    value_bound: int | None = DEFAULT_VALUE_BOUND,
    length_bound: int | None = DEFAULT_LENGTH_BOUND,
) -> Sequence:
    """Parse whitespace-separated integers and ``*``; ``#`` comments to end of line."""
    toks = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        toks.extend(line.split())
    seq = Sequence(tuple(toks))
    if value_bound is not None and seq.max_abs > value_bound:
        raise InputError(f"symbol magnitude {seq.max_abs} exceeds bound {value_bound}")
    if length_bound is not None and len(seq) > length_bound:
        raise InputError(f"sequence length {len(seq)} exceeds bound {length_bound}")
    return seq


def render_sequence(seq, per_line: int = 0) -> str:
    toks = ["*" if s is WILDCARD else str(s) for s in as_sequence(seq)]
    if per_line <= 0:
        return " ".join(toks) + "\n"
    return "".join(" ".join(toks[i : i + per_line]) + "\n" for i in range(0, len(toks), per_line))


# --- profiles -------------------------------------------------------------


def _fractions(num: np.ndarray, den: np.ndarray) -> list:
    return [Fraction(int(a), int(b)) for a, b in zip(num.tolist(), den.tolist())]


@dataclass(frozen=True, eq=False)
class DistanceProfile:
    """Per-alignment distances for a pattern against every window of a text.

    Rational profiles keep reduced numerator/denominator arrays and build
    ``Fraction`` objects on first access; integer (Hamming) profiles keep
    ``denominators=None``. ``coefficients`` holds one (num, den) array pair per
    minimiser coefficient, e.g. ``[(alpha_num, alpha_den)]`` for shifts.
    """

    numerators: np.ndarray
    denominators: np.ndarray | None = None
    coefficients: tuple = field(default=())

    def __len__(self):
        return len(self.numerators)

    @property
    def is_integer(self) -> bool:
        return self.denominators is None

    @cached_property
    def distances(self) -> list:
        if self.denominators is None:
            return [int(v) for v in self.numerators.tolist()]
        return _fractions(self.numerators, self.denominators)

    @cached_property
    def minimisers(self) -> list | None:
        if not self.coefficients:
            return None
        cols = []
        for num, den in self.coefficients:
            if den is None:
                cols.append([None if v is None else int(v) for v in num.tolist()])
            else:
                cols.append(_fractions(num, den))
        return list(zip(*cols))

    def __eq__(self, other):
        if not isinstance(other, DistanceProfile):
            return NotImplemented
        return self.distances == other.distances

    @classmethod
    def from_fractions(cls, values: Iterable, minimisers: _Seq | None = None) -> "DistanceProfile":
        vals = [Fraction(v) for v in values]
        num = np.array([v.numerator for v in vals], dtype=object)
        den = np.array([v.denominator for v in vals], dtype=object)
        coefs = ()
        if minimisers:
            width = len(minimisers[0])
            coefs = tuple(
                (
                    np.array([Fraction(row[c]).numerator for row in minimisers], dtype=object),
                    np.array([Fraction(row[c]).denominator for row in minimisers], dtype=object),
                )
                for c in range(width)
            )
        return cls(num, den, coefs)

    @classmethod
    def from_ints(cls, values: Iterable, minimisers: _Seq | None = None) -> "DistanceProfile":
        coefs = ()
        if minimisers:
            coefs = tuple(
                (np.array([row[c] for row in minimisers], dtype=object), None)
                for c in range(len(minimisers[0]))
            )
        return cls(np.array(list(values), dtype=np.int64), None, coefs)


def reduce_arrays(num: np.ndarray, den: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised canonical form: gcd-reduced with positive denominators."""
    sign = np.where(den < 0, -1, 1)
    num = num * sign
    den = den * sign
    g = np.gcd(num, den)
    g = np.where(g == 0, 1, g)
    return num // g, den // g


def fits_int64(*bounds: int) -> bool:
    return all(int(b) < INT64_SAFE for b in bounds)


def abs_max(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    return int(max(abs(int(arr.max())), abs(int(arr.min()))))


def widen(*arrs):
    """Object-dtype copies of integer arrays (arbitrary precision arithmetic)."""
    out = tuple(a.astype(object) for a in arrs)
    return out if len(out) > 1 else out[0]


def log2_ceil(n: int) -> int:
    return (n - 1).bit_length() if n > 1 else 0
