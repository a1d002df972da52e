"""``normmatch`` command-line interface.

Inputs are sequence files in the plain text format (integers and ``*``,
``#`` comments). A command takes ``PATTERN TEXT`` as two paths, or a single
path holding a *pair stream*: the pattern block, a line containing only
``--``, then the text block. ``-`` reads standard input. The ``gen-*``
commands write pair streams, so they pipe straight into any other command.
"""

from __future__ import annotations

import argparse
import json
import secrets
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import generators as gen
from . import hamming, l2, oracles, randomised
from .core import DEFAULT_LENGTH_BOUND, DEFAULT_VALUE_BOUND, InputError, Sequence, parse_sequence, render_sequence
from .correlation import ExactnessError

PAIR_SEPARATOR = "--"

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_EXACTNESS = 2


@dataclass
class Command:
    """A validated invocation, independent of argparse."""

    subcommand: str
    pattern_path: str | None = None
    text_path: str | None = None
    k: int | None = None
    degree: int | None = None
    confidence: int = 2
    seed: int | None = None
    with_minimisers: bool = False
    decimal: int | None = None
    value_bound: int | None = DEFAULT_VALUE_BOUND
    max_degree: int = l2.DEFAULT_MAX_DEGREE
    extra: dict = field(default_factory=dict)


# --- input ------------------------------------------------------------------


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="ascii") as fh:
        return fh.read()


def split_pair_stream(data: str) -> tuple[str, str]:
    lines = data.splitlines()
    cuts = [i for i, ln in enumerate(lines) if ln.split("#", 1)[0].strip() == PAIR_SEPARATOR]
    if len(cuts) != 1:
        raise InputError(f"a pair stream needs exactly one '{PAIR_SEPARATOR}' separator line")
    c = cuts[0]
    return "\n".join(lines[:c]), "\n".join(lines[c + 1 :])


def load_pair(cmd: Command) -> tuple[Sequence, Sequence]:
    """(text, pattern) parsed under the command's magnitude bound."""
    if cmd.pattern_path is None:
        raise InputError("missing input path")
    if cmd.text_path is None:
        pat_src, text_src = split_pair_stream(_read(cmd.pattern_path))
    else:
        if cmd.pattern_path == "-" and cmd.text_path == "-":
            raise InputError("only one input may come from standard input")
        pat_src, text_src = _read(cmd.pattern_path), _read(cmd.text_path)
    pattern = parse_sequence(pat_src, cmd.value_bound, DEFAULT_LENGTH_BOUND)
    text = parse_sequence(text_src, cmd.value_bound, DEFAULT_LENGTH_BOUND)
    if len(pattern) == 0:
        raise InputError("pattern is empty")
    if len(text) < len(pattern):
        raise InputError(f"text length {len(text)} is shorter than pattern length {len(pattern)}")
    return text, pattern


def render_pair(pattern, text, meta: dict | None = None) -> str:
    head = f"# {json.dumps(meta, sort_keys=True)}\n" if meta is not None else ""
    return head + render_sequence(pattern) + PAIR_SEPARATOR + "\n" + render_sequence(text)


# --- output -----------------------------------------------------------------


def format_value(v, decimal: int | None = None) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, Fraction):
        if decimal is None:
            return str(v)
        return _decimal(v, decimal)
    return str(v)


def _decimal(v: Fraction, digits: int) -> str:
    scaled = round(abs(v) * 10**digits)
    sign = "-" if v < 0 and scaled else ""
    whole, frac = divmod(scaled, 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def format_rows(values, minimisers=None, decimal: int | None = None) -> str:
    out = []
    for i, v in enumerate(values):
        cells = [str(i), format_value(v, decimal)]
        if minimisers is not None:
            cells.extend(format_value(c, decimal) for c in minimisers[i])
        out.append("\t".join(cells))
    return "".join(row + "\n" for row in out)


# --- dispatch ---------------------------------------------------------------


def _need_k(cmd: Command) -> int:
    if cmd.k is None or cmd.k < 0:
        raise InputError("--k must be a non-negative integer")
    return cmd.k


def _profile_result(cmd: Command, text, pattern):
    """(values, minimisers or None) for a profile or decision subcommand."""
    name = cmd.subcommand
    if name == "l2-shift":
        prof = l2.shift_l2_profile(text, pattern)
    elif name == "l2-shiftscale":
        prof = l2.shift_scale_l2_profile(text, pattern)
    elif name == "l2-poly":
        prof = l2.poly_l2_profile(text, pattern, cmd.degree, max_degree=cmd.max_degree)
    elif name == "ham-shift":
        prof = hamming.sham_profile(text, pattern)
    elif name == "kmismatch":
        prof = hamming.skmismatch_profile(text, pattern, _need_k(cmd))
    elif name == "exact-shift":
        return l2.exact_shift_match(text, pattern), None
    elif name == "exact-shiftscale":
        return l2.exact_shift_scale_match(text, pattern), None
    elif name == "kdecision":
        k = _need_k(cmd)
        if cmd.confidence < 0:
            raise InputError("--confidence must be non-negative")
        return randomised.skdecision(text, pattern, k, c=cmd.confidence, seed=cmd.seed), None
    elif name == "oracle":
        oname = ORACLE_ALIASES.get(cmd.extra["name"], cmd.extra["name"])
        if oname not in oracles.ORACLES:
            raise InputError(f"unknown oracle {cmd.extra['name']!r}; choose from {sorted(oracles.ORACLES)}")
        fn = oracles.ORACLES[oname]
        if oname == "poly-l2":
            if cmd.degree is None:
                raise InputError("oracle poly-l2 needs --degree")
            prof = fn(text, pattern, cmd.degree)
        else:
            prof = fn(text, pattern)
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(f"unknown subcommand {name!r}")
    return prof.distances, prof.minimisers if cmd.with_minimisers else None


ORACLE_ALIASES = {
    "l2-shift": "shift-l2",
    "l2-shiftscale": "shift-scale-l2",
    "l2-poly": "poly-l2",
    "ham-shift": "sham",
    "ham-shiftscale": "ssham",
}


def _generate(cmd: Command) -> str:
    x = cmd.extra
    rng = np.random.default_rng(cmd.seed)
    if cmd.subcommand == "gen-3sum":
        if x.get("elements"):
            inst = gen.ThreeSumInstance(tuple(x["elements"]))
        else:
            inst = gen.random_threesum(x["size"], rng, x["planted"])
        g = gen.threesum_to_sham(inst, cmd.value_bound)
    elif cmd.subcommand == "gen-geombase":
        if x.get("points"):
            inst = gen.GeomBaseInstance(tuple(_parse_point(p) for p in x["points"]))
        else:
            inst = gen.random_geombase(x["size"], rng, x["planted"])
        g = gen.geombase_to_ssham(inst)
    else:
        g = gen.notconv_adversary(x["q"], _need_k(cmd), x["m"])
    if x.get("pattern_out") or x.get("text_out"):
        if not (x.get("pattern_out") and x.get("text_out")):
            raise InputError("--pattern-out and --text-out must be given together")
        head = f"# {json.dumps(g.meta, sort_keys=True)}\n"
        with open(x["pattern_out"], "w", encoding="ascii") as fh:
            fh.write(head + render_sequence(g.pattern))
        with open(x["text_out"], "w", encoding="ascii") as fh:
            fh.write(head + render_sequence(g.text))
        return ""
    return render_pair(g.pattern, g.text, g.meta)


def _parse_point(tok: str):
    try:
        xs, ys = tok.split(",")
        return int(xs), int(ys)
    except ValueError:
        raise InputError(f"bad point {tok!r}; expected X,Y") from None


BENCH_TARGETS = ("l2-shift", "l2-shiftscale", "l2-poly", "exact-shift", "exact-shiftscale",
                 "ham-shift", "kmismatch", "kdecision")


def _bench(cmd: Command) -> str:
    x = cmd.extra
    target = x["name"]
    if target not in BENCH_TARGETS:
        raise InputError(f"unknown bench target {target!r}; choose from {list(BENCH_TARGETS)}")
    rng = np.random.default_rng(cmd.seed)
    lines = []
    for n in x["n"]:
        for m in x["m"]:
            if m > n:
                continue
            for k in x["k"]:
                text = Sequence(tuple(rng.integers(-x["sigma"], x["sigma"] + 1, size=n).tolist()))
                pattern = Sequence(tuple(rng.integers(-x["sigma"], x["sigma"] + 1, size=m).tolist()))
                sub = Command(target, k=k, degree=cmd.degree or 2, confidence=cmd.confidence,
                              seed=cmd.seed, max_degree=cmd.max_degree)
                for rep in range(x["repeats"]):
                    t0 = time.perf_counter()
                    _profile_result(sub, text, pattern)
                    dt = time.perf_counter() - t0
                    rec = {"bench": target, "n": n, "m": m, "k": k, "repeat": rep, "seconds": round(dt, 6)}
                    if target == "l2-poly":
                        rec["degree"] = sub.degree
                    lines.append(json.dumps(rec))
    return "".join(line + "\n" for line in lines)


def execute(cmd: Command, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    if cmd.subcommand.startswith("gen-"):
        out.write(_generate(cmd))
        return EXIT_OK
    if cmd.subcommand == "bench":
        out.write(_bench(cmd))
        return EXIT_OK
    text, pattern = load_pair(cmd)
    if cmd.subcommand == "kdecision" and cmd.seed is None:
        cmd.seed = secrets.randbits(63)
    if cmd.subcommand == "kdecision":
        err.write(f"seed={cmd.seed}\n")
    values, mins = _profile_result(cmd, text, pattern)
    out.write(format_rows(values, mins, cmd.decimal))
    return EXIT_OK


# --- argparse ---------------------------------------------------------------


def _nonneg(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="normmatch", description="Normalised pattern-matching distance profiles.")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    def inputs(p):
        p.add_argument("pattern", help="pattern file, or a pair stream when TEXT is omitted ('-' = stdin)")
        p.add_argument("text", nargs="?", help="text file")
        p.add_argument("--value-bound", type=_nonneg, default=DEFAULT_VALUE_BOUND,
                       help="reject symbols with larger magnitude (0 disables the check)")
        p.add_argument("--decimal", type=_nonneg, metavar="D", help="print D-digit decimals instead of p/q")

    def with_mins(p):
        p.add_argument("--with-minimisers", action="store_true", help="append minimiser columns")

    for name, helptext in (
        ("l2-shift", "L2 distance minimised over shifts"),
        ("l2-shiftscale", "L2 distance minimised over shift and scale"),
        ("ham-shift", "Hamming distance minimised over shifts"),
    ):
        p = sub.add_parser(name, help=helptext)
        inputs(p)
        with_mins(p)
    p = sub.add_parser("l2-poly", help="L2 distance minimised over degree-R polynomials")
    inputs(p)
    with_mins(p)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=l2.DEFAULT_MAX_DEGREE)
    for name in ("exact-shift", "exact-shiftscale"):
        inputs(sub.add_parser(name, help=f"{name.split('-')[1]} exact matching (0/1 per alignment)"))
    p = sub.add_parser("kmismatch", help="shift-Hamming distance capped at k+1")
    inputs(p)
    with_mins(p)
    p.add_argument("--k", type=int, required=True)
    p = sub.add_parser("kdecision", help="randomised decision: shift-Hamming distance <= k")
    inputs(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--confidence", type=int, default=2)
    p.add_argument("--seed", type=_nonneg)
    p = sub.add_parser("oracle", help="run a brute-force oracle")
    p.add_argument("name", help=f"one of {sorted(oracles.ORACLES)} (CLI names also accepted)")
    inputs(p)
    with_mins(p)
    p.add_argument("--degree", type=int)

    def gen_common(p):
        p.add_argument("--seed", type=_nonneg)
        p.add_argument("--pattern-out")
        p.add_argument("--text-out")

    p = sub.add_parser("gen-3sum", help="3SUM reduction instance for shift-Hamming")
    p.add_argument("--elements", type=int, nargs="+")
    p.add_argument("--size", type=int, default=5)
    p.add_argument("--planted", action="store_true")
    p.add_argument("--value-bound", type=_nonneg, default=DEFAULT_VALUE_BOUND)
    gen_common(p)
    p = sub.add_parser("gen-geombase", help="GEOMBASE reduction instance for shift-scale Hamming")
    p.add_argument("--points", nargs="+", metavar="X,Y")
    p.add_argument("--size", type=int, default=6)
    p.add_argument("--planted", action="store_true")
    gen_common(p)
    p = sub.add_parser("gen-adversary", help="pair on which one cyclic permutation is not k-tight")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    gen_common(p)

    p = sub.add_parser("bench", help="time a subcommand on random inputs (JSON lines)")
    p.add_argument("name", help=f"one of {list(BENCH_TARGETS)}")
    p.add_argument("--n", type=int, nargs="+", default=[4096])
    p.add_argument("--m", type=int, nargs="+", default=[64])
    p.add_argument("--k", type=int, nargs="+", default=[2])
    p.add_argument("--degree", type=int)
    p.add_argument("--confidence", type=int, default=2)
    p.add_argument("--sigma", type=int, default=3, help="symbols drawn from [-sigma, sigma]")
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--seed", type=_nonneg)
    return ap


def command_from_args(ns: argparse.Namespace) -> Command:
    get = lambda name, default=None: getattr(ns, name, default)  # noqa: E731
    vb = get("value_bound", DEFAULT_VALUE_BOUND)
    extra = {
        key: get(key)
        for key in ("name", "elements", "size", "planted", "points", "q", "m", "n", "sigma",
                    "repeats", "pattern_out", "text_out")
        if hasattr(ns, key)
    }
    if ns.subcommand == "bench":
        extra["k"] = ns.k
        k = None
    else:
        k = get("k")
    return Command(
        subcommand=ns.subcommand,
        pattern_path=get("pattern"),
        text_path=get("text"),
        k=k,
        degree=get("degree"),
        confidence=get("confidence", 2),
        seed=get("seed"),
        with_minimisers=bool(get("with_minimisers", False)),
        decimal=get("decimal"),
        value_bound=vb or None,
        max_degree=get("max_degree", l2.DEFAULT_MAX_DEGREE),
        extra=extra,
    )


def run(argv=None, out=None, err=None) -> int:
    err = err or sys.stderr
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors; that code means exactness here
        return EXIT_INPUT if exc.code else EXIT_OK
    cmd = command_from_args(ns)
    try:
        return execute(cmd, out, err)
    except ExactnessError as exc:
        err.write(f"normmatch: exactness bound failure: {exc}\n")
        return EXIT_EXACTNESS
    except (InputError, ValueError, OSError) as exc:
        err.write(f"normmatch: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
