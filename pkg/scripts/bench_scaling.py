#!/usr/bin/env python3
"""Wall-clock scaling of the fast profiles.

Times shift / shift-scale L2 profiles while doubling n at fixed m, and the
bounded shift-Hamming profile while doubling k at fixed n and m. Prints one
JSON object per measurement and a short summary of doubling ratios.

    python scripts/bench_scaling.py --max-log-n 21 --m 1024
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass

import numpy as np

from normmatch import Sequence, shift_l2_profile, shift_scale_l2_profile, skmismatch_profile


@dataclass
class Config:
    min_log_n: int = 16
    max_log_n: int = 20
    m: int = 1024
    value_bound: int = 2**20
    ham_n: int = 2**15
    ham_m: int = 256
    ham_sigma: int = 2
    ks: tuple = (1, 2, 4, 8, 16, 32)
    repeats: int = 3
    seed: int = 0


def best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def rand_seq(rng, length, bound):
    seq = Sequence(tuple(rng.integers(-bound, bound + 1, length).tolist()))
    seq.values, seq.mask  # build cached arrays before timing
    return seq


def run(cfg: Config):
    rng = np.random.default_rng(cfg.seed)
    pat = rand_seq(rng, cfg.m, cfg.value_bound)
    rows = []
    for log_n in range(cfg.min_log_n, cfg.max_log_n + 1):
        text = rand_seq(rng, 2**log_n, cfg.value_bound)
        for name, fn in (("shift_l2", shift_l2_profile), ("shift_scale_l2", shift_scale_l2_profile)):
            secs = best_of(lambda: fn(text, pat), cfg.repeats)
            rows.append({"op": name, "n": 2**log_n, "m": cfg.m, "seconds": round(secs, 4)})
            print(json.dumps(rows[-1]), flush=True)
    text = rand_seq(rng, cfg.ham_n, cfg.ham_sigma)
    hp = rand_seq(rng, cfg.ham_m, cfg.ham_sigma)
    for k in cfg.ks:
        secs = best_of(lambda: skmismatch_profile(text, hp, k), cfg.repeats)
        rows.append({"op": "skmismatch", "n": cfg.ham_n, "m": cfg.ham_m, "k": k, "seconds": round(secs, 4)})
        print(json.dumps(rows[-1]), flush=True)
    return rows


def summarise(rows):
    for op in ("shift_l2", "shift_scale_l2"):
        ts = [r["seconds"] for r in rows if r["op"] == op]
        ratios = [b / a for a, b in zip(ts, ts[1:])]
        print(f"# {op}: doubling-n ratios {', '.join(f'{x:.2f}' for x in ratios)}")
    ks = [r for r in rows if r["op"] == "skmismatch"]
    slope = np.polyfit(np.log([r["k"] for r in ks]), np.log([r["seconds"] for r in ks]), 1)[0]
    print(f"# skmismatch: log-log slope in k = {slope:.2f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    for f in ("min_log_n", "max_log_n", "m", "value_bound", "ham_n", "ham_m", "repeats", "seed"):
        ap.add_argument("--" + f.replace("_", "-"), type=int, default=getattr(Config, f))
    ap.add_argument("--ks", type=int, nargs="+", default=list(Config.ks))
    args = vars(ap.parse_args())
    args["ks"] = tuple(args["ks"])
    cfg = Config(**args)
    print("# config " + json.dumps(asdict(cfg)))
    summarise(run(cfg))


if __name__ == "__main__":
    main()
