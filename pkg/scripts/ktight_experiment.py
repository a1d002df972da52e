#!/usr/bin/env python3
"""How often is a cyclic permutation k-tight?

For random (pattern, window) pairs with m > 6k^2 this script sweeps every
q in 1..m-1 and records the fraction of permutations whose permuted
difference test gives the right verdict. Windows are built as shifted
copies of the pattern with a controlled number of corrupted positions, so
the sweep concentrates on pairs just above and below the threshold. It also
prints the fraction at the non-convergence adversary for contrast.

    python scripts/ktight_experiment.py --pairs 200 --k 2 3 4
"""

from __future__ import annotations

import argparse
import json
from dataclasses import dataclass

import numpy as np

from normmatch.generators import notconv_adversary
from normmatch.randomised import brute_sham_pair, k_tight_check, tight_fraction


@dataclass
class Config:
    pairs: int = 100
    ks: tuple = (2, 3)
    extra_m: int = 40
    sigma: int = 3
    seed: int = 0


def sweep(cfg: Config):
    rng = np.random.default_rng(cfg.seed)
    for k in cfg.ks:
        fracs, above = [], []
        for _ in range(cfg.pairs):
            m = 6 * k * k + int(rng.integers(1, cfg.extra_m + 1))
            pat = rng.integers(-cfg.sigma, cfg.sigma + 1, m)
            win = pat + int(rng.integers(-9, 10))
            e = int(rng.integers(0, 3 * k + 1))
            pos = rng.choice(m, size=e, replace=False)
            win[pos] += rng.integers(1, cfg.sigma + 2, size=e)
            p, w = pat.tolist(), win.tolist()
            frac = tight_fraction(p, w, k)
            fracs.append(frac)
            if brute_sham_pair(p, w) > k:
                above.append(frac)
        rec = {
            "k": k,
            "pairs": cfg.pairs,
            "min_fraction": round(min(fracs), 4),
            "mean_fraction": round(float(np.mean(fracs)), 4),
            "pairs_above_threshold": len(above),
            "min_fraction_above_threshold": round(min(above), 4) if above else None,
            "guaranteed_floor": round(1 / 6, 4),
        }
        print(json.dumps(rec), flush=True)


def adversary_contrast(k=6, m=40):
    rows = []
    for q in range(1, m):
        g = notconv_adversary(q, k, m)
        tight_here = k_tight_check(g.pattern, g.text, q, k)
        others = sum(k_tight_check(g.pattern, g.text, r, k) for r in range(1, m)) / (m - 1)
        rows.append((q, tight_here, others))
    fooled = sum(not t for _, t, _ in rows)
    print(json.dumps({"adversary_k": k, "adversary_m": m, "own_q_not_tight": fooled, "of": m - 1,
                      "mean_fraction_over_all_q": round(float(np.mean([f for *_, f in rows])), 4)}))


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--pairs", type=int, default=Config.pairs)
    ap.add_argument("--k", type=int, nargs="+", default=list(Config.ks))
    ap.add_argument("--extra-m", type=int, default=Config.extra_m)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    sweep(Config(pairs=a.pairs, ks=tuple(a.k), extra_m=a.extra_m, seed=a.seed))
    adversary_contrast()


if __name__ == "__main__":
    main()
