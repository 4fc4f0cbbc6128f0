"""Compare the compiled and pure-Python rank kernels.

Workloads are boundary matrices taken from real computations plus random
sparse integer matrices.  Dense-ish random blocks overflow 64-bit entries
and fall back to the pure kernel, which shows up as a speedup near 1.  Every matrix is ranked under both kernels; the
ranks must agree and the best-of-N wall time of each is reported.

    python3 benchmarks/bench_rank.py [--repeat 3] [--random 200] [--seed 0]
"""
from __future__ import annotations

import argparse
import random
import time

from hochdual import linalg
from hochdual.core import Window
from hochdual.hochschild import hochschild_chains
from hochdual.specio import load_corpus


def chain_blocks(name: str, w: Window) -> list[list[dict]]:
    c = hochschild_chains(load_corpus(name), w).complex
    return [c.d.block(n).cols for n in range(w.lo + 1, w.hi + 1) if c.space.dim(n) and c.space.dim(n - 1)]


def random_block(rng: random.Random, rows: int, cols: int, density: float) -> list[dict]:
    return [{i: rng.choice((-3, -2, -1, 1, 2, 3)) for i in range(rows) if rng.random() < density}
            for _ in range(cols)]


def workloads(n_random: int, seed: int) -> dict[str, list[list[dict]]]:
    rng = random.Random(seed)
    return {
        "HH chains M2(dual numbers), degrees 0..4": chain_blocks("mat2_dual", Window(0, 4)),
        "HH chains k[x]/x^4, degrees 0..6": chain_blocks("x4", Window(0, 6)),
        f"random 60x60, density 0.1 (x{n_random})": [random_block(rng, 60, 60, 0.1) for _ in range(n_random)],
        f"random 150x120, density 0.03 (x{n_random // 4})":
            [random_block(rng, 150, 120, 0.03) for _ in range(max(1, n_random // 4))],
    }


def time_kernel(name: str, mats: list[list[dict]], repeat: int) -> tuple[float, list[int]]:
    linalg.set_kernel(name)
    best = float("inf")
    ranks: list[int] = []
    for _ in range(repeat):
        t = time.perf_counter()
        ranks = [linalg.rank(m) for m in mats]
        best = min(best, time.perf_counter() - t)
    return best, ranks


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--random", type=int, default=200, help="number of random matrices")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if linalg._rank_ext is None:
        raise SystemExit("compiled kernel not built; run `pip install -e . --no-build-isolation`")
    old = linalg.kernel_name()
    print(f"{'workload':48s} {'mats':>5s} {'python s':>9s} {'compiled s':>11s} {'speedup':>8s}")
    try:
        for label, mats in workloads(args.random, args.seed).items():
            tp, rp = time_kernel("python", mats, args.repeat)
            tc, rc = time_kernel("compiled", mats, args.repeat)
            if rp != rc:
                raise SystemExit(f"kernels disagree on {label}")
            print(f"{label:48s} {len(mats):5d} {tp:9.4f} {tc:11.4f} {tp / tc if tc else float('inf'):7.1f}x")
    finally:
        linalg.set_kernel(old)


if __name__ == "__main__":
    main()
