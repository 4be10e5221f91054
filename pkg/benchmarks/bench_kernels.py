"""Time the numba kernels against their numpy twins.

    python3 benchmarks/bench_kernels.py [--repeat 5]

The first numba call of each kernel includes compilation (or a cache load)
and is reported separately.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from qfree.kernels import _numba, _numpy


def _time(fn, *args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def cases(rng: np.random.Generator):
    for n in (12, 16, 20):
        masks = np.array([int(rng.integers(1, 1 << n)) for _ in range(n)], dtype=np.int64)
        yield f"hereditary_saturated_masks n={n}", "hereditary_saturated_masks", (masks,)
    for n in (50, 200, 400):
        adj = rng.random((n, n)) < 2.0 / n
        yield f"transitive_closure n={n}", "transitive_closure", (adj,)
    for k in (2, 3):
        gens = np.array([1.0, -2 ** 0.5, 3 ** 0.5][:k])
        yield f"semigroup_grid_hits {k} gens, coef 60", "semigroup_grid_hits", (gens, 60, -10.0, 10.0, 0.05)


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    rng = np.random.default_rng(args.seed)
    print(f"{'case':<40} {'numpy':>10} {'numba':>10} {'first':>10} {'speedup':>8}")
    for title, name, params in cases(rng):
        t0 = time.perf_counter()
        getattr(_numba, name)(*params)
        first = time.perf_counter() - t0
        t_np = _time(getattr(_numpy, name), *params, repeat=args.repeat)
        t_nb = _time(getattr(_numba, name), *params, repeat=args.repeat)
        print(f"{title:<40} {t_np * 1e3:>8.2f}ms {t_nb * 1e3:>8.2f}ms {first * 1e3:>8.1f}ms "
              f"{t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
