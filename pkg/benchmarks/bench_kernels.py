"""Time the compiled kernels against the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from monoidx import _fallback

try:
    from monoidx import _kernels
except ImportError:
    _kernels = None


def cases(rng):
    y = rng.normal(size=10**6)
    Y = rng.normal(size=(250, 200))
    t = np.linspace(0.0, 1.0, 8000)
    yt = np.sin(6 * t) + rng.normal(size=t.size)
    x = rng.uniform(0.0, 1.0, 2000)
    return [
        ("increment_sums n=1e6", lambda k: k.increment_sums(y)),
        ("group_means M=48 N=20833", lambda k: k.group_means(y, 48, 20833)),
        ("grouped rows 250x200", lambda k: k.grouped_increment_sums_rows(Y, 4, 50)),
        ("nw_smooth 8000->2000 b=0.005", lambda k: k.nw_smooth(t, yt, x, 0.3706506 * 0.005)),
        ("nw_smooth 8000->2000 b=0.05", lambda k: k.nw_smooth(t, yt, x, 0.3706506 * 0.05)),
        ("nw_smooth 8000->2000 b=0.5", lambda k: k.nw_smooth(t, yt, x, 0.3706506 * 0.5)),
    ]


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()
    if _kernels is None:
        print("compiled extension not built; only the fallback is timed")
    rng = np.random.default_rng(0)
    print(f"{'kernel':32s} {'python ms':>10s} {'compiled ms':>12s} {'speedup':>8s}")
    for name, fn in cases(rng):
        py = min(timeit.repeat(lambda: fn(_fallback), number=1, repeat=args.repeat)) * 1e3
        if _kernels is None:
            print(f"{name:32s} {py:10.2f}")
            continue
        c = min(timeit.repeat(lambda: fn(_kernels), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:32s} {py:10.2f} {c:12.2f} {py / c:8.1f}x")


if __name__ == "__main__":
    main()
