"""Compiled vs pure-Python kernel timings on (s, b, n) grids.

    python3 benchmarks/bench_kernels.py [--sizes 1000 10000 100000] [--repeat 5]
"""

import argparse
import time

import numpy as np

from homfinsler import kernels
from homfinsler.metric import PhiSpec


def grid(m, rng):
    b = rng.uniform(0.05, 0.35, m)  # randers_square needs b < 0.38
    s = b * rng.uniform(-1, 1, m)
    n = rng.integers(2, 7, m).astype(float)
    return s, b * b, n


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=int, nargs="+", default=[1_000, 10_000, 100_000])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    backends = [b for b, ok in kernels.available_backends().items() if ok]
    coeffs = PhiSpec.named("randers_square").float_coeffs
    rng = np.random.default_rng(args.seed)
    jobs = {
        "generic_jets": lambda s, b2, n, be: kernels.generic_jets(coeffs, s, b2, n, backend=be),
        "square_closed": lambda s, b2, n, be: kernels.square_closed(s, b2, n, backend=be),
        "randers_square_closed": lambda s, b2, n, be: kernels.randers_square_closed(s, b2, n, backend=be),
    }
    print(f"{'kernel':<24}{'points':>10}" + "".join(f"{b + ' [ms]':>16}" for b in backends) + f"{'speedup':>10}")
    for m in args.sizes:
        s, b2, n = grid(m, rng)
        for name, fn in jobs.items():
            t = {be: best_of(lambda: fn(s, b2, n, be), args.repeat) for be in backends}
            ref = {be: fn(s, b2, n, be) for be in backends}
            if len(backends) == 2:
                a, c = (ref[be] for be in backends)
                assert np.allclose(a, c, rtol=1e-13, atol=1e-13 * np.abs(a).max()), name
            speed = t["python"] / t["cython"] if len(backends) == 2 else float("nan")
            print(f"{name:<24}{m:>10}" + "".join(f"{1e3 * t[be]:>16.3f}" for be in backends) + f"{speed:>10.1f}")


if __name__ == "__main__":
    main()
