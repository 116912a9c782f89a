"""Compare the numba and pure-numpy kernel paths.

    python3 benchmarks/bench_kernels.py [--repeat 20]

Times the two index-shuffling kernels at several sizes, then one end-to-end
analysis (DCD of a 4 x 4 state) under each path.  Results are printed as a
table; nothing is written to disk.
"""
import argparse
import timeit

import numpy as np

from catrand import _config, _kernels
from catrand.bipartite import BipartiteState, dcd
from catrand.sampling import random_density

SHAPES = [(2, 2, 2), (4, 4, 4), (8, 8, 8), (16, 4, 16), (2, 64, 2)]


def bench(fn, m, a, b, c, repeat):
    fn(m, a, b, c)  # warm-up / compile
    return min(timeit.repeat(lambda: fn(m, a, b, c), number=5, repeat=repeat)) / 5


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=20)
    args = p.parse_args()
    rng = np.random.default_rng(0)

    if not _config.HAVE_NUMBA:
        print("numba not installed; only the numpy path is available")
    print(f"{'kernel':<12} {'a x b x c':<12} {'numpy [us]':>11} {'numba [us]':>11} {'speedup':>8}")
    for a, b, c in SHAPES:
        n = a * b * c
        m = np.ascontiguousarray(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
        for name, f_np, f_nb in (
            ("ptrace", _kernels.ptrace_middle_numpy, _kernels.ptrace_middle_numba),
            ("ptranspose", _kernels.ptranspose_middle_numpy, _kernels.ptranspose_middle_numba),
        ):
            assert np.allclose(f_np(m, a, b, c), f_nb(m, a, b, c))
            t_np = bench(f_np, m, a, b, c, args.repeat) * 1e6
            t_nb = bench(f_nb, m, a, b, c, args.repeat) * 1e6
            print(f"{name:<12} {f'{a}x{b}x{c}':<12} {t_np:>11.1f} {t_nb:>11.1f} {t_np / t_nb:>8.2f}")

    src = BipartiteState(random_density(16, rng), 4, 4)
    saved = _config.USE_NUMBA
    for label, switch in (("numpy", _config.disable_jit), ("numba", _config.enable_jit)):
        switch()
        dcd(src)
        t = min(timeit.repeat(lambda: dcd(src), number=3, repeat=5)) / 3
        print(f"end-to-end DCD of a random 4x4 state, {label} path: {t * 1e3:.2f} ms")
    _config.USE_NUMBA = saved


if __name__ == "__main__":
    main()
