"""Compare the numba and numpy modular-rank kernels.

    python3 benchmarks/bench_rank.py [--sizes 20,60,120] [--repeat 5]

Inputs are the linear systems the verifier actually solves (the moment-map
differential at Calogero-Moser points) plus random rank-deficient matrices.
"""

import argparse
import time

import numpy as np

from parabolic_moment import _kernels
from parabolic_moment.calogero import cm_representative, sample_cm_params
from parabolic_moment.exact_linalg import residues
from parabolic_moment.moment import dmu_matrix
from parabolic_moment.parabolic import new_context


def best_of(fn, arg, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn(arg)
        times.append(time.perf_counter() - start)
    return min(times), out


def workloads(sizes):
    rng = np.random.default_rng(0)
    for alpha in [(2, 3), (5,), (1, 1, 1, 1, 1)]:
        ctx = new_context(5, alpha)
        q = cm_representative(ctx, sample_cm_params(ctx, rng))
        yield f"dmu alpha={alpha}", residues(dmu_matrix(ctx, q))
    for n in sizes:
        k = n // 2
        m = rng.integers(-9, 10, (n, k)) @ rng.integers(-9, 10, (k, n))
        yield f"random {n}x{n} rank {k}", m % _kernels.PRIME


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="20,60,120")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    sizes = [int(x) for x in args.sizes.split(",")]
    if _kernels.rank_mod_p_numba is None:
        print("numba unavailable; only the numpy kernel is timed")
    else:
        _kernels.rank_mod_p_numba(np.eye(2, dtype=np.int64))  # compile outside the timing
    print(f"{'workload':32} {'shape':>10} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for name, m in workloads(sizes):
        t_np, r_np = best_of(_kernels.rank_mod_p_numpy, m, args.repeat)
        row = f"{name:32} {str(m.shape):>10} {t_np * 1e3:10.3f}"
        if _kernels.rank_mod_p_numba is not None:
            t_nb, r_nb = best_of(_kernels.rank_mod_p_numba, m, args.repeat)
            assert r_nb == r_np, (name, r_nb, r_np)
            row += f" {t_nb * 1e3:10.3f} {t_np / t_nb:8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
