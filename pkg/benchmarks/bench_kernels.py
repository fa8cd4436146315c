"""Time the numba kernels against their pure-numpy twins.

Run:  python benchmarks/bench_kernels.py [--repeat N]

The numba functions are called once before timing so JIT compilation (or
cache loading) is excluded.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from qsrg_verify import _kernels as K
from qsrg_verify import cayley, groups
from qsrg_verify.corpus import group_from_spec


def _best(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def cases():
    d8 = group_from_spec("D8")
    sq = groups.direct_square(d8)
    h = groups.subgroup_generated(d8, [8])
    graph = cayley.gamma_graph(d8, h, sq)
    adj = graph.adjacency
    shifted = adj.astype(np.int64) - 2 * np.eye(adj.shape[0], dtype=np.int64)
    yield "is_associative (order 256)", K.is_associative_numpy, K.is_associative_numba, (sq.table,)
    mask = cayley.connection_set_SH(d8, h, sq).mask
    yield "cayley_adjacency (256 vertices)", K.cayley_adjacency_numpy, K.cayley_adjacency_numba, (sq.table, sq.inverses, mask)
    yield "rank_mod_p (256 x 256)", K.rank_mod_p_numpy, K.rank_mod_p_numba, (shifted,)
    bits = K.pack_rows(adj)
    yield "common_neighbor_counts (256)", K.common_neighbor_counts_numpy, K.common_neighbor_counts_numba, (bits,)
    a = adj.astype(np.int64)
    yield "int_matmul (256 x 256)", K.int_matmul_numpy, K.int_matmul_numba, (a, a)


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)
    if not K.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    print(f"{'kernel':<34} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for name, np_fn, nb_fn, fargs in cases():
        r_np, r_nb = np_fn(*fargs), nb_fn(*fargs)  # warm-up, and agreement check
        assert np.array_equal(np.asarray(r_np), np.asarray(r_nb)), name
        t_np = _best(np_fn, fargs, args.repeat)
        t_nb = _best(nb_fn, fargs, args.repeat)
        print(f"{name:<34} {t_np * 1e3:>10.2f} {t_nb * 1e3:>10.2f} {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
