"""Compare the compiled kernels with the pure-Python fallback.

Usage: ``python benchmarks/bench_kernels.py [--repeat N]``
"""

import argparse
import timeit
from fractions import Fraction

from drgricci import catalog, kernels
from drgricci.transport import lazy_measure


def transport_problem(g, x, y, eps):
    """Integer supply, demand and cost arrays for ``W1(mu_x^eps, mu_y^eps)``."""
    mu, nu = lazy_measure(g, x, eps), lazy_measure(g, y, eps)
    scale = max(w.denominator for _, w in mu.support + nu.support)
    supply = [int(w * scale) for _, w in mu.support]
    demand = [int(w * scale) for _, w in nu.support]
    cost = [[g.distance(u, v) for v, _ in nu.support] for u, _ in mu.support]
    return supply, demand, cost


def cases(g):
    indptr, indices = g.csr
    row = kernels.python_backend.bfs_distances(indptr, indices, 0)
    far = int(row.argmax())
    problem = transport_problem(g, 0, far, Fraction(1, 23))
    return {
        "bfs (one source)": lambda b: b.bfs_distances(indptr, indices, 0),
        "all-pairs distances": lambda b: b.all_pairs_distances(indptr, indices),
        "shell counts": lambda b: b.shell_counts(indptr, indices, row),
        "transport (antipodal pair)": lambda b: b.transport(*problem),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    if kernels.compiled_backend is None:
        print("compiled extension not built; nothing to compare")
        return 1
    g = catalog.golay_coset_shortened()
    print(f"graph: shortened Golay coset graph, n={g.n}, edges={g.edge_count}")
    print(f"{'kernel':<28} {'python (s)':>11} {'compiled (s)':>13} {'speed-up':>9}")
    for name, fn in cases(g).items():
        t_py = min(timeit.repeat(lambda: fn(kernels.python_backend), number=1, repeat=args.repeat))
        t_cy = min(timeit.repeat(lambda: fn(kernels.compiled_backend), number=1, repeat=args.repeat))
        print(f"{name:<28} {t_py:>11.4f} {t_cy:>13.4f} {t_py / t_cy:>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
