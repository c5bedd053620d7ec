"""Compare the numba and numpy kernels on the Psi screening scan and modular rank.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--max-genus 10000] [--size 200]

Each timing is the best of ``--repeat`` runs after one warm-up call, so numba
compilation is excluded. Both backends must agree on every result.
"""
import argparse
import timeit

import numpy as np

from tautring import kernels


def best_of(fn, repeat):
    fn()
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def bench_psi(max_genus, repeat):
    rows = []
    for r in (3, 4):
        results = {}
        timings = {}
        for backend in ("numba", "numpy"):
            results[backend] = sorted(kernels.psi_zero_candidates(r, 2, max_genus, backend=backend))
            timings[backend] = best_of(lambda: kernels.psi_zero_candidates(r, 2, max_genus, backend=backend), repeat)
        assert results["numba"] == results["numpy"]
        rows.append((f"psi scan r={r}, g<={max_genus}", timings["numba"], timings["numpy"]))
    return rows


def bench_rank(size, repeat):
    rng = np.random.default_rng(0)
    p = kernels.PRIMES[0]
    full = rng.integers(0, p, size=(size, size), dtype=np.int64)
    # rank size // 2: product of two thin random factors, reduced mod p
    left = rng.integers(0, 1000, size=(size, size // 2), dtype=np.int64)
    right = rng.integers(0, 1000, size=(size // 2, size), dtype=np.int64)
    thin = (left @ right) % p
    rows = []
    for label, m in ((f"rank mod p, {size}x{size} full", full), (f"rank mod p, {size}x{size} rank {size // 2}", thin)):
        ranks = {b: kernels.rank_mod_p(m, p, backend=b) for b in ("numba", "numpy")}
        assert ranks["numba"] == ranks["numpy"]
        rows.append(
            (
                label,
                best_of(lambda: kernels.rank_mod_p(m, p, backend="numba"), repeat),
                best_of(lambda: kernels.rank_mod_p(m, p, backend="numpy"), repeat),
            )
        )
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--max-genus", type=int, default=10000)
    parser.add_argument("--size", type=int, default=200)
    args = parser.parse_args()
    if not kernels.NUMBA_AVAILABLE:
        parser.error("numba is not importable (or TAUTRING_DISABLE_NUMBA is set); nothing to compare")
    rows = bench_psi(args.max_genus, args.repeat) + bench_rank(args.size, args.repeat)
    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'numba s':>9}  {'numpy s':>9}  {'speedup':>7}")
    for label, nb, npy in rows:
        print(f"{label:<{width}}  {nb:>9.4f}  {npy:>9.4f}  {npy / nb:>7.2f}")


if __name__ == "__main__":
    main()
