"""Time each enumeration kernel on its numba path and on its numpy path.

    python3 benchmarks/bench_kernels.py [--repeat 3]

The first numba call compiles (or loads from cache) and is timed separately.
Each row also checks that both paths return the same result.
"""
import argparse
import itertools
import time

import numpy as np

from torusinv import _kernels
from torusinv.ffield import PolyField, build_field
from torusinv.oracle import _block_perm, _torus_matrices
from torusinv.weyl import WeylClassLabel


def orbit_case():
    label = WeylClassLabel((2, 1, 1))
    sub, blocks = _torus_matrices(3, 1, label)
    starts = np.cumsum([0] + list(label.positive))[:-1]
    perms = np.array([_block_perm(sub, m, int(s), 4) for m, s in zip(blocks, starts)])
    perms = np.repeat(perms, 50, axis=0)
    return lambda u: _kernels.count_orbits(perms, use_numba=u)


def trivial_case():
    rng = np.random.default_rng(0)
    coef = rng.integers(-40, 40, size=(3, 7))
    moduli = np.array([80, 26, 728])
    return lambda u: _kernels.count_trivial(coef, moduli, 5, use_numba=u)


def power_case():
    f = build_field(2, 16)
    mult = f._mult_matrix(f.generator)
    return lambda u: _kernels.power_sequence(mult, 2, f.q - 1, use_numba=u)


def subset_case():
    perms = np.array(list(itertools.permutations(range(8))))
    return lambda u: _kernels.fixed_subset_counts(perms, use_numba=u)


def poly_case():
    f = PolyField(7, 8)
    rng = np.random.default_rng(1)
    a = f.digits(rng.integers(0, f.q, size=200_000))
    b = f.digits(rng.integers(0, f.q, size=200_000))
    return lambda u: _kernels.poly_mul(a, b, f._reduce, f.p, use_numba=u)


CASES = {
    "count_orbits (81 points, 150 gens)": orbit_case,
    "count_trivial (5^7 vectors)": trivial_case,
    "power_sequence (F_2^16)": power_case,
    "fixed_subset_counts (S_8)": subset_case,
    "poly_mul (200k products in F_7^8)": poly_case,
}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _kernels.NUMBA_AVAILABLE:
        raise SystemExit("numba is not installed; nothing to compare")
    print(f"{'kernel':38} {'first call':>11} {'numba':>10} {'numpy':>10} {'speedup':>8}  same")
    for name, make in CASES.items():
        run = make()
        t = time.perf_counter()
        run(True)
        first = time.perf_counter() - t
        t_nb, out_nb = best_of(lambda: run(True), args.repeat)
        t_np, out_np = best_of(lambda: run(False), args.repeat)
        same = np.array_equal(np.asarray(out_nb), np.asarray(out_np))
        print(f"{name:38} {first:10.3f}s {t_nb:9.4f}s {t_np:9.4f}s {t_np / t_nb:7.1f}x  {same}")


if __name__ == "__main__":
    main()
