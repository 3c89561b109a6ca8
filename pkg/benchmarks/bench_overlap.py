"""Compare the compiled and numpy backends of the pairwise overlap scan.

Usage: python benchmarks/bench_overlap.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

from sparsecs import compose, devore_matrix, execute_plan, hadamard_expand, kernels, plan_row_size, sign_flip


def cases():
    yield "plan m=188", execute_plan(plan_row_size(188))
    yield "compose (5,1)x(7,1) k=5", compose(devore_matrix(5, 1), devore_matrix(7, 1), 5)
    yield "compose (5,2)x(5,2) k=5", compose(devore_matrix(5, 2), devore_matrix(5, 2), 5)
    yield "signflip (5,2)x(5,2) k=5", sign_flip(compose(devore_matrix(5, 2), devore_matrix(5, 2), 5))
    yield "hadamard (7,1) r'=1", hadamard_expand(devore_matrix(7, 1), 1)
    yield "hadamard (3,1)x(5,1) k=3 r'=1", hadamard_expand(compose(devore_matrix(3, 1), devore_matrix(5, 1), 3), 1)


def scan(matrix, backend):
    if hasattr(matrix, "tuples"):
        return kernels.max_abs_inner(matrix.tuples, backend=backend)
    return kernels.max_abs_inner(matrix.rows, matrix.signs, aligned=matrix.is_block_form, backend=backend)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = sorted(kernels.BACKENDS)
    print(f"{'case':<28}{'columns':>9}" + "".join(f"{b + ' (s)':>14}" for b in backends) + f"{'speedup':>10}")
    for name, m in cases():
        times, results = {}, set()
        for b in backends:
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                res = scan(m, b)
                best = min(best, time.perf_counter() - t0)
            times[b] = best
            results.add(tuple(res))
        if len(results) != 1:
            raise SystemExit(f"{name}: backends disagree {results}")
        speed = f"{times['numpy'] / times['cython']:.1f}x" if "cython" in times else "n/a"
        print(f"{name:<28}{m.shape[1]:>9}" + "".join(f"{times[b]:>14.4f}" for b in backends) + f"{speed:>10}")


if __name__ == "__main__":
    main()
