"""Time the compiled and pure-Python kernel backends on the real workloads.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import time

import numpy as np

from kuechle_lab import kernels
from kuechle_lab.complete_quadrics import symmetric_points
from kuechle_lab.linalg import enumerate_subspaces
from kuechle_lab.pencils import block_pencil, hyperbolic_quadric, standard_pencil
from kuechle_lab.scalars import GF


def workloads():
    P = standard_pencil([1, 2], GF(5))
    b5 = np.array(list(enumerate_subspaces(2, 4, 5)), dtype=np.int64)
    f5 = np.array([P.A.values(), P.B.values()], dtype=np.int64)
    P3 = block_pencil([(1, 0), (1, 1), (0, 1)], GF(2))
    b36 = np.array(list(enumerate_subspaces(3, 6, 2)), dtype=np.int64)
    f36 = np.array([P3.A.values(), P3.B.values()], dtype=np.int64)
    b26 = np.array(list(enumerate_subspaces(2, 6, 3)), dtype=np.int64)
    q6 = np.array(hyperbolic_quadric(GF(3)).values(), dtype=np.int64)
    sym3 = np.array(symmetric_points(3), dtype=np.int64)
    return [
        ("lagrangians Gr(2,4)(F_5)", kernels.bilinear_isotropic_mask, (b5, f5, 5)),
        ("lagrangians Gr(3,6)(F_2)", kernels.bilinear_isotropic_mask, (b36, f36, 2)),
        ("quadric lines Gr(2,6)(F_3)", kernels.quadratic_isotropic_mask, (b26, q6, 3)),
        ("complete quadrics q=3", kernels.scalar_product_fibers, (sym3, 3)),
    ]


def best_of(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.available_backends()
    print(f"{'workload':32}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for name, fn, fargs in workloads():
        times = {}
        results = []
        for b in backends:
            with kernels.use_backend(b):
                times[b] = best_of(fn, fargs, args.repeat)
                results.append(fn(*fargs))
        assert all(np.array_equal(results[0], r) for r in results[1:]), name
        speed = times["python"] / times["compiled"] if "compiled" in times else float("nan")
        print(f"{name:32}" + "".join(f"{times[b] * 1e3:10.2f}ms" for b in backends) + f"{speed:9.1f}x")


if __name__ == "__main__":
    main()
