"""Compare the numba kernels with the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--repeats 5]

Each row reports the median wall time of one call after a warm-up call
(so numba compilation is excluded) and checks both backends agree.
"""

import argparse
import statistics
import time

import numpy as np

from planarfield.extfield import ExtFieldCtx
from planarfield.kernels import numba_impl, numpy_impl
from planarfield.linearized import DOPoly, spread_basis


def median_time(fn, args, repeats):
    fn(*args)
    samples = []
    for _ in range(repeats):
        t = time.perf_counter()
        fn(*args)
        samples.append(time.perf_counter() - t)
    return statistics.median(samples)


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def cases(rng):
    p = 3
    A = rng.integers(0, p, size=(64, 64), dtype=np.int64)
    B = rng.integers(0, p, size=(64, 64), dtype=np.int64)
    yield "matmul 64x64", "matmul", (A, B, p)
    yield "rref 64x128", "rref", (rng.integers(0, p, size=(64, 128), dtype=np.int64), p)
    Ms = rng.integers(0, p, size=(2000, 5, 5), dtype=np.int64)
    yield "batch_inverse 2000 x 5x5", "batch_inverse", (Ms, p)
    ctx = ExtFieldCtx(3, 32)
    T = ctx.mult_matrix(ctx.random(rng, nonzero=True)).a.copy()
    yield "local_minpolys T_beta n=32", "local_minpolys", (T, p)
    ctx = ExtFieldCtx(3, 5)
    D = spread_basis(DOPoly.twisted(ctx, 1)).matrices_for(ctx.projective_coords())
    invs, ok = numpy_impl.batch_inverse(D, p)
    yield "quotient_keys 122 x 121 (3^5)", "quotient_keys", (D, invs[ok][:40], p)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if numba_impl is None:
        raise SystemExit("numba is not importable; nothing to compare")
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':32s} {'numba ms':>10s} {'numpy ms':>10s} {'speedup':>8s}  agree")
    for label, name, call_args in cases(rng):
        fa, fb = getattr(numba_impl, name), getattr(numpy_impl, name)
        ta = median_time(fa, call_args, args.repeats)
        tb = median_time(fb, call_args, args.repeats)
        agree = same(fa(*call_args), fb(*call_args))
        print(f"{label:32s} {ta * 1e3:10.2f} {tb * 1e3:10.2f} {tb / ta:8.1f}  {agree}")


if __name__ == "__main__":
    main()
