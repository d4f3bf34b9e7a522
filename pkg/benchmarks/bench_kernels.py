"""Compare the numba and pure-numpy GF(p) kernels.

Run with ``python3 benchmarks/bench_kernels.py``.  Both backends are called
directly, so the ``MONREP_NUMBA`` flag does not matter here; the end-to-end
timing at the bottom does honour it.
"""
import time

import numpy as np

from monrep import _kernels
from monrep.instances import instance_rng, random_monic, suite_algebras, TEST_QUIVERS
from monrep.moninj import injective_embedding

SIZES = [16, 64, 128, 256]
PRIMES = [2, 3, 65521]
REPEATS = 5


def best_of(fn, *args):
    best = float("inf")
    for _ in range(REPEATS):
        t = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t)
    return best


def main():
    rng = np.random.default_rng(0)
    a = rng.integers(0, 2, size=(4, 4), dtype=np.int64)
    _kernels.rref_modp_numba(a.copy(), 2)  # compile outside the timings
    _kernels.matmul_modp_numba(a, a, 2)

    print(f"{'kernel':<8}{'p':>7}{'n':>6}{'numpy s':>12}{'numba s':>12}{'speedup':>9}")
    for p in PRIMES:
        for n in SIZES:
            m = rng.integers(0, p, size=(n, n), dtype=np.int64)
            agree = np.array_equal(_kernels.rref_modp_numpy(m.copy(), p)[0], _kernels.rref_modp_numba(m.copy(), p)[0])
            assert agree, "backends disagree"
            t_np = best_of(lambda: _kernels.rref_modp_numpy(m.copy(), p))
            t_nb = best_of(lambda: _kernels.rref_modp_numba(m.copy(), p))
            print(f"{'rref':<8}{p:>7}{n:>6}{t_np:>12.5f}{t_nb:>12.5f}{t_np / t_nb:>9.1f}")
            t_np = best_of(_kernels.matmul_modp_numpy, m, m, p)
            t_nb = best_of(_kernels.matmul_modp_numba, m, m, p)
            print(f"{'matmul':<8}{p:>7}{n:>6}{t_np:>12.5f}{t_nb:>12.5f}{t_np / t_nb:>9.1f}")

    A = suite_algebras()["GF(3)[x]/(x^3)"]
    t = time.perf_counter()
    for k in range(100):
        r = instance_rng(0, 0, k)
        injective_embedding(random_monic(TEST_QUIVERS["2->1<-3"], A, r))
    print(f"\n100 embeddings over GF(3)[x]/(x^3) with backend {_kernels.BACKEND}: {time.perf_counter() - t:.2f}s")


if __name__ == "__main__":
    main()
