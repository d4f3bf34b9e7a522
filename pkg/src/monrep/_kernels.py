"""Hot GF(p) kernels: numba-compiled when available, pure numpy otherwise.

Set ``MONREP_NUMBA=0`` in the environment before import to force the numpy
path.  Both paths are always importable as ``rref_modp_numpy`` /
``rref_modp_numba`` so they can be compared directly.
"""
from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def decorator(func):
            return func

        if args and callable(args[0]):
            return args[0]
        return decorator


USE_NUMBA = HAVE_NUMBA and os.environ.get("MONREP_NUMBA", "1") not in ("0", "false", "no")

# float64 BLAS is exact while every partial sum stays below 2**53
_FLOAT_EXACT = float(2**53)


def _inv_modp_py(x: int, p: int) -> int:
    return pow(int(x), p - 2, p)


# --------------------------------------------------------------------------
# numpy reference path
# --------------------------------------------------------------------------


def rref_modp_numpy(a: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Reduce ``a`` (int64, entries in [0, p)) to RREF in place.

    Returns the reduced matrix and the pivot columns.
    """
    m, n = a.shape
    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.nonzero(a[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
        inv = _inv_modp_py(a[row, col], p)
        if inv != 1:
            a[row] = (a[row] * inv) % p
        factors = a[:, col].copy()
        factors[row] = 0
        idx = np.nonzero(factors)[0]
        if idx.size:
            # p < 2**31 keeps every product inside int64
            a[idx] = (a[idx] - np.outer(factors[idx], a[row]) % p) % p
        pivots.append(col)
        row += 1
    return a, np.asarray(pivots, dtype=np.int64)


def matmul_modp_numpy(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    k = a.shape[1]
    if k == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if k * (p - 1) ** 2 < _FLOAT_EXACT:
        out = a.astype(np.float64) @ b.astype(np.float64)
        return np.mod(out, p).astype(np.int64)
    return _matmul_obj(a, b, p)


def _matmul_obj(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    out = a.astype(object) @ b.astype(object)
    return np.asarray(out % p, dtype=np.int64)


# --------------------------------------------------------------------------
# numba path
# --------------------------------------------------------------------------


@njit(cache=True, nogil=True)
def _inv_modp_nb(x, p):
    # extended Euclid; x in [1, p)
    t, newt = 0, 1
    r, newr = p, x
    while newr != 0:
        q = r // newr
        t, newt = newt, t - q * newt
        r, newr = newr, r - q * newr
    if t < 0:
        t += p
    return t


@njit(cache=True, nogil=True)
def _rref_modp_kernel(a, p):
    m, n = a.shape
    pivots = np.empty(min(m, n), dtype=np.int64)
    npiv = 0
    row = 0
    for col in range(n):
        if row == m:
            break
        piv = -1
        for r in range(row, m):
            if a[r, col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != row:
            for j in range(col, n):
                tmp = a[row, j]
                a[row, j] = a[piv, j]
                a[piv, j] = tmp
        inv = _inv_modp_nb(a[row, col], p)
        if inv != 1:
            for j in range(col, n):
                a[row, j] = (a[row, j] * inv) % p
        for r in range(m):
            if r == row:
                continue
            f = a[r, col]
            if f == 0:
                continue
            g = p - f
            for j in range(col, n):
                v = a[row, j]
                if v != 0:
                    a[r, j] = (a[r, j] + g * v) % p
        pivots[npiv] = col
        npiv += 1
        row += 1
    return pivots[:npiv]


@njit(cache=True, nogil=True)
def _matmul_modp_kernel(a, b, p):
    m, k = a.shape
    n = b.shape[1]
    out = np.zeros((m, n), dtype=np.int64)
    for i in range(m):
        for t in range(k):
            v = a[i, t]
            if v == 0:
                continue
            for j in range(n):
                w = b[t, j]
                if w != 0:
                    out[i, j] = (out[i, j] + v * w) % p
    return out


def rref_modp_numba(a: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    pivots = _rref_modp_kernel(a, np.int64(p))
    return a, pivots


def matmul_modp_numba(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    k = a.shape[1]
    if k * (p - 1) ** 2 < _FLOAT_EXACT:
        # BLAS beats the loop kernel whenever it is exact
        return matmul_modp_numpy(a, b, p)
    return _matmul_modp_kernel(np.ascontiguousarray(a), np.ascontiguousarray(b), np.int64(p))


if USE_NUMBA:
    rref_modp = rref_modp_numba
    matmul_modp = matmul_modp_numba
else:
    rref_modp = rref_modp_numpy
    matmul_modp = matmul_modp_numpy

BACKEND = "numba" if USE_NUMBA else "numpy"
