"""Exact dense linear algebra over GF(p) and Q.

Matrices are plain numpy arrays: ``int64`` with entries in ``[0, p)`` for a
prime field, ``object`` arrays of :class:`fractions.Fraction` for the
rationals.  A :class:`Field` carries the arithmetic; every routine here is
deterministic (leftmost pivot, first nonzero row, free variables zeroed) so
results are bit-reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

import numpy as np

from . import _kernels

__all__ = ["Field", "GF", "QQ", "RREF", "is_prime"]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class RREF(NamedTuple):
    reduced: np.ndarray
    rank: int
    pivots: tuple[int, ...]


@dataclass(frozen=True)
class Field:
    """A prime field GF(p) (``p`` set) or the rationals (``p is None``)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, (int, np.integer)) or not is_prime(int(self.p)):
                raise ValueError(f"modulus {self.p!r} is not a prime")
            if self.p >= 2**31:
                raise ValueError("prime modulus must be below 2**31")
            object.__setattr__(self, "p", int(self.p))

    # -- basic facts -------------------------------------------------------

    @property
    def kind(self) -> str:
        return "rationals" if self.p is None else "prime"

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def order(self) -> int | None:
        return self.p

    @property
    def dtype(self):
        return object if self.p is None else np.int64

    def __repr__(self) -> str:
        return "QQ" if self.p is None else f"GF({self.p})"

    def to_json(self) -> dict:
        if self.p is None:
            return {"kind": "rationals"}
        return {"kind": "prime", "p": self.p}

    @classmethod
    def from_json(cls, data: dict) -> "Field":
        kind = data.get("kind")
        if kind in ("prime", "prime-field"):
            return cls(int(data["p"]))
        if kind in ("rationals", "Q", "QQ"):
            return cls(None)
        raise ValueError(f"unknown field kind {kind!r}")

    # -- scalars and constructors -----------------------------------------

    def scalar(self, x):
        if self.p is None:
            return Fraction(x)
        return int(x) % self.p

    def inv(self, x):
        if self.p is None:
            if x == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / Fraction(x)
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, self.p - 2, self.p)

    def array(self, data, shape=None) -> np.ndarray:
        """Coerce ``data`` into a canonical field array."""
        if self.p is None:
            raw = np.asarray(data, dtype=object)
            out = np.empty(raw.shape, dtype=object)
            flat = out.reshape(-1)
            for k, v in enumerate(raw.reshape(-1)):
                flat[k] = Fraction(v)
        else:
            raw = np.asarray(data)
            if raw.dtype == object or raw.dtype.kind not in "iub":
                raw = np.asarray(data, dtype=object)
                out = np.empty(raw.shape, dtype=np.int64)
                flat = out.reshape(-1)
                for k, v in enumerate(raw.reshape(-1)):
                    if isinstance(v, Fraction) or isinstance(v, str):
                        v = Fraction(v)
                        v = int(v.numerator) * self.inv(v.denominator)
                    flat[k] = int(v) % self.p
            else:
                out = np.mod(raw.astype(np.int64), self.p)
        if shape is not None:
            out = out.reshape(shape)
        return out

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        if self.p is None:
            out = np.empty((rows, cols), dtype=object)
            out.fill(Fraction(0))
            return out
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = self.scalar(1)
        return out

    def vector(self, data) -> np.ndarray:
        return self.array(data).reshape(-1, 1)

    # -- arithmetic --------------------------------------------------------

    def dot(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] != b.shape[0]:
            raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        if self.p is None:
            if a.shape[1] == 0:
                return self.zeros(a.shape[0], b.shape[1])
            return np.dot(a, b)
        if a.size == 0 or b.size == 0:
            return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        return _kernels.matmul_modp(a, b, self.p)

    def chain(self, *mats: np.ndarray) -> np.ndarray:
        out = mats[0]
        for m in mats[1:]:
            out = self.dot(out, m)
        return out

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def scale(self, c, a):
        c = self.scalar(c)
        return c * a if self.p is None else (c * a) % self.p

    def combine(self, coeffs, mats: list[np.ndarray], shape=None) -> np.ndarray:
        """Return ``sum(c * m)``; ``shape`` is needed when ``mats`` is empty."""
        if not mats:
            return self.zeros(*shape)
        out = self.zeros(*mats[0].shape)
        for c, m in zip(coeffs, mats):
            c = self.scalar(c)
            if c != 0:
                out = self.add(out, self.scale(c, m))
        return out

    def is_zero(self, a: np.ndarray) -> bool:
        return all(v == 0 for v in a.reshape(-1)) if self.p is None else not np.any(a)

    def equal(self, a: np.ndarray, b: np.ndarray) -> bool:
        return a.shape == b.shape and self.is_zero(self.sub(a, b))

    # -- elimination ------------------------------------------------------

    def rref(self, a: np.ndarray) -> RREF:
        """Reduced row echelon form with leftmost pivots."""
        m, n = a.shape
        if m == 0 or n == 0:
            return RREF(self.array(a).copy().reshape(m, n), 0, ())
        if self.p is None:
            return _rref_rational(a)
        work = np.array(a, dtype=np.int64, copy=True, order="C")
        red, piv = _kernels.rref_modp(work, self.p)
        pivots = tuple(int(c) for c in piv)
        return RREF(red, len(pivots), pivots)

    def rank(self, a: np.ndarray) -> int:
        return self.rref(a).rank

    def kernel_basis(self, a: np.ndarray) -> np.ndarray:
        """Columns spanning the right kernel, one per free column in order."""
        m, n = a.shape
        red, rank, pivots = self.rref(a)
        pivset = set(pivots)
        free = [c for c in range(n) if c not in pivset]
        k = self.zeros(n, len(free))
        one = self.scalar(1)
        for t, f in enumerate(free):
            k[f, t] = one
            for r, c in enumerate(pivots):
                if red[r, f] != 0:
                    k[c, t] = self.neg(red[r, f])
        return k

    def solve(self, a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
        """Solve ``a @ x = b``; ``None`` when the system is inconsistent."""
        if a.shape[0] != b.shape[0]:
            raise ValueError("row counts differ")
        n = a.shape[1]
        if a.shape[0] == 0:
            return self.zeros(n, b.shape[1])
        red, rank, pivots = self.rref(np.hstack([a, b]))
        if pivots and pivots[-1] >= n:
            return None
        x = self.zeros(n, b.shape[1])
        for r, c in enumerate(pivots):
            x[c] = red[r, n:]
        return x

    def cokernel_proj(self, a: np.ndarray) -> np.ndarray:
        """Rows of a surjection killing the column space of ``a``."""
        return self.kernel_basis(np.ascontiguousarray(a.T)).T.copy()

    def is_injective_map(self, a: np.ndarray) -> bool:
        return self.rank(a) == a.shape[1]

    def is_surjective_map(self, a: np.ndarray) -> bool:
        return self.rank(a) == a.shape[0]

    def column_basis(self, a: np.ndarray) -> np.ndarray:
        """The pivot columns of ``a``: a basis of its column space."""
        pivots = self.rref(a).pivots
        return a[:, list(pivots)].copy()

    def left_inverse(self, a: np.ndarray) -> np.ndarray:
        x = self.solve(np.ascontiguousarray(a.T), self.eye(a.shape[1]))
        if x is None:
            raise ValueError("matrix is not injective")
        return x.T.copy()

    def right_inverse(self, a: np.ndarray) -> np.ndarray:
        x = self.solve(a, self.eye(a.shape[0]))
        if x is None:
            raise ValueError("matrix is not surjective")
        return x

    def inverse(self, a: np.ndarray) -> np.ndarray:
        if a.shape[0] != a.shape[1]:
            raise ValueError("matrix is not square")
        x = self.solve(a, self.eye(a.shape[0]))
        if x is None:
            raise ValueError("matrix is singular")
        return x

    def is_invertible(self, a: np.ndarray) -> bool:
        return a.shape[0] == a.shape[1] and self.rank(a) == a.shape[0]

    # -- sampling ----------------------------------------------------------

    def random_matrix(self, rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
        if self.p is None:
            return self.array(rng.integers(-3, 4, size=(rows, cols)))
        return rng.integers(0, self.p, size=(rows, cols), dtype=np.int64)

    def elements(self) -> Iterator:
        if self.p is None:
            raise ValueError("the rationals are infinite")
        return iter(range(self.p))

    # -- serialization of matrices ----------------------------------------

    def to_list(self, a: np.ndarray) -> list:
        if self.p is None:
            return [[_frac_str(v) for v in row] for row in a]
        return a.tolist()

    def from_list(self, data, rows: int, cols: int) -> np.ndarray:
        if rows == 0 or cols == 0:
            return self.zeros(rows, cols)
        return self.array(data).reshape(rows, cols)


def _frac_str(v: Fraction):
    v = Fraction(v)
    return int(v) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _rref_rational(a: np.ndarray) -> RREF:
    m, n = a.shape
    work = np.empty((m, n), dtype=object)
    for i in range(m):
        for j in range(n):
            work[i, j] = Fraction(a[i, j])
    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        piv = next((r for r in range(row, m) if work[r, col] != 0), None)
        if piv is None:
            continue
        if piv != row:
            work[[row, piv]] = work[[piv, row]]
        work[row] = work[row] / work[row, col]
        for r in range(m):
            if r != row and work[r, col] != 0:
                work[r] = work[r] - work[r, col] * work[row]
        pivots.append(col)
        row += 1
    return RREF(work, len(pivots), tuple(pivots))


def GF(p: int) -> Field:
    return Field(p)


QQ = Field(None)
