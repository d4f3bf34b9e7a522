"""Machine-checkable evidence bundles.

A certificate stores the matrices whose products and ranks realize each
asserted identity.  :meth:`Certificate.check` evaluates them with the
numpy/numba field arithmetic; :func:`recheck` re-evaluates a serialized
certificate with a separate pure-Python elimination, so the verifier shares
no code with the constructions that produced the matrices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from .exactla import Field

__all__ = ["Claim", "Certificate", "recheck", "CheckFailed"]

OPS = ("product_equal", "injective", "surjective", "exact", "invertible", "zero")


class CheckFailed(AssertionError):
    """A certificate claim did not hold."""


@dataclass
class Claim:
    label: str
    op: str
    mats: list[np.ndarray]
    split: int = 0
    passed: bool | None = None


@dataclass
class Certificate:
    kind: str
    field: Field
    claims: list[Claim] = field(default_factory=list)
    summary: dict[str, Any] = field(default_factory=dict)
    children: list["Certificate"] = field(default_factory=list)
    verified: bool | None = None

    # -- recording --------------------------------------------------------

    def note(self, key: str, value) -> None:
        self.summary[key] = value

    def _add(self, label, op, mats, split=0) -> Claim:
        c = Claim(label, op, [np.asarray(m) for m in mats], split)
        self.claims.append(c)
        return c

    def products_equal(self, label: str, lhs: list[np.ndarray], rhs: list[np.ndarray]) -> Claim:
        """Claim ``lhs[0] @ lhs[1] @ ... == rhs[0] @ ...``."""
        if not lhs or not rhs:
            raise ValueError("both sides need at least one factor")
        return self._add(label, "product_equal", list(lhs) + list(rhs), split=len(lhs))

    def injective(self, label: str, m: np.ndarray) -> Claim:
        return self._add(label, "injective", [m])

    def surjective(self, label: str, m: np.ndarray) -> Claim:
        return self._add(label, "surjective", [m])

    def exact(self, label: str, f: np.ndarray, g: np.ndarray) -> Claim:
        """Claim ``im f = ker g``."""
        return self._add(label, "exact", [f, g])

    def short_exact(self, label: str, f: np.ndarray, g: np.ndarray) -> None:
        self.injective(f"{label}: left map injective", f)
        self.exact(f"{label}: exact in the middle", f, g)
        self.surjective(f"{label}: right map surjective", g)

    def invertible(self, label: str, m: np.ndarray) -> Claim:
        return self._add(label, "invertible", [m])

    def zero(self, label: str, m: np.ndarray) -> Claim:
        return self._add(label, "zero", [m])

    def attach(self, child: "Certificate") -> None:
        self.children.append(child)

    # -- evaluation --------------------------------------------------------

    def check(self) -> bool:
        F = self.field
        ok = True
        for c in self.claims:
            c.passed = _eval_numpy(F, c)
            ok = ok and c.passed
        for child in self.children:
            ok = child.check() and ok
        self.verified = ok
        return ok

    def failures(self) -> list[str]:
        out = [f"{self.kind}: {c.label}" for c in self.claims if c.passed is False]
        for child in self.children:
            out.extend(child.failures())
        return out

    def require(self) -> "Certificate":
        if not self.check():
            raise CheckFailed("; ".join(self.failures()))
        return self

    # -- serialization -----------------------------------------------------

    def to_json(self, matrices: bool = True) -> dict:
        F = self.field
        out: dict[str, Any] = {"kind": self.kind}
        out.update(self.summary)
        out["verified"] = self.verified
        out["field"] = F.to_json()
        if matrices:
            out["claims"] = [
                {
                    "label": c.label,
                    "op": c.op,
                    "split": c.split,
                    "passed": c.passed,
                    "mats": [
                        {"rows": int(m.shape[0]), "cols": int(m.shape[1]), "data": F.to_list(m)}
                        for m in c.mats
                    ],
                }
                for c in self.claims
            ]
        else:
            out["claims"] = [{"label": c.label, "op": c.op, "passed": c.passed} for c in self.claims]
        if self.children:
            out["children"] = [ch.to_json(matrices) for ch in self.children]
        return out


def _eval_numpy(F: Field, c: Claim) -> bool:
    m = c.mats
    try:
        if c.op == "product_equal":
            lhs = F.chain(*m[: c.split])
            rhs = F.chain(*m[c.split :])
            return F.equal(lhs, rhs)
        if c.op == "injective":
            return F.rank(m[0]) == m[0].shape[1]
        if c.op == "surjective":
            return F.rank(m[0]) == m[0].shape[0]
        if c.op == "exact":
            f, g = m
            if g.shape[1] != f.shape[0]:
                return False
            return F.is_zero(F.dot(g, f)) and F.rank(f) + F.rank(g) == f.shape[0]
        if c.op == "invertible":
            return m[0].shape[0] == m[0].shape[1] and F.rank(m[0]) == m[0].shape[0]
        if c.op == "zero":
            return F.is_zero(m[0])
    except ValueError:
        return False
    raise ValueError(f"unknown claim op {c.op!r}")


# ---------------------------------------------------------------------------
# independent re-verification from JSON
# ---------------------------------------------------------------------------


class _PyField:
    def __init__(self, entry: dict):
        self.p = int(entry["p"]) if entry.get("kind") in ("prime", "prime-field") else None

    def conv(self, v):
        if self.p is None:
            return Fraction(v)
        if isinstance(v, str):
            v = Fraction(v)
            return v.numerator * pow(v.denominator, self.p - 2, self.p) % self.p
        return int(v) % self.p

    def red(self, v):
        return v if self.p is None else v % self.p

    def inv(self, v):
        return 1 / v if self.p is None else pow(v, self.p - 2, self.p)


def _mat(K: _PyField, entry: dict) -> tuple[int, int, list[list]]:
    rows, cols = entry["rows"], entry["cols"]
    data = [[K.conv(v) for v in row] for row in entry["data"]] if rows and cols else [[] for _ in range(rows)]
    return rows, cols, data


def _mul(K, a, b):
    ra, ca, da = a
    rb, cb, db = b
    if ca != rb:
        raise ValueError("shape mismatch")
    out = [[0] * cb for _ in range(ra)]
    for i in range(ra):
        row = da[i]
        acc = out[i]
        for t in range(ca):
            v = row[t]
            if v:
                brow = db[t]
                for j in range(cb):
                    if brow[j]:
                        acc[j] += v * brow[j]
        out[i] = [K.red(x) for x in acc]
    return ra, cb, out


def _rank(K, a) -> int:
    rows, cols, data = a
    work = [list(r) for r in data]
    rank = 0
    for col in range(cols):
        piv = next((r for r in range(rank, rows) if work[r][col] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = K.inv(work[rank][col])
        work[rank] = [K.red(x * inv) for x in work[rank]]
        for r in range(rows):
            if r != rank and work[r][col] != 0:
                f = work[r][col]
                work[r] = [K.red(x - f * y) for x, y in zip(work[r], work[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def _is_zero(a) -> bool:
    return all(v == 0 for row in a[2] for v in row)


def _eval_py(K, claim: dict) -> bool:
    mats = [_mat(K, m) for m in claim["mats"]]
    op = claim["op"]
    try:
        if op == "product_equal":
            k = claim["split"]
            lhs = mats[0]
            for m in mats[1:k]:
                lhs = _mul(K, lhs, m)
            rhs = mats[k]
            for m in mats[k + 1 :]:
                rhs = _mul(K, rhs, m)
            return lhs[:2] == rhs[:2] and all(
                K.red(x - y) == 0 for rx, ry in zip(lhs[2], rhs[2]) for x, y in zip(rx, ry)
            )
        if op == "injective":
            return _rank(K, mats[0]) == mats[0][1]
        if op == "surjective":
            return _rank(K, mats[0]) == mats[0][0]
        if op == "exact":
            f, g = mats
            if g[1] != f[0]:
                return False
            return _is_zero(_mul(K, g, f)) and _rank(K, f) + _rank(K, g) == f[0]
        if op == "invertible":
            return mats[0][0] == mats[0][1] and _rank(K, mats[0]) == mats[0][0]
        if op == "zero":
            return _is_zero(mats[0])
    except ValueError:
        return False
    raise ValueError(f"unknown claim op {op!r}")


def recheck(data: dict) -> tuple[bool, list[str]]:
    """Re-verify a serialized certificate from its stored matrices only."""
    K = _PyField(data["field"])
    failures = []
    for claim in data.get("claims", []):
        if "mats" not in claim:
            raise ValueError("certificate was serialized without matrices")
        if not _eval_py(K, claim):
            failures.append(f"{data['kind']}: {claim['label']}")
    for child in data.get("children", []):
        _, sub = recheck(child)
        failures.extend(sub)
    return not failures, failures
