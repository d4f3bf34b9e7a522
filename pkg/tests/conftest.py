"""Shared fixtures and brute-force oracles.

The oracles enumerate every candidate matrix tuple over a small prime field
and test the defining equations directly, so they share no linear algebra
with the package.
"""
import itertools

import numpy as np
import pytest

from monrep.amodule import regular_module, top
from monrep.exactla import GF
from monrep.instances import TEST_QUIVERS
from monrep.serialize import resolve_algebra

ENUMERATION_CAP = 2**18


@pytest.fixture(scope="session")
def k2():
    """GF(2)[x]/(x^2) with its regular module and simple module."""
    A = resolve_algebra("truncated:2", GF(2))
    reg = regular_module(A)
    return A, reg, top(reg)[0]


@pytest.fixture(scope="session")
def a2():
    return TEST_QUIVERS["A2"]


def _all_candidates(shapes, p):
    """Every tuple of matrices with the given shapes, as batched arrays."""
    sizes = [r * c for r, c in shapes]
    total = sum(sizes)
    if p**total > ENUMERATION_CAP:
        raise ValueError(f"enumeration of {p}^{total} candidates is too large")
    flat = np.array(list(itertools.product(range(p), repeat=total)), dtype=np.int64).reshape(p**total, total)
    out, off = [], 0
    for (r, c), s in zip(shapes, sizes):
        out.append(flat[:, off : off + s].reshape(len(flat), r, c))
        off += s
    return out


def _commutes(h_left, a, b, h_right, p):
    """Batched test of ``h_left @ a == b @ h_right`` (mod p)."""
    lhs = np.einsum("nij,jk->nik", h_left, np.asarray(a, dtype=np.int64)) % p
    rhs = np.einsum("ij,njk->nik", np.asarray(b, dtype=np.int64), h_right) % p
    return np.all((lhs - rhs) % p == 0, axis=(1, 2))


def brute_module_homs(m, n):
    """All A-linear maps ``m -> n`` found by enumeration."""
    p = m.field.p
    (h,) = _all_candidates([(n.dim, m.dim)], p)
    keep = np.ones(len(h), dtype=bool)
    for b in range(m.algebra.dim):
        keep &= _commutes(h, m.action[b].astype(np.int64), n.action[b].astype(np.int64), h, p)
    return h[keep]


def brute_rep_homs(x, y):
    """All morphisms ``x -> y`` of representations, each a dict vertex -> matrix."""
    p = x.field.p
    vs = list(x.quiver.vertices)
    hs = dict(zip(vs, _all_candidates([(y[i].dim, x[i].dim) for i in vs], p)))
    keep = np.ones(len(hs[vs[0]]), dtype=bool)
    for i in vs:
        for b in range(x.algebra.dim):
            keep &= _commutes(hs[i], x[i].action[b].astype(np.int64), y[i].action[b].astype(np.int64), hs[i], p)
    for a, (s, e) in enumerate(x.quiver.arrows):
        keep &= _commutes(hs[e], x.maps[a].astype(np.int64), y.maps[a].astype(np.int64), hs[s], p)
    idx = np.nonzero(keep)[0]
    return [{i: hs[i][k] for i in vs} for k in idx]


def log_p(count, p):
    d = 0
    while p**d < count:
        d += 1
    assert p**d == count, f"{count} is not a power of {p}"
    return d


def rank_mod_p(vectors, p):
    """Rank of a list of integer vectors by plain Gaussian elimination."""
    rows = [list(int(v) % p for v in vec) for vec in vectors]
    rank, col = 0, 0
    width = len(rows[0]) if rows else 0
    while rank < len(rows) and col < width:
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [v * inv % p for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                c = rows[r][col]
                rows[r] = [(a - c * b) % p for a, b in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def _flatten(h, vs):
    return np.concatenate([h[i].reshape(-1) for i in vs]) if vs else np.zeros(0, dtype=np.int64)


def brute_stable_hom_dim(x, y, through):
    """``dim Hom(x, y)`` minus the span of all composites x -> P -> y, P in ``through``."""
    p = x.field.p
    vs = list(x.quiver.vertices)
    homs = brute_rep_homs(x, y)
    total = log_p(len(homs), p)
    composites = []
    for P in through:
        into = brute_rep_homs(x, P)
        out = brute_rep_homs(P, y)
        for a in into:
            for b in out:
                composites.append(_flatten({i: (b[i] @ a[i]) % p for i in vs}, vs))
    return total - (rank_mod_p(composites, p) if composites else 0)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
