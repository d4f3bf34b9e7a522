"""Finite-dimensional left modules over an :class:`~monrep.algebra.Algebra`.

A module is the stack of action matrices ``action[b]`` of the basis elements
(vectors are columns, the algebra acts on the left).  Direct sums of
indecomposable projectives ``A e_i`` and injectives ``D(e_i A)`` carry a
``layout`` so Hom spaces into or out of them can be read off from
idempotent images instead of solving the full commutation system.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from . import _kernels
from ._kernels import _rref_modp_kernel
from .algebra import Algebra, ValidationError
from .exactla import Field

__all__ = [
    "Module",
    "ModuleMap",
    "NoSolution",
    "IsoVerdict",
    "ProjectiveCover",
    "regular_module",
    "zero_module",
    "validate_module",
    "is_module_map",
    "submodule",
    "quotient",
    "generated_submodule",
    "kernel",
    "image",
    "cokernel",
    "direct_sum",
    "diagonal_map",
    "socle",
    "radical_submodule",
    "top",
    "dual",
    "dual_map",
    "indec_projective",
    "indec_injective",
    "hom_basis",
    "projective_cover",
    "injective_envelope",
    "extend_along_mono",
    "is_isomorphic",
    "find_invertible_combination",
    "compose",
    "identity_map",
]


class NoSolution(ArithmeticError):
    """A lifting/extension problem has no solution."""


@dataclass(eq=False)
class Module:
    algebra: Algebra
    action: np.ndarray
    layout: tuple[tuple[str, int], ...] | None = None

    def __post_init__(self):
        a = self.algebra
        act = np.asarray(self.action)
        if act.ndim != 3 or act.shape[0] != a.dim or act.shape[1] != act.shape[2]:
            raise ValidationError(
                f"action must have shape ({a.dim}, n, n), got {act.shape}"
            )
        if act.dtype != a.field.dtype:
            act = a.field.array(act)
        self.action = act

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    def __repr__(self) -> str:
        tag = f" layout={self.layout}" if self.layout else ""
        return f"<Module dim {self.dim} over {self.algebra!r}{tag}>"

    def act(self, coords: np.ndarray) -> np.ndarray:
        F = self.field
        n = self.dim
        flat = self.action.reshape(self.algebra.dim, n * n)
        return F.dot(F.array(coords).reshape(1, -1), flat).reshape(n, n)

    @cached_property
    def gen_actions(self) -> list[np.ndarray]:
        """Action matrices of the algebra generators other than 1."""
        gens = self.algebra.active_generators
        return [self.act(gens[:, g]) for g in range(gens.shape[1])]

    def is_zero(self) -> bool:
        return self.dim == 0


@dataclass(eq=False)
class ModuleMap:
    domain: Module
    codomain: Module
    mat: np.ndarray

    def __post_init__(self):
        if self.mat.shape != (self.codomain.dim, self.domain.dim):
            raise ValidationError(
                f"matrix shape {self.mat.shape} does not match "
                f"{self.codomain.dim} x {self.domain.dim}"
            )

    @property
    def field(self) -> Field:
        return self.domain.field


@dataclass
class ProjectiveCover:
    module: Module
    epi: ModuleMap
    blocks: list[int]
    generators: list[np.ndarray] = field(default_factory=list)


class IsoVerdict:
    """Outcome of an isomorphism search: witness, refutation or neither."""

    def __init__(self, status: str, witness=None, reason: str = ""):
        self.status = status
        self.witness = witness
        self.reason = reason

    def __bool__(self) -> bool:
        return self.status == "isomorphic"

    def __repr__(self) -> str:
        return f"IsoVerdict({self.status!r}{', ' + self.reason if self.reason else ''})"


# ---------------------------------------------------------------------------
# basic constructions
# ---------------------------------------------------------------------------


def regular_module(a: Algebra) -> Module:
    act = np.stack([a.left_mult(i) for i in range(a.dim)])
    return Module(a, act)


def zero_module(a: Algebra) -> Module:
    return Module(a, a.field.zeros(a.dim, 0).reshape(a.dim, 0, 0), layout=())


def identity_map(m: Module) -> ModuleMap:
    return ModuleMap(m, m, m.field.eye(m.dim))


def compose(g: ModuleMap, f: ModuleMap) -> ModuleMap:
    """``g o f``."""
    return ModuleMap(f.domain, g.codomain, g.field.dot(g.mat, f.mat))


def validate_module(m: Module) -> None:
    F = m.field
    a = m.algebra
    n = m.dim
    if not F.equal(m.act(a.unit), F.eye(n)):
        raise ValidationError("unit does not act as the identity")
    flat = m.action.reshape(a.dim, n * n)
    for i in range(a.dim):
        for j in range(a.dim):
            lhs = F.dot(m.action[i], m.action[j])
            rhs = F.dot(a.mul[i, j].reshape(1, -1), flat).reshape(n, n)
            if not F.equal(lhs, rhs):
                raise ValidationError(f"action is not multiplicative on basis pair ({i}, {j})")


def is_module_map(f: ModuleMap) -> bool:
    F = f.field
    dom, cod = f.domain, f.codomain
    for b in range(dom.algebra.dim):
        if not F.equal(F.dot(f.mat, dom.action[b]), F.dot(cod.action[b], f.mat)):
            return False
    return True


def _restrict(F: Field, action: np.ndarray, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Stack of ``left @ action[b] @ right``."""
    d, n, _ = action.shape
    k = right.shape[1]
    q = left.shape[0]
    if d == 0 or q == 0 or k == 0:
        return F.zeros(d * q, k).reshape(d, q, k)
    t = F.dot(action.reshape(d * n, n), right).reshape(d, n, k)
    t = np.ascontiguousarray(t.transpose(1, 0, 2)).reshape(n, d * k)
    u = F.dot(left, t).reshape(q, d, k)
    return np.ascontiguousarray(u.transpose(1, 0, 2))


def submodule(m: Module, basis: np.ndarray) -> tuple[Module, ModuleMap]:
    """Submodule spanned by independent columns ``basis`` (closure assumed)."""
    F = m.field
    if basis.shape[1] == 0:
        sub = zero_module(m.algebra)
        return sub, ModuleMap(sub, m, F.zeros(m.dim, 0))
    left = F.left_inverse(basis)
    sub = Module(m.algebra, _restrict(F, m.action, left, basis))
    return sub, ModuleMap(sub, m, basis.copy())


def quotient(m: Module, span: np.ndarray) -> tuple[Module, ModuleMap]:
    """Quotient by the submodule spanned by the columns of ``span``."""
    F = m.field
    proj = F.cokernel_proj(span) if span.shape[1] else F.eye(m.dim)
    if proj.shape[0] == 0:
        q = zero_module(m.algebra)
        return q, ModuleMap(m, q, F.zeros(0, m.dim))
    section = F.right_inverse(proj)
    q = Module(m.algebra, _restrict(F, m.action, proj, section))
    return q, ModuleMap(m, q, proj)


def _span_closure(m: Module, vectors: np.ndarray) -> np.ndarray:
    F = m.field
    if vectors.shape[1] == 0:
        return F.zeros(m.dim, 0)
    d, n, _ = m.action.shape
    cols = F.dot(m.action.reshape(d * n, n), vectors).reshape(d, n, -1)
    stacked = np.ascontiguousarray(cols.transpose(1, 0, 2)).reshape(n, -1)
    if F.rank(stacked) == 0:
        return F.zeros(n, 0)
    return F.column_basis(stacked)


def generated_submodule(m: Module, vectors: np.ndarray) -> tuple[Module, ModuleMap]:
    """The submodule ``A . vectors``."""
    return submodule(m, _span_closure(m, vectors))


def kernel(f: ModuleMap) -> tuple[Module, ModuleMap]:
    F = f.field
    return submodule(f.domain, F.kernel_basis(f.mat))


def image(f: ModuleMap) -> tuple[Module, ModuleMap]:
    F = f.field
    if F.rank(f.mat) == 0:
        return submodule(f.codomain, F.zeros(f.codomain.dim, 0))
    return submodule(f.codomain, F.column_basis(f.mat))


def cokernel(f: ModuleMap) -> tuple[Module, ModuleMap]:
    return quotient(f.codomain, f.mat)


def direct_sum(ms: Sequence[Module], algebra: Algebra | None = None):
    """Block-diagonal sum with its injections and projections."""
    if not ms:
        if algebra is None:
            raise ValueError("empty direct sum needs an algebra")
        z = zero_module(algebra)
        return z, [], []
    a = ms[0].algebra
    F = a.field
    dims = [m.dim for m in ms]
    n = sum(dims)
    act = F.zeros(a.dim * n, n).reshape(a.dim, n, n)
    off = 0
    for m in ms:
        act[:, off : off + m.dim, off : off + m.dim] = m.action
        off += m.dim
    layout = None
    if all(m.layout is not None for m in ms):
        layout = tuple(blk for m in ms for blk in m.layout)
    total = Module(a, act, layout)
    inj, proj = [], []
    off = 0
    for m in ms:
        e = F.zeros(n, m.dim)
        for t in range(m.dim):
            e[off + t, t] = F.scalar(1)
        inj.append(ModuleMap(m, total, e))
        proj.append(ModuleMap(total, m, e.T.copy()))
        off += m.dim
    return total, inj, proj


def diagonal_map(fs: Sequence[ModuleMap], algebra: Algebra | None = None) -> ModuleMap:
    """``diag(f_1, ..., f_n): (+) X_i -> (+) Y_i``."""
    a = fs[0].domain.algebra if fs else algebra
    F = a.field
    dom = direct_sum([f.domain for f in fs], algebra=a)[0]
    cod = direct_sum([f.codomain for f in fs], algebra=a)[0]
    mat = F.zeros(cod.dim, dom.dim)
    r = c = 0
    for f in fs:
        mat[r : r + f.codomain.dim, c : c + f.domain.dim] = f.mat
        r += f.codomain.dim
        c += f.domain.dim
    return ModuleMap(dom, cod, mat)


def socle(m: Module) -> tuple[Module, ModuleMap]:
    """``{v : J v = 0}``."""
    F = m.field
    J = m.algebra.radical
    if J.shape[1] == 0 or m.dim == 0:
        return submodule(m, F.eye(m.dim))
    mats = [m.act(J[:, r]) for r in range(J.shape[1])]
    return submodule(m, F.kernel_basis(np.vstack(mats)))


def radical_submodule(m: Module) -> tuple[Module, ModuleMap]:
    """``J M``."""
    F = m.field
    J = m.algebra.radical
    if J.shape[1] == 0 or m.dim == 0:
        return submodule(m, F.zeros(m.dim, 0))
    stacked = np.hstack([m.act(J[:, r]) for r in range(J.shape[1])])
    if F.rank(stacked) == 0:
        return submodule(m, F.zeros(m.dim, 0))
    return submodule(m, F.column_basis(stacked))


def top(m: Module) -> tuple[Module, ModuleMap]:
    """``M / J M`` with the projection."""
    _, inc = radical_submodule(m)
    return quotient(m, inc.mat)


def dual(m: Module) -> Module:
    """``D M = Hom_k(M, k)``, a left module over the opposite algebra."""
    layout = None
    if m.layout is not None:
        flip = {"P": "I", "I": "P"}
        layout = tuple((flip[k], i) for k, i in m.layout)
    act = np.ascontiguousarray(m.action.transpose(0, 2, 1))
    return Module(m.algebra.op, act, layout)


def dual_map(f: ModuleMap, domain: Module, codomain: Module) -> ModuleMap:
    """``D f : D(cod) -> D(dom)`` given the already dualized modules."""
    return ModuleMap(domain, codomain, f.mat.T.copy())


# ---------------------------------------------------------------------------
# projectives and injectives
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _projective_data(a: Algebra, i: int):
    """Basis ``b_j e_i`` (pivot ``j``) of ``A e_i`` and the generator coords."""
    F = a.field
    rmul = a.right_mult_by(a.idempotents[i])
    pivots = F.rref(rmul).pivots
    basis = rmul[:, list(pivots)].copy()
    gen = F.solve(basis, a.idempotents[i].reshape(-1, 1))
    return basis, tuple(pivots), gen[:, 0]


@lru_cache(maxsize=None)
def indec_projective(a: Algebra, i: int) -> Module:
    """``P(i) = A e_i`` (``i`` indexes ``a.idempotents``, from 0)."""
    F = a.field
    basis, _, _ = _projective_data(a, i)
    left = F.left_inverse(basis)
    act = _restrict(F, np.stack([a.left_mult(b) for b in range(a.dim)]), left, basis)
    return Module(a, act, layout=(("P", i),))


@lru_cache(maxsize=None)
def indec_injective(a: Algebra, i: int) -> Module:
    """``I(i) = D(e_i A)``, realized as the dual of ``A^op e_i``."""
    return dual(indec_projective(a.op, i))


def _sum_of_indecs(a: Algebra, layout: Sequence[tuple[str, int]]) -> Module:
    ms = [indec_projective(a, i) if k == "P" else indec_injective(a, i) for k, i in layout]
    return direct_sum(ms, algebra=a)[0]


# ---------------------------------------------------------------------------
# Hom spaces
# ---------------------------------------------------------------------------


def _hom_from_projective(p: Module, n: Module) -> list[np.ndarray]:
    """Hom(P, N) for ``P`` with an all-projective layout."""
    a = p.algebra
    F = a.field
    out = []
    off = 0
    for kind, i in p.layout:
        _, pivots, _ = _projective_data(a, i)
        width = len(pivots)
        img = n.act(a.idempotents[i])
        if F.rank(img):
            vecs = F.column_basis(img)
            acts = [n.action[j] for j in pivots]
            for t in range(vecs.shape[1]):
                v = vecs[:, t : t + 1]
                mat = F.zeros(n.dim, p.dim)
                mat[:, off : off + width] = np.hstack([F.dot(r, v) for r in acts])
                out.append(mat)
        off += width
    return out


def _hom_kronecker(m: Module, n: Module) -> list[np.ndarray]:
    F = m.field
    rows, cols = n.dim, m.dim
    u = rows * cols
    basis = F.eye(u)
    eye_r, eye_c = F.eye(rows), F.eye(cols)
    for rm, rn in zip(m.gen_actions, n.gen_actions):
        # vec_F(f rm - rn f) = (rm^T kron I - I kron rn) vec_F(f)
        c = F.sub(_kron(F, rm.T, eye_r), _kron(F, eye_c, rn))
        reduced = F.dot(c, basis)
        if F.is_zero(reduced):
            continue
        basis = F.dot(basis, F.kernel_basis(reduced))
        if basis.shape[1] == 0:
            return []
    return [basis[:, k].reshape(cols, rows).T.copy() for k in range(basis.shape[1])]


def _kron(F: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.multiply.outer(a, b).transpose(0, 2, 1, 3)
    out = out.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])
    return F.array(out) if F.p is not None else out


def hom_basis(m: Module, n: Module) -> list[ModuleMap]:
    """A basis of ``Hom_A(m, n)`` in a fixed deterministic order."""
    if m.algebra is not n.algebra:
        raise ValueError("modules over different algebras")
    return [ModuleMap(m, n, mat) for mat in hom_matrices(m, n)]


def hom_matrices(m: Module, n: Module) -> list[np.ndarray]:
    if m.dim == 0 or n.dim == 0:
        return []
    if m.layout is not None and all(k == "P" for k, _ in m.layout):
        return _hom_from_projective(m, n)
    if n.layout is not None and all(k == "I" for k, _ in n.layout):
        return [h.T.copy() for h in _hom_from_projective(dual(n), dual(m))]
    return _hom_kronecker(m, n)


# ---------------------------------------------------------------------------
# covers, envelopes, extensions
# ---------------------------------------------------------------------------


def projective_cover(m: Module) -> ProjectiveCover:
    """Minimal projective cover ``P -> m``, one generator per top summand."""
    a = m.algebra
    F = a.field
    if m.dim == 0:
        z = zero_module(a)
        return ProjectiveCover(z, ModuleMap(z, m, F.zeros(0, 0)), [], [])
    tmod, tproj = top(m)
    pi = tproj.mat
    target = tmod.dim
    covered = F.zeros(target, 0)
    rank = 0
    blocks: list[int] = []
    gens: list[np.ndarray] = []
    for i, e in enumerate(a.idempotents):
        if rank == target:
            break
        img = m.act(e)
        if F.rank(img) == 0:
            continue
        cands = F.column_basis(img)
        for t in range(cands.shape[1]):
            v = cands[:, t : t + 1]
            trial = np.hstack([covered, F.dot(pi, v)])
            if F.rank(trial) > rank:
                blocks.append(i)
                gens.append(v)
                closure = _span_closure(tmod, F.dot(pi, v))
                covered = np.hstack([covered, closure])
                covered = F.column_basis(covered)
                rank = covered.shape[1]
                if rank == target:
                    break
    pmod = _sum_of_indecs(a, [("P", i) for i in blocks])
    cols = []
    for i, v in zip(blocks, gens):
        _, pivots, _ = _projective_data(a, i)
        cols.extend(F.dot(m.action[j], v) for j in pivots)
    epi = np.hstack(cols) if cols else F.zeros(m.dim, 0)
    return ProjectiveCover(pmod, ModuleMap(pmod, m, epi), blocks, gens)


def injective_envelope(m: Module) -> tuple[Module, ModuleMap]:
    """Injective envelope ``m -> E`` with ``E`` a sum of ``indec_injective``.

    Built as the dual of a projective cover of ``D m`` over the opposite
    algebra, so the socle of ``m`` maps isomorphically onto that of ``E``.
    """
    a = m.algebra
    F = a.field
    if m.dim == 0:
        z = zero_module(a)
        return z, ModuleMap(m, z, F.zeros(0, 0))
    cover = projective_cover(dual(m))
    e = _sum_of_indecs(a, [("I", i) for i in cover.blocks])
    return e, ModuleMap(m, e, cover.epi.mat.T.copy())


def extend_along_mono(g: ModuleMap, h: ModuleMap) -> ModuleMap:
    """Find ``h'`` with ``h' g = h`` for ``g: X -> Y`` mono and ``h: X -> I``.

    Raises :class:`NoSolution` when no A-linear extension exists, which for
    a monomorphism ``g`` means the target was not injective.
    """
    F = g.field
    y, target = g.codomain, h.codomain
    if h.domain is not g.domain and h.domain.dim != g.domain.dim:
        raise ValueError("g and h must share a domain")
    if target.dim == 0:
        return ModuleMap(y, target, F.zeros(0, y.dim))
    if y.dim == 0 or g.mat.shape[1] == 0:
        if not F.is_zero(h.mat):
            raise NoSolution("cannot extend a nonzero map from the zero module")
        return ModuleMap(y, target, F.zeros(target.dim, y.dim))
    basis = hom_matrices(y, target)
    want = h.mat.reshape(-1, 1)
    if not basis:
        if F.is_zero(h.mat):
            return ModuleMap(y, target, F.zeros(target.dim, y.dim))
        raise NoSolution("Hom(Y, I) is zero but h is not")
    cols = np.hstack([F.dot(b, g.mat).reshape(-1, 1) for b in basis])
    coeffs = F.solve(cols, want)
    if coeffs is None:
        raise NoSolution("no A-linear extension exists")
    return ModuleMap(y, target, F.combine(coeffs[:, 0], basis))


# ---------------------------------------------------------------------------
# isomorphism search
# ---------------------------------------------------------------------------

RANDOM_TRIES = 64
ENUMERATION_LIMIT = 2**20


def find_invertible_combination(
    F: Field, basis: list[np.ndarray], rng: np.random.Generator, tries: int = RANDOM_TRIES
) -> tuple[str, np.ndarray | None]:
    """Search the span of square ``basis`` matrices for an invertible one.

    Returns ``("found", mat)``, ``("none", None)`` after exhaustive
    enumeration, or ``("inconclusive", None)``.
    """
    if not basis:
        return "none", None
    n = basis[0].shape[0]
    r = len(basis)
    for _ in range(tries):
        c = F.random_matrix(rng, 1, r)[0]
        mat = F.combine(c, basis)
        if F.rank(mat) == n:
            return "found", mat
    if F.p is None or F.p**r > ENUMERATION_LIMIT:
        return "inconclusive", None
    stack = np.stack(basis).reshape(r, n * n)
    p = F.p
    total = p**r
    chunk = 4096
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        coeffs = np.empty((idx.size, r), dtype=np.int64)
        rest = idx.copy()
        for k in range(r):
            coeffs[:, k] = rest % p
            rest //= p
        mats = F.dot(coeffs, stack).reshape(-1, n, n)
        full = _full_rank_batch(mats, p)
        hit = np.nonzero(full)[0]
        if hit.size:
            return "found", np.ascontiguousarray(mats[int(hit[0])])
    return "none", None


@_kernels.njit(cache=True, nogil=True)
def _full_rank_batch_kernel(mats, p):
    b, n, _ = mats.shape
    out = np.zeros(b, dtype=np.bool_)
    for k in range(b):
        a = mats[k].copy()
        pivots = _rref_modp_kernel(a, p)
        out[k] = pivots.shape[0] == n
    return out


def _full_rank_batch(mats: np.ndarray, p: int) -> np.ndarray:
    if _kernels.USE_NUMBA:
        return _full_rank_batch_kernel(np.ascontiguousarray(mats), np.int64(p))
    n = mats.shape[1]
    return np.array([len(_kernels.rref_modp_numpy(m.copy(), p)[1]) == n for m in mats], dtype=bool)


def is_isomorphic(m: Module, n: Module, seed: int = 0) -> IsoVerdict:
    if m.algebra is not n.algebra:
        raise ValueError("modules over different algebras")
    if m.dim != n.dim:
        return IsoVerdict("not_isomorphic", reason="dimensions differ")
    if m.dim == 0:
        return IsoVerdict("isomorphic", ModuleMap(m, n, m.field.zeros(0, 0)))
    hmn = hom_matrices(m, n)
    hnm = hom_matrices(n, m)
    if len(hmn) != len(hnm):
        return IsoVerdict("not_isomorphic", reason="dim Hom(m, n) != dim Hom(n, m)")
    if len(hmn) != len(hom_matrices(m, m)):
        return IsoVerdict("not_isomorphic", reason="dim Hom(m, n) != dim End(m)")
    status, mat = find_invertible_combination(m.field, hmn, np.random.default_rng(seed))
    if status == "found":
        return IsoVerdict("isomorphic", ModuleMap(m, n, mat))
    if status == "none":
        return IsoVerdict("not_isomorphic", reason="no invertible map in Hom(m, n)")
    return IsoVerdict("inconclusive", reason="search budget exhausted")
