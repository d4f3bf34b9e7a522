"""Representations of an acyclic quiver over an algebra ``A``.

Vertices are labelled ``1..n`` with every arrow pointing from a larger to a
smaller label.  A representation stores its vertex modules by value and one
matrix per arrow; block conventions (arrow order inside ``delta``, path
order inside ``m_i``) follow the quiver's input order throughout.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .algebra import Algebra, Path, Quiver, ValidationError, tensor_with_path_algebra
from .amodule import (
    IsoVerdict,
    Module,
    ModuleMap,
    direct_sum,
    find_invertible_combination,
    hom_matrices,
    quotient,
    submodule,
    zero_module,
)
from .certificate import Certificate
from .exactla import Field

__all__ = [
    "Representation",
    "RepMorphism",
    "MonicReport",
    "NotMonic",
    "zero_rep",
    "validate_representation",
    "is_morphism",
    "delta",
    "is_monic",
    "cok_i",
    "m_i",
    "m_i_map",
    "m_functor",
    "path_map",
    "rep_direct_sum",
    "hom_rep_basis",
    "adjoint_morphism",
    "adjunction_check",
    "rep_kernel",
    "rep_cokernel",
    "compose_morphisms",
    "identity_morphism",
    "zero_morphism",
    "sequence_exactness",
    "lambda_algebra",
    "to_lambda_module",
    "from_lambda_module",
    "rep_is_isomorphic",
    "restrict",
]


class NotMonic(ValueError):
    """A monic representation was required."""


@dataclass(eq=False)
class Representation:
    quiver: Quiver
    algebra: Algebra
    modules: dict[int, Module]
    maps: list[np.ndarray]

    def __post_init__(self):
        q = self.quiver
        if not q.is_acyclic():
            raise ValidationError("the outer quiver must be acyclic")
        if not q.is_descending():
            raise ValidationError(
                "arrows must point from larger to smaller vertices; use Quiver.relabel_topological"
            )
        if set(self.modules) != set(q.vertices):
            raise ValidationError("one module per vertex is required")
        if len(self.maps) != len(q.arrows):
            raise ValidationError("one matrix per arrow is required")
        F = self.algebra.field
        self.maps = [F.array(m).reshape(self.modules[e].dim, self.modules[s].dim) for m, (s, e) in zip(self.maps, q.arrows)]

    @property
    def field(self) -> Field:
        return self.algebra.field

    def __getitem__(self, i: int) -> Module:
        return self.modules[i]

    def arrow_map(self, a: int) -> ModuleMap:
        s, e = self.quiver.arrows[a]
        return ModuleMap(self.modules[s], self.modules[e], self.maps[a])

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.modules[i].dim for i in self.quiver.vertices)

    @property
    def total_dim(self) -> int:
        return sum(self.dim_vector)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def __repr__(self) -> str:
        return f"<Representation dims {self.dim_vector} over {self.algebra!r}>"


@dataclass(eq=False)
class RepMorphism:
    domain: Representation
    codomain: Representation
    comps: dict[int, np.ndarray]

    def __getitem__(self, i: int) -> np.ndarray:
        return self.comps[i]

    @property
    def field(self) -> Field:
        return self.domain.field

    def branch(self, i: int) -> ModuleMap:
        return ModuleMap(self.domain[i], self.codomain[i], self.comps[i])


class MonicReport:
    """``bool``-valued monicity verdict with ranks of every ``delta_i``."""

    def __init__(self, ranks: dict[int, tuple[int, int]]):
        self.ranks = ranks
        # vertex -> (rank, domain dim)
        self.failures = [i for i, (r, d) in ranks.items() if r != d]

    def __bool__(self) -> bool:
        return not self.failures

    def __repr__(self) -> str:
        return f"MonicReport(monic={bool(self)}, failures={self.failures})"


def zero_rep(q: Quiver, a: Algebra) -> Representation:
    F = a.field
    return Representation(q, a, {i: zero_module(a) for i in q.vertices}, [F.zeros(0, 0) for _ in q.arrows])


def validate_representation(x: Representation) -> None:
    F = x.field
    for a, (s, e) in enumerate(x.quiver.arrows):
        src, dst = x.modules[s], x.modules[e]
        mat = x.maps[a]
        for rs, re in zip(src.gen_actions, dst.gen_actions):
            if not F.equal(F.dot(mat, rs), F.dot(re, mat)):
                raise ValidationError(f"arrow {a} ({s}->{e}) is not an A-map")


def is_morphism(f: RepMorphism) -> bool:
    F = f.field
    x, y = f.domain, f.codomain
    for a, (s, e) in enumerate(x.quiver.arrows):
        if not F.equal(F.dot(f.comps[e], x.maps[a]), F.dot(y.maps[a], f.comps[s])):
            return False
    return True


# ---------------------------------------------------------------------------
# delta, Cok, monicity
# ---------------------------------------------------------------------------


def delta(x: Representation, i: int) -> ModuleMap:
    """``(X_a)_{e(a)=i}: (+)_{e(a)=i} X_{s(a)} -> X_i`` in arrow order."""
    q = x.quiver
    arrows = q.in_arrows(i)
    dom = direct_sum([x.modules[q.source(a)] for a in arrows], algebra=x.algebra)[0]
    if arrows:
        mat = np.hstack([x.maps[a] for a in arrows])
    else:
        mat = x.field.zeros(x.modules[i].dim, 0)
    return ModuleMap(dom, x.modules[i], mat)


def is_monic(x: Representation) -> MonicReport:
    F = x.field
    ranks = {}
    for i in x.quiver.vertices:
        d = delta(x, i)
        ranks[i] = (F.rank(d.mat) if d.mat.size else 0, d.mat.shape[1])
    return MonicReport(ranks)


def cok_i(x: Representation, i: int) -> tuple[Module, ModuleMap]:
    """``Cok_i(X) = X_i / sum Im X_a`` with the canonical projection."""
    d = delta(x, i)
    if d.domain.dim == 0:
        m = x.modules[i]
        return m, ModuleMap(m, m, x.field.eye(m.dim))
    return quotient(x.modules[i], d.mat)


# ---------------------------------------------------------------------------
# the functors m_i and m
# ---------------------------------------------------------------------------


def _blocks(q: Quiver, i: int) -> dict[int, list[Path]]:
    return {j: q.paths_between(i, j) for j in q.vertices}


def m_i(mod: Module, i: int, q: Quiver) -> Representation:
    """``P(i) (x) mod``: ``mod^{#paths i->j}`` at vertex ``j``."""
    F = mod.field
    blocks = _blocks(q, i)
    modules = {j: direct_sum([mod] * len(blocks[j]), algebra=mod.algebra)[0] for j in q.vertices}
    n = mod.dim
    maps = []
    for a, (s, e) in enumerate(q.arrows):
        src, dst = blocks[s], blocks[e]
        index = {p.arrows: k for k, p in enumerate(dst)}
        mat = F.zeros(len(dst) * n, len(src) * n)
        for k, p in enumerate(src):
            t = index[p.arrows + (a,)]
            mat[t * n : (t + 1) * n, k * n : (k + 1) * n] = F.eye(n)
        maps.append(mat)
    return Representation(q, mod.algebra, modules, maps)


def m_i_map(f: ModuleMap, i: int, q: Quiver, domain=None, codomain=None) -> RepMorphism:
    F = f.field
    domain = domain or m_i(f.domain, i, q)
    codomain = codomain or m_i(f.codomain, i, q)
    comps = {}
    for j in q.vertices:
        c = len(q.paths_between(i, j))
        mat = F.zeros(c * f.codomain.dim, c * f.domain.dim)
        for k in range(c):
            mat[k * f.codomain.dim : (k + 1) * f.codomain.dim, k * f.domain.dim : (k + 1) * f.domain.dim] = f.mat
        comps[j] = mat
    return RepMorphism(domain, codomain, comps)


def m_functor(mod: Module, q: Quiver) -> Representation:
    """``kQ (x) mod = (+)_i m_i(mod)``."""
    return rep_direct_sum([m_i(mod, i, q) for i in q.vertices])[0]


def path_map(x: Representation, p: Path) -> np.ndarray:
    """``X_p``: the composite of the arrow maps along ``p``."""
    F = x.field
    out = F.eye(x.modules[p.start].dim)
    for a in p.arrows:
        out = F.dot(x.maps[a], out)
    return out


# ---------------------------------------------------------------------------
# direct sums, Hom, adjunction
# ---------------------------------------------------------------------------


def rep_direct_sum(xs: Sequence[Representation]):
    """Vertexwise direct sum with injection/projection morphisms."""
    if not xs:
        raise ValueError("empty direct sum")
    q, a = xs[0].quiver, xs[0].algebra
    F = a.field
    modules, injs, projs = {}, {}, {}
    for i in q.vertices:
        modules[i], injs[i], projs[i] = direct_sum([x.modules[i] for x in xs], algebra=a)
    maps = []
    for arr, (s, e) in enumerate(q.arrows):
        mat = F.zeros(modules[e].dim, modules[s].dim)
        rs = re = 0
        for x in xs:
            ds, de = x.modules[s].dim, x.modules[e].dim
            mat[re : re + de, rs : rs + ds] = x.maps[arr]
            rs += ds
            re += de
        maps.append(mat)
    total = Representation(q, a, modules, maps)
    inj = [RepMorphism(x, total, {i: injs[i][k].mat for i in q.vertices}) for k, x in enumerate(xs)]
    proj = [RepMorphism(total, x, {i: projs[i][k].mat for i in q.vertices}) for k, x in enumerate(xs)]
    return total, inj, proj


def hom_rep_basis(x: Representation, y: Representation) -> list[RepMorphism]:
    """Basis of ``Hom_Rep(x, y)``: vertexwise A-maps plus commuting squares."""
    F = x.field
    q = x.quiver
    vertex_bases = {i: hom_matrices(x.modules[i], y.modules[i]) for i in q.vertices}
    offsets, total = {}, 0
    for i in q.vertices:
        offsets[i] = total
        total += len(vertex_bases[i])
    if total == 0:
        return []
    blocks = []
    for a, (s, e) in enumerate(q.arrows):
        rows = y.modules[e].dim * x.modules[s].dim
        if rows == 0:
            continue
        block = F.zeros(rows, total)
        for t, h in enumerate(vertex_bases[e]):
            block[:, offsets[e] + t] = F.dot(h, x.maps[a]).reshape(-1)
        for t, h in enumerate(vertex_bases[s]):
            col = F.neg(F.dot(y.maps[a], h)).reshape(-1)
            block[:, offsets[s] + t] = F.add(block[:, offsets[s] + t], col)
        blocks.append(block)
    coeffs = F.kernel_basis(np.vstack(blocks)) if blocks else F.eye(total)
    out = []
    for c in range(coeffs.shape[1]):
        comps = {}
        for i in q.vertices:
            basis = vertex_bases[i]
            k = len(basis)
            comps[i] = F.combine(coeffs[offsets[i] : offsets[i] + k, c], basis, (y.modules[i].dim, x.modules[i].dim))
        out.append(RepMorphism(x, y, comps))
    return out


def adjoint_morphism(mod: Module, i: int, x: Representation, g: np.ndarray, source=None) -> RepMorphism:
    """The morphism ``m_i(mod) -> x`` whose ``i``-th branch is ``g``.

    At vertex ``j`` the block of a path ``p: i -> j`` is ``X_p g``.
    """
    F = x.field
    q = x.quiver
    source = source or m_i(mod, i, q)
    comps = {}
    for j in q.vertices:
        paths = q.paths_between(i, j)
        if paths:
            comps[j] = np.hstack([F.dot(path_map(x, p), g) for p in paths])
        else:
            comps[j] = F.zeros(x.modules[j].dim, 0)
    return RepMorphism(source, x, comps)


def adjunction_check(mod: Module, x: Representation, i: int) -> Certificate:
    """Certify ``Hom(m_i(mod), x) -> Hom_A(mod, x_i)``, ``phi -> phi_i``, is bijective."""
    F = x.field
    cert = Certificate("adjunction", F)
    left = hom_rep_basis(m_i(mod, i, x.quiver), x)
    right = hom_matrices(mod, x.modules[i])
    cert.note("vertex", i)
    cert.note("dim_left", len(left))
    cert.note("dim_right", len(right))
    size = x.modules[i].dim * mod.dim
    restricted = np.stack([phi.comps[i].reshape(-1) for phi in left], axis=1) if left else F.zeros(size, 0)
    rbasis = np.stack([h.reshape(-1) for h in right], axis=1) if right else F.zeros(size, 0)
    if len(left) == len(right):
        coords = F.solve(rbasis, restricted) if size else F.zeros(len(right), len(left))
        if coords is None:
            coords = F.zeros(len(right), len(left))
            cert.zero("branch restriction lands in Hom_A(M, X_i)", F.eye(max(1, len(left))))
        if size:
            cert.products_equal("restriction = basis @ coords", [rbasis, coords], [restricted])
        cert.invertible("restriction is bijective onto Hom_A(M, X_i)", coords)
    else:
        # dimension mismatch: record the offending restriction matrix
        cert.invertible("dim Hom(m_i M, X) = dim Hom_A(M, X_i)", F.zeros(len(right), len(left)))
    cert.check()
    return cert


# ---------------------------------------------------------------------------
# kernels, cokernels, composition, exactness
# ---------------------------------------------------------------------------


def identity_morphism(x: Representation) -> RepMorphism:
    F = x.field
    return RepMorphism(x, x, {i: F.eye(x.modules[i].dim) for i in x.quiver.vertices})


def zero_morphism(x: Representation, y: Representation) -> RepMorphism:
    F = x.field
    return RepMorphism(x, y, {i: F.zeros(y.modules[i].dim, x.modules[i].dim) for i in x.quiver.vertices})


def compose_morphisms(g: RepMorphism, f: RepMorphism) -> RepMorphism:
    """``g o f``."""
    F = f.field
    return RepMorphism(f.domain, g.codomain, {i: F.dot(g.comps[i], f.comps[i]) for i in f.comps})


def rep_kernel(f: RepMorphism) -> tuple[Representation, RepMorphism]:
    F = f.field
    x = f.domain
    q = x.quiver
    modules, incs, lefts = {}, {}, {}
    for i in q.vertices:
        modules[i], inc = submodule(x.modules[i], F.kernel_basis(f.comps[i]))
        incs[i] = inc.mat
        lefts[i] = F.left_inverse(inc.mat) if inc.mat.shape[1] else F.zeros(0, inc.mat.shape[0])
    maps = [F.chain(lefts[e], x.maps[a], incs[s]) for a, (s, e) in enumerate(q.arrows)]
    k = Representation(q, x.algebra, modules, maps)
    return k, RepMorphism(k, x, incs)


def rep_cokernel(f: RepMorphism) -> tuple[Representation, RepMorphism]:
    """Vertexwise cokernel with arrow maps induced through sections."""
    F = f.field
    y = f.codomain
    q = y.quiver
    modules, projs, sections = {}, {}, {}
    for i in q.vertices:
        mod, proj = quotient(y.modules[i], f.comps[i])
        modules[i] = mod
        projs[i] = proj.mat
        sections[i] = F.right_inverse(proj.mat) if proj.mat.shape[0] else F.zeros(proj.mat.shape[1], 0)
    maps = [F.chain(projs[e], y.maps[a], sections[s]) for a, (s, e) in enumerate(q.arrows)]
    z = Representation(q, y.algebra, modules, maps)
    return z, RepMorphism(y, z, projs)


def sequence_exactness(
    chain: Sequence[RepMorphism], left_zero: bool = True, right_zero: bool = True, label: str = "sequence"
) -> Certificate:
    """Certify vertexwise exactness of ``0 -> X^0 -> ... -> X^m -> 0``.

    Failed claims are labelled with the position and vertex, so
    ``cert.failures()`` pinpoints where exactness breaks.
    """
    F = chain[0].field
    q = chain[0].domain.quiver
    cert = Certificate(label, F)
    for i in q.vertices:
        if left_zero:
            cert.injective(f"position 0, vertex {i}: first map injective", chain[0].comps[i])
        for k in range(len(chain) - 1):
            cert.exact(f"position {k + 1}, vertex {i}: im = ker", chain[k].comps[i], chain[k + 1].comps[i])
        if right_zero:
            cert.surjective(f"position {len(chain)}, vertex {i}: last map surjective", chain[-1].comps[i])
    for k, f in enumerate(chain):
        for a, (s, e) in enumerate(q.arrows):
            cert.products_equal(
                f"map {k}: square for arrow {a} ({s}->{e}) commutes",
                [f.comps[e], f.domain.maps[a]] if f.domain.maps[a].size else [F.zeros(f.comps[e].shape[0], f.domain.maps[a].shape[1])],
                [f.codomain.maps[a], f.comps[s]] if f.comps[s].size else [F.zeros(f.codomain.maps[a].shape[0], f.comps[s].shape[1])],
            )
    cert.check()
    return cert


# ---------------------------------------------------------------------------
# Lambda = kQ (x) A
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def lambda_algebra(q: Quiver, a: Algebra) -> Algebra:
    return tensor_with_path_algebra(q, a)


def _offsets(x: Representation) -> dict[int, int]:
    out, off = {}, 0
    for i in x.quiver.vertices:
        out[i] = off
        off += x.modules[i].dim
    return out


def to_lambda_module(x: Representation, lam: Algebra | None = None) -> Module:
    """The Lambda-module on ``(+)_i X_i``: ``p (x) b`` acts as ``X_p rho(b)``."""
    lam = lam or lambda_algebra(x.quiver, x.algebra)
    F = x.field
    A = x.algebra
    n = x.total_dim
    off = _offsets(x)
    dA = A.dim
    act = F.zeros(lam.dim * n, n).reshape(lam.dim, n, n)
    for k, p in enumerate(lam.paths):
        xp = path_map(x, p)
        src, dst = x.modules[p.start], x.modules[p.end]
        if src.dim == 0 or dst.dim == 0:
            continue
        for b in range(dA):
            act[k * dA + b, off[p.end] : off[p.end] + dst.dim, off[p.start] : off[p.start] + src.dim] = F.dot(xp, src.action[b])
    return Module(lam, act)


def from_lambda_module(m: Module, q: Quiver, a: Algebra) -> tuple[Representation, np.ndarray]:
    """Inverse of :func:`to_lambda_module`.

    Returns the representation and the invertible matrix
    ``(+)_i X_i -> m`` identifying ``to_lambda_module(result)`` with ``m``.
    """
    lam = m.algebra
    F = a.field
    kq = lam.factors[0]

    def coords(kq_vec, a_vec):
        return F.array(np.multiply.outer(kq_vec, a_vec).reshape(-1))

    bases, lefts, modules = {}, {}, {}
    for v in q.vertices:
        ev = m.act(coords(kq.idempotents[v - 1], a.unit))
        if F.rank(ev):
            bases[v] = F.column_basis(ev)
            lefts[v] = F.left_inverse(bases[v])
            act = np.stack([F.chain(lefts[v], m.act(coords(kq.unit, a.basis_vector(b))), bases[v]) for b in range(a.dim)])
            modules[v] = Module(a, act)
        else:
            bases[v] = F.zeros(m.dim, 0)
            lefts[v] = F.zeros(0, m.dim)
            modules[v] = zero_module(a)
    path_index = {(p.start, p.arrows): k for k, p in enumerate(kq.paths)}
    maps = []
    for arr, (s, e) in enumerate(q.arrows):
        k = path_index[(s, (arr,))]
        maps.append(F.chain(lefts[e], m.act(coords(kq.basis_vector(k), a.unit)), bases[s]))
    rep = Representation(q, a, modules, maps)
    witness = np.hstack([bases[v] for v in q.vertices]) if m.dim else F.zeros(0, 0)
    return rep, witness


# ---------------------------------------------------------------------------
# isomorphism and restriction
# ---------------------------------------------------------------------------


def _block_diag(F: Field, f: RepMorphism) -> np.ndarray:
    mats = [f.comps[i] for i in f.domain.quiver.vertices]
    rows = sum(m.shape[0] for m in mats)
    cols = sum(m.shape[1] for m in mats)
    out = F.zeros(rows, cols)
    r = c = 0
    for m in mats:
        out[r : r + m.shape[0], c : c + m.shape[1]] = m
        r += m.shape[0]
        c += m.shape[1]
    return out


def rep_is_isomorphic(x: Representation, y: Representation, seed: int = 0) -> IsoVerdict:
    if x.dim_vector != y.dim_vector:
        return IsoVerdict("not_isomorphic", reason="dimension vectors differ")
    F = x.field
    if x.total_dim == 0:
        return IsoVerdict("isomorphic", zero_morphism(x, y))
    hxy = hom_rep_basis(x, y)
    if len(hxy) != len(hom_rep_basis(y, x)) or len(hxy) != len(hom_rep_basis(x, x)):
        return IsoVerdict("not_isomorphic", reason="Hom dimensions differ")
    mats = [_block_diag(F, f) for f in hxy]
    status, found = find_invertible_combination(F, mats, np.random.default_rng(seed))
    if status == "found":
        comps, r, c = {}, 0, 0
        for i in x.quiver.vertices:
            dy, dx = y.modules[i].dim, x.modules[i].dim
            comps[i] = found[r : r + dy, c : c + dx].copy()
            r += dy
            c += dx
        return IsoVerdict("isomorphic", RepMorphism(x, y, comps))
    if status == "none":
        return IsoVerdict("not_isomorphic", reason="no invertible morphism")
    return IsoVerdict("inconclusive", reason="search budget exhausted")


def restrict(x: Representation, removed: Sequence[int]) -> tuple[Representation, dict[int, int]]:
    """Restriction to the full subquiver on the remaining vertices."""
    q2, mapping = x.quiver.delete_vertices(removed)
    modules = {mapping[v]: x.modules[v] for v in mapping}
    maps = [x.maps[a] for a, (s, e) in enumerate(x.quiver.arrows) if s in mapping and e in mapping]
    return Representation(q2, x.algebra, modules, maps), mapping
