"""Stable Hom spaces of the monomorphism category over a self-injective algebra.

With ``A`` self-injective the projective and injective objects coincide, so
a morphism ``x -> y`` factors through a projective exactly when it factors
through the injective embedding ``f: x -> E``.  The factoring subspace is
``{h f : h in Hom(E, y)}``, and ``Hom(E, y)`` is read off the block
decomposition ``E = (+)_l m_l(C_l)`` through the ``m_l`` adjunction.

Module-level stable Hom is the same computation on the one-vertex quiver.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Algebra, Path, Quiver
from .amodule import (
    Module,
    hom_matrices,
    indec_projective,
    injective_envelope,
    is_isomorphic,
    kernel,
    projective_cover,
    socle,
)
from .certificate import Certificate
from .exactla import Field
from .moninj import EmbeddingResult, indec_injectives_mon, injective_embedding
from .quiverrep import (
    Representation,
    RepMorphism,
    adjoint_morphism,
    compose_morphisms,
    hom_rep_basis,
    identity_morphism,
    m_functor,
    m_i,
    rep_is_isomorphic,
)

__all__ = [
    "NotSelfInjective",
    "SelfInjectivity",
    "StableHomSpace",
    "T1Report",
    "is_self_injective",
    "projective_injective_objects",
    "frobenius_check",
    "stable_hom",
    "stable_hom_modules",
    "cosyzygy",
    "cosyzygy_chain",
    "module_cosyzygy",
    "module_syzygy",
    "point_rep",
    "t1_check",
    "end_iso_check",
]

POINT = Quiver(1, ())


class NotSelfInjective(ValueError):
    """The algebra is not self-injective."""


@dataclass
class SelfInjectivity:
    ok: bool
    witnesses: dict[int, np.ndarray | None]  # idempotent -> iso P(i) -> E(soc P(i))

    def __bool__(self) -> bool:
        return self.ok


def is_self_injective(a: Algebra) -> SelfInjectivity:
    """Every ``P(i)`` is isomorphic to the injective envelope of its socle."""
    witnesses = {}
    for i in range(len(a.idempotents)):
        p = indec_projective(a, i)
        env = injective_envelope(socle(p)[0])[0]
        verdict = is_isomorphic(p, env)
        witnesses[i] = verdict.witness.mat if verdict else None
    return SelfInjectivity(all(w is not None for w in witnesses.values()), witnesses)


def _require_self_injective(a: Algebra) -> None:
    if not is_self_injective(a):
        raise NotSelfInjective(f"{a!r} is not self-injective")


def projective_injective_objects(q: Quiver, a: Algebra) -> list[Representation]:
    """The objects ``m_i(P(j))`` up to isomorphism."""
    _require_self_injective(a)
    out: list[Representation] = []
    for i in q.vertices:
        for j in range(len(a.idempotents)):
            rep = m_i(indec_projective(a, j), i, q)
            if not any(o.dim_vector == rep.dim_vector and rep_is_isomorphic(o, rep) for o in out):
                out.append(rep)
    return out


def frobenius_check(q: Quiver, a: Algebra) -> tuple[bool, list[tuple[int, int]]]:
    """Match indecomposable projectives with indecomposable injectives."""
    projs = projective_injective_objects(q, a)
    injs = indec_injectives_mon(q, a)
    matching, used = [], set()
    for k, p in enumerate(projs):
        hit = next((t for t, e in enumerate(injs) if t not in used and p.dim_vector == e.dim_vector and rep_is_isomorphic(p, e)), None)
        if hit is not None:
            used.add(hit)
            matching.append((k, hit))
    return len(projs) == len(injs) == len(matching), matching


# ---------------------------------------------------------------------------
# stable Hom
# ---------------------------------------------------------------------------


def _flat(f: RepMorphism) -> np.ndarray:
    return np.concatenate([f.comps[i].reshape(-1) for i in f.domain.quiver.vertices])


def _columns(F: Field, vecs: list[np.ndarray], size: int) -> np.ndarray:
    return np.stack(vecs, axis=1) if vecs else F.zeros(size, 0)


@dataclass
class StableHomSpace:
    ambient: list[RepMorphism]
    subspace: list[RepMorphism]  # basis of the morphisms factoring through a projective
    representatives: list[RepMorphism]  # coset representatives, a basis of the quotient
    field: Field

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def basis_matrix(self) -> np.ndarray:
        """Columns: flattened subspace basis followed by representatives."""
        vecs = [_flat(m) for m in self.subspace + self.representatives]
        return _columns(self.field, vecs, len(vecs[0]) if vecs else 0)

    def split(self, f: RepMorphism) -> tuple[np.ndarray, np.ndarray]:
        """Coordinates of ``f`` against the subspace and the representatives."""
        F = self.field
        n = len(self.ambient)
        if n == 0:
            return F.zeros(0, 1), F.zeros(0, 1)
        coords = F.solve(self.basis_matrix(), _flat(f).reshape(-1, 1))
        if coords is None:
            raise ValueError("not a morphism in this Hom space")
        k = len(self.subspace)
        return coords[:k], coords[k:]

    def class_of(self, f: RepMorphism) -> np.ndarray:
        return self.split(f)[1]


def _hom_from_embedding(emb: EmbeddingResult, y: Representation) -> list[RepMorphism]:
    """Basis of ``Hom(E, y)`` via ``Hom(m_l(C_l), y) = Hom_A(C_l, y_l)``."""
    F = y.field
    q = y.quiver
    sigma = emb.decomposition
    T = sigma.domain
    base = {s.vertex: s.module for s in emb.summand_provenance}
    pieces = {l: m_i(base[l], l, q) for l in q.vertices}
    inv = {j: F.inverse(sigma[j]) for j in q.vertices}
    out = []
    for l in q.vertices:
        offsets = {j: sum(pieces[k][j].dim for k in q.vertices if k < l) for j in q.vertices}
        for h in hom_matrices(base[l], y[l]):
            psi = adjoint_morphism(base[l], l, y, h, source=pieces[l])
            comps = {}
            for j in q.vertices:
                mat = F.zeros(y[j].dim, T[j].dim)
                mat[:, offsets[j] : offsets[j] + pieces[l][j].dim] = psi.comps[j]
                comps[j] = F.dot(mat, inv[j])
            out.append(RepMorphism(emb.E, y, comps))
    return out


def stable_hom(x: Representation, y: Representation, check: bool = True) -> StableHomSpace:
    """Hom modulo morphisms factoring through projective(-injective) objects."""
    if check:
        _require_self_injective(x.algebra)
    F = x.field
    ambient = hom_rep_basis(x, y)
    size = sum(y[i].dim * x[i].dim for i in x.quiver.vertices)
    if not ambient:
        return StableHomSpace([], [], [], F)
    emb = injective_embedding(x)
    factoring = [compose_morphisms(h, emb.f) for h in _hom_from_embedding(emb, y)]
    amb = _columns(F, [_flat(m) for m in ambient], size)
    fac = _columns(F, [_flat(m) for m in factoring], size)
    coords = F.solve(amb, fac) if factoring else F.zeros(len(ambient), 0)
    if coords is None:
        raise ArithmeticError("a factoring morphism is not in the Hom space")
    # deterministic: subspace = pivot columns of the coordinates, representatives
    # = ambient basis vectors completing them
    n = len(ambient)
    sub_coords = F.column_basis(coords) if coords.shape[1] else F.zeros(n, 0)
    pivots = F.rref(np.hstack([sub_coords, F.eye(n)])).pivots
    k = sub_coords.shape[1]
    reps = [ambient[c - k] for c in pivots if c >= k]

    def morph(vec):
        comps = {i: F.combine(vec, [m.comps[i] for m in ambient], (y[i].dim, x[i].dim)) for i in x.quiver.vertices}
        return RepMorphism(x, y, comps)

    subspace = [morph(sub_coords[:, t]) for t in range(k)]
    return StableHomSpace(ambient, subspace, reps, F)


def point_rep(m: Module) -> Representation:
    return Representation(POINT, m.algebra, {1: m}, [])


def stable_hom_modules(m: Module, n: Module, check: bool = True) -> StableHomSpace:
    return stable_hom(point_rep(m), point_rep(n), check=check)


# ---------------------------------------------------------------------------
# shifts
# ---------------------------------------------------------------------------


def cosyzygy_chain(x: Representation, n: int) -> list[EmbeddingResult]:
    _require_self_injective(x.algebra)
    steps = []
    current = x
    for _ in range(n):
        step = injective_embedding(current)
        steps.append(step)
        current = step.Z
    return steps


def cosyzygy(x: Representation, n: int = 1) -> Representation:
    """The shift ``x[n]``: the cokernel of the injective embedding, ``n`` times."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return cosyzygy_chain(x, n)[-1].Z


def module_cosyzygy(m: Module, n: int = 1) -> Module:
    for _ in range(n):
        m = injective_embedding(point_rep(m)).Z[1]
    return m


def module_syzygy(m: Module, n: int = 1) -> Module:
    for _ in range(n):
        m = kernel(projective_cover(m).epi)[0]
    return m


@dataclass
class T1Report:
    nmax: int
    module_dims: dict[int, int]  # n -> dim stable Hom_A(t, t[n])
    mon_dims: dict[int, int]  # n -> dim stable Hom(m(t), m(t)[n])
    implication_holds: bool

    def to_json(self) -> dict:
        return {
            "nmax": self.nmax,
            "module_dims": {str(n): d for n, d in sorted(self.module_dims.items())},
            "mon_dims": {str(n): d for n, d in sorted(self.mon_dims.items())},
            "implication_holds": self.implication_holds,
        }


def t1_check(t: Module, q: Quiver, nmax: int) -> T1Report:
    """Compare ``Hom(t, t[n])`` in the stable module category with ``Hom(m t, m t [n])``.

    Positive ``n`` uses cosyzygies on both sides.  Negative ``n`` uses syzygies
    for modules and ``Hom(x[|n|], x)`` for the monomorphism category.
    """
    _require_self_injective(t.algebra)
    mt = m_functor(t, q)
    module_dims, mon_dims = {}, {}
    shifted_mod = t
    shifted_mon = mt
    for n in range(1, nmax + 1):
        shifted_mod = module_cosyzygy(shifted_mod)
        shifted_mon = injective_embedding(shifted_mon).Z
        module_dims[n] = stable_hom_modules(t, shifted_mod, check=False).dim
        mon_dims[n] = stable_hom(mt, shifted_mon, check=False).dim
        module_dims[-n] = stable_hom_modules(t, module_syzygy(t, n), check=False).dim
        mon_dims[-n] = stable_hom(shifted_mon, mt, check=False).dim
    holds = all(mon_dims[n] == 0 for n in module_dims if module_dims[n] == 0)
    return T1Report(nmax, module_dims, mon_dims, holds)


# ---------------------------------------------------------------------------
# the endomorphism algebra of m(t)
# ---------------------------------------------------------------------------


def _summand_offsets(q: Quiver, t: Module) -> dict[int, dict[int, int]]:
    """Column offset of the ``m_l(t)`` summand inside ``m(t)`` at each vertex."""
    out = {}
    for j in q.vertices:
        off, row = 0, {}
        for l in q.vertices:
            row[l] = off
            off += len(q.paths_between(l, j)) * t.dim
        out[j] = row
    return out


def _phi(t: Module, q: Quiver, mt: Representation, path, g: np.ndarray, pieces, offsets) -> RepMorphism:
    """The morphism ``m_j(t) -> m_i(t)`` (``path: i -> j``) adjoint to ``g`` placed in block ``path``,
    embedded as an endomorphism of ``m(t)``."""
    F = mt.field
    i, j = path.start, path.end
    target = pieces[i]
    blocks = q.paths_between(i, j)
    k = next(n for n, p in enumerate(blocks) if p.arrows == path.arrows)
    into = F.zeros(target[j].dim, t.dim)
    into[k * t.dim : (k + 1) * t.dim, :] = g
    adj = adjoint_morphism(t, j, target, into, source=pieces[j])
    comps = {}
    for v in q.vertices:
        mat = F.zeros(mt[v].dim, mt[v].dim)
        r, c = offsets[v][i], offsets[v][j]
        blk = adj.comps[v]
        mat[r : r + blk.shape[0], c : c + blk.shape[1]] = blk
        comps[v] = mat
    return RepMorphism(mt, mt, comps)


def _block_diag_morphism(f: RepMorphism) -> np.ndarray:
    F = f.field
    mats = [f.comps[i] for i in f.domain.quiver.vertices]
    out = F.zeros(sum(m.shape[0] for m in mats), sum(m.shape[1] for m in mats))
    r = c = 0
    for m in mats:
        out[r : r + m.shape[0], c : c + m.shape[1]] = m
        r += m.shape[0]
        c += m.shape[1]
    return out


def end_iso_check(t: Module, q: Quiver) -> Certificate:
    """Certify ``kQ (x) End_stable(t) -> End_stable(m(t))`` is an algebra isomorphism.

    ``p (x) g`` with ``p: i -> j`` goes to the morphism ``m_j(t) -> m_i(t)``
    sending the block of a path ``r`` from ``j`` to the block of ``p`` followed
    by ``r``, acting by ``g``.  On the nose these satisfy
    ``phi(p, g) phi(p', g') = phi(p then p', g g')``, which is the product of
    ``kQ^op (x) End``; multiplicativity is certified in that form.
    """
    _require_self_injective(t.algebra)
    F = t.field
    cert = Certificate("end_iso", F)
    mt = m_functor(t, q)
    pieces = {l: m_i(t, l, q) for l in q.vertices}
    offsets = _summand_offsets(q, t)
    st_t = stable_hom_modules(t, t, check=False)
    st_m = stable_hom(mt, mt, check=False)
    paths = q.paths()
    reps = [r.comps[1] for r in st_t.representatives]
    cert.note("dim_kQ", len(paths))
    cert.note("dim_stable_end_t", len(reps))
    cert.note("dim_stable_end_mt", st_m.dim)
    cert.note("dimension_identity", st_m.dim == len(paths) * len(reps))

    phi = lambda p, g: _phi(t, q, mt, p, g, pieces, offsets)
    diag = _block_diag_morphism

    # unital: sum of phi(e_i, id) is the identity of m(t)
    unit = [phi(q.trivial_path(i), F.eye(t.dim)) for i in q.vertices]
    total = F.combine([1] * len(unit), [diag(u) for u in unit], (0, 0)) if unit else F.zeros(0, 0)
    cert.products_equal("unital: sum of phi(e_i, id) = id", [total], [diag(identity_morphism(mt))])

    # well defined: phi(p, h) factors through a projective for h stably zero
    sub_m = st_m.basis_matrix()[:, : len(st_m.subspace)]
    for p in paths:
        for s, h in enumerate(st_t.subspace):
            vec = _flat(phi(p, h.comps[1])).reshape(-1, 1)
            coeffs = F.solve(sub_m, vec) if sub_m.shape[1] else None
            if coeffs is None:
                if F.is_zero(vec):
                    continue
                cert.zero(f"well defined: phi({p.arrows}@{p.start}, factoring {s}) stably zero", vec)
            else:
                cert.products_equal(f"well defined: phi({p.arrows}@{p.start}, factoring {s}) stably zero", [sub_m, coeffs], [vec])

    # multiplicative on basis pairs
    for a, p in enumerate(paths):
        for b, p2 in enumerate(paths):
            for u, g in enumerate(reps):
                for w, g2 in enumerate(reps):
                    lhs = [diag(phi(p, g)), diag(phi(p2, g2))]
                    if p.end == p2.start:
                        prod = Path(p.start, p.arrows + p2.arrows, p2.end)
                        rhs = [diag(phi(prod, F.dot(g, g2)))]
                    else:
                        rhs = [F.zeros(lhs[0].shape[0], lhs[1].shape[1])]
                    cert.products_equal(f"multiplicative: paths ({a}, {b}), classes ({u}, {w})", lhs, rhs)

    # bijective on stable classes
    images = [phi(p, g) for p in paths for g in reps]
    if st_m.ambient:
        basis = st_m.basis_matrix()
        vecs = _columns(F, [_flat(m) for m in images], basis.shape[0])
        coords = F.solve(basis, vecs) if images else F.zeros(basis.shape[1], 0)
        if coords is None:
            cert.zero("images lie in End(m(t))", F.eye(1))
        else:
            k = len(st_m.subspace)
            cert.products_equal("images expressed in the stable basis", [basis, coords], [vecs])
            cert.invertible("map on stable classes is bijective", coords[k:])
    else:
        cert.invertible("map on stable classes is bijective", F.zeros(0, len(images)))
    cert.check()
    return cert
