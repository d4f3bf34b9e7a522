"""Injective objects and embeddings in the monomorphism category.

The embedding ``X -> E`` is built vertex by vertex in descending order.  A
source gets an injective envelope of ``X_i``; any other vertex ``j`` gets

    E_j = (+)_{e(a)=j} E_{s(a)}  (+)  K_j,   K_j = envelope of Cok_j(X),

with ``f_j = (t ; eta_j pi_j)`` where ``t`` extends ``diag(f_{s(a)})`` along
``delta_j(X)``.  Each ``E_j`` is therefore a literal block sum of base
injectives ``C_l`` (``E_l`` at a source, ``K_l`` elsewhere), one block per
path ``l -> j``; the blocks are tracked so that the isomorphism with
``(+)_l m_l(C_l)`` is a permutation of identity blocks and can be certified.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import Algebra, Quiver
from .amodule import (
    Module,
    ModuleMap,
    NoSolution,
    direct_sum,
    extend_along_mono,
    indec_injective,
    injective_envelope,
    is_isomorphic,
)
from .certificate import Certificate
from .exactla import Field
from .quiverrep import (
    NotMonic,
    Representation,
    RepMorphism,
    adjoint_morphism,
    cok_i,
    compose_morphisms,
    delta,
    hom_rep_basis,
    is_monic,
    m_i,
    rep_cokernel,
    rep_direct_sum,
    rep_is_isomorphic,
    restrict,
    sequence_exactness,
)

__all__ = [
    "NotMonic",
    "InternalInjectivityFailure",
    "Summand",
    "EmbeddingResult",
    "Coresolution",
    "StripResult",
    "StripStage",
    "injective_embedding",
    "injective_coresolution",
    "indec_injectives_mon",
    "is_indecomposable",
    "naive_embedding_dim",
    "source_strip",
    "strip_filtration",
]


class InternalInjectivityFailure(RuntimeError):
    """An extension into an envelope failed; the envelope was not injective."""


@dataclass
class Summand:
    vertex: int
    role: str  # "source-envelope" or "cokernel-envelope"
    module: Module

    def to_json(self) -> dict:
        return {"vertex": self.vertex, "role": self.role, "dim": self.module.dim}


@dataclass
class EmbeddingResult:
    X: Representation
    E: Representation
    f: RepMorphism
    Z: Representation
    projection: RepMorphism
    summand_provenance: list[Summand]
    decomposition: RepMorphism  # (+)_l m_l(C_l) -> E
    certificate: Certificate


def _require_monic(x: Representation) -> None:
    report = is_monic(x)
    if not report:
        raise NotMonic(f"delta is not injective at vertices {report.failures}")


def _block_diag(F: Field, mats: Sequence[np.ndarray]) -> np.ndarray:
    out = F.zeros(sum(m.shape[0] for m in mats), sum(m.shape[1] for m in mats))
    r = c = 0
    for m in mats:
        out[r : r + m.shape[0], c : c + m.shape[1]] = m
        r += m.shape[0]
        c += m.shape[1]
    return out


def injective_embedding(x: Representation) -> EmbeddingResult:
    _require_monic(x)
    q, A, F = x.quiver, x.algebra, x.field
    sources = set(q.sources)
    E_mod: dict[int, Module] = {}
    f: dict[int, np.ndarray] = {}
    base: dict[int, Module] = {}
    blocks: dict[int, list[tuple[int, tuple[int, ...]]]] = {}
    provenance: list[Summand] = []

    for j in sorted(q.vertices, reverse=True):
        if j in sources:
            env, eta = injective_envelope(x[j])
            E_mod[j], f[j], base[j] = env, eta.mat, env
            blocks[j] = [(j, ())]
            provenance.append(Summand(j, "source-envelope", env))
            continue
        arrows = q.in_arrows(j)
        cok, pi = cok_i(x, j)
        K, eta = injective_envelope(cok)
        base[j] = K
        provenance.append(Summand(j, "cokernel-envelope", K))
        parts = [E_mod[q.source(a)] for a in arrows]
        D = direct_sum(parts, algebra=A)[0]
        diag = ModuleMap(delta(x, j).domain, D, _block_diag(F, [f[q.source(a)] for a in arrows]))
        try:
            t = extend_along_mono(delta(x, j), diag).mat
        except NoSolution as exc:
            raise InternalInjectivityFailure(f"extension at vertex {j} failed: {exc}") from exc
        E_mod[j] = direct_sum(parts + [K], algebra=A)[0]
        f[j] = np.vstack([t, F.dot(eta.mat, pi.mat)])
        blocks[j] = [(l, p + (a,)) for a in arrows for (l, p) in blocks[q.source(a)]] + [(j, ())]

    # E_a: inclusion of E_{s(a)} as the k-th block of E_j
    E_maps = []
    for a, (s, e) in enumerate(q.arrows):
        arrows = q.in_arrows(e)
        k = arrows.index(a)
        offset = sum(E_mod[q.source(b)].dim for b in arrows[:k])
        mat = F.zeros(E_mod[e].dim, E_mod[s].dim)
        mat[offset : offset + E_mod[s].dim, :] = F.eye(E_mod[s].dim)
        E_maps.append(mat)
    E = Representation(q, A, E_mod, E_maps)
    fm = RepMorphism(x, E, f)
    Z, zproj = rep_cokernel(fm)
    sigma = _decomposition(E, base, blocks)

    cert = Certificate("injective_embedding", F)
    vertex_claims = {}
    for i in q.vertices:
        inj = cert.injective(f"vertex {i}: f_i injective", f[i])
        ex = cert.exact(f"vertex {i}: im f_i = ker q_i", f[i], zproj[i])
        sur = cert.surjective(f"vertex {i}: q_i surjective", zproj[i])
        vertex_claims[i] = (inj, ex, sur)
        for g, (rx, re) in enumerate(zip(x[i].gen_actions, E[i].gen_actions)):
            cert.products_equal(f"vertex {i}: f_i is A-linear (generator {g})", [f[i], rx], [re, f[i]])
    square_claims = []
    for a, (s, e) in enumerate(q.arrows):
        square_claims.append(
            cert.products_equal(f"arrow {a}: f_{e} X_a = E_a f_{s}", [f[e], x.maps[a]], [E.maps[a], f[s]])
        )
    monic_claims = []
    for i in q.vertices:
        d = delta(Z, i)
        if d.mat.shape[1]:
            monic_claims.append(cert.injective(f"vertex {i}: delta_i(Z) injective", d.mat))
    sigma_claims = _certify_decomposition(cert, sigma)
    cert.check()
    cert.note(
        "vertex_checks",
        [{"i": i, "f_injective": c[0].passed, "exact": bool(c[1].passed and c[2].passed)} for i, c in vertex_claims.items()],
    )
    cert.note("squares_ok", all(c.passed for c in square_claims))
    cert.note("Z_monic", all(c.passed for c in monic_claims))
    cert.note("decomposition_ok", all(c.passed for c in sigma_claims))
    cert.note("summands", [s.to_json() for s in provenance if s.module.dim])
    cert.note("dim_E", E.dim_vector)
    return EmbeddingResult(x, E, fm, Z, zproj, provenance, sigma, cert)


def _decomposition(E: Representation, base: dict[int, Module], blocks) -> RepMorphism:
    """The permutation isomorphism ``(+)_l m_l(C_l) -> E``."""
    q, F = E.quiver, E.field
    summands = [m_i(base[l], l, q) for l in q.vertices]
    T = rep_direct_sum(summands)[0]
    comps = {}
    for j in q.vertices:
        # position of each (l, path) block inside E_j
        where, off = {}, 0
        for l, arrows in blocks[j]:
            where[(l, arrows)] = off
            off += base[l].dim
        mat = F.zeros(E[j].dim, T[j].dim)
        col = 0
        for l in q.vertices:
            n = base[l].dim
            for p in q.paths_between(l, j):
                r = where[(l, p.arrows)]
                mat[r : r + n, col : col + n] = F.eye(n)
                col += n
        comps[j] = mat
    return RepMorphism(T, E, comps)


def _certify_decomposition(cert: Certificate, sigma: RepMorphism) -> list:
    T, E = sigma.domain, sigma.codomain
    claims = []
    for j in E.quiver.vertices:
        claims.append(cert.invertible(f"vertex {j}: sum of m_l(C_l) -> E_j invertible", sigma[j]))
        for g, (rt, re) in enumerate(zip(T[j].gen_actions, E[j].gen_actions)):
            claims.append(cert.products_equal(f"vertex {j}: decomposition A-linear (generator {g})", [sigma[j], rt], [re, sigma[j]]))
    for a, (s, e) in enumerate(E.quiver.arrows):
        claims.append(
            cert.products_equal(f"arrow {a}: decomposition commutes", [sigma[e], T.maps[a]], [E.maps[a], sigma[s]])
        )
    return claims


def naive_embedding_dim(x: Representation) -> int:
    """Total dimension of ``(+)_i m_i(I(X_i))``, the vertexwise-envelope embedding."""
    q = x.quiver
    total = 0
    for i in q.vertices:
        env = injective_envelope(x[i])[0]
        total += env.dim * sum(len(q.paths_between(i, j)) for j in q.vertices)
    return total


# ---------------------------------------------------------------------------
# coresolutions
# ---------------------------------------------------------------------------


@dataclass
class Coresolution:
    X: Representation
    terms: list[Representation]
    maps: list[RepMorphism]  # X -> E^0, E^0 -> E^1, ...
    steps: list[EmbeddingResult]
    certificate: Certificate


def injective_coresolution(x: Representation, length: int) -> Coresolution:
    """``0 -> X -> E^0 -> ... -> E^{length-1}`` by iterated embeddings."""
    _require_monic(x)
    terms, maps, steps = [], [], []
    current = x
    for k in range(length):
        step = injective_embedding(current)
        steps.append(step)
        terms.append(step.E)
        if k == 0:
            maps.append(step.f)
        else:
            prev = steps[k - 1]
            maps.append(compose_morphisms(step.f, prev.projection))
        current = step.Z
    cert = Certificate("injective_coresolution", x.field)
    cert.note("length", length)
    cert.note("dims", [t.dim_vector for t in terms])
    if maps:
        chain = sequence_exactness(maps, left_zero=True, right_zero=False, label="coresolution chain")
        cert.attach(chain)
    for s in steps:
        cert.attach(s.certificate)
    cert.check()
    return Coresolution(x, terms, maps, steps, cert)


# ---------------------------------------------------------------------------
# indecomposable injectives
# ---------------------------------------------------------------------------

IDEMPOTENT_SEARCH_LIMIT = 2**16


def _distinct_injectives(a: Algebra) -> list[Module]:
    out: list[Module] = []
    for j in range(len(a.idempotents)):
        inj = indec_injective(a, j)
        if not any(is_isomorphic(inj, o) for o in out):
            out.append(inj)
    return out


def indec_injectives_mon(q: Quiver, a: Algebra) -> list[Representation]:
    """All ``m_i(I(j))`` up to isomorphism, ordered by vertex then idempotent."""
    out: list[Representation] = []
    for i in q.vertices:
        for inj in _distinct_injectives(a):
            rep = m_i(inj, i, q)
            if not any(o.dim_vector == rep.dim_vector and rep_is_isomorphic(o, rep) for o in out):
                out.append(rep)
    return out


def is_indecomposable(x: Representation, bound: int = 6) -> bool | None:
    """Exhaustive search for a nontrivial idempotent in ``End(x)``.

    Returns ``None`` when ``dim End > bound`` or the search space is too
    large (or infinite).
    """
    F = x.field
    basis = hom_rep_basis(x, x)
    if x.total_dim == 0:
        return False
    r = len(basis)
    if r > bound or F.p is None or F.p**r > IDEMPOTENT_SEARCH_LIMIT:
        return None
    mats = [np.hstack([b.comps[i].reshape(1, -1) for i in x.quiver.vertices]) for b in basis]
    blocks = [b.comps for b in basis]
    p = F.p
    ident = np.hstack([F.eye(x[i].dim).reshape(1, -1) for i in x.quiver.vertices])
    for code in range(1, p**r):
        c, rest = [], code
        for _ in range(r):
            c.append(rest % p)
            rest //= p
        flat = F.combine(c, mats)
        if F.is_zero(flat) or F.equal(flat, ident):
            continue
        idem = True
        for i in x.quiver.vertices:
            e = F.combine(c, [b[i] for b in blocks], (x[i].dim, x[i].dim))
            if not F.equal(F.dot(e, e), e):
                idem = False
                break
        if idem:
            return False
    return True


# ---------------------------------------------------------------------------
# the source strip
# ---------------------------------------------------------------------------


@dataclass
class StripResult:
    X: Representation
    sources: list[int]
    phi: RepMorphism  # (+)_{i in S} m_i(X_i) -> X
    Z: Representation
    projection: RepMorphism
    certificate: Certificate


@dataclass
class StripStage:
    quiver: Quiver
    labels: dict[int, int]  # stage vertex -> original vertex
    strip: StripResult


def source_strip(x: Representation) -> StripResult:
    """``0 -> (+)_{i in S} m_i(X_i) -> X -> Z -> 0`` with ``phi`` built from path maps."""
    _require_monic(x)
    q, F = x.quiver, x.field
    S = q.sources
    pieces = [m_i(x[i], i, q) for i in S]
    D = rep_direct_sum(pieces)[0]
    adj = [adjoint_morphism(x[i], i, x, F.eye(x[i].dim), source=pieces[k]) for k, i in enumerate(S)]
    comps = {}
    for j in q.vertices:
        cols = [g.comps[j] for g in adj if g.comps[j].shape[1]]
        comps[j] = np.hstack(cols) if cols else F.zeros(x[j].dim, 0)
    phi = RepMorphism(D, x, comps)
    Z, zproj = rep_cokernel(phi)
    cert = Certificate("source_strip", F)
    cert.note("sources", list(S))
    cert.attach(sequence_exactness([phi, zproj], label="strip sequence"))
    for i in q.vertices:
        d = delta(Z, i)
        if d.mat.shape[1]:
            cert.injective(f"vertex {i}: delta_i(Z) injective", d.mat)
    for i in S:
        cert.surjective(f"source {i}: phi_i surjective so Z_i = 0", phi[i])
    cert.check()
    cert.note("Z_dims", Z.dim_vector)
    return StripResult(x, list(S), phi, Z, zproj, cert)


def strip_filtration(x: Representation) -> tuple[list[StripStage], Certificate]:
    """Repeat :func:`source_strip` on the source-deleted quiver until it is empty."""
    _require_monic(x)
    stages: list[StripStage] = []
    labels = {v: v for v in x.quiver.vertices}
    current = x
    cert = Certificate("strip_filtration", x.field)
    while current.quiver.n > 0:
        strip = source_strip(current)
        stages.append(StripStage(current.quiver, dict(labels), strip))
        cert.attach(strip.certificate)
        current, mapping = restrict(strip.Z, strip.sources)
        labels = {new: labels[old] for old, new in mapping.items()}
    cert.note("stages", len(stages))
    cert.note("bound", x.quiver.longest_path_length() + 1)
    cert.check()
    return stages, cert
