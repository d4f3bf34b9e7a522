"""Seeded random instances.

Instance ``k`` of configuration ``c`` under seed ``s`` draws from
``default_rng(SeedSequence(s, spawn_key=(c, k)))``, so any instance can be
reproduced on its own.  Monic representations are monic by construction:

    X_j = (+)_{e(a)=j} X_{s(a)}  (+)  extra_j,    delta_j = [I ; R_j]

with ``extra_j`` a random quotient of a random projective and ``R_j`` a
random A-map, optionally followed by a random change of basis per vertex.
"""
from __future__ import annotations

import numpy as np

from .algebra import Algebra, Quiver, linear_quiver
from .amodule import (
    Module,
    direct_sum,
    generated_submodule,
    hom_matrices,
    indec_projective,
    quotient,
    zero_module,
)
from .exactla import GF
from .quiverrep import Representation
from .serialize import resolve_algebra

__all__ = [
    "instance_rng",
    "random_projective",
    "random_module",
    "random_map",
    "random_quiver",
    "random_monic",
    "random_rep",
    "perturb_non_monic",
    "scramble",
    "TEST_QUIVERS",
    "suite_algebras",
    "self_injective_algebras",
]


def instance_rng(seed: int, *key: int) -> np.random.Generator:
    """Generator for the instance addressed by ``key`` (e.g. configuration, index)."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(key)))


def random_projective(a: Algebra, rng: np.random.Generator, max_summands: int = 2) -> Module:
    k = int(rng.integers(1, max_summands + 1))
    idx = [int(rng.integers(0, len(a.idempotents))) for _ in range(k)]
    return direct_sum([indec_projective(a, i) for i in idx], algebra=a)[0]


def random_module(a: Algebra, rng: np.random.Generator, max_summands: int = 2, max_relations: int = 2) -> Module:
    """A random quotient of a random projective."""
    p = random_projective(a, rng, max_summands)
    r = int(rng.integers(0, max_relations + 1))
    if r == 0:
        return p
    vecs = a.field.random_matrix(rng, p.dim, r)
    sub = generated_submodule(p, vecs)[1]
    return quotient(p, sub.mat)[0]


def random_map(m: Module, n: Module, rng: np.random.Generator) -> np.ndarray:
    F = m.field
    basis = hom_matrices(m, n)
    if not basis:
        return F.zeros(n.dim, m.dim)
    return F.combine(F.random_matrix(rng, 1, len(basis))[0], basis)


def random_quiver(rng: np.random.Generator, n: int = 5, max_arrows: int = 5) -> Quiver:
    """A random descending quiver with between 1 and ``max_arrows`` simple arrows."""
    pairs = [(s, e) for s in range(2, n + 1) for e in range(1, s)]
    k = int(rng.integers(1, min(max_arrows, len(pairs)) + 1))
    chosen = sorted(rng.choice(len(pairs), size=k, replace=False).tolist())
    return Quiver(n, tuple(pairs[c] for c in chosen))


def scramble(x: Representation, rng: np.random.Generator) -> Representation:
    """Conjugate every vertex by a random invertible matrix."""
    F = x.field
    gs, ginv = {}, {}
    for i in x.quiver.vertices:
        n = x[i].dim
        while True:
            g = F.random_matrix(rng, n, n)
            if F.is_invertible(g):
                break
        gs[i], ginv[i] = g, F.inverse(g)
    modules = {}
    for i in x.quiver.vertices:
        act = np.stack([F.chain(gs[i], x[i].action[b], ginv[i]) for b in range(x.algebra.dim)]) if x[i].dim else x[i].action
        modules[i] = Module(x.algebra, act)
    maps = [F.chain(gs[e], m, ginv[s]) for m, (s, e) in zip(x.maps, x.quiver.arrows)]
    return Representation(x.quiver, x.algebra, modules, maps)


def random_monic(
    q: Quiver,
    a: Algebra,
    rng: np.random.Generator,
    max_summands: int = 1,
    max_relations: int = 1,
    p_extra: float = 0.6,
    scrambled: bool = True,
) -> Representation:
    F = a.field
    modules: dict[int, Module] = {}
    maps: dict[int, np.ndarray] = {}
    for j in sorted(q.vertices, reverse=True):
        arrows = q.in_arrows(j)
        use_extra = not arrows or rng.random() < p_extra
        extra = random_module(a, rng, max_summands, max_relations) if use_extra else zero_module(a)
        parts = [modules[q.source(b)] for b in arrows]
        D = direct_sum(parts, algebra=a)[0] if parts else zero_module(a)
        modules[j] = direct_sum([D, extra], algebra=a)[0] if parts else extra
        if not arrows:
            continue
        R = random_map(D, extra, rng)
        delta = np.vstack([F.eye(D.dim), R])
        off = 0
        for b in arrows:
            w = modules[q.source(b)].dim
            maps[b] = delta[:, off : off + w].copy()
            off += w
    x = Representation(q, a, modules, [maps[b] for b in range(len(q.arrows))])
    return scramble(x, rng) if scrambled else x


def random_rep(q: Quiver, a: Algebra, rng: np.random.Generator, max_summands: int = 1) -> Representation:
    """Arbitrary representation: random modules, random A-maps on the arrows."""
    modules = {i: random_module(a, rng, max_summands, 1) for i in q.vertices}
    maps = [random_map(modules[s], modules[e], rng) for s, e in q.arrows]
    return Representation(q, a, modules, maps)


def perturb_non_monic(x: Representation, rng: np.random.Generator) -> Representation | None:
    """Zero one arrow with a nonzero source, breaking injectivity of its ``delta``."""
    candidates = [b for b, (s, _) in enumerate(x.quiver.arrows) if x[s].dim]
    if not candidates:
        return None
    b = candidates[int(rng.integers(0, len(candidates)))]
    maps = [m.copy() for m in x.maps]
    maps[b] = x.field.zeros(*maps[b].shape)
    return Representation(x.quiver, x.algebra, dict(x.modules), maps)


TEST_QUIVERS: dict[str, Quiver] = {
    "A2": linear_quiver(2),
    "1<-3->2": Quiver(3, ((3, 1), (3, 2))),
    "2->1<-3": Quiver(3, ((2, 1), (3, 1))),
}


def suite_algebras() -> dict[str, Algebra]:
    """The self-injective algebras of the acceptance suites."""
    return {
        "GF(2)[x]/(x^2)": resolve_algebra("truncated:2", GF(2)),
        "GF(3)[x]/(x^3)": resolve_algebra("truncated:3", GF(3)),
        "Nakayama(2,2)": resolve_algebra("nakayama:2:2", GF(2)),
    }


self_injective_algebras = suite_algebras
