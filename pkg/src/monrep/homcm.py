"""Projective resolutions, Ext, and Cohen-Macaulay membership tests.

Ext is computed from minimal projective resolutions::

    dim Ext^i(M, N) = dim Hom(P^i, N) - rank d*_{i+1} - rank d*_i

where ``d*_k: Hom(P^{k-1}, N) -> Hom(P^k, N)`` is precomposition with the
differential.  Vanishing is only ever checked up to a stated degree bound.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import Algebra
from .amodule import (
    Module,
    ModuleMap,
    cokernel,
    hom_matrices,
    injective_envelope,
    kernel,
    projective_cover,
    regular_module,
)
from .certificate import Certificate
from .quiverrep import Representation, cok_i, is_monic, lambda_algebra, to_lambda_module

__all__ = [
    "ExceededCutoff",
    "ResolutionChain",
    "PerpReport",
    "AgreementReport",
    "projective_resolution",
    "hom_complex_rank",
    "ext_dim",
    "injective_dimension",
    "is_gorenstein",
    "perp_membership",
    "mon_cm_check",
]


class ExceededCutoff(Exception):
    """An injective coresolution did not terminate within the cutoff."""


@dataclass
class ResolutionChain:
    module: Module
    terms: list[Module]  # P^0, P^1, ...
    differentials: list[ModuleMap]  # d^k: P^k -> P^{k-1}, k >= 1
    augmentation: ModuleMap  # P^0 -> M
    certificate: Certificate

    @property
    def length(self) -> int:
        """Index of the last nonzero term (-1 for the zero module)."""
        nonzero = [k for k, p in enumerate(self.terms) if p.dim]
        return nonzero[-1] if nonzero else -1


def projective_resolution(m: Module, length: int) -> ResolutionChain:
    """Minimal resolution ``P^length -> ... -> P^0 -> m``, stopping at a zero syzygy."""
    F = m.field
    cover = projective_cover(m)
    terms = [cover.module]
    diffs: list[ModuleMap] = []
    aug = cover.epi
    syz, inc = kernel(aug)
    cert = Certificate("projective_resolution", F)
    cert.surjective("augmentation surjective", aug.mat)
    for k in range(1, length + 1):
        if syz.dim == 0:
            break
        c = projective_cover(syz)
        d = ModuleMap(c.module, terms[-1], F.dot(inc.mat, c.epi.mat))
        terms.append(c.module)
        diffs.append(d)
        syz, inc = kernel(c.epi)
    if diffs:
        cert.exact("exact at P^0", diffs[0].mat, aug.mat)
    for k in range(1, len(diffs)):
        cert.exact(f"exact at P^{k}", diffs[k].mat, diffs[k - 1].mat)
    if len(terms) <= length and syz.dim == 0:
        cert.injective(f"last map P^{len(terms) - 1} injective", diffs[-1].mat if diffs else aug.mat)
    cert.note("dims", [p.dim for p in terms])
    cert.check()
    return ResolutionChain(m, terms, diffs, aug, cert)


def hom_complex_rank(d: ModuleMap, n: Module) -> tuple[int, int]:
    """``(dim Hom(codomain d, n), rank of precomposition with d)``."""
    F = n.field
    basis = hom_matrices(d.codomain, n)
    if not basis or d.domain.dim == 0:
        return len(basis), 0
    cols = np.stack([F.dot(h, d.mat).reshape(-1) for h in basis], axis=1)
    return len(basis), F.rank(cols)


def ext_dim(m: Module, n: Module, i: int, resolution: ResolutionChain | None = None) -> int:
    """``dim Ext^i(m, n)`` for ``i >= 1``; a supplied resolution must reach degree ``i + 1``."""
    if i < 1:
        raise ValueError("degree must be at least 1")
    res = resolution if resolution is not None else projective_resolution(m, i + 1)
    if i >= len(res.terms):
        return 0
    P_i = res.terms[i]
    h_i = len(hom_matrices(P_i, n))
    rank_in = hom_complex_rank(res.differentials[i - 1], n)[1]
    rank_out = hom_complex_rank(res.differentials[i], n)[1] if i < len(res.differentials) else 0
    return h_i - rank_in - rank_out


def injective_dimension(a: Algebra, cutoff: int) -> int:
    """Length of the minimal injective coresolution of the regular left module."""
    current = regular_module(a)
    for k in range(cutoff + 1):
        env, eta = injective_envelope(current)
        current = cokernel(eta)[0]
        if current.dim == 0:
            return k
    raise ExceededCutoff(f"injective dimension exceeds {cutoff}")


def is_gorenstein(a: Algebra, cutoff: int) -> tuple[bool, dict[str, int | None]]:
    dims: dict[str, int | None] = {}
    for side, alg in (("left", a), ("right", a.op)):
        try:
            dims[side] = injective_dimension(alg, cutoff)
        except ExceededCutoff:
            dims[side] = None
    return all(v is not None for v in dims.values()), dims


@dataclass
class PerpReport:
    member: bool
    ext: dict[int, int]
    bound: int
    justification: str = ""

    def __bool__(self) -> bool:
        return self.member

    def to_json(self) -> dict:
        return {"member": self.member, "ext": {str(k): v for k, v in self.ext.items()}, "bound": self.bound, "justification": self.justification}


def perp_membership(m: Module, t: Module, bound: int, justification: str = "") -> PerpReport:
    """``Ext^i(m, t) = 0`` for ``1 <= i <= bound``."""
    res = projective_resolution(m, bound + 1)
    table = {i: ext_dim(m, t, i, resolution=res) for i in range(1, bound + 1)}
    return PerpReport(all(v == 0 for v in table.values()), table, bound, justification)


@dataclass
class AgreementReport:
    monic: bool
    vertexwise_perp: list[bool]
    cok_perp: list[bool]
    lambda_perp: bool
    bound: int
    lambda_ext: dict[int, int] = field(default_factory=dict)

    @property
    def left(self) -> bool:
        return self.monic and all(self.vertexwise_perp) and all(self.cok_perp)

    @property
    def agree(self) -> bool:
        return self.left == self.lambda_perp

    def to_json(self) -> dict:
        return {
            "monic": self.monic,
            "vertexwise_perp": self.vertexwise_perp,
            "cok_perp": self.cok_perp,
            "lambda_perp": self.lambda_perp,
            "bound": self.bound,
            "agree": self.agree,
        }


def mon_cm_check(x: Representation, bound: int) -> AgreementReport:
    """Compare membership in ``Mon(Q, perp A)`` with ``perp Lambda`` for ``Lambda = kQ (x) A``."""
    A = x.algebra
    reg = regular_module(A)
    q = x.quiver
    monic = bool(is_monic(x))
    vertexwise = [bool(perp_membership(x[i], reg, bound)) for i in q.vertices]
    cok = [bool(perp_membership(cok_i(x, i)[0], reg, bound)) for i in q.vertices]
    lam = lambda_algebra(q, A)
    lam_report = perp_membership(to_lambda_module(x, lam), regular_module(lam), bound)
    return AgreementReport(monic, vertexwise, cok, bool(lam_report), bound, lam_report.ext)
