"""Seeded randomized suites shared by the command line and the acceptance tests.

Every suite walks a fixed list of configurations; instance ``k`` of
configuration ``c`` uses ``instance_rng(seed, c, k)``.  Instances are
independent, so they may run on a thread pool (``MONREP_THREADS``) and the
results are merged back in index order.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .algebra import Algebra, Quiver, linear_quiver
from .amodule import ModuleMap, cokernel, diagonal_map, direct_sum, is_isomorphic, top, regular_module, indec_projective
from .homcm import mon_cm_check
from .instances import (
    TEST_QUIVERS,
    instance_rng,
    perturb_non_monic,
    random_map,
    random_module,
    random_monic,
    random_quiver,
    random_rep,
    suite_algebras,
)
from .moninj import injective_embedding, naive_embedding_dim, source_strip, strip_filtration
from .quiverrep import adjunction_check
from .stablecat import end_iso_check

__all__ = [
    "SuiteResult",
    "threads",
    "embedding_suite",
    "strip_suite",
    "adjunction_suite",
    "cok_diagonal_suite",
    "cm_suite",
    "end_iso_suite",
    "curated_end_iso_modules",
    "SUITES",
]


@dataclass
class SuiteResult:
    name: str
    total: int = 0
    passed: int = 0
    failures: list[dict] = field(default_factory=list)
    findings: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.total > 0 and self.passed == self.total

    def to_json(self) -> dict:
        return {"suite": self.name, "total": self.total, "passed": self.passed, "ok": self.ok, "failures": self.failures, "findings": self.findings}


def threads() -> int:
    try:
        return max(1, int(os.environ.get("MONREP_THREADS", "1")))
    except ValueError:
        return 1


def _run(name: str, jobs: list[tuple[dict, Callable[[], tuple[bool, str]]]]) -> SuiteResult:
    n = threads()
    if n > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            outcomes = list(pool.map(lambda job: _guard(job[1]), jobs))
    else:
        outcomes = [_guard(job[1]) for job in jobs]
    res = SuiteResult(name)
    for (meta, _), (ok, reason) in zip(jobs, outcomes):
        res.total += 1
        if ok:
            res.passed += 1
        else:
            res.failures.append(dict(meta, reason=reason))
    return res


def _guard(fn) -> tuple[bool, str]:
    try:
        return fn()
    except Exception as exc:  # a crash is a failed instance, reported with its address
        return False, f"{type(exc).__name__}: {exc}"


def _configs(include_random: bool = True):
    algs = suite_algebras()
    quivers = list(TEST_QUIVERS) + (["random5"] if include_random else [])
    return [(qn, an, algs[an]) for an in algs for qn in quivers]


def _quiver(name: str, rng: np.random.Generator) -> Quiver:
    return random_quiver(rng) if name == "random5" else TEST_QUIVERS[name]


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def embedding_suite(count: int = 200, seed: int = 0) -> SuiteResult:
    """Injective embedding on random monic representations, every configuration."""
    jobs = []
    for c, (qn, an, A) in enumerate(_configs()):
        for k in range(count):

            def job(c=c, k=k, qn=qn, A=A):
                rng = instance_rng(seed, c, k)
                x = random_monic(_quiver(qn, rng), A, rng)
                r = injective_embedding(x)
                cert = r.certificate
                if not cert.verified:
                    return False, "; ".join(cert.failures()[:3])
                if sum(r.E.dim_vector) > naive_embedding_dim(x):
                    return False, "embedding larger than the vertexwise envelope"
                return True, ""

            jobs.append(({"quiver": qn, "algebra": an, "index": k}, job))
    return _run("injective_embedding", jobs)


def strip_suite(count: int = 200, seed: int = 0) -> SuiteResult:
    jobs = []
    configs = _configs()
    for k in range(count):
        qn, an, A = configs[k % len(configs)]

        def job(k=k, qn=qn, A=A):
            rng = instance_rng(seed, 100, k)
            x = random_monic(_quiver(qn, rng), A, rng)
            strip = source_strip(x)
            if not strip.certificate.verified:
                return False, "; ".join(strip.certificate.failures()[:3])
            stages, cert = strip_filtration(x)
            if not cert.verified:
                return False, "; ".join(cert.failures()[:3])
            if len(stages) > x.quiver.longest_path_length() + 1:
                return False, f"{len(stages)} stages exceed the bound"
            return True, ""

        jobs.append(({"quiver": qn, "algebra": an, "index": k}, job))
    return _run("source_strip", jobs)


def adjunction_suite(count: int = 100, seed: int = 0) -> SuiteResult:
    jobs = []
    configs = _configs()
    for k in range(count):
        qn, an, A = configs[k % len(configs)]

        def job(k=k, qn=qn, A=A):
            rng = instance_rng(seed, 200, k)
            q = _quiver(qn, rng)
            x = random_rep(q, A, rng) if k % 2 else random_monic(q, A, rng)
            m = random_module(A, rng)
            i = int(rng.integers(1, q.n + 1))
            cert = adjunction_check(m, x, i)
            s = cert.summary
            if s["dim_left"] != s["dim_right"]:
                return False, f"dim Hom(m_i M, X) = {s['dim_left']} but dim Hom(M, X_i) = {s['dim_right']}"
            return cert.verified, "; ".join(cert.failures()[:3])

        jobs.append(({"quiver": qn, "algebra": an, "index": k}, job))
    return _run("adjunction", jobs)


def cok_diagonal_suite(count: int = 50, seed: int = 0) -> SuiteResult:
    """``cok diag(f_i)`` against ``(+) cok f_i`` on random map families."""
    algs = list(suite_algebras().items())
    jobs = []
    for k in range(count):
        an, A = algs[k % len(algs)]

        def job(k=k, A=A):
            rng = instance_rng(seed, 300, k)
            fs = []
            for _ in range(int(rng.integers(1, 4))):
                x, y = random_module(A, rng), random_module(A, rng)
                fs.append(ModuleMap(x, y, random_map(x, y, rng)))
            lhs = cokernel(diagonal_map(fs))[0]
            rhs = direct_sum([cokernel(f)[0] for f in fs], algebra=A)[0]
            verdict = is_isomorphic(lhs, rhs, seed=k)
            return bool(verdict), verdict.reason

        jobs.append(({"algebra": an, "index": k}, job))
    return _run("cok_diagonal", jobs)


def cm_suite(count: int = 100, seed: int = 0, bound: int = 2) -> SuiteResult:
    """Half monic, half perturbed non-monic; both membership tests must agree."""
    configs = _configs(include_random=False)
    jobs = []
    for k in range(count):
        qn, an, A = configs[k % len(configs)]

        def job(k=k, qn=qn, A=A):
            rng = instance_rng(seed, 400, k)
            q = TEST_QUIVERS[qn]
            x = random_monic(q, A, rng)
            if k % 2:
                y = perturb_non_monic(x, rng)
                x = y if y is not None else x
            rep = mon_cm_check(x, bound)
            return rep.agree, f"L={rep.left} R={rep.lambda_perp} ext={rep.lambda_ext}"

        jobs.append(({"quiver": qn, "algebra": an, "index": k, "monic_target": k % 2 == 0}, job))
    return _run("cm_agreement", jobs)


def curated_end_iso_modules(A: Algebra) -> list:
    """Regular module, indecomposable projectives and simples of ``A``."""
    out = [regular_module(A)]
    for i in range(len(A.idempotents)):
        p = indec_projective(A, i)
        out.extend([p, top(p)[0]])
    return out


def end_iso_suite(count: int = 20, seed: int = 0, quiver: Quiver | None = None) -> SuiteResult:
    """Dimension identity for curated and random ``t``; random disagreements are findings."""
    q = quiver or linear_quiver(2)
    res = SuiteResult("end_iso")
    for c, (an, A) in enumerate(suite_algebras().items()):
        for k, t in enumerate(curated_end_iso_modules(A)):
            cert = end_iso_check(t, q)
            res.total += 1
            if cert.verified and cert.summary["dimension_identity"]:
                res.passed += 1
            else:
                res.failures.append({"algebra": an, "curated": k, "summary": cert.summary, "failed": cert.failures()[:3]})
        for k in range(count):
            rng = instance_rng(seed, 500 + c, k)
            t = random_module(A, rng)
            cert = end_iso_check(t, q)
            if not (cert.verified and cert.summary["dimension_identity"]):
                res.findings.append({"algebra": an, "index": k, "dim_t": t.dim, "summary": cert.summary, "failed": cert.failures()[:3]})
    return res


SUITES = {
    "embedding": embedding_suite,
    "strip": strip_suite,
    "adjunction": adjunction_suite,
    "cok-diagonal": cok_diagonal_suite,
    "cm": cm_suite,
    "end-iso": end_iso_suite,
}
