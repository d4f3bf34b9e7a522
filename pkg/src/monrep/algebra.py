"""Quivers and finite-dimensional algebras given by structure constants."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .exactla import Field

__all__ = [
    "Quiver",
    "linear_quiver",
    "ground_field",
    "Path",
    "Algebra",
    "ValidationError",
    "NotFiniteDimensional",
    "validate_algebra",
    "path_algebra",
    "monomial_quotient",
    "opposite",
    "tensor_with_path_algebra",
    "truncated_polynomial",
    "nakayama_algebra",
]


class ValidationError(ValueError):
    """An input violates a structural law; the message names the law."""


class NotFiniteDimensional(ValueError):
    pass


# ---------------------------------------------------------------------------
# quivers and paths
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Path:
    """A path: start vertex plus arrow indices in traversal order."""

    start: int
    arrows: tuple[int, ...] = ()
    end: int = -1

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows


@dataclass(frozen=True)
class Quiver:
    """Vertices ``1..n`` and arrows ``(source, target)`` in input order."""

    n: int
    arrows: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        arrows = tuple((int(s), int(e)) for s, e in self.arrows)
        for s, e in arrows:
            if not (1 <= s <= self.n and 1 <= e <= self.n):
                raise ValidationError(f"arrow {s}->{e} leaves the vertex set 1..{self.n}")
        object.__setattr__(self, "arrows", arrows)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def source(self, a: int) -> int:
        return self.arrows[a][0]

    def target(self, a: int) -> int:
        return self.arrows[a][1]

    def in_arrows(self, i: int) -> list[int]:
        return [a for a, (_, e) in enumerate(self.arrows) if e == i]

    def out_arrows(self, i: int) -> list[int]:
        return [a for a, (s, _) in enumerate(self.arrows) if s == i]

    @property
    def sources(self) -> list[int]:
        targets = {e for _, e in self.arrows}
        return [i for i in self.vertices if i not in targets]

    def is_acyclic(self) -> bool:
        return self._topological_order() is not None

    def is_descending(self) -> bool:
        return all(s > e for s, e in self.arrows)

    def _topological_order(self) -> list[int] | None:
        indeg = {i: 0 for i in self.vertices}
        for _, e in self.arrows:
            indeg[e] += 1
        ready = [i for i in self.vertices if indeg[i] == 0]
        order = []
        while ready:
            ready.sort()
            v = ready.pop(0)
            order.append(v)
            for a in self.out_arrows(v):
                e = self.target(a)
                indeg[e] -= 1
                if indeg[e] == 0:
                    ready.append(e)
        return order if len(order) == self.n else None

    def relabel_topological(self) -> tuple["Quiver", dict[int, int]]:
        """Relabel so every arrow points from a larger to a smaller vertex."""
        order = self._topological_order()
        if order is None:
            raise NotFiniteDimensional("quiver has an oriented cycle")
        # first in topological order gets the largest label
        mapping = {v: self.n - k for k, v in enumerate(order)}
        return Quiver(self.n, tuple((mapping[s], mapping[e]) for s, e in self.arrows)), mapping

    def delete_vertices(self, removed: Iterable[int]) -> tuple["Quiver", dict[int, int]]:
        """Drop vertices (and incident arrows); labels are compacted in order."""
        removed = set(removed)
        keep = [v for v in self.vertices if v not in removed]
        mapping = {v: k + 1 for k, v in enumerate(keep)}
        arrows = tuple(
            (mapping[s], mapping[e]) for s, e in self.arrows if s in mapping and e in mapping
        )
        return Quiver(len(keep), arrows), mapping

    def trivial_path(self, v: int) -> Path:
        return Path(v, (), v)

    def extend(self, p: Path, a: int) -> Path:
        if self.source(a) != p.end:
            raise ValueError("arrow does not start where the path ends")
        return Path(p.start, p.arrows + (a,), self.target(a))

    def vertex_sequence(self, p: Path) -> tuple[int, ...]:
        return (p.start,) + tuple(self.target(a) for a in p.arrows)

    def path_sort_key(self, p: Path):
        return (len(p), self.vertex_sequence(p), p.arrows)

    @cached_property
    def _all_paths(self) -> tuple[Path, ...]:
        if not self.is_acyclic():
            raise NotFiniteDimensional("quiver has an oriented cycle")
        level = [self.trivial_path(v) for v in self.vertices]
        out = list(level)
        while level:
            level = [self.extend(p, a) for p in level for a in self.out_arrows(p.end)]
            out.extend(level)
        return tuple(sorted(out, key=self.path_sort_key))

    def paths(self) -> tuple[Path, ...]:
        """All paths (acyclic quivers only), in canonical order."""
        return self._all_paths

    def paths_between(self, i: int, j: int) -> list[Path]:
        return [p for p in self._all_paths if p.start == i and p.end == j]

    @cached_property
    def path_counts(self) -> dict[tuple[int, int], int]:
        counts = {(i, j): 0 for i in self.vertices for j in self.vertices}
        for p in self._all_paths:
            counts[(p.start, p.end)] += 1
        return counts

    def longest_path_length(self) -> int:
        return max((len(p) for p in self._all_paths), default=0)

    def to_json(self) -> dict:
        return {"n": self.n, "arrows": [list(a) for a in self.arrows]}

    @classmethod
    def from_json(cls, data: dict) -> "Quiver":
        return cls(int(data["n"]), tuple(tuple(a) for a in data.get("arrows", [])))


def linear_quiver(n: int) -> Quiver:
    """``n -> n-1 -> ... -> 1``."""
    return Quiver(n, tuple((i + 1, i) for i in range(1, n)))


# ---------------------------------------------------------------------------
# algebras
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class Algebra:
    """Structure constants ``mul[i, j]`` = coordinates of ``b_i * b_j``.

    ``radical`` holds columns spanning the Jacobson radical and
    ``generators`` columns generating the algebra (with 1); both are
    supplied by the constructors.
    """

    field: Field
    mul: np.ndarray
    unit: np.ndarray
    idempotents: list[np.ndarray]
    radical: np.ndarray
    labels: list[str] | None = None
    generators: np.ndarray | None = None
    name: str = ""
    quiver: Quiver | None = None
    paths: tuple[Path, ...] | None = None
    factors: tuple["Algebra", "Algebra"] | None = None
    _op: "Algebra | None" = field(default=None, repr=False)

    def __post_init__(self):
        F = self.field
        d = self.mul.shape[0]
        if self.mul.shape != (d, d, d):
            raise ValidationError("multiplication table must have shape (d, d, d)")
        self.mul = F.array(self.mul)
        self.unit = F.array(self.unit).reshape(d)
        self.idempotents = [F.array(e).reshape(d) for e in self.idempotents]
        self.radical = F.array(self.radical).reshape(d, -1) if np.size(self.radical) else F.zeros(d, 0)
        if self.labels is None:
            self.labels = [f"b{i}" for i in range(d)]
        if self.generators is None:
            self.generators = F.eye(d)
        else:
            self.generators = F.array(self.generators).reshape(d, -1)

    @property
    def dim(self) -> int:
        return self.mul.shape[0]

    @cached_property
    def active_generators(self) -> np.ndarray:
        """Generator columns other than the unit (which acts trivially)."""
        F = self.field
        keep = [g for g in range(self.generators.shape[1]) if not F.equal(self.generators[:, g], self.unit)]
        return self.generators[:, keep]

    def __repr__(self) -> str:
        name = self.name or "Algebra"
        return f"<{name} over {self.field!r}, dim {self.dim}>"

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.dim, 1)[:, 0]
        v[i] = self.field.scalar(1)
        return v

    def left_mult(self, i: int) -> np.ndarray:
        """Matrix of ``x -> b_i x`` on coordinate columns."""
        return np.ascontiguousarray(self.mul[i].T)

    def right_mult(self, j: int) -> np.ndarray:
        return np.ascontiguousarray(self.mul[:, j, :].T)

    def right_mult_by(self, x: np.ndarray) -> np.ndarray:
        F = self.field
        mats = [self.right_mult(j) for j in range(self.dim)]
        return F.combine(x, mats, (self.dim, self.dim))

    def product(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        F = self.field
        d = self.dim
        outer = F.dot(F.array(x).reshape(d, 1), F.array(y).reshape(1, d)).reshape(1, d * d)
        return F.dot(outer, self.mul.reshape(d * d, d)).reshape(d)

    @property
    def op(self) -> "Algebra":
        if self._op is None:
            self._op = opposite(self)
            self._op._op = self
        return self._op

    def to_json(self) -> dict:
        F = self.field
        d = self.dim
        return {
            "field": F.to_json(),
            "dim": d,
            "basis": list(self.labels),
            "mul": [F.to_list(self.mul[i]) for i in range(d)],
            "unit": F.to_list(self.unit.reshape(1, d))[0],
            "idempotents": [F.to_list(e.reshape(1, d))[0] for e in self.idempotents],
            "radical": [F.to_list(self.radical[:, k].reshape(1, d))[0] for k in range(self.radical.shape[1])],
        }

    @classmethod
    def from_json(cls, data: dict, name: str = "") -> "Algebra":
        F = Field.from_json(data["field"])
        d = int(data["dim"])
        mul = F.zeros(d, d * d).reshape(d, d, d) if d else F.zeros(0, 0).reshape(0, 0, 0)
        raw = data["mul"]
        if len(raw) != d or any(len(row) != d for row in raw):
            raise ValidationError("mul must be a dim x dim table of coordinate vectors")
        for i in range(d):
            for j in range(d):
                vec = raw[i][j]
                if len(vec) != d:
                    raise ValidationError(f"mul[{i}][{j}] has length {len(vec)}, expected {d}")
                mul[i, j] = F.array(vec)
        radical = data.get("radical", [])
        rad = F.array(radical).reshape(-1, d).T.copy() if radical else F.zeros(d, 0)
        return cls(
            field=F,
            mul=mul,
            unit=F.array(data["unit"]),
            idempotents=[F.array(e) for e in data["idempotents"]],
            radical=rad,
            labels=list(data.get("basis") or [f"b{i}" for i in range(d)]),
            name=name,
        )


def validate_algebra(a: Algebra):
    """Exhaustively check the algebra laws; raise :class:`ValidationError`.

    Returns a certificate listing the checks that passed.
    """
    from .certificate import Certificate

    F = a.field
    d = a.dim
    cert = Certificate("algebra", F)
    mul = a.mul
    if d == 0:
        raise ValidationError("zero algebra is not allowed")

    # associativity: (b_i b_j) b_k == b_i (b_j b_k)
    flat = mul.reshape(d * d, d)
    left = F.dot(flat, mul.reshape(d, d * d)).reshape(d, d, d, d)  # [i,j,k,:]
    right = F.dot(flat, mul.transpose(1, 0, 2).reshape(d, d * d)).reshape(d, d, d, d)  # [j,k,i,:]
    right = right.transpose(2, 0, 1, 3)
    bad = np.argwhere(F.sub(left, right) != 0) if F.p is not None else np.argwhere(left != right)
    if len(bad):
        i, j, k = (int(v) for v in bad[0][:3])
        raise ValidationError(f"associativity fails on basis triple ({i}, {j}, {k})")
    cert.note("associativity", True)

    # unit laws
    for i in range(d):
        bi = a.basis_vector(i)
        if not F.equal(a.product(a.unit, bi), bi) or not F.equal(a.product(bi, a.unit), bi):
            raise ValidationError(f"unit law fails on basis element {i}")
    cert.note("unit", True)

    # idempotents: complete orthogonal set
    if not a.idempotents:
        raise ValidationError("no idempotents supplied")
    total = F.zeros(d, 1)[:, 0]
    for i, ei in enumerate(a.idempotents):
        if F.is_zero(ei):
            raise ValidationError(f"idempotent {i} is zero")
        total = F.add(total, ei)
        for j, ej in enumerate(a.idempotents):
            prod = a.product(ei, ej)
            want = ei if i == j else F.zeros(d, 1)[:, 0]
            if not F.equal(prod, want):
                raise ValidationError(f"idempotent pair ({i}, {j}) violates e_i e_j = delta_ij e_i")
    if not F.equal(total, a.unit):
        raise ValidationError("idempotents do not sum to the unit")
    cert.note("idempotents", True)

    # radical: two-sided ideal and nilpotent
    J = a.radical
    r = F.rank(J) if J.shape[1] else 0
    if J.shape[1]:
        prods = []
        for i in range(d):
            prods.append(F.dot(a.left_mult(i), J))
            prods.append(F.dot(a.right_mult(i), J))
        if F.rank(np.hstack([J] + prods)) != r:
            raise ValidationError("radical is not a two-sided ideal (radical not nilpotent ideal)")
        power = F.column_basis(J)
        steps = 0
        while power.shape[1]:
            steps += 1
            if steps > d:
                raise ValidationError("radical not nilpotent ideal")
            cols = [a.product(J[:, s], power[:, t]).reshape(d, 1) for s in range(J.shape[1]) for t in range(power.shape[1])]
            stacked = np.hstack(cols)
            power = F.column_basis(stacked) if F.rank(stacked) else F.zeros(d, 0)
        cert.note("radical_nilpotency_index", steps)
    cert.note("radical", True)
    cert.verified = True
    return cert


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def _contains(arrows: tuple[int, ...], pattern: tuple[int, ...]) -> bool:
    k = len(pattern)
    return any(arrows[s : s + k] == pattern for s in range(len(arrows) - k + 1))


def _has_cycle(nodes: list, edges: dict) -> bool:
    state = {v: 0 for v in nodes}
    for root in nodes:
        if state[root]:
            continue
        stack = [(root, iter(edges.get(root, ())))]
        state[root] = 1
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[v] = 2
                stack.pop()
            elif state[nxt] == 1:
                return True
            elif state[nxt] == 0:
                state[nxt] = 1
                stack.append((nxt, iter(edges.get(nxt, ()))))
    return False


def _surviving_paths(q: Quiver, forbidden: list[tuple[int, ...]]) -> list[Path]:
    if not forbidden:
        if not q.is_acyclic():
            raise NotFiniteDimensional("quiver has an oriented cycle")
        return list(q.paths())
    ell = max(len(f) for f in forbidden)

    def survives(arrows):
        return not any(_contains(arrows, f) for f in forbidden)

    # surviving paths of length >= ell-1 are walks in the window graph
    level = [q.trivial_path(v) for v in q.vertices]
    out = list(level)
    length = 0
    while level and length < ell - 1:
        level = [q.extend(p, a) for p in level for a in q.out_arrows(p.end)]
        level = [p for p in level if survives(p.arrows)]
        out.extend(level)
        length += 1
    windows = {p.arrows: p for p in level}
    edges: dict = {}
    for w, p in windows.items():
        for a in q.out_arrows(p.end):
            ext = w + (a,)
            if survives(ext):
                edges.setdefault(w, []).append(ext[1:])
    if _has_cycle(list(windows), edges):
        raise NotFiniteDimensional("surviving paths are unbounded")
    while level:
        level = [q.extend(p, a) for p in level for a in q.out_arrows(p.end)]
        level = [p for p in level if survives(p.arrows[-ell:])]
        out.extend(level)
    return sorted(out, key=q.path_sort_key)


def _path_label(q: Quiver, p: Path) -> str:
    if p.is_trivial:
        return f"e{p.start}"
    return "*".join(f"a{a}" for a in reversed(p.arrows))


def _algebra_from_paths(field: Field, q: Quiver, paths: list[Path], name: str) -> Algebra:
    F = field
    d = len(paths)
    index = {(p.start, p.arrows): k for k, p in enumerate(paths)}
    mul = F.zeros(d, d * d).reshape(d, d, d)
    one = F.scalar(1)
    for i, pi in enumerate(paths):
        for j, pj in enumerate(paths):
            # b_i * b_j = "b_j then b_i"
            if pj.end != pi.start:
                continue
            k = index.get((pj.start, pj.arrows + pi.arrows))
            if k is not None:
                mul[i, j, k] = one
    idem_idx = [index[(v, ())] for v in q.vertices]
    unit = F.zeros(d, 1)[:, 0]
    idempotents = []
    for k in idem_idx:
        e = F.zeros(d, 1)[:, 0]
        e[k] = one
        unit[k] = one
        idempotents.append(e)
    rad_cols = [k for k, p in enumerate(paths) if not p.is_trivial]
    radical = F.eye(d)[:, rad_cols] if rad_cols else F.zeros(d, 0)
    gen_cols = idem_idx + [k for k, p in enumerate(paths) if len(p) == 1]
    return Algebra(
        field=F,
        mul=mul,
        unit=unit,
        idempotents=idempotents,
        radical=radical,
        labels=[_path_label(q, p) for p in paths],
        generators=F.eye(d)[:, gen_cols],
        name=name,
        quiver=q,
        paths=tuple(paths),
    )


def path_algebra(q: Quiver, field: Field) -> Algebra:
    """kQ with basis all paths, ordered by length then vertex sequence."""
    if not q.is_acyclic():
        raise NotFiniteDimensional("quiver has an oriented cycle")
    return _algebra_from_paths(field, q, list(q.paths()), name="kQ")


def monomial_quotient(q: Quiver, forbidden: Sequence[Sequence[int]], field: Field) -> Algebra:
    """kQ modulo the ideal spanned by paths containing a forbidden subpath.

    Forbidden paths are arrow-index sequences in traversal order, e.g.
    ``[0, 0]`` is ``x^2`` for a loop ``x`` with index 0.
    """
    forb = []
    for f in forbidden:
        f = tuple(int(a) for a in f)
        if len(f) < 2:
            raise ValidationError("forbidden paths must have length >= 2")
        for a, b in zip(f, f[1:]):
            if q.target(a) != q.source(b):
                raise ValidationError(f"forbidden path {f} is not a path")
        forb.append(f)
    paths = _surviving_paths(q, forb)
    return _algebra_from_paths(field, q, paths, name="kQ/I")


def opposite(a: Algebra) -> Algebra:
    return Algebra(
        field=a.field,
        mul=np.ascontiguousarray(a.mul.transpose(1, 0, 2)),
        unit=a.unit.copy(),
        idempotents=[e.copy() for e in a.idempotents],
        radical=a.radical.copy(),
        labels=list(a.labels),
        generators=a.generators.copy(),
        name=(a.name + "^op") if a.name else "op",
    )


def tensor_with_path_algebra(q: Quiver, a: Algebra) -> Algebra:
    """Lambda = kQ (x) A, basis ``p (x) b`` ordered path-major."""
    F = a.field
    kq = path_algebra(q, F)
    d1, d2 = kq.dim, a.dim
    d = d1 * d2
    mul = np.multiply.outer(kq.mul, a.mul)  # (i,k,m, j,l,n)
    mul = mul.transpose(0, 3, 1, 4, 2, 5).reshape(d, d, d)
    mul = F.array(mul)

    def pair(x, y):
        return F.array(np.multiply.outer(x, y).reshape(d))

    idempotents = [pair(e, f) for e in kq.idempotents for f in a.idempotents]
    cols = []
    for k, p in enumerate(kq.paths):
        if not p.is_trivial:
            for b in range(d2):
                cols.append(pair(kq.basis_vector(k), a.basis_vector(b)))
    for e in kq.idempotents:
        for r in range(a.radical.shape[1]):
            cols.append(pair(e, a.radical[:, r]))
    radical = np.stack(cols, axis=1) if cols else F.zeros(d, 0)
    gens = [pair(e, a.unit) for e in kq.idempotents]
    gens += [pair(kq.basis_vector(k), a.unit) for k, p in enumerate(kq.paths) if len(p) == 1]
    gens += [pair(kq.unit, a.generators[:, g]) for g in range(a.generators.shape[1])]
    labels = [f"{lp}(x){lb}" for lp in kq.labels for lb in a.labels]
    return Algebra(
        field=F,
        mul=mul,
        unit=pair(kq.unit, a.unit),
        idempotents=idempotents,
        radical=radical,
        labels=labels,
        generators=np.stack(gens, axis=1),
        name=f"kQ(x){a.name or 'A'}",
        quiver=q,
        paths=kq.paths,
        factors=(kq, a),
    )


# ---------------------------------------------------------------------------
# stock test algebras
# ---------------------------------------------------------------------------


def truncated_polynomial(field: Field, n: int) -> Algebra:
    """k[x]/(x^n) as the one-loop quiver modulo x^n."""
    if n < 1:
        raise ValueError("n must be positive")
    q = Quiver(1, ((1, 1),))
    if n == 1:
        alg = path_algebra(Quiver(1), field)
    else:
        alg = monomial_quotient(q, [[0] * n], field)
    alg.name = f"k[x]/(x^{n})"
    alg.labels = ["1"] + [("x" if k == 1 else f"x^{k}") for k in range(1, n)]
    return alg


def nakayama_algebra(field: Field, vertices: int, loewy_length: int) -> Algebra:
    """Cyclic Nakayama algebra: oriented cycle modulo all paths of a fixed length."""
    arrows = tuple((i, i % vertices + 1) for i in range(1, vertices + 1))
    q = Quiver(vertices, arrows)
    forbidden = []
    for start in range(vertices):
        forbidden.append([(start + t) % vertices for t in range(loewy_length)])
    alg = monomial_quotient(q, forbidden, field)
    alg.name = f"Nakayama({vertices},{loewy_length})"
    return alg


def ground_field(field: Field) -> Algebra:
    alg = path_algebra(Quiver(1), field)
    alg.name = "k"
    alg.labels = ["1"]
    return alg
