"""Finite-dimensional algebras given by structure constants.

An :class:`AlgebraTable` stores ``[e_i, e_j] = sum_k c_ij^k e_k`` sparsely, keyed by
the ordered pair ``(i, j)``. Nothing is assumed about antisymmetry, so the
same type carries Lie and Leibniz brackets.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Sequence

from .exactmath import (
    ONE,
    ZERO,
    ExactMatrix,
    GaussianRational,
    Subspace,
    gr,
    kernel,
    scalar_from_json,
    scalar_to_json,
)

FIELDS = ("rational", "gaussian")


def _sparse_add(acc: dict, vec: Mapping[int, GaussianRational], scale=ONE) -> None:
    for k, c in vec.items():
        v = acc.get(k, ZERO) + scale * c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


@dataclass(frozen=True, eq=False)
class AlgebraTable:
    dim: int
    field: str
    labels: tuple[str, ...]
    table: Mapping[tuple[int, int], tuple[tuple[int, GaussianRational], ...]]
    _products: dict = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.field not in FIELDS:
            raise ValueError(f"unknown field tag {self.field!r}")
        if len(self.labels) != self.dim:
            raise ValueError(f"{len(self.labels)} labels for dimension {self.dim}")
        if len(set(self.labels)) != self.dim:
            raise ValueError("basis labels must be distinct")
        clean = {}
        for (i, j), terms in self.table.items():
            for idx in (i, j):
                if not 0 <= idx < self.dim:
                    raise ValueError(f"index {idx} out of range for dimension {self.dim}")
            acc: dict[int, GaussianRational] = {}
            for k, c in terms:
                if not 0 <= k < self.dim:
                    raise ValueError(f"index {k} out of range for dimension {self.dim}")
                _sparse_add(acc, {k: gr(c)})
            if self.field == "rational" and any(c.im for c in acc.values()):
                raise ValueError(f"complex coefficient in rational table at {(i, j)}")
            if acc:
                clean[(i, j)] = tuple(sorted(acc.items()))
        object.__setattr__(self, "table", clean)
        object.__setattr__(self, "_products", {key: dict(t) for key, t in clean.items()})

    @classmethod
    def from_brackets(
        cls,
        labels: Sequence[str],
        brackets: Mapping[tuple[str, str], Mapping[str, object]],
        field: str = "rational",
        antisymmetric: bool = False,
    ) -> "AlgebraTable":
        """Build a table from label-keyed brackets.

        With ``antisymmetric=True`` each listed ``[a, b]`` also sets ``[b, a] = -[a, b]``.
        """
        index = {lab: n for n, lab in enumerate(labels)}
        table: dict[tuple[int, int], dict[int, GaussianRational]] = {}
        for (a, b), out in brackets.items():
            vec = {index[k]: gr(c) for k, c in out.items()}
            _sparse_add(table.setdefault((index[a], index[b]), {}), vec)
            if antisymmetric and a != b:
                _sparse_add(table.setdefault((index[b], index[a]), {}), vec, -ONE)
        return cls(
            len(labels), field, tuple(labels), {k: tuple(v.items()) for k, v in table.items()}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraTable):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.field == other.field
            and self.labels == other.labels
            and self.table == other.table
        )

    def __hash__(self):
        return hash((self.dim, self.field, self.labels, tuple(sorted(self.table.items()))))

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def product(self, i: int, j: int) -> dict:
        """Sparse ``[e_i, e_j]`` as ``{k: coeff}``; do not mutate."""
        return self._products.get((i, j), _EMPTY)

    def basis_vector(self, i: int) -> tuple:
        v = [ZERO] * self.dim
        v[i] = ONE
        return tuple(v)

    def vector(self, coeffs: Mapping[str, object]) -> tuple:
        """Dense vector from ``{label: coeff}``."""
        v = [ZERO] * self.dim
        for lab, c in coeffs.items():
            v[self.index(lab)] = gr(c)
        return tuple(v)

    def describe(self, vec: Sequence) -> str:
        terms = [f"({c})*{self.labels[k]}" for k, c in enumerate(vec) if c]
        return " + ".join(terms) if terms else "0"

    def with_field(self, field: str) -> "AlgebraTable":
        return AlgebraTable(self.dim, field, self.labels, self.table)

    def relabel(self, labels: Sequence[str]) -> "AlgebraTable":
        return AlgebraTable(self.dim, self.field, tuple(labels), self.table)

    # -- JSON ---------------------------------------------------------------
    def to_json(self) -> dict:
        entries = []
        for (i, j), terms in sorted(self.table.items()):
            for k, c in terms:
                entries.append([i, j, k, scalar_to_json(c, self.field)])
        entries.sort(key=lambda e: (e[0], e[1], e[2]))
        return {"dim": self.dim, "field": self.field, "labels": list(self.labels), "table": entries}

    @classmethod
    def from_json(cls, obj: Mapping) -> "AlgebraTable":
        try:
            dim = int(obj["dim"])
            fld = obj["field"]
            labels = tuple(obj["labels"])
            raw = obj["table"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed algebra JSON: {exc}") from exc
        table: dict[tuple[int, int], list] = {}
        for entry in raw:
            if len(entry) != 4:
                raise ValueError(f"malformed table entry {entry!r}")
            i, j, k, c = entry
            table.setdefault((int(i), int(j)), []).append((int(k), scalar_from_json(c)))
        return cls(dim, fld, labels, {key: tuple(v) for key, v in table.items()})


_EMPTY: dict = {}


@dataclass(frozen=True)
class LinearMap:
    """Linear map between coordinate spaces; row ``i`` of ``matrix`` is the image of ``e_i``."""

    source_dim: int
    target_dim: int
    matrix: ExactMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.source_dim, self.target_dim):
            raise ValueError(
                f"matrix shape {self.matrix.shape} does not match "
                f"{self.source_dim} x {self.target_dim}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "LinearMap":
        m = ExactMatrix(rows)
        return cls(m.rows, m.cols, m)

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls(n, n, ExactMatrix.identity(n))

    def __call__(self, v: Sequence) -> tuple:
        return self.matrix.vecmul(v)

    def is_invertible(self) -> bool:
        return self.source_dim == self.target_dim and self.matrix.rank() == self.source_dim


@dataclass
class CheckReport:
    """Outcome of an exhaustive identity check.

    ``first`` names the lexicographically first violating basis tuple and
    ``residual`` is the nonzero difference observed there.
    """

    name: str
    passed: bool
    violations: int = 0
    first: tuple | None = None
    residual: str | None = None
    detail: dict = dc_field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        out = {"check": self.name, "passed": self.passed, "violations": self.violations}
        if self.first is not None:
            out["first"] = list(self.first)
            out["residual"] = self.residual
        if self.detail:
            out.update(self.detail)
        return out


# -- evaluation -------------------------------------------------------------
def _bracket_sparse(A: AlgebraTable, x: Mapping[int, GaussianRational], y: Mapping[int, GaussianRational]) -> dict:
    acc: dict[int, GaussianRational] = {}
    for i, a in x.items():
        for j, b in y.items():
            prod = A._products.get((i, j))
            if prod:
                _sparse_add(acc, prod, a * b)
    return acc


def _to_sparse(v: Sequence) -> dict:
    return {k: gr(c) for k, c in enumerate(v) if c}


def bracket_eval(A: AlgebraTable, x: Sequence, y: Sequence) -> tuple:
    """Bilinear extension of the structure constants to vectors ``x`` and ``y``."""
    if len(x) != A.dim or len(y) != A.dim:
        raise ValueError(f"vectors must have length {A.dim}")
    out = [ZERO] * A.dim
    for k, c in _bracket_sparse(A, _to_sparse(x), _to_sparse(y)).items():
        out[k] = c
    return tuple(out)


def _describe_sparse(A: AlgebraTable, vec: Mapping[int, GaussianRational]) -> str:
    return " + ".join(f"({c})*{A.labels[k]}" for k, c in sorted(vec.items())) or "0"


def leibniz_residual(A: AlgebraTable, i: int, j: int, k: int) -> dict:
    """``[e_i,[e_j,e_k]] - [[e_i,e_j],e_k] + [[e_i,e_k],e_j]`` as a sparse vector."""
    ei = {i: ONE}
    res = _bracket_sparse(A, ei, A.product(j, k))
    _sparse_add(res, _bracket_sparse(A, A.product(i, j), {k: ONE}), -ONE)
    _sparse_add(res, _bracket_sparse(A, A.product(i, k), {j: ONE}))
    return res


def check_leibniz(A: AlgebraTable) -> CheckReport:
    """Evaluate the Leibniz identity on every ordered basis triple."""
    n = A.dim
    count = 0
    first = residual = None
    for i in range(n):
        for j in range(n):
            for k in range(n):
                res = leibniz_residual(A, i, j, k)
                if res:
                    count += 1
                    if first is None:
                        first = (A.labels[i], A.labels[j], A.labels[k])
                        residual = _describe_sparse(A, res)
    return CheckReport("leibniz", count == 0, count, first, residual)


def check_antisymmetry(A: AlgebraTable) -> CheckReport:
    n = A.dim
    count = 0
    first = residual = None
    for i in range(n):
        for j in range(i, n):
            s = dict(A.product(i, j))
            _sparse_add(s, A.product(j, i))
            if s:
                count += 1
                if first is None:
                    first = (A.labels[i], A.labels[j])
                    residual = _describe_sparse(A, s)
    return CheckReport("antisymmetry", count == 0, count, first, residual)


def check_lie(A: AlgebraTable) -> CheckReport:
    """Antisymmetry on all pairs followed by the Leibniz (here Jacobi) identity."""
    anti = check_antisymmetry(A)
    if not anti:
        anti.name = "lie"
        anti.detail = {"failed": "antisymmetry"}
        return anti
    leib = check_leibniz(A)
    leib.name = "lie"
    if not leib:
        leib.detail = {"failed": "jacobi"}
    return leib


# -- subspaces attached to an algebra ------------------------------------------
def squares_span(A: AlgebraTable) -> Subspace:
    """Span of all squares ``[x, x]``; equals the span of ``[e_i,e_j] + [e_j,e_i]``."""
    vecs = []
    for i in range(A.dim):
        for j in range(i, A.dim):
            s = dict(A.product(i, j))
            _sparse_add(s, A.product(j, i))
            if s:
                v = [ZERO] * A.dim
                for k, c in s.items():
                    v[k] = c
                vecs.append(v)
    return Subspace.span(vecs, A.dim)


def ideal_closure(A: AlgebraTable, S: Subspace) -> Subspace:
    """Smallest two-sided ideal containing ``S``."""
    if S.ambient_dim != A.dim:
        raise ValueError("subspace does not live in this algebra")
    current = S
    while True:
        vecs = list(current.basis)
        for b in current.basis:
            sb = _to_sparse(b)
            for i in range(A.dim):
                for out in (_bracket_sparse(A, {i: ONE}, sb), _bracket_sparse(A, sb, {i: ONE})):
                    if out:
                        v = [ZERO] * A.dim
                        for k, c in out.items():
                            v[k] = c
                        vecs.append(v)
        nxt = Subspace.span(vecs, A.dim)
        if nxt.dim == current.dim:
            return nxt
        current = nxt


def is_ideal(A: AlgebraTable, S: Subspace) -> bool:
    return ideal_closure(A, S) == S


def _annihilator(A: AlgebraTable, left: bool) -> Subspace:
    n = A.dim
    rows = []
    for x in range(n):
        # row k of the block: coefficient of v_j in the e_k-component of [e_x, v] (or [v, e_x])
        block = [[ZERO] * n for _ in range(n)]
        for j in range(n):
            prod = A.product(j, x) if left else A.product(x, j)
            for k, c in prod.items():
                block[k][j] = c
        rows.extend(block)
    return kernel(ExactMatrix._wrap(tuple(tuple(r) for r in rows), n))


def right_annihilator(A: AlgebraTable) -> Subspace:
    """``{v : [x, v] = 0 for all x}``."""
    return _annihilator(A, left=False)


def left_annihilator(A: AlgebraTable) -> Subspace:
    """``{v : [v, x] = 0 for all x}``."""
    return _annihilator(A, left=True)


def center(A: AlgebraTable) -> Subspace:
    return right_annihilator(A) & left_annihilator(A)


def quotient_algebra(A: AlgebraTable, ideal: Subspace) -> tuple[AlgebraTable, LinearMap]:
    """Quotient by a two-sided ideal on the coset representatives at non-pivot coordinates."""
    if not is_ideal(A, ideal):
        raise ValueError("subspace is not a two-sided ideal")
    reps = ideal.complement_coordinates()
    pos = {c: n for n, c in enumerate(reps)}

    def project(vec: Mapping[int, GaussianRational]) -> dict:
        dense = [ZERO] * A.dim
        for k, c in vec.items():
            dense[k] = c
        red = ideal.reduce(dense)
        return {pos[c]: red[c] for c in reps if red[c]}

    table = {}
    for a, i in enumerate(reps):
        for b, j in enumerate(reps):
            out = project(A.product(i, j))
            if out:
                table[(a, b)] = tuple(out.items())
    proj_rows = []
    for i in range(A.dim):
        p = project({i: ONE})
        proj_rows.append(tuple(p.get(a, ZERO) for a in range(len(reps))))
    labels = tuple(A.labels[c] for c in reps)
    q = AlgebraTable(len(reps), A.field, labels, table)
    proj = LinearMap(A.dim, len(reps), ExactMatrix._wrap(tuple(proj_rows), len(reps)))
    return q, proj


def subalgebra(A: AlgebraTable, labels: Iterable[str]) -> AlgebraTable:
    """Restriction of the table to a basis subset that closes under the bracket."""
    idx = [A.index(lab) for lab in labels]
    pos = {c: n for n, c in enumerate(idx)}
    table = {}
    for a, i in enumerate(idx):
        for b, j in enumerate(idx):
            prod = A.product(i, j)
            if any(k not in pos for k in prod):
                raise ValueError(
                    f"[{A.labels[i]}, {A.labels[j]}] leaves the span of the chosen basis"
                )
            if prod:
                table[(a, b)] = tuple((pos[k], c) for k, c in prod.items())
    return AlgebraTable(len(idx), A.field, tuple(A.labels[i] for i in idx), table)


def verify_iso(f: LinearMap, A: AlgebraTable, B: AlgebraTable) -> CheckReport:
    """Check that ``f`` is a bijective bracket-preserving map ``A -> B``."""
    if f.source_dim != A.dim or f.target_dim != B.dim:
        return CheckReport("iso", False, 1, None, None, {"failed": "dimension"})
    if not f.is_invertible():
        return CheckReport("iso", False, 1, None, None, {"failed": "not invertible"})
    images = [f.matrix.row(i) for i in range(A.dim)]
    count = 0
    first = residual = None
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = f(bracket_eval(A, A.basis_vector(i), A.basis_vector(j)))
            rhs = bracket_eval(B, images[i], images[j])
            if lhs != rhs:
                count += 1
                if first is None:
                    first = (A.labels[i], A.labels[j])
                    residual = B.describe(tuple(a - b for a, b in zip(lhs, rhs)))
    rep = CheckReport("iso", count == 0, count, first, residual)
    if count:
        rep.detail = {"failed": "bracket"}
    return rep
