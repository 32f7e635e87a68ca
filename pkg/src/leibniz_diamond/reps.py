"""Matrix representations of the Diamond algebras and the right modules they induce."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from .algebra import AlgebraTable, CheckReport
from .catalog import diamond_complex, diamond_real
from .exactmath import (
    ONE,
    ZERO,
    ExactMatrix,
    GaussianRational,
    I,
    Subspace,
    gr,
    kernel,
    scalar_from_json,
    scalar_to_json,
)

__all__ = [
    "MatrixRep",
    "ModuleAction",
    "phi_sl",
    "phi_sp",
    "check_rep_homomorphism",
    "check_faithful",
    "check_traceless",
    "invariant_forms",
    "find_nondegenerate_skew",
    "module_from_rep",
    "action_table_sl",
    "action_table_sp",
    "check_right_module",
]


@dataclass(frozen=True)
class MatrixRep:
    algebra: AlgebraTable
    order: int
    images: tuple[ExactMatrix, ...]

    def __post_init__(self):
        if len(self.images) != self.algebra.dim:
            raise ValueError(f"{len(self.images)} images for a {self.algebra.dim}-dim algebra")
        for img in self.images:
            if img.shape != (self.order, self.order):
                raise ValueError(f"image of shape {img.shape} in a rep of order {self.order}")

    def __getitem__(self, label: str) -> ExactMatrix:
        return self.images[self.algebra.index(label)]

    def image(self, vec: Sequence) -> ExactMatrix:
        out = ExactMatrix.zeros(self.order, self.order)
        for c, img in zip(vec, self.images):
            if c:
                out = out + img.scale(c)
        return out

    def to_json(self) -> dict:
        fld = self.algebra.field
        return {
            "order": self.order,
            "algebra": list(self.algebra.labels),
            "images": {
                lab: [[scalar_to_json(x, fld) for x in row] for row in img.entries]
                for lab, img in zip(self.algebra.labels, self.images)
            },
        }

    @classmethod
    def from_json(cls, obj: Mapping, algebra: AlgebraTable) -> "MatrixRep":
        try:
            order = int(obj["order"])
            labels = list(obj["algebra"])
            images = obj["images"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed rep JSON: {exc}") from exc
        if labels != list(algebra.labels):
            raise ValueError("rep labels do not match the algebra basis")
        mats = tuple(
            ExactMatrix([[scalar_from_json(x) for x in row] for row in images[lab]], cols=order)
            for lab in labels
        )
        return cls(algebra, order, mats)


@dataclass(frozen=True, eq=False)
class ModuleAction:
    """Right action ``(X_v, e) -> X_v . e`` of an algebra on ``F^module_dim``.

    ``action`` holds only the nonzero products, keyed by ``(v, e)`` index pairs.
    """

    algebra: AlgebraTable
    module_dim: int
    action: Mapping[tuple[int, int], tuple[GaussianRational, ...]]

    def __post_init__(self):
        clean = {}
        for (v, e), vec in self.action.items():
            if not (0 <= v < self.module_dim and 0 <= e < self.algebra.dim):
                raise ValueError(f"action index {(v, e)} out of range")
            vec = tuple(gr(x) for x in vec)
            if len(vec) != self.module_dim:
                raise ValueError(f"action vector for {(v, e)} has the wrong length")
            if any(vec):
                clean[(v, e)] = vec
        object.__setattr__(self, "action", clean)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleAction):
            return NotImplemented
        return (
            self.module_dim == other.module_dim
            and self.algebra == other.algebra
            and self.action == other.action
        )

    __hash__ = None

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(f"X{v}" for v in range(1, self.module_dim + 1))

    def act(self, v: int, e: int) -> tuple:
        return self.action.get((v, e), (ZERO,) * self.module_dim)

    def apply(self, vec: Sequence, e: int) -> tuple:
        """``vec . e`` for a module vector ``vec``."""
        acc = [ZERO] * self.module_dim
        for v, c in enumerate(vec):
            if not c:
                continue
            img = self.action.get((v, e))
            if img is None:
                continue
            for t, x in enumerate(img):
                if x:
                    acc[t] = acc[t] + c * x
        return tuple(acc)

    def is_real(self) -> bool:
        return all(x.is_real for vec in self.action.values() for x in vec)

    def to_json(self) -> dict:
        fld = "rational" if self.is_real() else "gaussian"
        entries = [
            [v, e, [scalar_to_json(x, fld) for x in vec]]
            for (v, e), vec in sorted(self.action.items())
        ]
        return {"module_dim": self.module_dim, "entries": entries}

    @classmethod
    def from_json(cls, obj: Mapping, algebra: AlgebraTable) -> "ModuleAction":
        try:
            n = int(obj["module_dim"])
            entries = obj["entries"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed action JSON: {exc}") from exc
        action = {}
        for entry in entries:
            v, e, vec = entry
            action[(int(v), int(e))] = tuple(scalar_from_json(x) for x in vec)
        return cls(algebra, n, action)


def _check_m(m: int) -> None:
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"m must be a positive integer, got {m!r}")


def phi_sl(m: int) -> MatrixRep:
    """Order ``m+2`` representation of the complex Diamond algebra inside sl(m+2)."""
    _check_m(m)
    n = m + 2
    alg = diamond_complex(m)
    u = ExactMatrix.unit
    edge = I * gr(m) / n
    mid = -2 * I / n
    j = u(n, 1, 1, edge) + u(n, n, n, edge)
    for s in range(2, m + 2):
        j = j + u(n, s, s, mid)
    images = [j]
    images += [u(n, 1, m + 2 - k) for k in range(1, m + 1)]          # P_k^+
    images += [u(n, m + 2 - k, m + 2) for k in range(1, m + 1)]      # Q_k^-
    images.append(u(n, 1, m + 2, -I / 2))                            # T
    return MatrixRep(alg, n, tuple(images))


def phi_sp(m: int) -> MatrixRep:
    """Order ``2m+2`` real representation of the Diamond algebra inside sp(2m+2)."""
    _check_m(m)
    n = 2 * m + 2
    alg = diamond_real(m)
    u = ExactMatrix.unit
    j = ExactMatrix.zeros(n, n)
    for k in range(2, m + 2):
        j = j + u(n, k, 2 * m + 3 - k, -1)
    for k in range(m + 2, 2 * m + 2):
        j = j + u(n, k, 2 * m + 3 - k, 1)
    images = [j]
    images += [u(n, 1, 1 + k) - u(n, 2 * m + 2 - k, n) for k in range(1, m + 1)]
    images += [u(n, 1, 2 * m + 2 - k) + u(n, k + 1, n) for k in range(1, m + 1)]
    images.append(u(n, 1, n, 2))
    return MatrixRep(alg, n, tuple(images))


def check_rep_homomorphism(rep: MatrixRep) -> CheckReport:
    """``phi([x,y]) == [phi(x), phi(y)]`` on every ordered basis pair."""
    A = rep.algebra
    count = 0
    first = residual = None
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = rep.image(_dense(A.product(i, j), A.dim))
            rhs = rep.images[i].commutator(rep.images[j])
            if lhs != rhs:
                count += 1
                if first is None:
                    first = (A.labels[i], A.labels[j])
                    residual = repr(lhs - rhs)
    return CheckReport("homomorphism", count == 0, count, first, residual)


def _dense(vec: Mapping[int, GaussianRational], n: int) -> tuple:
    out = [ZERO] * n
    for k, c in vec.items():
        out[k] = c
    return tuple(out)


def check_faithful(rep: MatrixRep, expected_order: int | None = None) -> CheckReport:
    """Injectivity of ``x -> phi(x)``; optionally also pin the matrix order."""
    A = rep.algebra
    cols = [img.flatten() for img in rep.images]
    stacked = ExactMatrix._wrap(tuple(zip(*cols)), A.dim) if cols else ExactMatrix.zeros(0, 0)
    ker = kernel(stacked) if cols else Subspace.zero(0)
    detail = {"kernel_dim": ker.dim, "order": rep.order}
    ok = ker.dim == 0
    if expected_order is not None:
        detail["expected_order"] = expected_order
        ok = ok and rep.order == expected_order
    first = residual = None
    if ker.dim:
        first = (A.describe(ker.basis[0]),)
        residual = "maps to the zero matrix"
    return CheckReport("faithful", ok, ker.dim, first, residual, detail)


def check_traceless(rep: MatrixRep) -> CheckReport:
    count = 0
    first = residual = None
    for lab, img in zip(rep.algebra.labels, rep.images):
        tr = img.trace()
        if tr:
            count += 1
            if first is None:
                first, residual = (lab,), str(tr)
    return CheckReport("traceless", count == 0, count, first, residual)


def invariant_forms(rep: MatrixRep) -> Subspace:
    """Bilinear forms ``B`` (row-major flattened) with ``phi(x)^T B + B phi(x) = 0`` for all x."""
    n = rep.order
    rows = []
    for img in rep.images:
        a = img.entries
        for r in range(n):
            for c in range(n):
                row = [ZERO] * (n * n)
                for k in range(n):
                    if a[k][r]:
                        row[k * n + c] = row[k * n + c] + a[k][r]
                    if a[k][c]:
                        row[r * n + k] = row[r * n + k] + a[k][c]
                if any(row):
                    rows.append(tuple(row))
    if not rows:
        return Subspace.full(n * n)
    return kernel(ExactMatrix._wrap(tuple(rows), n * n))


def _skew_matrices(n: int) -> Subspace:
    vecs = []
    for r in range(n):
        for c in range(r + 1, n):
            v = [ZERO] * (n * n)
            v[r * n + c] = ONE
            v[c * n + r] = -ONE
            vecs.append(v)
    return Subspace.span(vecs, n * n)


def find_nondegenerate_skew(forms: Subspace, n: int, tries: int = 200, seed: int = 0) -> ExactMatrix | None:
    """A nondegenerate skew-symmetric member of ``forms``, or None if the search finds none.

    Searches the basis of the skew part, its full sum, then seeded small-integer combinations.
    """
    if forms.ambient_dim != n * n:
        raise ValueError("form space does not match the matrix order")
    if n % 2:
        return None
    skew = forms & _skew_matrices(n)
    basis = skew.basis
    if not basis:
        return None

    def as_matrix(coeffs) -> ExactMatrix:
        flat = [ZERO] * (n * n)
        for c, b in zip(coeffs, basis):
            if c:
                for t, x in enumerate(b):
                    if x:
                        flat[t] = flat[t] + c * x
        return ExactMatrix([flat[r * n:(r + 1) * n] for r in range(n)])

    d = len(basis)
    candidates = [tuple(1 if i == j else 0 for i in range(d)) for j in range(d)]
    candidates.append((1,) * d)
    rng = random.Random(seed)
    for _ in range(tries):
        candidates.append(tuple(rng.randint(-3, 3) for _ in range(d)))
    for coeffs in candidates:
        B = as_matrix(coeffs)
        if B.rank() == n:
            return B
    return None


def module_from_rep(rep: MatrixRep) -> ModuleAction:
    """Natural right module: ``(X_v, e) = X_v phi(e)``, i.e. row ``v`` of ``phi(e)``."""
    action = {}
    for e, img in enumerate(rep.images):
        for v in range(rep.order):
            row = img.row(v)
            if any(row):
                action[(v, e)] = row
    return ModuleAction(rep.algebra, rep.order, action)


def _unit_vec(n: int, idx: int, c=ONE) -> tuple:
    """``c * X_idx`` with 1-based ``idx``."""
    out = [ZERO] * n
    out[idx - 1] = gr(c)
    return tuple(out)


def action_table_sl(m: int) -> ModuleAction:
    """The natural module of the order-``m+2`` representation, written out product by product."""
    _check_m(m)
    alg = diamond_complex(m)
    n = m + 2
    J, T = 0, 2 * m + 1
    P = lambda k: k
    Q = lambda k: m + k
    act = {}
    edge = I * gr(m) / n
    act[(0, J)] = _unit_vec(n, 1, edge)
    for k in range(2, m + 2):
        act[(k - 1, J)] = _unit_vec(n, k, -2 * I / n)
    act[(n - 1, J)] = _unit_vec(n, n, edge)
    for k in range(1, m + 1):
        act[(0, P(k))] = _unit_vec(n, m + 2 - k)
        act[(m + 2 - k - 1, Q(k))] = _unit_vec(n, m + 2)
    act[(0, T)] = _unit_vec(n, m + 2, -I / 2)
    return ModuleAction(alg, n, act)


def action_table_sp(m: int) -> ModuleAction:
    """The natural module of the order-``2m+2`` real representation, written out."""
    _check_m(m)
    alg = diamond_real(m)
    n = 2 * m + 2
    J, T = 0, 2 * m + 1
    P = lambda k: k
    Q = lambda k: m + k
    act: dict[tuple[int, int], tuple] = {}

    def put(v, e, vec):
        prev = act.get((v - 1, e), (ZERO,) * n)
        act[(v - 1, e)] = tuple(a + b for a, b in zip(prev, vec))

    for k in range(2, m + 2):
        put(k, J, _unit_vec(n, 2 * m + 3 - k, -1))
    for k in range(m + 2, 2 * m + 2):
        put(k, J, _unit_vec(n, 2 * m + 3 - k, 1))
    for k in range(1, m + 1):
        put(1, P(k), _unit_vec(n, k + 1))
        put(2 * m + 2 - k, P(k), _unit_vec(n, 2 * m + 2, -1))
        put(1, Q(k), _unit_vec(n, 2 * m + 2 - k))
        put(k + 1, Q(k), _unit_vec(n, 2 * m + 2))
    put(1, T, _unit_vec(n, 2 * m + 2, 2))
    return ModuleAction(alg, n, act)


def right_module_residual(act: ModuleAction, v: int, e: int, f: int) -> tuple:
    """``v.[e,f] - (v.e).f + (v.f).e`` for basis elements."""
    A = act.algebra
    xv = _unit_vec(act.module_dim, v + 1)
    lhs = [ZERO] * act.module_dim
    for k, c in A.product(e, f).items():
        img = act.act(v, k)
        for t, x in enumerate(img):
            if x:
                lhs[t] = lhs[t] + c * x
    ve_f = act.apply(act.act(v, e), f)
    vf_e = act.apply(act.act(v, f), e)
    return tuple(a - b + c for a, b, c in zip(lhs, ve_f, vf_e))


def check_right_module(act: ModuleAction) -> CheckReport:
    """``v.[e,f] = (v.e).f - (v.f).e`` over all module x algebra x algebra basis triples."""
    A = act.algebra
    count = 0
    first = residual = None
    for v, e, f in itertools.product(range(act.module_dim), range(A.dim), range(A.dim)):
        res = right_module_residual(act, v, e, f)
        if any(res):
            count += 1
            if first is None:
                first = (act.labels[v], A.labels[e], A.labels[f])
                residual = " + ".join(
                    f"({c})*{act.labels[t]}" for t, c in enumerate(res) if c
                )
    return CheckReport("right_module", count == 0, count, first, residual)
