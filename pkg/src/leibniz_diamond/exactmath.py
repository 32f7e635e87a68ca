"""Exact scalars over Q(i) and dense exact linear algebra.

Every computation in the package funnels through :class:`GaussianRational`.
Plain rationals are the elements with zero imaginary part, so a single
scalar type serves both the real and the complex constructions.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

__all__ = [
    "GaussianRational",
    "ExactMatrix",
    "Subspace",
    "ZERO",
    "ONE",
    "I",
    "gr",
    "rref",
    "kernel",
    "solve",
    "rational_to_str",
    "rational_from_str",
    "scalar_to_json",
    "scalar_from_json",
]


class GaussianRational:
    """An element ``re + i*im`` of Q(i) with both parts stored as reduced fractions."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    # -- predicates -------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    @property
    def is_real(self) -> bool:
        return not self.im

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        if isinstance(other, complex):
            return self.re == other.real and self.im == other.imag
        return NotImplemented

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational._make(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational._make(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return GaussianRational._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._make(a * c, _FZERO)
        return GaussianRational._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        a, b = self.re, self.im
        if not b:
            if not a:
                raise ZeroDivisionError("GaussianRational division by zero")
            return GaussianRational._make(1 / a, _FZERO)
        n = a * a + b * b
        return GaussianRational._make(a / n, -b / n)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def conj(self) -> "GaussianRational":
        return GaussianRational._make(self.re, -self.im)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        out = ONE
        for _ in range(abs(n)):
            out = out * base
        return out

    # -- display ----------------------------------------------------------
    def __repr__(self) -> str:
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self) -> str:
        if not self.im:
            return rational_to_str(self.re)
        if not self.re:
            return f"{_imag_str(self.im)}"
        sign = "+" if self.im > 0 else "-"
        return f"{rational_to_str(self.re)}{sign}{_imag_str(abs(self.im))}"


def _imag_str(q: Fraction) -> str:
    if q == 1:
        return "i"
    if q == -1:
        return "-i"
    return f"{rational_to_str(q)}*i"


_FZERO = Fraction(0)
ZERO = GaussianRational._make(_FZERO, _FZERO)
ONE = GaussianRational._make(Fraction(1), _FZERO)
I = GaussianRational._make(_FZERO, Fraction(1))


def _coerce(x) -> GaussianRational | None:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, _RationalABC)):
        return GaussianRational._make(Fraction(x), _FZERO)
    if isinstance(x, complex):
        return GaussianRational(Fraction(x.real), Fraction(x.imag))
    return None


def gr(x, im=0) -> GaussianRational:
    """Coerce ``x`` (int, Fraction, str, complex or GaussianRational) to a scalar."""
    if im:
        return GaussianRational(Fraction(x), Fraction(im))
    if isinstance(x, str):
        return GaussianRational(rational_from_str(x))
    out = _coerce(x)
    if out is None:
        raise TypeError(f"cannot convert {type(x).__name__} to GaussianRational")
    return out


# -- serialization -------------------------------------------------------
def rational_to_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rational_from_str(s: str) -> Fraction:
    return Fraction(s)


def scalar_to_json(x: GaussianRational, field: str = "gaussian"):
    """Rationals serialize as ``"p/q"``; Gaussian rationals as ``{"re": .., "im": ..}``."""
    if field == "rational":
        if x.im:
            raise ValueError(f"non-real scalar {x} in a rational context")
        return rational_to_str(x.re)
    return {"re": rational_to_str(x.re), "im": rational_to_str(x.im)}


def scalar_from_json(obj) -> GaussianRational:
    if isinstance(obj, dict):
        return GaussianRational(rational_from_str(obj["re"]), rational_from_str(obj["im"]))
    if isinstance(obj, str):
        return GaussianRational(rational_from_str(obj))
    if isinstance(obj, int) and not isinstance(obj, bool):
        return GaussianRational(obj)
    raise ValueError(f"not a scalar: {obj!r}")


# -- matrices -------------------------------------------------------------
class ExactMatrix:
    """Immutable dense matrix of Gaussian rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        data = tuple(tuple(gr(x) for x in row) for row in entries)
        if cols is None:
            if not data:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(data[0])
        for row in data:
            if len(row) != cols:
                raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", data)

    @classmethod
    def _wrap(cls, data: tuple, cols: int) -> "ExactMatrix":
        obj = object.__new__(cls)
        object.__setattr__(obj, "rows", len(data))
        object.__setattr__(obj, "cols", cols)
        object.__setattr__(obj, "entries", data)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls._wrap(tuple((ZERO,) * cols for _ in range(rows)), cols)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls._wrap(
            tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def unit(cls, n: int, i: int, j: int, scale=1) -> "ExactMatrix":
        """``scale * e_{i,j}`` of order ``n`` with 1-based indices."""
        s = gr(scale)
        return cls._wrap(
            tuple(
                tuple(s if (r == i - 1 and c == j - 1) else ZERO for c in range(n))
                for r in range(n)
            ),
            n,
        )

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        r, c = idx
        return self.entries[r][c]

    def row(self, r: int) -> tuple:
        return self.entries[r]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"ExactMatrix({self.rows}x{self.cols}: [{body}])"

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_shape(other)
        return ExactMatrix._wrap(
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)),
            self.cols,
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_shape(other)
        return ExactMatrix._wrap(
            tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)),
            self.cols,
        )

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix._wrap(tuple(tuple(-a for a in r) for r in self.entries), self.cols)

    def scale(self, s) -> "ExactMatrix":
        s = gr(s)
        return ExactMatrix._wrap(tuple(tuple(s * a for a in r) for r in self.entries), self.cols)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        ocols = other.cols
        for row in self.entries:
            acc = [ZERO] * ocols
            for k, a in enumerate(row):
                if not a:
                    continue
                orow = other.entries[k]
                for j in range(ocols):
                    b = orow[j]
                    if b:
                        acc[j] = acc[j] + a * b
            out.append(tuple(acc))
        return ExactMatrix._wrap(tuple(out), ocols)

    def commutator(self, other: "ExactMatrix") -> "ExactMatrix":
        return self @ other - other @ self

    def transpose(self) -> "ExactMatrix":
        if not self.rows:
            return ExactMatrix._wrap(tuple(() for _ in range(self.cols)), 0)
        return ExactMatrix._wrap(tuple(zip(*self.entries)), self.rows)

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def trace(self) -> GaussianRational:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        out = ZERO
        for i in range(self.rows):
            out = out + self.entries[i][i]
        return out

    def is_zero(self) -> bool:
        return not any(x for row in self.entries for x in row)

    def is_real(self) -> bool:
        return all(x.is_real for row in self.entries for x in row)

    def flatten(self) -> tuple:
        return tuple(x for row in self.entries for x in row)

    def vecmul(self, v: Sequence) -> tuple:
        """Row vector ``v`` times this matrix."""
        if len(v) != self.rows:
            raise ValueError("vector length mismatch")
        acc = [ZERO] * self.cols
        for k, a in enumerate(v):
            if not a:
                continue
            for j, b in enumerate(self.entries[k]):
                if b:
                    acc[j] = acc[j] + a * b
        return tuple(acc)

    def rank(self) -> int:
        return rref(self)[1]

    def inverse(self) -> "ExactMatrix":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug = ExactMatrix._wrap(
            tuple(row + ExactMatrix.identity(n).entries[i] for i, row in enumerate(self.entries)),
            2 * n,
        )
        red, rank, pivots = rref(aug)
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return ExactMatrix._wrap(tuple(row[n:] for row in red.entries[:n]), n)

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")


def _rref_rows(rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """In-place Gauss-Jordan on mutable rows; first nonzero entry pivots.

    Returns the nonzero reduced rows and their pivot columns.
    """
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = None
        for i in range(r, nrows):
            if rows[i][c]:
                p = i
                break
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        inv = prow[c].inverse()
        if inv != ONE:
            for j in range(c, ncols):
                if prow[j]:
                    prow[j] = prow[j] * inv
        support = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if not f:
                continue
            for j in support:
                row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(M: ExactMatrix) -> tuple[ExactMatrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns of ``M``."""
    rows = [list(row) for row in M.entries]
    red, pivots = _rref_rows(rows, M.cols)
    full = [tuple(row) for row in red]
    full.extend((ZERO,) * M.cols for _ in range(M.rows - len(red)))
    return ExactMatrix._wrap(tuple(full), M.cols), len(pivots), pivots


def _kernel_rows(red: list, pivots: list[int], ncols: int) -> list[tuple]:
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for row, pc in zip(red, pivots):
            if row[f]:
                v[pc] = -row[f]
        basis.append(tuple(v))
    return basis


def kernel(M: ExactMatrix) -> "Subspace":
    """The space of ``x`` with ``M @ x^T = 0``, canonically based."""
    rows = [list(row) for row in M.entries]
    red, pivots = _rref_rows(rows, M.cols)
    return Subspace.span(_kernel_rows(red, pivots, M.cols), M.cols)


def solve(A: ExactMatrix, b: Sequence) -> tuple | None:
    """One solution ``x`` of ``A @ x^T = b`` (free variables zero), or None if inconsistent."""
    if len(b) != A.rows:
        raise ValueError("right-hand side length mismatch")
    n = A.cols
    rows = [list(row) + [gr(bi)] for row, bi in zip(A.entries, b)]
    red, pivots = _rref_rows(rows, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [ZERO] * n
    for row, pc in zip(red, pivots):
        x[pc] = row[n]
    return tuple(x)


# -- subspaces ------------------------------------------------------------
class Subspace:
    """A subspace of ``F^n`` held by its canonical (RREF) basis.

    Two subspaces compare equal exactly when their canonical bases agree,
    which happens iff they are the same space.
    """

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis: tuple, pivots: tuple):
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "pivots", pivots)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        rows = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            rows.append([gr(x) for x in v])
        red, pivots = _rref_rows(rows, ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in red), tuple(pivots))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, (), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(
            ambient_dim,
            ExactMatrix.identity(ambient_dim).entries,
            tuple(range(ambient_dim)),
        )

    @classmethod
    def coordinate(cls, ambient_dim: int, indices: Iterable[int]) -> "Subspace":
        vecs = []
        for i in indices:
            v = [ZERO] * ambient_dim
            v[i] = ONE
            vecs.append(v)
        return cls.span(vecs, ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(
                f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def reduce(self, v: Sequence) -> tuple:
        """Remainder of ``v`` after clearing the pivot coordinates of this space."""
        if len(v) != self.ambient_dim:
            raise ValueError("vector length mismatch")
        out = [gr(x) for x in v]
        for row, pc in zip(self.basis, self.pivots):
            f = out[pc]
            if f:
                for j, x in enumerate(row):
                    if x:
                        out[j] = out[j] - f * x
        return tuple(out)

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def issubspace(self, other: "Subspace") -> bool:
        """True when ``self`` is contained in ``other``."""
        self._check(other)
        return all(other.contains(b) for b in self.basis)

    def __le__(self, other: "Subspace") -> bool:
        return self.issubspace(other)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check(other)
        a, b = self.basis, other.basis
        if not a or not b:
            return Subspace.zero(self.ambient_dim)
        # x.A = y.B  <=>  (x, -y) in the left kernel of the stacked basis
        stacked = ExactMatrix._wrap(tuple(a) + tuple(tuple(-x for x in r) for r in b), self.ambient_dim)
        coeffs = kernel(stacked.transpose())
        vecs = []
        for c in coeffs.basis:
            acc = [ZERO] * self.ambient_dim
            for ci, row in zip(c[: len(a)], a):
                if ci:
                    for j, x in enumerate(row):
                        if x:
                            acc[j] = acc[j] + ci * x
            vecs.append(acc)
        return Subspace.span(vecs, self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        return self.intersection(other)

    def quotient_dim(self, sub: "Subspace") -> int:
        """``dim self - dim sub``; ``sub`` must lie inside ``self``."""
        self._check(sub)
        if not sub.issubspace(self):
            raise ValueError("quotient_dim requires the second space to be contained in the first")
        return self.dim - sub.dim

    def complement_coordinates(self) -> tuple[int, ...]:
        """Non-pivot coordinates, spanning a complement of this space."""
        pivset = set(self.pivots)
        return tuple(i for i in range(self.ambient_dim) if i not in pivset)

    def as_matrix(self) -> ExactMatrix:
        return ExactMatrix._wrap(self.basis, self.ambient_dim)
