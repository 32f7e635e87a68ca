"""Leibniz algebras ``G + V`` over a Lie algebra ``G`` and a right ``G``-module ``V``.

The bracket on ``G + V`` is

    [g_i, g_j] = [g_i, g_j]_G + omega(i, j),   [v, g] = v.g,   [g, v] = 0,   [v, w] = 0,

so module vectors only act from the left slot. ``omega`` is a cocycle exactly
when the result satisfies the Leibniz identity, and replacing the lift
``g -> g + f(g)`` changes ``omega`` by ``delta f(x, y) = f(x).y - f([x, y])``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import (
    AlgebraTable,
    CheckReport,
    LinearMap,
    check_lie,
)
from .catalog import diamond_complex, diamond_real
from .exactmath import ONE, ZERO, ExactMatrix, GaussianRational, Subspace, gr, kernel, solve
from .reps import ModuleAction, action_table_sl, action_table_sp, check_right_module

__all__ = [
    "ExtensionProblem",
    "Cocycle",
    "CohomologyReport",
    "build_extension",
    "cocycle_constraints",
    "constraint_rows",
    "cocycle_space",
    "coboundary_space",
    "coboundary",
    "cohomology",
    "theorem2_cocycle",
    "theorem2_table",
    "theorem1_split_check",
    "sl_problem",
    "sp_problem",
]


@dataclass(frozen=True)
class ExtensionProblem:
    quotient: AlgebraTable
    action: ModuleAction
    validate: bool = field(default=True, compare=False)

    def __post_init__(self):
        if self.action.algebra != self.quotient:
            raise ValueError("the module is not over the given quotient algebra")
        if self.validate:
            lie = check_lie(self.quotient)
            if not lie:
                raise ValueError(f"quotient is not a Lie algebra: fails at {lie.first}")
            mod = check_right_module(self.action)
            if not mod:
                raise ValueError(f"not a right module: fails at {mod.first}")

    @property
    def dim(self) -> int:
        return self.quotient.dim

    @property
    def module_dim(self) -> int:
        return self.action.module_dim

    @property
    def n_unknowns(self) -> int:
        return self.dim * self.dim * self.module_dim

    def coord(self, i: int, j: int, t: int) -> int:
        """Flat index of the ``X_t`` component of ``omega(i, j)``."""
        return (i * self.dim + j) * self.module_dim + t

    def lift_coord(self, i: int, t: int) -> int:
        return i * self.module_dim + t

    def module_labels(self) -> tuple[str, ...]:
        return self.action.labels

    def field_tag(self) -> str:
        if self.quotient.field == "gaussian" or not self.action.is_real():
            return "gaussian"
        return "rational"


@dataclass(frozen=True)
class Cocycle:
    """A bilinear ``omega: G x G -> V`` stored as a flat coordinate vector.

    Coordinates are ordered by ``(i, j, t)`` as in :meth:`ExtensionProblem.coord`.
    """

    problem: ExtensionProblem
    coords: tuple[GaussianRational, ...]

    def __post_init__(self):
        if len(self.coords) != self.problem.n_unknowns:
            raise ValueError(
                f"cocycle has {len(self.coords)} coordinates, expected {self.problem.n_unknowns}"
            )

    @classmethod
    def zero(cls, problem: ExtensionProblem) -> "Cocycle":
        return cls(problem, (ZERO,) * problem.n_unknowns)

    @classmethod
    def from_values(
        cls, problem: ExtensionProblem, values: Mapping[tuple[int, int], Sequence]
    ) -> "Cocycle":
        coords = [ZERO] * problem.n_unknowns
        for (i, j), vec in values.items():
            if len(vec) != problem.module_dim:
                raise ValueError(f"omega({i},{j}) has the wrong length")
            for t, c in enumerate(vec):
                coords[problem.coord(i, j, t)] = gr(c)
        return cls(problem, tuple(coords))

    @classmethod
    def from_labels(
        cls, problem: ExtensionProblem, values: Mapping[tuple[str, str], Mapping[str, object]]
    ) -> "Cocycle":
        """``{("J","J"): {"X4": 5}}`` style construction."""
        G, mlabels = problem.quotient, problem.module_labels()
        dense = {}
        for (a, b), out in values.items():
            vec = [ZERO] * problem.module_dim
            for lab, c in out.items():
                vec[mlabels.index(lab)] = gr(c)
            dense[(G.index(a), G.index(b))] = vec
        return cls.from_values(problem, dense)

    def value(self, i: int, j: int) -> tuple:
        n = self.problem.module_dim
        start = self.problem.coord(i, j, 0)
        return self.coords[start:start + n]

    def __add__(self, other: "Cocycle") -> "Cocycle":
        return Cocycle(self.problem, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Cocycle") -> "Cocycle":
        return Cocycle(self.problem, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def entries(self) -> list[tuple[int, int, tuple]]:
        d = self.problem.dim
        return [(i, j, self.value(i, j)) for i in range(d) for j in range(d) if any(self.value(i, j))]

    def to_json(self) -> list:
        from .exactmath import scalar_to_json

        fld = self.problem.field_tag()
        return [[i, j, [scalar_to_json(x, fld) for x in vec]] for i, j, vec in self.entries()]


@dataclass
class CohomologyReport:
    cocycle_space: Subspace
    coboundary_space: Subspace
    quotient_dim: int
    representatives: list[Cocycle]

    def to_json(self) -> dict:
        return {
            "cocycle_dim": self.cocycle_space.dim,
            "coboundary_dim": self.coboundary_space.dim,
            "quotient_dim": self.quotient_dim,
            "representatives": [r.to_json() for r in self.representatives],
        }


def build_extension(P: ExtensionProblem, omega: Cocycle | None = None) -> AlgebraTable:
    """The algebra ``G + V`` twisted by ``omega`` (the plain split algebra when ``omega`` is None)."""
    if omega is None:
        omega = Cocycle.zero(P)
    if omega.problem.dim != P.dim or omega.problem.module_dim != P.module_dim:
        raise ValueError("cocycle does not match the extension problem")
    d, n = P.dim, P.module_dim
    G = P.quotient
    table: dict[tuple[int, int], list] = {}
    for i in range(d):
        for j in range(d):
            terms = list(G.product(i, j).items())
            terms += [(d + t, c) for t, c in enumerate(omega.value(i, j)) if c]
            if terms:
                table[(i, j)] = terms
    for (v, e), vec in P.action.action.items():
        table[(d + v, e)] = [(d + t, c) for t, c in enumerate(vec) if c]
    field_tag = P.field_tag()
    if any(c.im for c in omega.coords):
        field_tag = "gaussian"
    labels = G.labels + P.module_labels()
    return AlgebraTable(d + n, field_tag, labels, {k: tuple(v) for k, v in table.items()})


def _triple_rows(P: ExtensionProblem, a: int, b: int, c: int) -> list[dict]:
    """Sparse cocycle equations for the basis triple ``(a, b, c)``, one per module coordinate.

    omega(a,[b,c]) - omega([a,b],c) - omega(a,b).c + omega([a,c],b) + omega(a,c).b = 0
    """
    G, act, n = P.quotient, P.action, P.module_dim
    rows = [dict() for _ in range(n)]

    def add(row: dict, col: int, val):
        v = row.get(col, ZERO) + val
        if v:
            row[col] = v
        else:
            row.pop(col, None)

    for k, coef in G.product(b, c).items():
        for t in range(n):
            add(rows[t], P.coord(a, k, t), coef)
    for k, coef in G.product(a, b).items():
        for t in range(n):
            add(rows[t], P.coord(k, c, t), -coef)
    for k, coef in G.product(a, c).items():
        for t in range(n):
            add(rows[t], P.coord(k, b, t), coef)
    for s in range(n):
        for t, x in enumerate(act.act(s, c)):
            if x:
                add(rows[t], P.coord(a, b, s), -x)
        for t, x in enumerate(act.act(s, b)):
            if x:
                add(rows[t], P.coord(a, c, s), x)
    return rows


def constraint_rows(P: ExtensionProblem, triple: tuple[str, str, str]) -> list[tuple]:
    """Dense cocycle equations for one labelled triple, indexed by module coordinate."""
    G = P.quotient
    a, b, c = (G.index(x) for x in triple)
    out = []
    for row in _triple_rows(P, a, b, c):
        dense = [ZERO] * P.n_unknowns
        for col, v in row.items():
            dense[col] = v
        out.append(tuple(dense))
    return out


def _all_sparse_rows(P: ExtensionProblem, skip: Iterable[tuple[int, int, int]] = ()) -> list[dict]:
    d = P.dim
    skipped = set(skip)
    rows = []
    for a in range(d):
        for b in range(d):
            for c in range(d):
                if (a, b, c) in skipped:
                    continue
                rows.extend(_triple_rows(P, a, b, c))
    return rows


def cocycle_constraints(P: ExtensionProblem) -> ExactMatrix:
    """One row per (basis triple, module coordinate), in lexicographic order."""
    N = P.n_unknowns
    dense = []
    for row in _all_sparse_rows(P):
        r = [ZERO] * N
        for col, v in row.items():
            r[col] = v
        dense.append(tuple(r))
    return ExactMatrix._wrap(tuple(dense), N)


def _kernel_of_sparse(rows: list[dict], ncols: int) -> Subspace:
    nonzero = [r for r in rows if r]
    if not nonzero:
        return Subspace.full(ncols)
    dense = []
    for row in nonzero:
        r = [ZERO] * ncols
        for col, v in row.items():
            r[col] = v
        dense.append(tuple(r))
    return kernel(ExactMatrix._wrap(tuple(dense), ncols))


def cocycle_space(P: ExtensionProblem, skip_triples: Iterable[tuple[str, str, str]] = ()) -> Subspace:
    """Kernel of the cocycle constraint system.

    ``skip_triples`` drops the equations of the named triples, which lets tests
    isolate which identities force a given coordinate to vanish.
    """
    G = P.quotient
    skip = [tuple(G.index(x) for x in t) for t in skip_triples]
    return _kernel_of_sparse(_all_sparse_rows(P, skip), P.n_unknowns)


def coboundary(P: ExtensionProblem, lift: Mapping[int, Sequence]) -> Cocycle:
    """``delta f`` for ``f(e_i) = lift[i]``."""
    d, n = P.dim, P.module_dim
    G = P.quotient
    f = [tuple(gr(x) for x in lift.get(i, (ZERO,) * n)) for i in range(d)]
    coords = [ZERO] * P.n_unknowns
    for i in range(d):
        for j in range(d):
            val = list(P.action.apply(f[i], j))
            for k, c in G.product(i, j).items():
                for t in range(n):
                    if f[k][t]:
                        val[t] = val[t] - c * f[k][t]
            for t in range(n):
                coords[P.coord(i, j, t)] = val[t]
    return Cocycle(P, tuple(coords))


def coboundary_matrix(P: ExtensionProblem) -> ExactMatrix:
    """Row ``lift_coord(i, s)`` is ``delta`` of the lift ``f(e_i) = X_s``."""
    d, n = P.dim, P.module_dim
    rows = []
    for i in range(d):
        for s in range(n):
            unit = [ZERO] * n
            unit[s] = ONE
            rows.append(coboundary(P, {i: unit}).coords)
    return ExactMatrix._wrap(tuple(rows), P.n_unknowns)


def coboundary_space(P: ExtensionProblem) -> Subspace:
    return Subspace.span(coboundary_matrix(P).entries, P.n_unknowns)


def cohomology(P: ExtensionProblem) -> CohomologyReport:
    Z = cocycle_space(P)
    B = coboundary_space(P)
    if not B.issubspace(Z):
        raise AssertionError("coboundaries escaped the cocycle space")
    reps = []
    current = B
    for z in Z.basis:
        if not current.contains(z):
            reps.append(Cocycle(P, z))
            current = current + Subspace.span([z], P.n_unknowns)
    return CohomologyReport(Z, B, Z.quotient_dim(B), reps)


def sl_problem(m: int) -> ExtensionProblem:
    return ExtensionProblem(diamond_complex(m), action_table_sl(m))


def sp_problem(m: int) -> ExtensionProblem:
    return ExtensionProblem(diamond_real(m), action_table_sp(m))


# -- the normal form over the real Diamond algebra -------------------------------
def _check_params(m: int, b, c) -> tuple[list[list[Fraction]], list[list[Fraction]]]:
    def grid(x, name):
        if x is None:
            return [[Fraction(0)] * m for _ in range(m)]
        if isinstance(x, Mapping):
            g = [[Fraction(0)] * m for _ in range(m)]
            for (k, s), v in x.items():
                g[k - 1][s - 1] = Fraction(v)
            return g
        g = [[Fraction(v) for v in row] for row in x]
        if len(g) != m or any(len(row) != m for row in g):
            raise ValueError(f"{name} must be an {m}x{m} array")
        return g

    return grid(b, "b"), grid(c, "c")


def restriction_violations(m: int, b=None, c=None) -> list[str]:
    """Names of violated parameter restrictions (empty when the parameters are admissible)."""
    bg, cg = _check_params(m, b, c)
    out = []
    for k in range(m):
        if bg[k][k]:
            out.append(f"b_{{{k + 1},{k + 1}}} = 0")
        if cg[k][k]:
            out.append(f"c_{{{k + 1},{k + 1}}} = 0")
        for s in range(k + 1, m):
            if bg[k][s] != -bg[s][k]:
                out.append(f"b_{{{k + 1},{s + 1}}} = -b_{{{s + 1},{k + 1}}}")
            if cg[k][s] != cg[s][k]:
                out.append(f"c_{{{k + 1},{s + 1}}} = c_{{{s + 1},{k + 1}}}")
    return out


def theorem2_cocycle(
    m: int, a1=0, b=None, c=None, *, validate: bool = True, literal: bool = False
) -> Cocycle:
    """Cocycle of the normal form over the sp module, with ``X = X_{2m+2}`` and ``k != s``:
    ``[J,J] = a1 X``, ``[P_k,P_s] = [Q_k,Q_s] = b_ks X``, ``[P_k,Q_s] = -[Q_k,P_s] = c_ks X``.

    The sign of ``[Q_k,P_s]`` is forced by the triple ``(P_k, J, P_s)``; ``literal=True``
    instead uses ``[Q_k,P_s] = +c_ks X``, which fails the Leibniz identity whenever c != 0.
    ``b`` and ``c`` are ``m x m`` arrays or ``{(k, s): value}`` maps with 1-based keys.
    """
    if validate:
        bad = restriction_violations(m, b, c)
        if bad:
            raise ValueError("parameter restriction violated: " + "; ".join(bad))
    bg, cg = _check_params(m, b, c)
    P = sp_problem(m)
    n = P.module_dim
    top = n - 1
    J = 0
    Pk = lambda k: k
    Qk = lambda k: m + k
    values: dict[tuple[int, int], list] = {}

    def put(i, j, x):
        if x:
            vec = values.setdefault((i, j), [ZERO] * n)
            vec[top] = vec[top] + gr(x)

    put(J, J, Fraction(a1))
    for k in range(1, m + 1):
        for s in range(1, m + 1):
            if k == s:
                continue
            put(Pk(k), Pk(s), bg[k - 1][s - 1])
            put(Qk(k), Qk(s), bg[k - 1][s - 1])
            put(Pk(k), Qk(s), cg[k - 1][s - 1])
            put(Qk(k), Pk(s), cg[k - 1][s - 1] if literal else -cg[k - 1][s - 1])
    return Cocycle.from_values(P, values)


def theorem2_table(
    m: int, a1=0, b=None, c=None, *, validate: bool = True, literal: bool = False
) -> AlgebraTable:
    """The ``(4m+4)``-dimensional Leibniz algebra of the normal form over the sp module."""
    omega = theorem2_cocycle(m, a1, b, c, validate=validate, literal=literal)
    return build_extension(omega.problem, omega)


def theorem2_parameter_count(m: int) -> int:
    """Free parameters of the normal form: ``a1``, ``b_{k<s}``, ``c_{k<s}``."""
    return 1 + m * (m - 1)


def solve_lift(P: ExtensionProblem, omega: Cocycle) -> dict[int, tuple] | None:
    """A lift change ``f`` with ``omega + delta f = 0``, or None when ``omega`` is not a coboundary."""
    D = coboundary_matrix(P)
    x = solve(D.transpose(), tuple(-c for c in omega.coords))
    if x is None:
        return None
    n = P.module_dim
    return {i: tuple(x[P.lift_coord(i, t)] for t in range(n)) for i in range(P.dim)}


def sample_cocycles(Z: Subspace, P: ExtensionProblem, count: int, seed: int = 0) -> list[Cocycle]:
    """Seeded small-integer combinations (entries in [-9, 9]) of the cocycle basis."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        coords = [ZERO] * P.n_unknowns
        for z in Z.basis:
            w = rng.randint(-9, 9)
            if w:
                for t, x in enumerate(z):
                    if x:
                        coords[t] = coords[t] + w * x
        out.append(Cocycle(P, tuple(coords)))
    return out


def theorem1_split_check(m: int, samples: int = 3, seed: int = 0) -> CheckReport:
    """Trivial cohomology for the order ``m+2`` module, with explicit splitting lifts."""
    P = sl_problem(m)
    rep = cohomology(P)
    detail: dict = {"m": m, "quotient_dim": rep.quotient_dim, "samples": []}
    ok = rep.quotient_dim == 0
    failures = 0
    for omega in sample_cocycles(rep.cocycle_space, P, samples, seed):
        f = solve_lift(P, omega)
        split = f is not None and (omega + coboundary(P, f)).is_zero()
        if not split:
            failures += 1
        detail["samples"].append({"nonzero_coords": sum(1 for c in omega.coords if c), "split": split})
    ok = ok and failures == 0
    return CheckReport("theorem1_split", ok, failures + (rep.quotient_dim != 0), None, None, detail)


def lift_isomorphism(P: ExtensionProblem, lift: Mapping[int, Sequence]) -> LinearMap:
    """Basis change ``g_i -> g_i + f(g_i)``, ``v -> v`` on ``G + V``."""
    d, n = P.dim, P.module_dim
    rows = []
    for i in range(d):
        row = [ZERO] * (d + n)
        row[i] = ONE
        for t, c in enumerate(lift.get(i, (ZERO,) * n)):
            row[d + t] = gr(c)
        rows.append(row)
    for t in range(n):
        row = [ZERO] * (d + n)
        row[d + t] = ONE
        rows.append(row)
    return LinearMap.from_rows(rows)
