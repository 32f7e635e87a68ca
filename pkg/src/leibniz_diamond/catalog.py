"""Named algebras: the real and complex Diamond algebras and the Heisenberg algebras.

Basis order is always J, P_1..P_m, Q_1..Q_m, T (and X_1..X_m, Y_1..Y_m, Z).
"""
from __future__ import annotations

from .algebra import AlgebraTable, LinearMap, bracket_eval
from .exactmath import ONE, ZERO, ExactMatrix, I

__all__ = [
    "diamond_real",
    "diamond_complex",
    "heisenberg",
    "complexify_diamond",
    "diamond_labels",
    "heisenberg_labels",
    "pqt_labels",
    "CATALOG",
    "by_name",
]


def _check_m(m: int) -> None:
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"m must be a positive integer, got {m!r}")


def diamond_labels(m: int, complex_basis: bool = False) -> tuple[str, ...]:
    if complex_basis:
        ps = [f"P{k}+" for k in range(1, m + 1)]
        qs = [f"Q{k}-" for k in range(1, m + 1)]
    else:
        ps = [f"P{k}" for k in range(1, m + 1)]
        qs = [f"Q{k}" for k in range(1, m + 1)]
    return ("J", *ps, *qs, "T")


def heisenberg_labels(m: int) -> tuple[str, ...]:
    return (
        *(f"X{k}" for k in range(1, m + 1)),
        *(f"Y{k}" for k in range(1, m + 1)),
        "Z",
    )


def pqt_labels(m: int) -> tuple[str, ...]:
    """Labels of the P, Q, T part of the real Diamond basis."""
    return diamond_labels(m)[1:]


def diamond_real(m: int) -> AlgebraTable:
    """Real Diamond algebra: ``[J,P_k] = Q_k``, ``[J,Q_k] = -P_k``, ``[P_k,Q_k] = T``."""
    _check_m(m)
    brackets = {}
    for k in range(1, m + 1):
        brackets[("J", f"P{k}")] = {f"Q{k}": 1}
        brackets[("J", f"Q{k}")] = {f"P{k}": -1}
        brackets[(f"P{k}", f"Q{k}")] = {"T": 1}
    return AlgebraTable.from_brackets(diamond_labels(m), brackets, "rational", antisymmetric=True)


def diamond_complex(m: int) -> AlgebraTable:
    """Complex Diamond algebra in the basis J, P_k^+, Q_k^-, T."""
    _check_m(m)
    brackets = {}
    for k in range(1, m + 1):
        brackets[("J", f"P{k}+")] = {f"P{k}+": I}
        brackets[("J", f"Q{k}-")] = {f"Q{k}-": -I}
        brackets[(f"P{k}+", f"Q{k}-")] = {"T": 2 * I}
    return AlgebraTable.from_brackets(
        diamond_labels(m, complex_basis=True), brackets, "gaussian", antisymmetric=True
    )


def heisenberg(m: int) -> AlgebraTable:
    _check_m(m)
    brackets = {(f"X{k}", f"Y{k}"): {"Z": 1} for k in range(1, m + 1)}
    return AlgebraTable.from_brackets(heisenberg_labels(m), brackets, "rational", antisymmetric=True)


def complexify_diamond(m: int) -> tuple[AlgebraTable, LinearMap]:
    """Extend scalars of the real Diamond algebra and pass to ``P_k -/+ i Q_k``.

    Returns the recomputed table and the base change whose row ``a`` expresses
    the new basis vector ``a`` in the old basis.
    """
    _check_m(m)
    real = diamond_real(m).with_field("gaussian")
    n = real.dim
    rows = [[ZERO] * n for _ in range(n)]
    rows[0][0] = ONE
    rows[n - 1][n - 1] = ONE
    for k in range(1, m + 1):
        rows[k][k] = ONE           # P_k^+ = P_k - i Q_k
        rows[k][m + k] = -I
        rows[m + k][k] = ONE       # Q_k^- = P_k + i Q_k
        rows[m + k][m + k] = I
    change = ExactMatrix(rows)
    to_new = change.inverse()
    table = {}
    for a in range(n):
        for b in range(n):
            out = to_new.vecmul(bracket_eval(real, change.row(a), change.row(b)))
            terms = tuple((k, c) for k, c in enumerate(out) if c)
            if terms:
                table[(a, b)] = terms
    algebra = AlgebraTable(n, "gaussian", diamond_labels(m, complex_basis=True), table)
    return algebra, LinearMap(n, n, change)


CATALOG = {
    "diamond-real": diamond_real,
    "diamond-complex": diamond_complex,
    "heisenberg": heisenberg,
}


def by_name(name: str, m: int) -> AlgebraTable:
    try:
        ctor = CATALOG[name]
    except KeyError:
        raise ValueError(f"unknown algebra {name!r}; choose from {sorted(CATALOG)}") from None
    return ctor(m)
