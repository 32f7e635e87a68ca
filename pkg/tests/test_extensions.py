import random
import re
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from leibniz_diamond.algebra import (
    AlgebraTable,
    check_leibniz,
    ideal_closure,
    quotient_algebra,
    right_annihilator,
    squares_span,
    verify_iso,
)
from leibniz_diamond.catalog import diamond_complex, diamond_real
from leibniz_diamond.exactmath import ZERO, Subspace, gr
from leibniz_diamond.extensions import (
    Cocycle,
    ExtensionProblem,
    build_extension,
    coboundary,
    coboundary_space,
    cocycle_constraints,
    cocycle_space,
    cohomology,
    constraint_rows,
    lift_isomorphism,
    restriction_violations,
    sl_problem,
    solve_lift,
    sp_problem,
    theorem1_split_check,
    theorem2_cocycle,
    theorem2_parameter_count,
    theorem2_table,
)
from leibniz_diamond.reps import ModuleAction


def span_of(A, *labels):
    return Subspace.span([A.vector({lab: 1}) for lab in labels], A.dim)


def module_span(L, n, start=1):
    return span_of(L, *[f"X{t}" for t in range(start, n + 1)])


def rho_family(m):
    """The m=1 obstruction class, written for general m with k=1."""
    P = sp_problem(m)
    a, b = "X2", f"X{2 * m + 1}"
    half, three_half = Fraction(1, 2), Fraction(3, 2)
    return P, Cocycle.from_labels(P, {
        ("J", "T"): {"X1": 1},
        ("P1", "P1"): {"X1": half},
        ("Q1", "Q1"): {"X1": half},
        ("P1", "T"): {b: -1},
        ("Q1", "T"): {a: 1},
        ("T", "P1"): {b: three_half},
        ("T", "Q1"): {a: -three_half},
    })


def violated_triples(P, omega):
    """Quotient triples where the twisted bracket breaks the Leibniz identity (plain-loop oracle)."""
    L = build_extension(P, omega)
    labels = L.labels
    return [
        tuple(labels[x] for x in t)
        for t in oracles.leibniz_violations(L)
        if all(x < P.dim for x in t)
    ]


# -- build_extension ----------------------------------------------------------------
def test_split_sl_extension():
    L = build_extension(sl_problem(1))
    assert L.dim == 7 and L.field == "gaussian"
    assert check_leibniz(L)
    assert oracles.leibniz_violations(L) == []


def test_a1_extension():
    P = sp_problem(1)
    L = build_extension(P, Cocycle.from_labels(P, {("J", "J"): {"X4": 5}}))
    assert check_leibniz(L)
    v = L.vector
    assert L.product(0, 0) == {L.index("X4"): gr(5)}
    assert L.product(L.index("X1"), L.index("T")) == {L.index("X4"): gr(2)}
    assert L.product(L.index("T"), L.index("X1")) == {}
    assert v({"X4": 1}) in right_annihilator(L)


def test_split_quotient_returns_quotient():
    for P in (sp_problem(1), sl_problem(1)):
        L = build_extension(P, Cocycle.zero(P))
        Q, _ = quotient_algebra(L, module_span(L, P.module_dim))
        assert Q == P.quotient


def test_dimension_mismatch():
    P = sp_problem(1)
    with pytest.raises(ValueError):
        Cocycle(P, (ZERO,) * 3)
    with pytest.raises(ValueError):
        Cocycle.from_values(P, {(0, 0): (1, 2)})


def test_problem_validation():
    # module over a different algebra
    with pytest.raises(ValueError):
        ExtensionProblem(diamond_real(2), sp_problem(1).action)
    # quotient that is not Lie
    A = theorem2_table(1, 1)
    with pytest.raises(ValueError):
        ExtensionProblem(A, ModuleAction(A, 1, {}))


# -- constraint system ----------------------------------------------------------------
def test_abelian_trivial_action_gives_zero_matrix():
    A = AlgebraTable(2, "rational", ("a", "b"), {})
    P = ExtensionProblem(A, ModuleAction(A, 2, {}))
    C = cocycle_constraints(P)
    assert C.is_zero() and C.cols == 8
    assert cocycle_space(P) == Subspace.full(8)


def test_constraint_matrix_shape():
    P = sp_problem(1)
    C = cocycle_constraints(P)
    assert C.shape == (4 ** 3 * 4, 4 * 4 * 4)


def test_theorem1_triple_forces_tj_component():
    # on (P1+, J, Q1-) the unknowns other than omega(P1+, J) and omega(P1+, Q1-) are only omega(T, J)
    P = sl_problem(1)
    G = P.quotient
    p, j, q, t = (G.index(x) for x in ("P1+", "J", "Q1-", "T"))
    skip = {P.coord(p, j, s) for s in range(3)} | {P.coord(p, q, s) for s in range(3)}
    rows = constraint_rows(P, ("P1+", "J", "Q1-"))
    assert len(rows) == 3
    for s, row in enumerate(rows):
        rest = {c: x for c, x in enumerate(row) if x and c not in skip}
        assert rest == {P.coord(t, j, s): gr(0, 2)}


def test_rho_family_is_a_cocycle_only_for_m1():
    P, w = rho_family(1)
    assert cocycle_space(P).contains(w.coords)
    assert violated_triples(P, w) == []
    for m in (2, 3):
        P, w = rho_family(m)
        bad = violated_triples(P, w)
        assert ("P1", "P1", "P2") in bad
        # every obstruction mentions a second index
        assert all(any(x[1:] not in ("", "1") for x in t) for t in bad)
        assert not check_leibniz(build_extension(P, w))


def test_zero_is_a_cocycle():
    for P in (sl_problem(1), sp_problem(1)):
        assert cocycle_space(P).contains(Cocycle.zero(P).coords)


def test_theorem2_cocycle_is_member():
    omega = theorem2_cocycle(2, 1, {(1, 2): 1, (2, 1): -1}, {(1, 2): 1, (2, 1): 1})
    assert cocycle_space(omega.problem).contains(omega.coords)


def test_skipping_triples_relaxes_system():
    P = sp_problem(1)
    full = cocycle_space(P)
    relaxed = cocycle_space(P, skip_triples=[("P1", "J", "Q1")])
    assert full <= relaxed


def test_cocycle_members_and_non_members():
    P = sp_problem(1)
    Z = cocycle_space(P)
    rng = random.Random(3)
    for _ in range(4):
        coeffs = [rng.randint(-9, 9) for _ in Z.basis]
        coords = [sum((c * z[t] for c, z in zip(coeffs, Z.basis)), ZERO) for t in range(P.n_unknowns)]
        assert check_leibniz(build_extension(P, Cocycle(P, tuple(coords))))
    misses = 0
    while misses < 4:
        coords = tuple(gr(rng.randint(-2, 2)) if rng.random() < 0.1 else ZERO for _ in range(P.n_unknowns))
        if Z.contains(coords):
            continue
        misses += 1
        assert not check_leibniz(build_extension(P, Cocycle(P, coords)))


# -- coboundaries ------------------------------------------------------------------------
def test_coboundary_of_zero():
    P = sl_problem(1)
    assert coboundary(P, {}).is_zero()


def test_sl_lift_kills_jj():
    P = sl_problem(1)
    d = coboundary(P, {0: (1, 0, 0)})
    assert d.value(0, 0) == (gr(0, Fraction(1, 3)), ZERO, ZERO)


def test_sp_lift_cannot_touch_a1():
    P = sp_problem(1)
    d = coboundary(P, {0: (1, 0, 0, 0)})
    assert not any(d.value(0, 0))
    # the a1 coordinate is zero on every coboundary
    top = P.coord(0, 0, 3)
    assert all(b[top] == 0 for b in coboundary_space(P).basis)


@pytest.mark.parametrize("make", [sl_problem, sp_problem])
@pytest.mark.parametrize("m", [1, 2])
def test_coboundaries_are_cocycles(make, m):
    P = make(m)
    assert coboundary_space(P) <= cocycle_space(P)


@settings(max_examples=6, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=16, max_size=16), st.integers(0, 2), st.integers(-2, 2))
def test_lift_change_is_isomorphism(fvals, a1, c12):
    P = sp_problem(2)
    omega = theorem2_cocycle(2, a1, None, {(1, 2): c12, (2, 1): c12})
    n = P.module_dim
    lift = {i: tuple(fvals[(i * n + t) % 16] for t in range(n)) for i in range(P.dim)}
    twisted = omega + coboundary(P, lift)
    phi = lift_isomorphism(P, lift)
    assert verify_iso(phi, build_extension(P, twisted), build_extension(P, omega))


# -- cohomology ------------------------------------------------------------------------------
SL_DIMS = {1: (12, 12), 2: (24, 24)}
SP_DIMS = {1: (17, 15), 2: (39, 35)}


@pytest.mark.parametrize("m", [1, 2])
def test_sl_cohomology_against_oracle(m):
    P = sl_problem(m)
    rep = cohomology(P)
    assert (rep.cocycle_space.dim, rep.coboundary_space.dim) == SL_DIMS[m] == oracles.cohomology_dims(P)
    assert rep.quotient_dim == 0 and rep.representatives == []


@pytest.mark.parametrize("m", [1, 2])
def test_sp_cohomology_against_oracle(m):
    P = sp_problem(m)
    rep = cohomology(P)
    assert (rep.cocycle_space.dim, rep.coboundary_space.dim) == SP_DIMS[m] == oracles.cohomology_dims(P)
    assert rep.quotient_dim == SP_DIMS[m][0] - SP_DIMS[m][1]
    assert len(rep.representatives) == rep.quotient_dim
    span = rep.coboundary_space + Subspace.span([r.coords for r in rep.representatives], P.n_unknowns)
    assert span == rep.cocycle_space
    out = rep.to_json()
    assert out["quotient_dim"] == rep.quotient_dim and out["cocycle_dim"] == SP_DIMS[m][0]


def test_sp_surplus_classes_are_explicit():
    # m=1: a1 and the rho family; m=2: a1, b12, c12 and the [P2,Q2] shift
    P, w = rho_family(1)
    B = coboundary_space(P)
    a1 = theorem2_cocycle(1, 1)
    assert (B + Subspace.span([a1.coords, w.coords], P.n_unknowns)).dim == B.dim + 2
    P = sp_problem(2)
    B = coboundary_space(P)
    shift = Cocycle.from_labels(P, {("P2", "Q2"): {"X6": 1}, ("Q2", "P2"): {"X6": -1}})
    assert cocycle_space(P).contains(shift.coords)
    fam = [
        theorem2_cocycle(2, 1).coords,
        theorem2_cocycle(2, 0, {(1, 2): 1, (2, 1): -1}).coords,
        theorem2_cocycle(2, 0, None, {(1, 2): 1, (2, 1): 1}).coords,
        shift.coords,
    ]
    assert (B + Subspace.span(fam, P.n_unknowns)).dim == B.dim + 4


# -- splitting over the order m+2 module ------------------------------------------------------
def test_theorem1_split_check_m1():
    rep = theorem1_split_check(1)
    assert rep and rep.detail["quotient_dim"] == 0
    assert all(s["split"] for s in rep.detail["samples"])


def test_split_lift_for_jj_coordinate():
    P = sl_problem(2)
    omega = coboundary(P, {0: (gr(0, -2), 0, 0, 0)})
    assert omega.value(0, 0) == (gr(1), ZERO, ZERO, ZERO)
    f = solve_lift(P, omega)
    assert (omega + coboundary(P, f)).is_zero()
    assert P.action.apply(f[0], 0) == (gr(-1), ZERO, ZERO, ZERO)


def test_zero_cocycle_splits_trivially():
    P = sl_problem(1)
    f = solve_lift(P, Cocycle.zero(P))
    assert all(not any(v) for v in f.values())


def test_non_coboundary_has_no_lift():
    assert solve_lift(sp_problem(1), theorem2_cocycle(1, 1)) is None


# -- the sp normal form ----------------------------------------------------------------------------
def test_theorem2_a1_only():
    L = theorem2_table(1, 7)
    assert L.product(0, 0) == {L.index("X4"): gr(7)}
    D = diamond_real(1)
    for i in range(4):
        for j in range(4):
            if (i, j) != (0, 0):
                assert L.product(i, j) == D.product(i, j)


def test_theorem2_b_entries():
    L = theorem2_table(2, 0, {(1, 2): 1, (2, 1): -1})
    x6 = L.index("X6")
    assert L.product(L.index("P1"), L.index("P2")) == {x6: gr(1)}
    assert L.product(L.index("Q1"), L.index("Q2")) == {x6: gr(1)}
    assert L.product(L.index("P2"), L.index("P1")) == {x6: gr(-1)}


def test_theorem2_zero_is_split():
    P = sp_problem(2)
    assert theorem2_table(2) == build_extension(P)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_theorem2_random_instances_pass(m):
    rng = random.Random(m)
    for _ in range(2):
        b = {}
        c = {}
        for k in range(1, m + 1):
            for s in range(k + 1, m + 1):
                x, y = rng.randint(-9, 9), rng.randint(-9, 9)
                b[(k, s)], b[(s, k)] = x, -x
                c[(k, s)], c[(s, k)] = y, y
        assert check_leibniz(theorem2_table(m, rng.randint(-9, 9), b, c))


def test_restriction_violations_named():
    assert restriction_violations(2, {(1, 2): 1, (2, 1): 1}) == ["b_{1,2} = -b_{2,1}"]
    assert restriction_violations(2, None, {(1, 2): 1}) == ["c_{1,2} = c_{2,1}"]
    assert restriction_violations(2, {(1, 1): 1}) == ["b_{1,1} = 0"]
    with pytest.raises(ValueError, match=re.escape("c_{1,2} = c_{2,1}")):
        theorem2_table(2, 0, None, {(1, 2): 1, (2, 1): -1})


def test_c_asymmetric_instance_fails_leibniz():
    rep = check_leibniz(theorem2_table(2, 0, None, {(1, 2): 1}, validate=False))
    assert not rep and rep.first is not None


def test_literal_c_sign_fails():
    rep = check_leibniz(theorem2_table(2, 0, None, {(1, 2): 1, (2, 1): 1}, literal=True))
    assert not rep
    assert rep.first == ("P1", "J", "P2")
    assert rep.residual == "(2)*X6"


def test_parameter_count():
    assert [theorem2_parameter_count(m) for m in (1, 2, 3)] == [1, 3, 7]


@pytest.mark.parametrize("m", [2, 3])
def test_parameter_injectivity(m):
    P = sp_problem(m)
    B = coboundary_space(P)
    rng = random.Random(10 + m)

    def params():
        b, c = {}, {}
        for k in range(1, m + 1):
            for s in range(k + 1, m + 1):
                x, y = rng.randint(-2, 2), rng.randint(-2, 2)
                b[(k, s)], b[(s, k)] = x, -x
                c[(k, s)], c[(s, k)] = y, y
        return rng.randint(-2, 2), b, c

    seen = 0
    while seen < 5:
        p1, p2 = params(), params()
        if p1 == p2:
            continue
        seen += 1
        diff = theorem2_cocycle(m, *p1) - theorem2_cocycle(m, *p2)
        assert not B.contains(diff.coords)


# -- squares ideal ---------------------------------------------------------------------------------
@pytest.mark.parametrize("m", [1, 2, 3])
def test_sp_squares_ideal_is_proper(m):
    P = sp_problem(m)
    L = build_extension(P)
    I1 = ideal_closure(L, squares_span(L))
    assert I1 == module_span(L, P.module_dim, start=2)
    assert I1.dim == 2 * m + 1
    assert module_span(L, P.module_dim) <= right_annihilator(L)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_sl_squares_ideal_is_module(m):
    P = sl_problem(m)
    L = build_extension(P)
    I1 = ideal_closure(L, squares_span(L))
    assert I1 == module_span(L, m + 2)
    Q, _ = quotient_algebra(L, I1)
    assert Q == diamond_complex(m)
