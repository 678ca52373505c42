from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symhom import projections as pr
from symhom.chain_modules import (
    boundary,
    complex_of,
    free_linear,
    generators_by_degree,
    quotient_complex,
    span_rank,
    subcomplex_generators,
)
from symhom.errors import ContractViolation, InvalidInput, ResourceCapError
from symhom.exact_linalg import ExactMatrix, rank_q
from symhom.generators import (
    FacetComplex,
    complete_graph,
    counterexample_x,
    counterexample_y,
    hollow_triangle,
    n1_graph,
    sym_a,
)
from symhom.symmetries import HyperoctElement, Permutation, ReversalMask, enumerate_group, sign

from .support import CORPUS_CUBICAL, CORPUS_SIMPLICIAL, averaging_ops

EDGE = FacetComplex.from_facets([(1, 2)])
HALF = Fraction(1, 2)

SIMPLICIAL_TOPS = {"Sym_a(tetrahedron boundary)": 2, "Sym_a(hollow triangle)": 3, "X": 4}
CUBICAL_TOPS = {"N1(K2)": 2, "N1(C5)": 2, "Y_r": 3}


def _x(top):
    return free_linear(counterexample_x(top))


# --- small values ------------------------------------------------------------


def test_bottom_projection_is_identity():
    X = free_linear(sym_a(EDGE, 3))
    for n in range(0, 3):
        for b in X.basis(n):
            assert pr.p_sym(X, 0, n, {b: 1}) == {b: 1}
    assert pr.p_full(X, -1, {(): 1}) == {(): 1}


def test_edge_antisymmetrizer():
    X = free_linear(sym_a(EDGE, 2))
    assert pr.p_full(X, 1, {(1, 2): 1}) == {(1, 2): HALF, (2, 1): -HALF}
    assert pr.p_full(X, 1, {(1, 1): 1}) == {}


def test_reversal_average_on_an_edge():
    X = free_linear(n1_graph(complete_graph(2), 2))
    assert pr.q_rev(X, 1, 1, {(0, 1): 1}) == {(0, 1): HALF, (1, 0): -HALF}
    assert pr.q_rev(X, 0, 1, {(0, 1): 1}) == {(0, 1): 1}


def test_homotopies_vanish_at_the_bottom():
    X = free_linear(sym_a(EDGE, 2))
    assert pr.h_sym(X, -1, {(): 1}) == {}
    Y = free_linear(n1_graph(complete_graph(2), 2))
    assert pr.h_rev(Y, 0, {(0,): 1}) == {}


# --- equivariance -------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_antisymmetrizer_is_sign_equivariant(data):
    X = free_linear(sym_a(hollow_triangle(), 3))
    n = data.draw(st.integers(1, 3))
    b = data.draw(st.sampled_from(X.basis(n)))
    t = data.draw(st.permutations(list(range(n + 1))).map(lambda p: Permutation(tuple(p))))
    tx = X.act_group(t, n, {b: 1})
    want = {k: sign(t) * v for k, v in pr.p_full(X, n, {b: 1}).items()}
    assert pr.p_full(X, n, tx) == want


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_reversal_average_is_sign_equivariant(data):
    X = free_linear(counterexample_y("r", 3))
    n = data.draw(st.integers(1, 3))
    b = data.draw(st.sampled_from(X.chain_basis(n)))
    a = ReversalMask(tuple(data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))))
    ax = X.act_group(a, n, {b: 1})
    want = {k: sign(a) * v for k, v in pr.q_full(X, n, {b: 1}).items()}
    assert pr.q_full(X, n, ax) == want


@pytest.mark.parametrize("n", [1, 2])
def test_hyperoctahedral_average_is_sign_equivariant(n):
    X = free_linear(counterexample_y("rt", 2))
    for b in X.chain_basis(n):
        u = pr.u_hyper(X, n, {b: 1})
        for h in enumerate_group(n, "Hyperoct"):
            assert pr.u_hyper(X, n, X.act_group(h, n, {b: 1})) == {k: sign(h) * v for k, v in u.items()}


def test_hyperoct_average_factors():
    X = free_linear(n1_graph(complete_graph(2), 2))
    for n in (1, 2):
        U = pr.operator_matrix(X, lambda k, x: pr.u_hyper(X, k, x), n)
        Q = pr.operator_matrix(X, lambda k, x: pr.q_full(X, k, x), n)
        T = pr.operator_matrix(X, lambda k, x: pr.p_cubical_t(X, k, x), n)
        assert Q @ T == U == T @ Q
        assert U @ U == U


# --- chain maps, idempotence and homotopies ---------------------------------------


@pytest.mark.parametrize("name", sorted(CORPUS_SIMPLICIAL))
def test_simplicial_projection_laws(name):
    top = SIMPLICIAL_TOPS[name]
    X = CORPUS_SIMPLICIAL[name](top + 1)
    P = lambda n, x: pr.p_full(X, n, x)  # noqa: E731
    H = lambda n, x: pr.h_sym(X, n, x)  # noqa: E731
    for n in range(-1, top + 1):
        assert pr.check_chain_map(X, P, n) is None
        assert pr.check_idempotent(X, P, n) is None
        assert pr.check_homotopy(X, P, H, n) is None


@pytest.mark.parametrize("name", sorted(CORPUS_CUBICAL))
def test_cubical_projection_laws(name):
    top = CUBICAL_TOPS[name]
    X = CORPUS_CUBICAL[name](top + 1)
    Q = lambda n, x: pr.q_full(X, n, x)  # noqa: E731
    H = lambda n, x: pr.h_rev(X, n, x)  # noqa: E731
    for n in range(0, top + 1):
        assert pr.check_chain_map(X, Q, n) is None
        assert pr.check_idempotent(X, Q, n) is None
        assert pr.check_homotopy(X, Q, H, n) is None


def test_unsigned_cubical_homotopy_has_the_opposite_sign():
    X = free_linear(counterexample_y("r", 3))

    def twice_minus_q(n, x):
        q = pr.q_full(X, n, x)
        out = {b: 2 * x.get(b, 0) - q.get(b, 0) for b in set(x) | set(q)}
        return {b: c for b, c in out.items() if c}

    raw = lambda n, x: pr.h_rev_raw(X, n, x)  # noqa: E731
    for n in range(1, 3):
        assert pr.check_homotopy(X, twice_minus_q, raw, n) is None
        assert pr.check_homotopy(X, lambda k, x: pr.q_full(X, k, x), raw, n) is not None


def test_corrupted_homotopy_is_caught():
    X = free_linear(sym_a(hollow_triangle(), 3))
    bad = lambda n, x: {b: -c for b, c in pr.h_sym(X, n, x).items()}  # noqa: E731
    assert pr.check_homotopy(X, lambda n, x: pr.p_full(X, n, x), bad, 1) is not None


def test_partial_averages_are_idempotent():
    X = _x(4)
    for k in range(0, 4):
        Pk = lambda n, x, k=k: pr.p_sym(X, k, n, x)  # noqa: E731
        assert pr.check_idempotent(X, Pk, 3) is None


@pytest.mark.parametrize("n", [1, 2, 3])
def test_mixed_face_formula_simplicial(n):
    X = free_linear(sym_a(hollow_triangle(), 3))
    for k in range(1, n + 1):
        for b in X.basis(n):
            lhs, rhs = pr.mixed_formula_sides(X, k, n, {b: 1})
            assert lhs == rhs


@pytest.mark.parametrize("n", [1, 2, 3])
def test_mixed_face_formula_cubical(n):
    X = free_linear(counterexample_y("r", 3))
    for k in range(1, n + 1):
        for b in X.chain_basis(n):
            lhs, rhs = pr.mixed_formula_sides(X, k, n, {b: 1})
            assert lhs == rhs


def test_mixed_formula_range():
    X = free_linear(sym_a(EDGE, 2))
    with pytest.raises(InvalidInput):
        pr.mixed_formula_sides(X, 0, 1, {(1, 2): 1})


# --- kernels and images ------------------------------------------------------------


@pytest.mark.parametrize("build,kind,op,top", [
    (lambda: free_linear(sym_a(hollow_triangle(), 3)), "sDeg", pr.p_full, 3),
    (lambda: _x(3), "sDeg", pr.p_full, 3),
    (lambda: free_linear(counterexample_y("r", 3)), "rCon", pr.q_full, 3),
])
def test_kernel_is_spanned_by_symmetry_generators(build, kind, op, top):
    X = build()
    P = lambda n, x: op(X, n, x)  # noqa: E731
    for n in range(max(X.lo, 1), top + 1):
        gens = subcomplex_generators(kind, X, n)
        for g in gens:
            assert P(n, g) == {}
        assert pr.kernel_dimension(X, P, n) == span_rank(gens, X.chain_basis(n))


def test_image_complex_splits_dimensions():
    X = free_linear(sym_a(hollow_triangle(), 3))
    C = complex_of(X, 2)
    P = lambda n, x: pr.p_full(X, n, x)  # noqa: E731
    Im = pr.image_complex(X, P, C)
    for n in C.degrees():
        assert Im.dim(n) + pr.kernel_dimension(X, P, n) == C.dim(n)
    Q = quotient_complex(C, generators_by_degree("sDeg", X, C))
    assert Im.homology() == Q.homology()


def test_image_of_identity_and_zero():
    X = free_linear(sym_a(EDGE, 2))
    C = complex_of(X, 1)
    same = pr.image_complex(X, lambda n, x: dict(x), C)
    assert [same.dim(n) for n in C.degrees()] == [C.dim(n) for n in C.degrees()]
    zero = pr.image_complex(X, lambda n, x: {}, C)
    assert all(zero.dim(n) == 0 for n in C.degrees())


def test_image_rejects_non_idempotent():
    X = free_linear(sym_a(EDGE, 2))
    C = complex_of(X, 1)
    with pytest.raises(ContractViolation, match="idempotent"):
        pr.image_complex(X, lambda n, x: {b: 2 * c for b, c in x.items()}, C)


def test_operator_matrix_of_antisymmetrizer_has_expected_rank():
    X = free_linear(sym_a(EDGE, 2))
    P = pr.operator_matrix(X, lambda n, x: pr.p_full(X, n, x), 1)
    assert isinstance(P, ExactMatrix)
    # only (1,2) and (2,1) survive, and they are proportional
    assert rank_q(P) == 1


# --- degenerate representatives --------------------------------------------------------


def test_cubical_homotopy_kills_degenerate_cubes():
    N = n1_graph(complete_graph(2), 3)
    X = free_linear(N)
    for n in (1, 2):
        for c in N.cells(n):
            if N.is_degenerate(n, c):
                assert pr.h_rev(X, n, {c: 1}) == {}


def test_cubical_transposition_average_matches_boundary():
    X = free_linear(n1_graph(complete_graph(2), 3))
    T = lambda n, x: pr.p_cubical_t(X, n, x)  # noqa: E731
    for n in (1, 2, 3):
        assert pr.check_chain_map(X, T, n) is None
        assert pr.check_idempotent(X, T, n) is None


def test_projection_lookup_follows_flags():
    X = free_linear(counterexample_y("r", 2))
    assert pr.projection_for(X)(1, {X.chain_basis(1)[0]: 1}) == pr.q_full(X, 1, {X.chain_basis(1)[0]: 1})
    Y = free_linear(n1_graph(complete_graph(2), 2))
    b = Y.chain_basis(2)[0]
    assert pr.projection_for(Y)(2, {b: 1}) == pr.u_hyper(Y, 2, {b: 1})
    assert HyperoctElement.identity(2).is_identity()


# --- guards ---------------------------------------------------------------------------------


def test_integer_systems_rejected():
    X = free_linear(sym_a(EDGE, 2), "Z")
    with pytest.raises(InvalidInput):
        pr.p_full(X, 1, {(1, 2): 1})
    Y = free_linear(counterexample_y("r", 2), "Z")
    with pytest.raises(InvalidInput):
        pr.q_full(Y, 1, {Y.chain_basis(1)[0]: 1})


def test_wrong_mode_rejected():
    with pytest.raises(InvalidInput):
        pr.q_full(free_linear(sym_a(EDGE, 2)), 1, {(1, 2): 1})
    with pytest.raises(InvalidInput):
        pr.p_full(free_linear(counterexample_y("r", 2)), 1, {})


def test_group_caps():
    X = free_linear(sym_a(EDGE, 5))
    with pytest.raises(ResourceCapError):
        pr.p_full(X, 4, {(1, 1, 2, 2, 2): 1}, cap=24)
    Y = free_linear(counterexample_y("r", 3))
    with pytest.raises(ResourceCapError):
        pr.q_full(Y, 3, {Y.chain_basis(3)[0]: 1}, cap=4)


def test_boundary_helper_consistency():
    X = free_linear(sym_a(EDGE, 2))
    D = pr.boundary_matrix(X, 1)
    for j, b in enumerate(X.basis(1)):
        col = {X.basis(0)[r]: v for r, v in D.column(j).items()}
        assert col == boundary(X, 1, {b: 1})


# --- orbit-wise law checks ------------------------------------------------------


@pytest.mark.parametrize("name,top", [("Sym_a(hollow triangle)", 3), ("X", 3), ("N1(K2)", 3), ("Y_r", 3)])
def test_orbit_checks_agree_with_matrix_checks(name, top):
    build = {**CORPUS_SIMPLICIAL, **CORPUS_CUBICAL}[name]
    X = build(top + 1)
    ops = averaging_ops(X)
    for n in range(X.lo, top + 1):
        rep = pr.orbit_law_checks(X, ops, n)
        for key, op in ops.items():
            assert rep[key] == {"chain_map": None, "idempotent": None, "equivariant": None}
            assert pr.check_chain_map(X, op, n) is None
            assert pr.check_idempotent(X, op, n) is None


def test_orbit_check_catches_a_scaled_average():
    X = free_linear(n1_graph(complete_graph(2), 3))
    rep = pr.orbit_law_checks(X, {"q": lambda n, x: {b: 2 * c for b, c in pr.q_full(X, n, x).items()}}, 2)
    assert rep["q"]["idempotent"] is not None
    assert rep["q"]["chain_map"] is None and rep["q"]["equivariant"] is None
    assert pr.check_idempotent(X, lambda n, x: {b: 2 * c for b, c in pr.q_full(X, n, x).items()}, 2)


def test_orbit_check_catches_a_missing_orbit():
    X = free_linear(n1_graph(complete_graph(2), 4))
    n = 3
    where, _ = pr.signed_orbits(X, "q", n)
    victim = next(r for r, (rep, _) in where.items()
                  if rep == r and pr.q_full(X, n - 1, boundary(X, n, {r: 1})))
    dead = {b for b, (rep, _) in where.items() if rep == victim}

    def op(k, x):
        out = pr.q_full(X, k, x)
        return {b: c for b, c in out.items() if k != n or b not in dead}

    rep = pr.orbit_law_checks(X, {"q": op}, n)
    assert rep["q"]["chain_map"] is not None
    assert rep["q"]["idempotent"] is None and rep["q"]["equivariant"] is None
    assert pr.check_chain_map(X, op, n) is not None


def test_orbit_check_catches_a_broken_sign():
    X = free_linear(sym_a(hollow_triangle(), 3))
    n = 1
    where, last = pr.signed_orbits(X, "p", n)
    r, y = next((r, y) for r, y in last.items() if pr.p_full(X, n, {r: 1}))

    def op(k, x):
        out = pr.p_full(X, k, x)
        if k == n and y in x:
            out = {b: -c for b, c in out.items()}
        return out

    rep = pr.orbit_law_checks(X, {"p": op}, n)
    assert rep["p"]["equivariant"] == (repr(y), repr(r))


def test_orbits_partition_the_basis():
    X = free_linear(n1_graph(complete_graph(2), 3))
    where, _ = pr.signed_orbits(X, "u", 3)
    assert set(where) == set(X.chain_basis(3))
    for b, (rep, s) in where.items():
        assert pr.u_hyper(X, 3, {b: 1}) == {y: s * c for y, c in pr.u_hyper(X, 3, {rep: 1}).items()}
