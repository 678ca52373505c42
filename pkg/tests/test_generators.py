from __future__ import annotations

import re

import pytest

from symhom.chain_modules import boundary, free_linear
from symhom.errors import InvalidInput, ResourceCapError
from symhom.generators import (
    FacetComplex,
    SimpleGraph,
    complete_graph,
    counterexample_x,
    counterexample_y,
    cycle_graph,
    hollow_triangle,
    n1_graph,
    or_a,
    simplex_boundary,
    sym_a,
    witness_cycle_a,
)
from symhom.structure_maps import CUBICAL, SIMPLICIAL, FiniteMap, generator_fn

from . import oracles
from .support import cell_identity_failures


EDGE = FacetComplex.from_facets([(1, 2)])
POINT = FacetComplex.from_facets([(7,)])


# --- input parsing -----------------------------------------------------------


def test_facet_json_roundtrip():
    K = FacetComplex.from_json('{"vertices": [1, 2, 3], "facets": [[1, 2], [2, 3], [1, 3]]}')
    assert K == hollow_triangle()
    assert K.contains([2]) and not K.contains([1, 2, 3])


def test_redundant_facets_are_dropped():
    K = FacetComplex.from_facets([(1, 2, 3), (1, 2), (4,)])
    assert K.facets == (frozenset({1, 2, 3}), frozenset({4}))


@pytest.mark.parametrize("text,fragment", [
    ('{"vertices": [1, 2], "facets": [[1, 2]', "line 1"),
    ('{"vertices": [1, 2]}', "'facets'"),
    ('{"vertices": [1, 2], "facets": [[1, 5]]}', "facets[0]"),
    ('{"vertices": [1, 1], "facets": [[1]]}', "duplicate"),
    ('{"vertices": [1, "a"], "facets": [[1]]}', "all be integers or all strings"),
    ('[1, 2]', "JSON object"),
])
def test_facet_json_errors(text, fragment):
    with pytest.raises(InvalidInput, match=re.escape(fragment)):
        FacetComplex.from_json(text)


@pytest.mark.parametrize("text,fragment", [
    ('{"vertices": ["a", "b"], "edges": [["a", "a"]]}', "loop"),
    ('{"vertices": ["a", "b"], "edges": [["a"]]}', "pair"),
    ('{"vertices": ["a", "b"], "edges": [["a", "c"]]}', "unknown vertex"),
    ('{"vertices": ["a"]}', "'edges'"),
])
def test_graph_json_errors(text, fragment):
    with pytest.raises(InvalidInput, match=fragment):
        SimpleGraph.from_json(text)


# --- symmetric and ordered tuples ------------------------------------------------


def test_single_vertex_has_one_cell_per_degree():
    S = sym_a(POINT, 4)
    assert [len(S.cells(n)) for n in range(0, 5)] == [1] * 5
    O, _ = or_a(POINT, 4)
    assert [len(O.cells(n)) for n in range(0, 5)] == [1] * 5


def test_edge_cells_in_degree_one():
    assert sym_a(EDGE, 2).cells(1) == [(1, 1), (1, 2), (2, 1), (2, 2)]
    assert or_a(EDGE, 2)[0].cells(1) == [(1, 1), (1, 2), (2, 2)]


def test_augmentation_cell():
    assert sym_a(EDGE, 1).cells(-1) == [()]


@pytest.mark.parametrize("facets", [[(1, 2)], [(1, 2), (2, 3), (1, 3)], [(0, 1, 2)], [(0, 1, 2), (2, 3)]])
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_tuple_counts_match_enumeration(facets, n):
    K = FacetComplex.from_facets(facets)
    assert len(sym_a(K, 3).cells(n)) == oracles.tuples_with_face_support(facets, n, increasing=False)
    assert len(or_a(K, 3)[0].cells(n)) == oracles.tuples_with_face_support(facets, n, increasing=True)


def test_symmetric_actions():
    S = sym_a(EDGE, 3)
    assert S.action(("d", 0), 2, (1, 2, 2)) == (2, 2)
    assert S.action(("s", 1), 1, (1, 2)) == (1, 2, 2)
    assert S.action(("t", 0), 2, (1, 1, 2)) == (1, 1, 2)
    assert S.action(("t", 1), 2, (1, 1, 2)) == (1, 2, 1)


def test_ordered_inclusion_commutes_with_faces_and_degeneracies():
    K = simplex_boundary(2)
    O, inc = or_a(K, 3)
    S = sym_a(K, 3)
    for n in range(0, 4):
        for c in O.cells(n):
            assert inc(c) in S.index(n)
            for i in range(n + 1):
                assert inc(O.action(("d", i), n, c)) == S.action(("d", i), n, inc(c))
                if n < 3:
                    assert inc(O.action(("s", i), n, c)) == S.action(("s", i), n, inc(c))


def test_order_must_be_complete():
    with pytest.raises(InvalidInput):
        or_a(EDGE, 2, order=[1])


def test_cell_cap():
    with pytest.raises(ResourceCapError, match="degree"):
        sym_a(simplex_boundary(3), 6, cell_cap=100).cells(5)


@pytest.mark.parametrize("build", [lambda: sym_a(hollow_triangle(), 4), lambda: or_a(simplex_boundary(3), 4)[0]])
def test_simplicial_systems_satisfy_identities(build):
    assert cell_identity_failures(build(), 4) == []


# --- graph cube maps ----------------------------------------------------------------


def test_graph_points_are_vertices():
    G = cycle_graph(5)
    assert n1_graph(G, 1).cells(0) == [(v,) for v in range(5)]


def test_k2_counts():
    N = n1_graph(complete_graph(2), 3)
    assert len(N.cells(1)) == 4
    assert len(N.cells(2)) == 16
    assert len(N.cells(2)) == oracles.cube_graph_homs([(0, 1)], [0, 1], 2)


@pytest.mark.parametrize("graph,edges,verts", [
    (cycle_graph(5), [(i, (i + 1) % 5) for i in range(5)], range(5)),
    (complete_graph(3), [(0, 1), (1, 2), (0, 2)], range(3)),
    (SimpleGraph.from_edges([(0, 1), (1, 2), (2, 3)]), [(0, 1), (1, 2), (2, 3)], range(4)),
])
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_graph_counts_match_brute_force(graph, edges, verts, n):
    assert len(n1_graph(graph, 3).cells(n)) == oracles.cube_graph_homs(edges, verts, n)


@pytest.mark.parametrize("graph", [cycle_graph(5), complete_graph(3), cycle_graph(8),
                                   SimpleGraph.from_edges([(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)])])
def test_visit_order_does_not_change_cells(graph):
    a = n1_graph(graph, 3, order="gray")
    b = n1_graph(graph, 3, order="lex")
    for n in range(4):
        assert a.cells(n) == b.cells(n)


def test_graph_system_satisfies_identities():
    assert cell_identity_failures(n1_graph(cycle_graph(5), 3), 3) == []
    assert cell_identity_failures(n1_graph(complete_graph(2), 3), 3) == []


def test_graph_connection_action():
    N = n1_graph(complete_graph(2), 2)
    edge = (0, 1)  # the 1-cube 0 -> 1
    sq = N.action(("g", 1, 0), 1, edge)
    # vertex (v1, v2) goes to edge(max(v1, v2))
    assert sq == (0, 1, 1, 1)


# --- the flip quotient ----------------------------------------------------------------


def test_flip_quotient_sizes():
    X = counterexample_x(5)
    assert [len(X.cells(n)) for n in range(0, 4)] == [1, 2, 4, 8]
    assert [len(X.cells(n)) for n in range(0, 6)] == [oracles.flip_classes(n) for n in range(0, 6)]
    assert X.cells(-1) == []


def test_flip_quotient_actions():
    X = counterexample_x(4)
    assert X.action(("t", 2), 3, (0, 1, 1, 0)) == (0, 1, 0, 1)
    assert X.action(("d", 0), 1, (0, 1)) == (0,)
    assert all(c[0] == 0 for n in range(5) for c in X.cells(n))


def test_flip_quotient_free_module_rank():
    X = free_linear(counterexample_x(3))
    assert len(X.basis(2)) == 4
    assert len(X.basis(-1)) == 0


def test_flip_quotient_satisfies_identities():
    assert cell_identity_failures(counterexample_x(5), 5) == []


def test_witness_cycle():
    X = free_linear(counterexample_x(4), "Z")
    a = witness_cycle_a()
    assert a.degree == 3
    assert boundary(X, 3, a.coeffs) == {}
    # a = b - sgn(t_2) t_2 b with b = [0110]
    b = (0, 1, 1, 0)
    assert {b: 1, X.cells_of.action(("t", 2), 3, b): 1} == a.coeffs


# --- Yoneda quotients ----------------------------------------------------------------


def _cls(Y, fmap: FiniteMap):
    return Y.canon(fmap.table)


def test_yoneda_r_low_degrees():
    Y = counterexample_y("r", 4)
    assert Y.nondegenerate(0) == Y.cells(0)
    assert len(Y.cells(0)) == 1
    d0 = generator_fn(CUBICAL, ("d", 1, 0), 1)
    d1 = generator_fn(CUBICAL, ("d", 1, 1), 1)
    assert _cls(Y, d0) == _cls(Y, d1)


def test_yoneda_r_degree_two_classes():
    Y = counterexample_y("r", 3)
    g = generator_fn(CUBICAL, ("g", 1, 0), 1)
    r1 = generator_fn(CUBICAL, ("r", 1), 2)
    r2 = generator_fn(CUBICAL, ("r", 2), 2)
    named = {_cls(Y, g), _cls(Y, g.compose(r1)), _cls(Y, g.compose(r2)), _cls(Y, g.compose(r1).compose(r2))}
    assert len(named) == 4
    assert set(Y.nondegenerate(2)) == named


def test_yoneda_r_nondegenerate_counts():
    Y = counterexample_y("r", 4)
    assert [len(Y.nondegenerate(n)) for n in range(5)] == [1, 1, 4, 24, 176]
    for k in range(1, 5):
        assert len(Y.nondegenerate(k)) == oracles.classes_under_negation(oracles.read_once_tables(k))


@pytest.mark.parametrize("flags", ["t", "r", "rt"])
def test_yoneda_action_is_well_defined(flags):
    Y = counterexample_y(flags, 4)
    for n in range(4):
        assert Y.action_is_well_defined(n)


@pytest.mark.parametrize("flags", ["t", "r", "rt"])
def test_yoneda_systems_satisfy_identities(flags):
    assert cell_identity_failures(counterexample_y(flags, 3), 3) == []


def test_yoneda_least_table_representative():
    Y = counterexample_y("r", 3)
    for n in range(4):
        for c in Y.cells(n):
            a, b = Y.representatives(c)
            assert c == min(a, b)


def test_yoneda_guards():
    with pytest.raises(ResourceCapError):
        counterexample_y("r", 6)
    with pytest.raises(InvalidInput):
        counterexample_y("", 2)
    assert counterexample_y("r", 2).mode == CUBICAL
    assert counterexample_x(2).mode == SIMPLICIAL
