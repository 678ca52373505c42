from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symhom.errors import InvalidInput, ResourceCapError
from symhom.structure_maps import (
    CUBICAL,
    SIMPLICIAL,
    FiniteMap,
    OpWord,
    enumerate_hom,
    evaluate,
    generator_fn,
    generator_tags,
    hom_closure,
    identity_suite,
)

from . import oracles


# --- generators as functions ------------------------------------------------


def test_simplicial_first_face():
    d0 = generator_fn(SIMPLICIAL, ("d", 0), 1)
    assert (d0.dom, d0.cod, d0.table) == (0, 1, (1,))


def test_positive_connection_is_max():
    g = generator_fn(CUBICAL, ("g", 1, 0), 1)
    for v in product((0, 1), repeat=2):
        assert g(v) == (max(v),)
    g1 = generator_fn(CUBICAL, ("g", 1, 1), 1)
    for v in product((0, 1), repeat=2):
        assert g1(v) == (min(v),)


def test_reversal_flips():
    r = generator_fn(CUBICAL, ("r", 1), 1)
    assert r((0,)) == (1,) and r((1,)) == (0,)


def test_cubical_face_inserts_coordinate():
    d = generator_fn(CUBICAL, ("d", 2, 1), 3)
    for v in product((0, 1), repeat=2):
        assert d(v) == (v[0], 1, v[1])


def test_cubical_generators_against_bit_formulas():
    # independent tabulation with integer bit arithmetic (coordinate 1 = top bit)
    n = 3
    for i in range(1, n + 1):
        hi = n - i
        r = generator_fn(CUBICAL, ("r", i), n)
        assert r.table == tuple(x ^ (1 << hi) for x in range(1 << n))
    for i in range(1, n):
        t = generator_fn(CUBICAL, ("t", i), n)
        a, b = n - i, n - i - 1

        def swap(x):
            p, q = (x >> a) & 1, (x >> b) & 1
            return x & ~((1 << a) | (1 << b)) | (q << a) | (p << b)

        assert t.table == tuple(swap(x) for x in range(1 << n))


@pytest.mark.parametrize("mode,tag,n", [
    (SIMPLICIAL, ("d", 2), 1), (SIMPLICIAL, ("s", -1), 2), (SIMPLICIAL, ("t", 2), 2),
    (CUBICAL, ("d", 0, 0), 2), (CUBICAL, ("g", 3, 0), 2), (CUBICAL, ("r", 0), 1),
])
def test_out_of_range_generators(mode, tag, n):
    with pytest.raises(InvalidInput):
        generator_fn(mode, tag, n)


def test_malformed_tables_rejected():
    with pytest.raises(InvalidInput):
        FiniteMap(SIMPLICIAL, 1, 1, (0, 2))
    with pytest.raises(InvalidInput):
        FiniteMap(CUBICAL, 1, 1, (0,))


# --- words ------------------------------------------------------------------


def test_empty_word_is_identity():
    assert evaluate(OpWord(SIMPLICIAL, (), 3)).is_identity()
    assert evaluate(OpWord(CUBICAL, (), 2)).is_identity()


def test_transposition_squares_to_identity():
    assert evaluate(OpWord(SIMPLICIAL, (("t", 0), ("t", 0)), 2)).is_identity()


def test_face_face_relation():
    # d_1 d_0 = d_0 d_0 from [-1] to [1]
    assert evaluate(OpWord(SIMPLICIAL, (("d", 1), ("d", 0)), -1)) == evaluate(OpWord(SIMPLICIAL, (("d", 0), ("d", 0)), -1))


def test_word_degree_mismatch():
    with pytest.raises(InvalidInput):
        evaluate(OpWord(SIMPLICIAL, (("d", 3), ("d", 0)), 0))


def test_word_is_composition():
    w = OpWord(CUBICAL, (("g", 1, 0), ("d", 2, 1)), 1)
    f = generator_fn(CUBICAL, ("g", 1, 0), 1).compose(generator_fn(CUBICAL, ("d", 2, 1), 2))
    assert evaluate(w) == f


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_random_words_compose_associatively(data):
    n = data.draw(st.integers(1, 3))
    tags = []
    deg = n
    for _ in range(data.draw(st.integers(1, 4))):
        choices = [t for t in generator_tags(CUBICAL, deg) if 0 <= (deg - 1 if t[0] == "d" else deg + 1 if t[0] in "sg" else deg) <= 4]
        tag = data.draw(st.sampled_from(choices))
        tags.append((tag, deg))
        deg = deg - 1 if tag[0] == "d" else deg + 1 if tag[0] in "sg" else deg
    maps = [generator_fn(CUBICAL, t, c) for t, c in tags]
    left = maps[0]
    for m in maps[1:]:
        left = left.compose(m)
    right = maps[-1]
    for m in reversed(maps[:-1]):
        right = m.compose(right)
    assert left == right
    assert evaluate(OpWord(CUBICAL, tuple(t for t, _ in tags), deg)) == left


# --- identity suite -----------------------------------------------------------


def _find(records, name, **idx):
    return [r for r in records if r["identity"] == name and all(r["indices"].get(k) == v for k, v in idx.items())]


def test_simplicial_identity_suite_passes_to_degree_six():
    recs = identity_suite(SIMPLICIAL, 6)
    assert recs and all(r["passed"] for r in recs)
    assert {r["identity"] for r in recs} == {"I", "II", "III", "IV", "V", "VI", "VII", "VIII"}


def test_cubical_identity_suite_passes_to_degree_five():
    recs = identity_suite(CUBICAL, 5)
    assert recs and all(r["passed"] for r in recs)
    names = {"C-" + r for r in ("I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII",
                                "XIII", "XIV", "XV", "XVI", "XVII")}
    assert {r["identity"] for r in recs} == names


def test_degeneracy_after_face_is_identity():
    recs = _find(identity_suite(SIMPLICIAL, 2, ["III"]), "III", i=0, j=0)
    assert any(r["rhs"] == "id" and r["passed"] for r in recs)
    s0 = generator_fn(SIMPLICIAL, ("s", 0), 1)
    d0 = generator_fn(SIMPLICIAL, ("d", 0), 2)
    assert s0.compose(d0).is_identity()


def test_connection_after_face_example():
    # g_1^0 o d_1^1 = d_1^1 o s_1 as maps [1] -> [1]
    lhs = generator_fn(CUBICAL, ("g", 1, 0), 1).compose(generator_fn(CUBICAL, ("d", 1, 1), 2))
    rhs = generator_fn(CUBICAL, ("d", 1, 1), 1).compose(generator_fn(CUBICAL, ("s", 1), 0))
    assert lhs == rhs
    recs = identity_suite(CUBICAL, 3, ["C-V"])
    assert recs and all(r["passed"] for r in recs)


def test_reversal_involution():
    r = generator_fn(CUBICAL, ("r", 1), 1)
    assert r.compose(r).is_identity()
    assert all(rec["passed"] for rec in identity_suite(CUBICAL, 3, ["C-XVII"]))


def test_transposition_braid():
    recs = identity_suite(CUBICAL, 4, ["C-XII"])
    assert recs and all(r["passed"] for r in recs)


def test_suite_reports_failures_instead_of_raising(monkeypatch):
    import symhom.structure_maps as sm

    real = sm.generator_fn

    def broken(mode, tag, n):
        fm = real(mode, tag, n)
        if mode == SIMPLICIAL and tag == ("s", 0) and n >= 1:
            # send everything to 0
            return FiniteMap(mode, fm.dom, fm.cod, tuple(0 for _ in fm.table))
        return fm

    monkeypatch.setattr(sm, "generator_fn", broken)
    recs = sm.identity_suite(SIMPLICIAL, 3, ["III"])
    bad = [r for r in recs if not r["passed"]]
    assert bad and "witness" in bad[0]


def test_suite_degree_cap():
    with pytest.raises(ResourceCapError):
        identity_suite(CUBICAL, 9)


# --- hom-sets ---------------------------------------------------------------


def test_points_of_the_interval():
    homs = enumerate_hom({"r"}, 0, 1)
    assert len(homs) == 2
    assert homs == {generator_fn(CUBICAL, ("d", 1, 0), 1), generator_fn(CUBICAL, ("d", 1, 1), 1)}


def test_nondegenerate_maps_from_square():
    nd = [f for f in enumerate_hom({"r"}, 2, 1) if not f.is_degenerate()]
    assert len(nd) == 8


def test_nondegenerate_endomorphisms_of_interval():
    nd = {f for f in enumerate_hom({"r"}, 1, 1) if not f.is_degenerate()}
    assert nd == {FiniteMap.identity(CUBICAL, 1), generator_fn(CUBICAL, ("r", 1), 1)}


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_nondegenerate_maps_to_interval_match_read_once_formulas(k):
    nd = {f.table for f in enumerate_hom({"r"}, k, 1) if not f.is_degenerate()}
    expected = {tuple(b for b in t) for t in oracles.read_once_tables(k)}
    assert nd == expected


@pytest.mark.parametrize("flags,k,m", [((), 2, 2), ({"t"}, 3, 2), ({"r"}, 3, 1), ({"r", "t"}, 3, 1),
                                       ({"r", "t"}, 2, 2), ({"t"}, 2, 3)])
def test_normal_form_matches_closure(flags, k, m):
    assert enumerate_hom(flags, k, m, "closure") == enumerate_hom(flags, k, m, "normal_form")


@pytest.mark.parametrize("flags,m", [({"r"}, 1), ({"t"}, 2), ({"r", "t"}, 1)])
def test_hom_sets_closed_under_precomposition(flags, m):
    top = 3
    homs = hom_closure(flags, m, top)
    for k in range(top + 1):
        for tag in generator_tags(CUBICAL, k, flags):
            g = generator_fn(CUBICAL, tag, k)
            if g.dom > top:
                continue
            for f in homs[k]:
                assert f.compose(g) in homs[g.dom]


def test_hom_guard():
    with pytest.raises(ResourceCapError):
        enumerate_hom({"r"}, 7, 1)
