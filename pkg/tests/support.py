"""Shared builders and checks for the test modules."""
from __future__ import annotations

from symhom.generators import (
    complete_graph,
    counterexample_x,
    counterexample_y,
    cycle_graph,
    full_simplex,
    hollow_triangle,
    n1_graph,
    simplex_boundary,
    sym_a,
)
from symhom.chain_modules import free_linear
from symhom.structure_maps import generator_domain, identity_instances


def cell_word(system, letters, n, cell):
    """Apply ``letters`` to a cell, first letter first, starting in degree ``n``."""
    deg = n
    for tag in letters:
        cell = system.action(tag, deg, cell)
        deg = generator_domain(system.mode, tag, deg)
    return cell


def cell_identity_failures(system, top: int) -> list:
    """Identity instances (within ``top``) that fail on some cell."""
    bad = []
    for inst in identity_instances(system.mode, top):
        letters = inst.lhs.letters + inst.rhs.letters
        if not all(system.supports(t) for t in letters):
            continue
        cod = inst.lhs.cod
        if cod < system.lo or cod > system.max_deg:
            continue
        for c in system.cells(cod):
            if cell_word(system, inst.lhs.letters, cod, c) != cell_word(system, inst.rhs.letters, cod, c):
                bad.append((inst.identity, dict(inst.indices), c))
                break
    return bad


CORPUS_SIMPLICIAL = {
    "Sym_a(tetrahedron boundary)": lambda top: free_linear(sym_a(simplex_boundary(3), top)),
    "Sym_a(hollow triangle)": lambda top: free_linear(sym_a(hollow_triangle(), top)),
    "X": lambda top: free_linear(counterexample_x(top)),
}

CORPUS_CUBICAL = {
    "N1(K2)": lambda top: free_linear(n1_graph(complete_graph(2), top)),
    "N1(C5)": lambda top: free_linear(n1_graph(cycle_graph(5), top)),
    "Y_r": lambda top: free_linear(counterexample_y("r", top)),
}

CLASSICAL = {
    "hollow-triangle": hollow_triangle,
    "tetrahedron-boundary": lambda: simplex_boundary(3),
    "triangle": lambda: full_simplex(2),
}


def averaging_ops(X) -> dict:
    """The full averages that apply to ``X``, keyed for ``orbit_law_checks``."""
    from symhom import projections as pr

    if X.mode == "simplicial":
        return {"p": lambda n, x: pr.p_full(X, n, x)}
    ops = {}
    if "r" in X.flags:
        ops["q"] = lambda n, x: pr.q_full(X, n, x)
    if "t" in X.flags:
        ops["p_t"] = lambda n, x: pr.p_cubical_t(X, n, x)
    if {"r", "t"} <= X.flags:
        ops["u"] = lambda n, x: pr.u_hyper(X, n, x)
    return ops
