"""Concrete cell systems: complexes from facet lists, graph cube complexes,
and the flip-quotient and Yoneda-quotient examples over the integers."""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from math import comb
from operator import itemgetter
from typing import Any, Iterable, Sequence

from .chain_modules import Chain, DEFAULT_CELL_CAP, PrecompositionSystem
from .errors import InvalidInput, ResourceCapError
from .structure_maps import CUBICAL, SIMPLICIAL, FiniteMap, HOM_DEGREE_CAP, generator_fn, hom_closure


# ---------------------------------------------------------------------------
# input data


def _load(source) -> Any:
    if isinstance(source, (dict, list)):
        return source
    try:
        return json.loads(source)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _vertex_list(doc: dict, kind: str) -> list:
    if not isinstance(doc, dict):
        raise InvalidInput(f"{kind}: expected a JSON object")
    verts = doc.get("vertices")
    if not isinstance(verts, list):
        raise InvalidInput(f"{kind}: field 'vertices' must be a list")
    for k, v in enumerate(verts):
        if not isinstance(v, (int, str)) or isinstance(v, bool):
            raise InvalidInput(f"{kind}: vertices[{k}] must be an integer or string")
    if len(set(verts)) != len(verts):
        raise InvalidInput(f"{kind}: duplicate vertex labels")
    if len({type(v) for v in verts}) > 1:
        raise InvalidInput(f"{kind}: vertex labels must all be integers or all strings")
    return sorted(verts)


@dataclass(frozen=True)
class FacetComplex:
    """A simplicial complex given by its maximal faces."""

    vertices: tuple
    facets: tuple[frozenset, ...]

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable], vertices: Iterable | None = None) -> "FacetComplex":
        fs = [frozenset(f) for f in facets]
        verts = set().union(*fs) if vertices is None else set(vertices)
        if not set().union(*fs) <= verts:
            raise InvalidInput("facet uses an undeclared vertex")
        # drop facets contained in others; isolated vertices become facets
        fs += [frozenset([v]) for v in verts]
        maximal = sorted({f for f in fs if f and not any(f < g for g in fs)}, key=lambda f: sorted(f))
        return cls(tuple(sorted(verts)), tuple(maximal))

    @classmethod
    def from_json(cls, source) -> "FacetComplex":
        doc = _load(source)
        verts = _vertex_list(doc, "facet complex")
        facets = doc.get("facets")
        if not isinstance(facets, list):
            raise InvalidInput("facet complex: field 'facets' must be a list")
        vs = set(verts)
        for k, f in enumerate(facets):
            if not isinstance(f, list) or not f:
                raise InvalidInput(f"facet complex: facets[{k}] must be a nonempty list")
            for v in f:
                if v not in vs:
                    raise InvalidInput(f"facet complex: facets[{k}] uses unknown vertex {v!r}")
        return cls.from_facets(facets, verts)

    def contains(self, face: Iterable) -> bool:
        s = frozenset(face)
        return any(s <= f for f in self.facets)

    def simplices(self, n: int) -> list[tuple]:
        """Nondegenerate ``n``-simplices as sorted vertex tuples."""
        from itertools import combinations

        out = set()
        for f in self.facets:
            out.update(combinations(sorted(f), n + 1))
        return sorted(out)

    @property
    def dimension(self) -> int:
        return max(len(f) for f in self.facets) - 1 if self.facets else -1


@dataclass(frozen=True)
class SimpleGraph:
    vertices: tuple
    edges: frozenset

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence], vertices: Iterable | None = None) -> "SimpleGraph":
        es = set()
        for e in edges:
            u, v = e
            if u == v:
                raise InvalidInput(f"loop at vertex {u!r}")
            es.add(frozenset((u, v)))
        verts = set(vertices) if vertices is not None else {x for e in es for x in e}
        if not {x for e in es for x in e} <= verts:
            raise InvalidInput("edge uses an undeclared vertex")
        return cls(tuple(sorted(verts)), frozenset(es))

    @classmethod
    def from_json(cls, source) -> "SimpleGraph":
        doc = _load(source)
        verts = _vertex_list(doc, "graph")
        edges = doc.get("edges")
        if not isinstance(edges, list):
            raise InvalidInput("graph: field 'edges' must be a list")
        vs = set(verts)
        for k, e in enumerate(edges):
            if not isinstance(e, list) or len(e) != 2:
                raise InvalidInput(f"graph: edges[{k}] must be a pair")
            if e[0] == e[1]:
                raise InvalidInput(f"graph: edges[{k}] is a loop")
            for v in e:
                if v not in vs:
                    raise InvalidInput(f"graph: edges[{k}] uses unknown vertex {v!r}")
        return cls.from_edges(edges, verts)

    def close(self, u, v) -> bool:
        """Equal or adjacent."""
        return u == v or frozenset((u, v)) in self.edges


def hollow_triangle() -> FacetComplex:
    return FacetComplex.from_facets([(1, 2), (2, 3), (1, 3)])


def simplex_boundary(dim: int) -> FacetComplex:
    """Boundary of the ``dim``-simplex on vertices 0..dim."""
    from itertools import combinations

    return FacetComplex.from_facets(combinations(range(dim + 1), dim))


def full_simplex(dim: int) -> FacetComplex:
    return FacetComplex.from_facets([tuple(range(dim + 1))])


def complete_graph(k: int) -> SimpleGraph:
    return SimpleGraph.from_edges([(i, j) for i in range(k) for j in range(i + 1, k)], range(k))


def cycle_graph(k: int) -> SimpleGraph:
    return SimpleGraph.from_edges([(i, (i + 1) % k) for i in range(k)], range(k))


# ---------------------------------------------------------------------------
# simplicial systems from complexes


class SymmetricComplexSystem(PrecompositionSystem):
    """All vertex tuples whose support is a face."""

    def __init__(self, K: FacetComplex, max_deg: int, cell_cap: int = DEFAULT_CELL_CAP):
        super().__init__(SIMPLICIAL, ("t",), max_deg, "Sym_a", cell_cap)
        self.complex = K

    def _enumerate(self, n: int):
        if n == -1:
            return [()]
        est = sum(len(f) ** (n + 1) for f in self.complex.facets)
        if est > 4 * self.cell_cap:
            raise ResourceCapError(f"Sym_a: about {est} cells in degree {n} exceeds cap {self.cell_cap}")
        out = set()
        for f in self.complex.facets:
            out.update(product(sorted(f), repeat=n + 1))
        return out


class OrderedComplexSystem(PrecompositionSystem):
    """Weakly increasing vertex tuples whose support is a face."""

    def __init__(self, K: FacetComplex, order: Sequence | None, max_deg: int, cell_cap: int = DEFAULT_CELL_CAP):
        super().__init__(SIMPLICIAL, (), max_deg, "Or_a", cell_cap)
        self.complex = K
        self.order = tuple(order) if order is not None else K.vertices
        if sorted(self.order) != sorted(K.vertices):
            raise InvalidInput("order must list every vertex exactly once")
        self.rank = {v: k for k, v in enumerate(self.order)}

    def _enumerate(self, n: int):
        if n == -1:
            return [()]
        est = sum(comb(len(f) + n, n + 1) for f in self.complex.facets)
        if est > 4 * self.cell_cap:
            raise ResourceCapError(f"Or_a: about {est} cells in degree {n} exceeds cap {self.cell_cap}")
        from itertools import combinations_with_replacement

        out = set()
        for f in self.complex.facets:
            out.update(combinations_with_replacement(sorted(f, key=self.rank.__getitem__), n + 1))
        return out


def sym_a(K: FacetComplex, max_deg: int, cell_cap: int = DEFAULT_CELL_CAP) -> SymmetricComplexSystem:
    return SymmetricComplexSystem(K, max_deg, cell_cap)


def or_a(K: FacetComplex, max_deg: int, order: Sequence | None = None,
         cell_cap: int = DEFAULT_CELL_CAP) -> tuple[OrderedComplexSystem, callable]:
    """The ordered system and its inclusion into the symmetric one (identity on tuples)."""
    system = OrderedComplexSystem(K, order, max_deg, cell_cap)
    return system, lambda cell: tuple(cell)


# ---------------------------------------------------------------------------
# graph cube complexes


def _visit_order(n: int, order: str) -> list[int]:
    if order == "gray":
        return [k ^ (k >> 1) for k in range(1 << n)]
    if order == "lex":
        return list(range(1 << n))
    raise InvalidInput(f"unknown visit order {order!r}")


class GraphCubeSystem(PrecompositionSystem):
    """Graph maps from the ``n``-cube graph; cells are tuples indexed by encoded vertices."""

    def __init__(self, G: SimpleGraph, max_deg: int, order: str = "gray", cell_cap: int = DEFAULT_CELL_CAP):
        super().__init__(CUBICAL, ("t", "r"), max_deg, "N1", cell_cap)
        self.graph = G
        self.order = order
        self._near = {u: [v for v in G.vertices if G.close(u, v)] for u in G.vertices}

    def _enumerate(self, n: int):
        verts = _visit_order(n, self.order)
        size = 1 << n
        # neighbours of each vertex that are visited earlier
        pos = {x: k for k, x in enumerate(verts)}
        earlier = [[x ^ (1 << b) for b in range(n) if pos[x ^ (1 << b)] < pos[x]] for x in verts]
        G = self.graph
        assign = [None] * size
        out = []
        cap = self.cell_cap

        def extend(k):
            if k == size:
                out.append(tuple(assign))
                if len(out) > cap:
                    raise ResourceCapError(f"N1: more than {cap} cells in degree {n}")
                return
            x = verts[k]
            prev = earlier[k]
            cands = self._near[assign[prev[0]]] if prev else G.vertices
            for v in cands:
                if all(G.close(assign[y], v) for y in prev[1:]):
                    assign[x] = v
                    extend(k + 1)
            assign[x] = None

        extend(0)
        return out

    def is_degenerate(self, n: int, cell) -> bool:
        # c = s_i d_i c exactly when c ignores coordinate i
        for flip in _coordinate_flips(n):
            if flip(cell) == cell:
                return True
        return False


_FLIPS: dict[int, list] = {}


def _coordinate_flips(n: int) -> list:
    got = _FLIPS.get(n)
    if got is None:
        got = []
        for i in range(1, n + 1):
            bit = 1 << (n - i)
            table = [x ^ bit for x in range(1 << n)]
            got.append(itemgetter(*table))
        _FLIPS[n] = got
    return got


def n1_graph(G: SimpleGraph, max_deg: int, order: str = "gray", cell_cap: int = DEFAULT_CELL_CAP) -> GraphCubeSystem:
    return GraphCubeSystem(G, max_deg, order, cell_cap)


# ---------------------------------------------------------------------------
# the flip quotient


class FlipQuotientSystem(PrecompositionSystem):
    """Binary tuples of length ``n + 1`` modulo complementing every entry.

    Nothing lives in degree -1, so this is not augmented: the face out of
    degree 0 is never used.
    """

    empty_augmentation = True

    def __init__(self, max_deg: int, cell_cap: int = DEFAULT_CELL_CAP):
        super().__init__(SIMPLICIAL, ("t",), max_deg, "X", cell_cap)

    def canon(self, cell):
        if cell and cell[0] == 1:
            return tuple(1 - e for e in cell)
        return cell

    def _enumerate(self, n: int):
        if n < 0:
            return []
        return [(0,) + rest for rest in product((0, 1), repeat=n)]


def counterexample_x(max_deg: int) -> FlipQuotientSystem:
    return FlipQuotientSystem(max_deg)


def witness_cycle_a() -> Chain:
    """The degree-3 cycle ``[0110] + [0101]``, equal to ``[0110] + t_2 [0110]``."""
    return Chain(3, {(0, 1, 1, 0): 1, (0, 1, 0, 1): 1})


# ---------------------------------------------------------------------------
# Yoneda quotients


Y_TARGETS = {frozenset({"t"}): 2, frozenset({"r"}): 1, frozenset({"r", "t"}): 1}


def _parse_flags(flags) -> frozenset:
    if isinstance(flags, str):
        flags = {"t": ("t",), "r": ("r",), "rt": ("r", "t"), "tr": ("r", "t"), "r,t": ("r", "t")}.get(flags, (flags,))
    f = frozenset(flags)
    if f not in Y_TARGETS:
        raise InvalidInput(f"Yoneda quotients exist for flags t, r or rt, got {sorted(f)}")
    return f


class YonedaQuotientSystem(PrecompositionSystem):
    """Maps ``[1]^k -> [1]^m`` in the cube category with symmetries ``flags``,
    identified with their postcomposite by a fixed involution (``t_1`` on
    ``[1]^2`` for ``{t}``, ``r_1`` on ``[1]^1`` otherwise).

    Cells are truth tables; the class representative is the least table.
    """

    def __init__(self, flags, max_deg: int, cell_cap: int = DEFAULT_CELL_CAP):
        f = _parse_flags(flags)
        if max_deg > min(5, HOM_DEGREE_CAP):
            raise ResourceCapError("Yoneda quotients are enumerated up to degree 5")
        name = "Y_" + ",".join(sorted(f))
        super().__init__(CUBICAL, f, max_deg, name, cell_cap)
        self.target = Y_TARGETS[f]
        tag = ("t", 1) if f == frozenset({"t"}) else ("r", 1)
        self.involution = generator_fn(CUBICAL, tag, self.target)
        self._homs: dict[int, set] | None = None

    def canon(self, cell):
        inv = self.involution.table
        other = tuple(inv[y] for y in cell)
        return min(cell, other)

    def homs(self) -> dict[int, set[FiniteMap]]:
        if self._homs is None:
            self._homs = hom_closure(self.flags, self.target, self.max_deg)
        return self._homs

    def _enumerate(self, n: int):
        return {self.canon(f.table) for f in self.homs()[n]}

    def representatives(self, cell) -> tuple[tuple, tuple]:
        inv = self.involution.table
        return cell, tuple(inv[y] for y in cell)

    def action_is_well_defined(self, n: int) -> bool:
        """Precomposing either representative with any generator gives the same class."""
        from .structure_maps import generator_tags

        for tag in generator_tags(CUBICAL, n, self.flags):
            g = generator_fn(CUBICAL, tag, n)
            if g.dom > self.max_deg:
                continue
            for c in self.cells(n):
                a, b = self.representatives(c)
                if self.act(g, a) != self.act(g, b):
                    return False
        return True


def counterexample_y(flags, max_deg: int, cell_cap: int = DEFAULT_CELL_CAP) -> YonedaQuotientSystem:
    return YonedaQuotientSystem(flags, max_deg, cell_cap)
