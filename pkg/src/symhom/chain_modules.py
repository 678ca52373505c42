"""Presheaf interfaces, alternating face-map complexes, sub-complexes and
quotients.

Conventions
-----------
* A presheaf is contravariant: for a morphism ``f`` of the index category,
  ``X(f)`` maps cells of degree ``cod(f)`` to cells of degree ``dom(f)``.
  A word ``f_1 o f_2 o ... o f_k`` therefore acts by applying ``X(f_1)``
  first.
* A chain is a dict ``label -> coefficient`` with no zero entries.
* Cubical chain groups are quotients by degenerate cubes; for cell systems
  they have the nondegenerate cells as basis and degenerate images are
  dropped.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from operator import itemgetter
from typing import Callable, Iterable, Mapping, Sequence

from .errors import ContractViolation, InvalidInput, ResourceCapError
from .exact_linalg import (
    Echelon,
    ExactMatrix,
    HomologyGroup,
    check_ring,
    homology_of_pair,
    norm_scalar,
    vec_add,
)
from .structure_maps import (
    CUBICAL,
    SIMPLICIAL,
    FiniteMap,
    check_generator,
    check_mode,
    generator_domain,
    generator_fn,
)
from .symmetries import HyperoctElement, Permutation, ReversalMask

DEFAULT_CELL_CAP = 200_000


# ---------------------------------------------------------------------------
# chains


def chain_add(a: Mapping, b: Mapping, scale=1) -> dict:
    out = dict(a)
    vec_add(out, b, scale)
    return out


def chain_scale(a: Mapping, s) -> dict:
    s = norm_scalar(s)
    if not s:
        return {}
    return {k: norm_scalar(v * s) for k, v in a.items()}


def chain_clean(a: Mapping) -> dict:
    return {k: norm_scalar(v) for k, v in a.items() if v}


@dataclass(frozen=True)
class Chain:
    """A finite formal sum of basis elements in a fixed degree."""

    degree: int
    coeffs: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", chain_clean(self.coeffs))

    def __add__(self, other: "Chain") -> "Chain":
        if self.degree != other.degree:
            raise InvalidInput("adding chains of different degree")
        return Chain(self.degree, chain_add(self.coeffs, other.coeffs))

    def __neg__(self) -> "Chain":
        return Chain(self.degree, chain_scale(self.coeffs, -1))

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def scaled(self, s) -> "Chain":
        return Chain(self.degree, chain_scale(self.coeffs, s))

    def is_zero(self) -> bool:
        return not self.coeffs


# ---------------------------------------------------------------------------
# cell-level systems


def _flag_ok(mode: str, flags: frozenset, tag) -> bool:
    kind = tag[0]
    if kind == "t":
        return "t" in flags
    if kind == "r":
        return mode == CUBICAL and "r" in flags
    return True


class CellSystem:
    """A presheaf of finite sets on the (symmetric) simplex or cube category.

    Subclasses implement :meth:`_enumerate` and :meth:`act`.
    """

    def __init__(self, mode: str, flags: Iterable[str] = (), max_deg: int = 3,
                 name: str = "", cell_cap: int = DEFAULT_CELL_CAP):
        self.mode = check_mode(mode)
        self.flags = frozenset(flags)
        if self.mode == SIMPLICIAL and not self.flags <= {"t"}:
            raise InvalidInput("simplicial systems only carry transpositions")
        if not self.flags <= {"t", "r"}:
            raise InvalidInput(f"unknown symmetry flags {sorted(self.flags)}")
        self.max_deg = max_deg
        self.name = name or type(self).__name__
        self.cell_cap = cell_cap
        self._cells: dict[int, list] = {}
        self._index: dict[int, dict] = {}
        self._nondeg: dict[int, list] = {}

    @property
    def lo(self) -> int:
        return -1 if self.mode == SIMPLICIAL else 0

    # to implement ------------------------------------------------------------

    def _enumerate(self, n: int) -> Iterable:
        raise NotImplementedError

    def act(self, fmap: FiniteMap, cell):
        """``X(fmap)`` applied to ``cell`` (a cell of degree ``fmap.cod``)."""
        raise NotImplementedError

    # derived -------------------------------------------------------------------

    def cells(self, n: int) -> list:
        if n < self.lo:
            return []
        if n > self.max_deg:
            raise ResourceCapError(f"{self.name}: degree {n} above the built maximum {self.max_deg}")
        got = self._cells.get(n)
        if got is None:
            got = sorted(set(self._enumerate(n)))
            if len(got) > self.cell_cap:
                raise ResourceCapError(f"{self.name}: {len(got)} cells in degree {n} exceeds cap {self.cell_cap}")
            self._cells[n] = got
        return got

    def index(self, n: int) -> dict:
        idx = self._index.get(n)
        if idx is None:
            idx = {c: k for k, c in enumerate(self.cells(n))}
            self._index[n] = idx
        return idx

    def supports(self, tag) -> bool:
        return _flag_ok(self.mode, self.flags, tag)

    def action(self, tag, n: int, cell):
        """Apply the generator ``tag`` (codomain degree ``n``) to a degree-``n`` cell."""
        if not self.supports(tag):
            raise InvalidInput(f"{self.name} has no action of {tag!r}")
        return self.act(generator_fn(self.mode, tag, n), cell)

    def is_degenerate(self, n: int, cell) -> bool:
        """Is ``cell`` in the image of some degeneracy?

        A degenerate cell ``c = s_i y`` satisfies ``y = d_i c``, so testing
        ``c == s_i d_i c`` for every ``i`` decides membership.
        """
        if self.mode == SIMPLICIAL:
            for i in range(n):
                y = self.action(("d", i), n, cell)
                if self.action(("s", i), n - 1, y) == cell:
                    return True
            return False
        for i in range(1, n + 1):
            y = self.action(("d", i, 0), n, cell)
            if self.action(("s", i), n - 1, y) == cell:
                return True
        return False

    def nondegenerate(self, n: int) -> list:
        got = self._nondeg.get(n)
        if got is None:
            got = [c for c in self.cells(n) if not self.is_degenerate(n, c)]
            self._nondeg[n] = got
        return got


class PrecompositionSystem(CellSystem):
    """Cells are functions out of the index objects; ``X(f)(x) = canon(x o f)``.

    Simplicial cells are tuples ``(x(0), ..., x(n))``.  Cubical cells are
    tuples indexed by encoded cube vertices.
    """

    def canon(self, cell):
        return cell

    def act(self, fmap: FiniteMap, cell):
        return self.canon(_getter(fmap.table)(cell))


_GETTERS: dict = {}


def _getter(table: tuple) -> Callable:
    """``cell -> tuple(cell[y] for y in table)``, at C speed."""
    g = _GETTERS.get(table)
    if g is None:
        if len(table) == 1:
            k = table[0]
            g = lambda c: (c[k],)  # noqa: E731
        elif not table:
            g = lambda c: ()  # noqa: E731
        else:
            g = itemgetter(*table)
        _GETTERS[table] = g
    return g


# ---------------------------------------------------------------------------
# linear systems


class LinearSystem:
    """A presheaf of free modules with a fixed basis in each degree.

    ``action`` returns chains, which is what the S functor needs since its
    faces are differences.
    """

    mode: str
    flags: frozenset
    max_deg: int
    name: str

    @property
    def lo(self) -> int:
        return -1 if self.mode == SIMPLICIAL else 0

    def basis(self, n: int) -> list:
        raise NotImplementedError

    def action(self, tag, n: int, b) -> dict:
        raise NotImplementedError

    def supports(self, tag) -> bool:
        return _flag_ok(self.mode, self.flags, tag)

    # chain-group level (quotient by degenerate cubes in cubical mode)

    def chain_basis(self, n: int) -> list:
        return self.basis(n)

    def chain_action(self, tag, n: int, b) -> dict:
        return self.action(tag, n, b)

    def chain_index(self, n: int) -> dict:
        cache = self.__dict__.setdefault("_chain_index", {})
        idx = cache.get(n)
        if idx is None:
            idx = {b: k for k, b in enumerate(self.chain_basis(n))}
            cache[n] = idx
        return idx

    def act_chain(self, tag, n: int, chain: Mapping) -> dict:
        out: dict = {}
        for b, c in chain.items():
            vec_add(out, self.chain_action(tag, n, b), c)
        return out

    def act_word(self, letters: Sequence, n: int, chain: Mapping) -> dict:
        """``X(letters[0] o ... o letters[-1])`` on a degree-``n`` chain."""
        cur, deg = dict(chain), n
        for tag in letters:
            check_generator(self.mode, tag, deg)
            cur = self.act_chain(tag, deg, cur)
            deg = generator_domain(self.mode, tag, deg)
        return cur

    def group_word(self, g) -> list:
        """Generator letters whose composite is the symmetry ``g``."""
        if isinstance(g, Permutation):
            if g.base == 0:
                if self.mode != SIMPLICIAL:
                    raise InvalidInput("0-indexed permutation on a cubical system")
                return [("t", i) for i in g.simple_word()]
            if self.mode != CUBICAL:
                raise InvalidInput("1-indexed permutation on a simplicial system")
            return [("t", i) for i in g.cube_word()]
        if isinstance(g, ReversalMask):
            return [("r", i) for i in g.support()]
        if isinstance(g, HyperoctElement):
            return [("t", i) for i in g.perm.cube_word()] + [("r", i) for i in g.mask.support()]
        raise InvalidInput(f"not a group element: {g!r}")

    def act_group(self, g, n: int, chain: Mapping) -> dict:
        """The module map of the symmetry ``g`` in degree ``n``."""
        return self.act_word(self.group_word(g), n, chain)


# Memoized generator actions per system; past this many, actions are recomputed
# (a degree-4 graph cube complex has about eight million faces).
ACT_CACHE_LIMIT = 500_000


class FreeLinear(LinearSystem):
    """The free module on a cell system."""

    def __init__(self, system: CellSystem, ring: str = "Q"):
        self.cells_of = system
        self.mode = system.mode
        self.flags = system.flags
        self.max_deg = system.max_deg
        self.name = system.name
        self.ring = check_ring(ring)
        self._act_cache: dict = {}
        self._nd: dict[int, dict] = {}

    def basis(self, n: int) -> list:
        return self.cells_of.cells(n)

    def action(self, tag, n: int, b) -> dict:
        return {self.cells_of.action(tag, n, b): 1}

    def _is_nondegenerate(self, n: int, cell) -> bool:
        known = self._nd.setdefault(n, {})
        hit = known.get(cell)
        if hit is None:
            hit = not self.cells_of.is_degenerate(n, cell)
            known[cell] = hit
        return hit

    def chain_basis(self, n: int) -> list:
        if self.mode == SIMPLICIAL:
            return self.cells_of.cells(n)
        return self.cells_of.nondegenerate(n)

    def chain_action(self, tag, n: int, b) -> dict:
        key = (tag, n, b)
        hit = self._act_cache.get(key)
        if hit is not None:
            return hit
        dom = generator_domain(self.mode, tag, n)
        if dom == -1 and getattr(self.cells_of, "empty_augmentation", False):
            self._act_cache[key] = {}
            return {}
        c = self.cells_of.action(tag, n, b)
        if self.mode == CUBICAL and not self._is_nondegenerate(dom, c):
            out = {}
        else:
            out = {c: 1}
        if len(self._act_cache) < ACT_CACHE_LIMIT:
            self._act_cache[key] = out
        return out

    def act_map(self, fmap: FiniteMap, chain: Mapping) -> dict:
        """Action of an arbitrary morphism, straight from the cell system."""
        out: dict = {}
        cubical = self.mode == CUBICAL
        for b, c in chain.items():
            y = self.cells_of.act(fmap, b)
            if not cubical or self._is_nondegenerate(fmap.dom, y):
                vec_add(out, {y: 1}, c)
        return out

    def act_group(self, g, n: int, chain: Mapping) -> dict:
        return self.act_map(group_fmap(self.mode, g, n), chain)


_GROUP_MAPS: dict = {}


def group_fmap(mode: str, g, n: int) -> FiniteMap:
    """The bold map of a symmetry in degree ``n``."""
    key = (mode, g, n)
    hit = _GROUP_MAPS.get(key)
    if hit is None:
        hit = _GROUP_MAPS[key] = _group_fmap(mode, g, n)
    return hit


def _group_fmap(mode: str, g, n: int) -> FiniteMap:
    if isinstance(g, Permutation):
        if g.base == 0:
            return FiniteMap(SIMPLICIAL, n, n, g.images)
        return FiniteMap.from_function(CUBICAL, n, n, lambda v: tuple(v[g(j) - 1] for j in range(1, n + 1)))
    if isinstance(g, ReversalMask):
        return FiniteMap.from_function(CUBICAL, n, n, g.apply)
    if isinstance(g, HyperoctElement):
        return FiniteMap.from_function(CUBICAL, n, n, g.apply)
    raise InvalidInput(f"not a group element: {g!r}")


def free_linear(system: CellSystem, ring: str = "Q") -> FreeLinear:
    return FreeLinear(system, ring)


# ---------------------------------------------------------------------------
# complexes


@dataclass
class ComplexRep:
    """Ordered bases and exact differentials ``d_n : C_n -> C_{n-1}``.

    Degrees run from ``lo`` to ``top``; homology is reported for degrees
    below ``top`` because the differential out of ``C_{top+1}`` is unknown.
    """

    lo: int
    bases: dict[int, list]
    diffs: dict[int, ExactMatrix]
    ring: str = "Q"
    name: str = ""

    @property
    def top(self) -> int:
        return max(self.bases) if self.bases else self.lo - 1

    def degrees(self) -> range:
        return range(self.lo, self.top + 1)

    def dim(self, n: int) -> int:
        return len(self.bases.get(n, ()))

    def differential(self, n: int) -> ExactMatrix:
        if n in self.diffs:
            return self.diffs[n]
        return ExactMatrix.zeros(self.dim(n - 1), self.dim(n))

    def check_d2(self) -> None:
        for n in range(self.lo + 1, self.top + 1):
            prod = self.differential(n - 1) @ self.differential(n)
            if not prod.is_zero():
                col = min(c for _, c, _ in prod.items())
                raise ContractViolation(f"{self.name}: d_{n - 1} d_{n} != 0 at column {col}")

    def homology(self, upto: int | None = None) -> dict[int, HomologyGroup]:
        last = self.top - 1 if upto is None else min(upto, self.top - 1)
        out = {}
        for n in range(self.lo, last + 1):
            out[n] = homology_of_pair(self.differential(n), self.differential(n + 1), self.ring)
        return out

    def to_json(self) -> dict:
        def label(b):
            return repr(b)

        degs = []
        for n in self.degrees():
            d = self.differential(n)
            entries = []
            for r, c, v in d.items():
                f = Fraction(v)
                entries.append([r, c, f.numerator, f.denominator])
            degs.append({"n": n, "basis": [label(b) for b in self.bases.get(n, [])],
                         "differential": {"rows": d.nrows, "cols": d.ncols, "entries": entries}})
        return {"name": self.name, "ring": self.ring, "lo": self.lo, "degrees": degs}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _assemble(lo: int, top: int, basis_fn, boundary_fn, ring: str, name: str) -> ComplexRep:
    bases = {n: list(basis_fn(n)) for n in range(lo, top + 1)}
    diffs = {}
    for n in range(lo, top + 1):
        rows = bases.get(n - 1, [])
        ridx = {b: k for k, b in enumerate(rows)}
        cols = []
        for b in bases[n]:
            img = boundary_fn(n, b) if n > lo else {}
            col = {}
            for y, c in img.items():
                if c:
                    if y not in ridx:
                        raise ContractViolation(f"{name}: boundary term {y!r} is not a basis element of degree {n - 1}")
                    col[ridx[y]] = c
            cols.append(col)
        diffs[n] = ExactMatrix.from_columns(cols, len(rows))
    cx = ComplexRep(lo, bases, diffs, check_ring(ring), name)
    cx.check_d2()
    return cx


def simplicial_boundary(X: LinearSystem, n: int, chain: Mapping) -> dict:
    out: dict = {}
    for i in range(n + 1):
        vec_add(out, X.act_chain(("d", i), n, chain), -1 if i % 2 else 1)
    return out


def cubical_boundary(X: LinearSystem, n: int, chain: Mapping) -> dict:
    out: dict = {}
    for i in range(1, n + 1):
        s = 1 if i % 2 else -1  # (-1)^(i-1)
        vec_add(out, X.act_chain(("d", i, 0), n, chain), s)
        vec_add(out, X.act_chain(("d", i, 1), n, chain), -s)
    return out


def boundary(X: LinearSystem, n: int, chain: Mapping) -> dict:
    if n <= X.lo:
        return {}
    if X.mode == SIMPLICIAL:
        return simplicial_boundary(X, n, chain)
    return cubical_boundary(X, n, chain)


def simplicial_complex_of(X: LinearSystem, max_deg: int, ring: str = "Q") -> ComplexRep:
    """Augmented alternating face-map complex, degrees -1 .. max_deg + 1."""
    if X.mode != SIMPLICIAL:
        raise InvalidInput("simplicial_complex_of needs a simplicial system")
    return _assemble(-1, max_deg + 1, X.chain_basis, lambda n, b: simplicial_boundary(X, n, {b: 1}),
                     ring, f"C({X.name})")


def cubical_complex_of(X: LinearSystem, max_deg: int, ring: str = "Q") -> ComplexRep:
    """Cubical complex modulo degenerate cubes, degrees 0 .. max_deg + 1."""
    if X.mode != CUBICAL:
        raise InvalidInput("cubical_complex_of needs a cubical system")
    return _assemble(0, max_deg + 1, X.chain_basis, lambda n, b: cubical_boundary(X, n, {b: 1}),
                     ring, f"C({X.name})")


def complex_of(X: LinearSystem, max_deg: int, ring: str = "Q") -> ComplexRep:
    if X.mode == SIMPLICIAL:
        return simplicial_complex_of(X, max_deg, ring)
    return cubical_complex_of(X, max_deg, ring)


def homology(C: ComplexRep, upto: int | None = None) -> dict[int, HomologyGroup]:
    return C.homology(upto)


# ---------------------------------------------------------------------------
# sub-complex generators

SUBCOMPLEX_KINDS = ("Deg", "sDeg", "DegPlusSDeg", "Con", "posCon", "tCon", "rCon", "rtCon")


def _sym_generators(X: LinearSystem, n: int, letters: list) -> list[dict]:
    """``b - sgn(g) g b = b + g b`` for each simple generator ``g``."""
    out = []
    for b in X.chain_basis(n):
        for tag in letters:
            ch = chain_add({b: 1}, X.chain_action(tag, n, b))
            if ch:
                out.append(ch)
    return out


def subcomplex_generators(kind: str, X: LinearSystem, n: int) -> list[dict]:
    """Generators of the named sub-module of ``C_n``, as chains."""
    if kind not in SUBCOMPLEX_KINDS:
        raise InvalidInput(f"unknown sub-complex kind {kind!r}; expected one of {SUBCOMPLEX_KINDS}")
    simp = X.mode == SIMPLICIAL
    if kind in ("Deg", "sDeg", "DegPlusSDeg") and not simp:
        raise InvalidInput(f"{kind} is a simplicial sub-complex")
    if kind in ("Con", "posCon", "tCon", "rCon", "rtCon") and simp:
        raise InvalidInput(f"{kind} is a cubical sub-complex")
    need = {"sDeg": "t", "DegPlusSDeg": "t", "tCon": "t", "rCon": "r"}.get(kind)
    if need and need not in X.flags:
        raise InvalidInput(f"{kind} needs the {need!r} symmetry on {X.name}")
    if kind == "rtCon" and not {"t", "r"} <= X.flags:
        raise InvalidInput(f"rtCon needs both symmetries on {X.name}")
    if n < X.lo:
        return []
    gens: list[dict] = []
    if kind in ("Deg", "DegPlusSDeg") and n - 1 >= 0:
        for b in X.chain_basis(n - 1):
            for i in range(n):
                ch = chain_clean(X.chain_action(("s", i), n - 1, b))
                if ch:
                    gens.append(ch)
    if kind in ("sDeg", "DegPlusSDeg"):
        gens += _sym_generators(X, n, [("t", i) for i in range(n)])
    if kind in ("Con", "posCon") and n >= 2:
        eps = (0, 1) if kind == "Con" else (0,)
        for b in X.chain_basis(n - 1):
            for i in range(1, n):
                for e in eps:
                    ch = chain_clean(X.chain_action(("g", i, e), n - 1, b))
                    if ch:
                        gens.append(ch)
    if kind == "tCon":
        gens += _sym_generators(X, n, [("t", i) for i in range(1, n)])
    if kind == "rCon":
        gens += _sym_generators(X, n, [("r", i) for i in range(1, n + 1)])
    if kind == "rtCon":
        gens += _sym_generators(X, n, [("t", i) for i in range(1, n)] + [("r", i) for i in range(1, n + 1)])
    return gens


def symmetry_kind_for(X: LinearSystem) -> str:
    """The full-symmetry sub-complex kind matching the flags of ``X``."""
    if X.mode == SIMPLICIAL:
        if "t" not in X.flags:
            raise InvalidInput(f"{X.name} has no symmetries")
        return "sDeg"
    if X.flags == {"t"}:
        return "tCon"
    if X.flags == {"r"}:
        return "rCon"
    if X.flags == {"t", "r"}:
        return "rtCon"
    raise InvalidInput(f"{X.name} has no symmetries")


def generators_by_degree(kind: str, X: LinearSystem, C: ComplexRep) -> dict[int, list[dict]]:
    return {n: subcomplex_generators(kind, X, n) for n in C.degrees()}


# ---------------------------------------------------------------------------
# sub-complexes and quotients


def _to_index_vectors(gens: Iterable[Mapping], idx: Mapping) -> list[dict]:
    out = []
    for g in gens:
        v = {}
        for b, c in g.items():
            if c:
                if b not in idx:
                    raise InvalidInput(f"generator term {b!r} is not a basis element")
                v[idx[b]] = norm_scalar(c)
        if v:
            out.append(v)
    return out


def _blocks(vectors: list[dict]) -> list[list[dict]]:
    """Group vectors whose supports overlap (union-find over coordinates)."""
    parent: dict[int, int] = {}

    def find(x):
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != root:
            parent[x], x = root, parent[x]
        return root

    for v in vectors:
        keys = iter(v)
        first = find(next(keys))
        for k in keys:
            r = find(k)
            if r != first:
                parent[r] = first
    groups: dict[int, list[dict]] = {}
    for v in vectors:
        groups.setdefault(find(next(iter(v))), []).append(v)
    return [groups[k] for k in sorted(groups)]


class SpanBasis:
    """Echelon basis (HNF over Z, RREF over Q) of the span of some vectors."""

    def __init__(self, vectors: list[dict], ring: str):
        self.ring = check_ring(ring)
        self.rows: dict[int, dict] = {}
        for block in _blocks(vectors):
            ech = Echelon(self.ring)
            for v in block:
                ech.insert(v)
            if self.ring == "Z":
                ech.hermite_reduce()
            else:
                ech.rref()
            self.rows.update(ech.rows)
        self.pivots = sorted(self.rows)
        self.position = {p: k for k, p in enumerate(self.pivots)}

    def __len__(self) -> int:
        return len(self.pivots)

    def vectors(self) -> list[dict]:
        return [self.rows[p] for p in self.pivots]

    def coordinates(self, target: Mapping) -> dict | None:
        """Coefficients (by basis position) of ``target``, or None if outside the span."""
        r = dict(target)
        x: dict = {}
        integral = self.ring == "Z"
        while r:
            p = min(r)
            w = self.rows.get(p)
            if w is None:
                return None
            if integral:
                if r[p] % w[p]:
                    return None
                q = r[p] // w[p]
            else:
                q = norm_scalar(Fraction(r[p]) / w[p])
            vec_add(r, w, -q)
            x[self.position[p]] = q
        return x

    def reduce(self, v: Mapping) -> dict:
        """Rational mode: the remainder of ``v`` modulo the span (zero at pivots)."""
        coeffs = {p: c for p, c in v.items() if p in self.rows}
        out = dict(v)
        for p, c in coeffs.items():
            vec_add(out, self.rows[p], -c)
        return {k: norm_scalar(c) for k, c in out.items() if c}


def subcomplex(gens_by_degree: Mapping[int, list], ambient: ComplexRep, name: str = "") -> ComplexRep:
    """The sub-complex generated by the given chains: lattice over Z, span over Q.

    Basis vectors are ordered by pivot; the induced differential expresses
    each boundary in the next basis and aborts if that is impossible.
    """
    ring = ambient.ring
    spans = {}
    for n in ambient.degrees():
        idx = {b: k for k, b in enumerate(ambient.bases[n])}
        spans[n] = SpanBasis(_to_index_vectors(gens_by_degree.get(n, []), idx), ring)
    bases = {n: [tuple(sorted(spans[n].rows[p].items())) for p in spans[n].pivots] for n in spans}
    diffs = {}
    for n in ambient.degrees():
        d = ambient.differential(n)
        target = spans.get(n - 1)
        cols = []
        for v in spans[n].vectors():
            img = d.apply(v)
            if target is None:
                if img:
                    raise ContractViolation(f"{name}: nonzero boundary below the lowest degree")
                cols.append({})
                continue
            coords = target.coordinates(img)
            if coords is None:
                raise ContractViolation(f"{name or 'sub-complex'}: not a sub-complex (boundary escapes in degree {n - 1})")
            cols.append(coords)
        diffs[n] = ExactMatrix.from_columns(cols, len(target) if target is not None else 0)
    cx = ComplexRep(ambient.lo, bases, diffs, ring, name or f"sub({ambient.name})")
    cx.check_d2()
    return cx


def lattice_subcomplex(gens_by_degree: Mapping[int, list], ambient: ComplexRep, name: str = "") -> ComplexRep:
    if ambient.ring != "Z":
        raise InvalidInput("lattice sub-complexes need an integer ambient complex")
    return subcomplex(gens_by_degree, ambient, name)


def span_subcomplex(gens_by_degree: Mapping[int, list], ambient: ComplexRep, name: str = "") -> ComplexRep:
    if ambient.ring != "Q":
        raise InvalidInput("span sub-complexes need a rational ambient complex")
    return subcomplex(gens_by_degree, ambient, name)


def quotient_complex(C: ComplexRep, gens_by_degree: Mapping[int, list], name: str = "") -> ComplexRep:
    """``C / span(S)`` over Q; the basis is the set of non-pivot coordinates."""
    if C.ring != "Q":
        raise InvalidInput("quotient complexes are only supported over Q")
    spans = {}
    keep = {}
    for n in C.degrees():
        idx = {b: k for k, b in enumerate(C.bases[n])}
        spans[n] = SpanBasis(_to_index_vectors(gens_by_degree.get(n, []), idx), "Q")
        piv = set(spans[n].pivots)
        keep[n] = [k for k in range(C.dim(n)) if k not in piv]
    bases = {n: [C.bases[n][k] for k in keep[n]] for n in keep}
    diffs = {}
    for n in C.degrees():
        d = C.differential(n)
        below = keep.get(n - 1, [])
        pos = {k: j for j, k in enumerate(below)}
        cols = []
        for k in keep[n]:
            img = d.apply({k: 1})
            if n - 1 in spans:
                img = spans[n - 1].reduce(img)
            cols.append({pos[r]: c for r, c in img.items()})
        diffs[n] = ExactMatrix.from_columns(cols, len(below))
    cx = ComplexRep(C.lo, bases, diffs, "Q", name or f"quot({C.name})")
    cx.check_d2()
    return cx


def coordinate_quotient(C: ComplexRep, gens_by_degree: Mapping[int, list], name: str = "") -> ComplexRep:
    """Quotient by a span of basis elements (each generator a unit multiple of one basis element).

    Valid over Z as well, since the quotient stays free.
    """
    killed = {}
    for n in C.degrees():
        kill = set()
        for g in gens_by_degree.get(n, []):
            g = chain_clean(g)
            if not g:
                continue
            if len(g) != 1 or abs(next(iter(g.values()))) != 1:
                raise InvalidInput("coordinate quotient needs unit multiples of basis elements")
            kill.add(next(iter(g)))
        killed[n] = kill
    bases = {n: [b for b in C.bases[n] if b not in killed[n]] for n in C.degrees()}
    diffs = {}
    for n in C.degrees():
        old_rows = {b: k for k, b in enumerate(C.bases.get(n - 1, []))}
        new_rows = {b: k for k, b in enumerate(bases.get(n - 1, []))}
        remap = {old_rows[b]: new_rows[b] for b in new_rows}
        old_cols = {b: k for k, b in enumerate(C.bases[n])}
        d = C.differential(n)
        cols = []
        for b in bases[n]:
            img = d.apply({old_cols[b]: 1})
            cols.append({remap[r]: c for r, c in img.items() if r in remap})
        diffs[n] = ExactMatrix.from_columns(cols, len(new_rows))
    cx = ComplexRep(C.lo, bases, diffs, C.ring, name or f"quot({C.name})")
    cx.check_d2()
    return cx


def span_rank(gens: list[Mapping], basis: Sequence, ring: str = "Q") -> int:
    idx = {b: k for k, b in enumerate(basis)}
    return len(SpanBasis(_to_index_vectors(gens, idx), ring))


# ---------------------------------------------------------------------------
# signed-orbit quotients (fast path for free systems)

REDUCTION_KINDS = {
    "deg": ("Deg",),
    "sym": ("sDeg",),
    "deg+sym": ("DegPlusSDeg",),
    "con": ("Con",),
    "poscon": ("posCon",),
    "t": ("tCon",),
    "r": ("rCon",),
    "rt": ("rtCon",),
}


class _SignedClasses:
    """Union-find where each element is identified with +-1 times its root."""

    def __init__(self):
        self.parent: dict = {}
        self.sign: dict = {}
        self.dead: set = set()

    def find(self, x):
        path = []
        s = 1
        while self.parent.get(x, x) != x:
            path.append(x)
            s *= self.sign[x]
            x = self.parent[x]
        root, acc = x, s
        for y in path:  # compress: y = sign * root
            nxt_sign = self.sign[y]
            self.parent[y], self.sign[y] = root, acc
            acc *= nxt_sign
        return root, s

    def union(self, a, b, rel: int) -> None:
        """Record ``a = rel * b``."""
        ra, sa = self.find(a)
        rb, sb = self.find(b)
        if ra == rb:
            if sa != rel * sb:
                self.dead.add(ra)  # a = -a, so a = 0 over Q
            return
        if ra > rb:
            ra, rb, sa, sb = rb, ra, sb, sa
        # attach rb under ra:  rb = sb * b ... solve rb = s * ra
        self.parent[rb] = ra
        self.sign[rb] = sa * rel * sb
        if rb in self.dead:
            self.dead.discard(rb)
            self.dead.add(ra)

    def kill(self, a) -> None:
        self.dead.add(self.find(a)[0])


def signed_classes(X: LinearSystem, kinds: Sequence[str], n: int) -> dict:
    """Map each basis element of ``C_n`` to ``(representative, sign)`` or None when
    it vanishes in the quotient by the named sub-complexes.

    Only generators that are a multiple of one basis element or a +-1
    combination of two are supported, which covers every kind on a free
    system.
    """
    uf = _SignedClasses()
    basis = X.chain_basis(n)
    for kind in kinds:
        for g in subcomplex_generators(kind, X, n):
            items = list(g.items())
            if len(items) == 1:
                uf.kill(items[0][0])
            elif len(items) == 2 and {abs(items[0][1]), abs(items[1][1])} == {1}:
                (a, ca), (b, cb) = items
                uf.union(a, b, -cb * ca)
            else:
                raise InvalidInput(f"{kind} generators on {X.name} are not signed basis pairs")
    out = {}
    for b in basis:
        r, s = uf.find(b)
        out[b] = None if r in uf.dead else (r, s)
    return out


def orbit_quotient_complex(X: LinearSystem, kinds: Sequence[str] | str, max_deg: int, name: str = "") -> ComplexRep:
    """``C / S`` over Q built from one representative per surviving class.

    Boundaries are only computed on representatives, which is where the
    saving comes from.
    """
    if isinstance(kinds, str):
        kinds = (kinds,)
    lo, top = X.lo, max_deg + 1
    proj = {n: signed_classes(X, kinds, n) for n in range(lo, top + 1)}
    bases = {n: sorted({v[0] for v in proj[n].values() if v is not None}) for n in proj}
    diffs = {}
    for n in range(lo, top + 1):
        below = {b: k for k, b in enumerate(bases.get(n - 1, []))}
        cols = []
        for r in bases[n]:
            col: dict = {}
            if n > lo:
                for y, c in boundary(X, n, {r: 1}).items():
                    hit = proj[n - 1].get(y)
                    if hit is None:
                        if y not in proj[n - 1]:
                            raise ContractViolation(f"boundary term {y!r} is not a basis element")
                        continue
                    vec_add(col, {below[hit[0]]: hit[1]}, c)
            cols.append(col)
        diffs[n] = ExactMatrix.from_columns(cols, len(below))
    cx = ComplexRep(lo, bases, diffs, "Q", name or f"C({X.name})/{'+'.join(kinds)}")
    cx.check_d2()
    return cx


def orbit_subcomplex(X: LinearSystem, kinds: Sequence[str] | str, max_deg: int, name: str = "") -> ComplexRep:
    """The rational span of the named generators, with a basis read off the
    signed classes: ``b - s * rep`` for each non-representative ``b = s * rep``,
    and every member of a vanishing class."""
    if isinstance(kinds, str):
        kinds = (kinds,)
    lo, top = X.lo, max_deg + 1
    vecs: dict[int, list[dict]] = {}
    pos: dict[int, dict] = {}
    for n in range(lo, top + 1):
        proj = signed_classes(X, kinds, n)
        out, where = [], {}
        for b in X.chain_basis(n):
            hit = proj[b]
            if hit is None:
                v = {b: 1}
            elif hit[0] == b:
                continue
            else:
                v = {b: 1, hit[0]: -hit[1]}
            where[b] = len(out)
            out.append(v)
        vecs[n], pos[n] = out, where
    bases = {n: [tuple(sorted(v.items())) for v in vecs[n]] for n in vecs}
    diffs = {}
    for n in range(lo, top + 1):
        cols = []
        for v in vecs[n]:
            img = boundary(X, n, v) if n > lo else {}
            coords = {pos[n - 1][y]: c for y, c in img.items() if y in pos.get(n - 1, {})}
            resid = dict(img)
            for k, c in coords.items():
                vec_add(resid, vecs[n - 1][k], -c)
            if any(resid.values()):
                raise ContractViolation(f"{name or 'sub-complex'}: not a sub-complex (boundary escapes in degree {n - 1})")
            cols.append(coords)
        diffs[n] = ExactMatrix.from_columns(cols, len(vecs.get(n - 1, [])))
    cx = ComplexRep(lo, bases, diffs, "Q", name or f"{'+'.join(kinds)}({X.name})")
    cx.check_d2()
    return cx
