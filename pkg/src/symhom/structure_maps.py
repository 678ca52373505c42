"""Generators of the symmetric simplex category and the cube categories as
concrete finite maps, word evaluation, the identity suite, and extensional
hom-set enumeration.

Generator tags
--------------
simplicial: ``('d', i)``, ``('s', i)``, ``('t', i)``
cubical:    ``('d', i, eps)``, ``('s', i)``, ``('g', i, eps)`` (connection),
            ``('t', i)``, ``('r', i)``

A generator is pinned down by its tag and its *codomain* degree ``n``
(for a presheaf this is the degree of the cell it acts on).

Cube vertices ``(v_1, ..., v_n)`` are encoded as integers with ``v_1`` the
most significant bit, so that the lexicographic order of vectors matches the
integer order.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, Iterable, Iterator, Sequence

from .errors import InvalidInput, ResourceCapError
from .symmetries import enumerate_group

SIMPLICIAL = "simplicial"
CUBICAL = "cubical"
MODES = (SIMPLICIAL, CUBICAL)

Tag = tuple


def check_mode(mode: str) -> str:
    if mode in ("s", "simp"):
        return SIMPLICIAL
    if mode in ("c", "cub"):
        return CUBICAL
    if mode not in MODES:
        raise InvalidInput(f"unknown mode {mode!r}")
    return mode


# ---------------------------------------------------------------------------
# cube vertex encoding


def vec_to_idx(v: Sequence[int]) -> int:
    x = 0
    for b in v:
        x = (x << 1) | b
    return x


def idx_to_vec(x: int, n: int) -> tuple[int, ...]:
    return tuple((x >> (n - 1 - k)) & 1 for k in range(n))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteMap:
    """A morphism of the simplex or cube category as a lookup table.

    simplicial: ``table[j]`` is the image of ``j`` in ``[cod]``, length ``dom + 1``
    cubical:    ``table[x]`` is the encoded image of vertex ``x``, length ``2**dom``
    """

    mode: str
    dom: int
    cod: int
    table: tuple[int, ...]

    def __post_init__(self):
        if self.mode == SIMPLICIAL:
            if self.dom < -1 or self.cod < -1:
                raise InvalidInput("simplicial degrees start at -1")
            if len(self.table) != self.dom + 1 or any(not 0 <= y <= self.cod for y in self.table):
                raise InvalidInput("malformed simplicial table")
        elif self.mode == CUBICAL:
            if self.dom < 0 or self.cod < 0:
                raise InvalidInput("cubical degrees start at 0")
            top = 1 << self.cod
            if len(self.table) != 1 << self.dom or any(not 0 <= y < top for y in self.table):
                raise InvalidInput("malformed cubical table")
        else:
            raise InvalidInput(f"unknown mode {self.mode!r}")

    @classmethod
    def identity(cls, mode: str, n: int) -> "FiniteMap":
        mode = check_mode(mode)
        size = n + 1 if mode == SIMPLICIAL else 1 << n
        return cls(mode, n, n, tuple(range(size)))

    @classmethod
    def from_function(cls, mode: str, dom: int, cod: int, fn: Callable) -> "FiniteMap":
        """Tabulate ``fn``; cubical ``fn`` takes and returns bit tuples."""
        mode = check_mode(mode)
        if mode == SIMPLICIAL:
            return cls(mode, dom, cod, tuple(fn(j) for j in range(dom + 1)))
        return cls(mode, dom, cod, tuple(vec_to_idx(fn(idx_to_vec(x, dom))) for x in range(1 << dom)))

    def __call__(self, x):
        if self.mode == CUBICAL and isinstance(x, tuple):
            return idx_to_vec(self.table[vec_to_idx(x)], self.cod)
        return self.table[x]

    def compose(self, other: "FiniteMap") -> "FiniteMap":
        """``self o other`` (other applied first)."""
        if self.mode != other.mode or other.cod != self.dom:
            raise InvalidInput(f"cannot compose {self.dom}->{self.cod} after {other.dom}->{other.cod}")
        t = self.table
        return FiniteMap(self.mode, other.dom, self.cod, tuple(t[y] for y in other.table))

    __matmul__ = compose

    def is_identity(self) -> bool:
        return self.dom == self.cod and self.table == tuple(range(len(self.table)))

    def depends_on(self, i: int) -> bool:
        """Cubical: does some output change when input coordinate ``i`` flips?"""
        bit = 1 << (self.dom - i)
        t = self.table
        return any(t[x] != t[x ^ bit] for x in range(len(t)) if not x & bit)

    def is_degenerate(self) -> bool:
        """Cubical: factors through some degeneracy (ignores a coordinate)."""
        return any(not self.depends_on(i) for i in range(1, self.dom + 1))

    def vectors(self) -> list[tuple[int, ...]]:
        return [idx_to_vec(y, self.cod) for y in self.table]


# ---------------------------------------------------------------------------
# generators


def generator_domain(mode: str, tag: Tag, cod: int) -> int:
    kind = tag[0]
    if kind == "d":
        return cod - 1
    if kind in ("s", "g"):
        return cod + 1
    if kind in ("t", "r"):
        return cod
    raise InvalidInput(f"unknown generator tag {tag!r}")


def generator_codomain(mode: str, tag: Tag, dom: int) -> int:
    kind = tag[0]
    if kind == "d":
        return dom + 1
    if kind in ("s", "g"):
        return dom - 1
    if kind in ("t", "r"):
        return dom
    raise InvalidInput(f"unknown generator tag {tag!r}")


def check_generator(mode: str, tag: Tag, cod: int) -> None:
    """Raise InvalidInput unless ``tag`` is a generator with codomain degree ``cod``."""
    mode = check_mode(mode)
    kind, i = tag[0], tag[1]
    if mode == SIMPLICIAL:
        if len(tag) != 2 or kind not in ("d", "s", "t"):
            raise InvalidInput(f"bad simplicial tag {tag!r}")
        hi = cod - 1 if kind == "t" else cod
        ok = 0 <= i <= hi and (cod >= 0)
    else:
        if kind in ("d", "g"):
            if len(tag) != 3 or tag[2] not in (0, 1):
                raise InvalidInput(f"bad cubical tag {tag!r}")
        elif kind in ("s", "t", "r"):
            if len(tag) != 2:
                raise InvalidInput(f"bad cubical tag {tag!r}")
        else:
            raise InvalidInput(f"bad cubical tag {tag!r}")
        hi = {"d": cod, "s": cod + 1, "g": cod, "t": cod - 1, "r": cod}[kind]
        ok = 1 <= i <= hi and cod >= 0
    if not ok:
        raise InvalidInput(f"generator {tag!r} not defined with codomain degree {cod}")


def is_admissible(mode: str, tag: Tag, cod: int) -> bool:
    try:
        check_generator(mode, tag, cod)
    except InvalidInput:
        return False
    return True


_GEN_CACHE: dict = {}


def generator_fn(mode: str, tag: Tag, ambient_degree: int) -> FiniteMap:
    """The generator ``tag`` with codomain degree ``ambient_degree`` as a finite map."""
    mode = check_mode(mode)
    tag = tuple(tag)
    key = (mode, tag, ambient_degree)
    hit = _GEN_CACHE.get(key)
    if hit is not None:
        return hit
    check_generator(mode, tag, ambient_degree)
    n = ambient_degree
    kind, i = tag[0], tag[1]
    dom = generator_domain(mode, tag, n)
    if mode == SIMPLICIAL:
        if kind == "d":
            fn = lambda j: j if j < i else j + 1  # noqa: E731
        elif kind == "s":
            fn = lambda j: j if j <= i else j - 1  # noqa: E731
        else:
            fn = lambda j: i + 1 if j == i else (i if j == i + 1 else j)  # noqa: E731
    else:
        k = i - 1  # 0-based position
        if kind == "d":
            eps = tag[2]
            fn = lambda v: v[:k] + (eps,) + v[k:]  # noqa: E731
        elif kind == "s":
            fn = lambda v: v[:k] + v[k + 1:]  # noqa: E731
        elif kind == "g":
            pick = max if tag[2] == 0 else min
            fn = lambda v: v[:k] + (pick(v[k], v[k + 1]),) + v[k + 2:]  # noqa: E731
        elif kind == "t":
            fn = lambda v: v[:k] + (v[k + 1], v[k]) + v[k + 2:]  # noqa: E731
        else:
            fn = lambda v: v[:k] + (1 - v[k],) + v[k + 1:]  # noqa: E731
    fm = FiniteMap.from_function(mode, dom, n, fn)
    _GEN_CACHE[key] = fm
    return fm


def generator_tags(mode: str, cod: int, flags: Iterable[str] = ("t", "r"), connections: bool = True) -> list[Tag]:
    """All generators with codomain degree ``cod`` allowed by ``flags``."""
    mode = check_mode(mode)
    flags = set(flags)
    out: list[Tag] = []
    if mode == SIMPLICIAL:
        if cod < 0:
            return out
        out += [("d", i) for i in range(cod + 1)]
        out += [("s", i) for i in range(cod + 1)]
        if "t" in flags:
            out += [("t", i) for i in range(cod)]
        return out
    out += [("d", i, e) for i in range(1, cod + 1) for e in (0, 1)]
    out += [("s", i) for i in range(1, cod + 2)]
    if connections:
        out += [("g", i, e) for i in range(1, cod + 1) for e in (0, 1)]
    if "t" in flags:
        out += [("t", i) for i in range(1, cod)]
    if "r" in flags:
        out += [("r", i) for i in range(1, cod + 1)]
    return out


def tag_str(tag: Tag) -> str:
    if len(tag) == 3:
        return f"{tag[0]}{tag[1]}^{tag[2]}"
    return f"{tag[0]}{tag[1]}"


# ---------------------------------------------------------------------------
# words


@dataclass(frozen=True)
class OpWord:
    """A composite ``letters[0] o letters[1] o ... o letters[-1]`` of generators.

    ``dom`` is the domain degree of the last letter (the first map applied).
    """

    mode: str
    letters: tuple[Tag, ...]
    dom: int

    def __post_init__(self):
        object.__setattr__(self, "mode", check_mode(self.mode))
        object.__setattr__(self, "letters", tuple(tuple(t) for t in self.letters))

    def degrees(self) -> list[int]:
        """Object degrees along the word, from the domain to the codomain.

        Raises InvalidInput if some letter is not defined at its position.
        """
        degs = [self.dom]
        d = self.dom
        for tag in reversed(self.letters):
            c = generator_codomain(self.mode, tag, d)
            check_generator(self.mode, tag, c)
            degs.append(c)
            d = c
        return degs

    @property
    def cod(self) -> int:
        return self.degrees()[-1]

    def admissible(self, max_degree: int | None = None) -> bool:
        try:
            degs = self.degrees()
        except InvalidInput:
            return False
        lo = -1 if self.mode == SIMPLICIAL else 0
        if any(d < lo for d in degs):
            return False
        return max_degree is None or max(degs) <= max_degree

    def __str__(self) -> str:
        return " ".join(tag_str(t) for t in self.letters) or "id"


def evaluate(word: OpWord) -> FiniteMap:
    """Compose the letters of ``word`` as functions (rightmost letter first)."""
    degs = word.degrees()
    fm = FiniteMap.identity(word.mode, word.dom)
    for tag, cod in zip(reversed(word.letters), degs[1:]):
        fm = generator_fn(word.mode, tag, cod).compose(fm)
    return fm


# ---------------------------------------------------------------------------
# identity suite


def _t(i):
    return ("t", i)


def _r(i):
    return ("r", i)


def _simplicial_identities():
    """name -> (index variable names, rule(**idx) -> (lhs, rhs) or None)."""
    def eq_I(i, j):
        if j <= i:
            return [("d", j), ("d", i)], [("d", i + 1), ("d", j)]

    def eq_II(i, j):
        if j >= i:
            return [("s", j), ("s", i)], [("s", i), ("s", j + 1)]

    def eq_III(i, j):
        lhs = [("s", j), ("d", i)]
        if j < i - 1:
            return lhs, [("d", i - 1), ("s", j)]
        if j in (i, i - 1):
            return lhs, []
        return lhs, [("d", i), ("s", j - 1)]

    def eq_IV(i, j):
        lhs = [("t", j), ("d", i)]
        if j < i - 1:
            return lhs, [("d", i), ("t", j)]
        if j == i - 1:
            return lhs, [("d", i - 1)]
        if j == i:
            return lhs, [("d", i + 1)]
        return lhs, [("d", i), ("t", j - 1)]

    def eq_V(i, j):
        lhs = [("s", j), ("t", i)]
        if j < i - 1:
            return lhs, [("t", i - 1), ("s", j)]
        if j == i - 1:
            return lhs, [("t", i - 1), ("s", i), ("t", i - 1)]
        if j == i:
            return lhs, [("s", j)]
        if j == i + 1:
            return lhs, [("t", i), ("s", i), ("t", i + 1)]
        return lhs, [("t", i), ("s", j)]

    def eq_VI(i, j):
        if abs(i - j) > 1:
            return [_t(j), _t(i)], [_t(i), _t(j)]

    def eq_VII(i):
        return [_t(i), _t(i)], []

    def eq_VIII(i):
        return [_t(i), _t(i + 1)] * 3, []

    return {
        "I": (("i", "j"), eq_I), "II": (("i", "j"), eq_II), "III": (("i", "j"), eq_III),
        "IV": (("i", "j"), eq_IV), "V": (("i", "j"), eq_V), "VI": (("i", "j"), eq_VI),
        "VII": (("i",), eq_VII), "VIII": (("i",), eq_VIII),
    }


def _cubical_identities():
    def d(i, e):
        return ("d", i, e)

    def g(i, e):
        return ("g", i, e)

    def s(i):
        return ("s", i)

    def c_I(i, j, eps, eta):
        if j <= i:
            return [d(j, eta), d(i, eps)], [d(i + 1, eps), d(j, eta)]

    def c_II(i, j, eps):
        lhs = [s(j), d(i, eps)]
        if j < i:
            return lhs, [d(i - 1, eps), s(j)]
        if j == i:
            return lhs, []
        return lhs, [d(i, eps), s(j - 1)]

    def c_III(i, j):
        if j <= i:
            return [s(i), s(j)], [s(j), s(i + 1)]

    def c_IV(i, j, eps, eta):
        lhs = [g(i, eta), g(j, eps)]
        if j < i:
            return lhs, [g(j, eps), g(i + 1, eta)]
        if j == i and eta == eps:
            return lhs, [g(i, eps), g(i + 1, eps)]

    def c_V(i, j, eps, eta):
        lhs = [g(j, eta), d(i, eps)]
        if j < i - 1:
            return lhs, [d(i - 1, eps), g(j, eta)]
        if j in (i - 1, i) and eps == eta:
            return lhs, []
        if j in (i - 1, i):
            return lhs, [d(j, eps), s(j)]
        if j > i:
            return lhs, [d(i, eps), g(j - 1, eta)]

    def c_VI(i, j, eps):
        lhs = [s(j), g(i, eps)]
        if j < i:
            return lhs, [g(i - 1, eps), s(j)]
        if j == i:
            return lhs, [s(i), s(i)]
        return lhs, [g(i, eps), s(j + 1)]

    def c_VII(i, j, eps):
        lhs = [g(j, eps), _t(i)]
        if j < i - 1:
            return lhs, [_t(i - 1), g(j, eps)]
        if j == i - 1:
            return lhs, [_t(i - 1), g(i, eps), _t(i - 1)]
        if j == i:
            return lhs, [g(j, eps)]
        if j == i + 1:
            return lhs, [_t(i), g(i, eps), _t(i + 1)]
        return lhs, [_t(i), g(j, eps)]

    def c_VIII(i, j, eps):
        lhs = [_t(j), d(i, eps)]
        if j < i - 1:
            return lhs, [d(i, eps), _t(j)]
        if j == i - 1:
            return lhs, [d(i - 1, eps)]
        if j == i:
            return lhs, [d(i + 1, eps)]
        return lhs, [d(i, eps), _t(j - 1)]

    def c_IX(i, j):
        lhs = [s(i), _t(j)]
        if j < i - 1:
            return lhs, [_t(j), s(i)]
        if j == i - 1:
            return lhs, [s(i - 1)]
        if j == i:
            return lhs, [s(i + 1)]
        return lhs, [_t(j - 1), s(i)]

    def c_X(i, j):
        if abs(i - j) > 1:
            return [_t(j), _t(i)], [_t(i), _t(j)]

    def c_XI(i):
        return [_t(i), _t(i)], []

    def c_XII(i):
        return [_t(i), _t(i + 1)] * 3, []

    def c_XIII(i, j, eps):
        lhs = [_r(j), d(i, eps)]
        if j < i:
            return lhs, [d(i, eps), _r(j)]
        if j == i:
            return lhs, [d(i, 1 - eps)]
        return lhs, [d(i, eps), _r(j - 1)]

    def c_XIV(i, j):
        lhs = [s(j), _r(i)]
        if j < i:
            return lhs, [_r(i - 1), s(j)]
        if j == i:
            return lhs, [s(i)]
        return lhs, [_r(i), s(j)]

    def c_XV(i, j, eps):
        lhs = [_r(j), g(i, eps)]
        if j < i:
            return lhs, [g(i, eps), _r(j)]
        if j == i:
            return lhs, [g(i, 1 - eps), _r(j), _r(j + 1)]
        return lhs, [g(i, eps), _r(j + 1)]

    def c_XVI(i, j):
        lhs = [_t(j), _r(i)]
        if j == i - 1:
            return lhs, [_r(j), _t(j)]
        if j == i:
            return lhs, [_r(i + 1), _t(j)]
        return lhs, [_r(i), _t(j)]

    def c_XVII(i, j):
        lhs = [_r(i), _r(j)]
        if j == i:
            return lhs, []
        return lhs, [_r(j), _r(i)]

    ij, ije = ("i", "j"), ("i", "j", "eps")
    return {
        "C-I": (("i", "j", "eps", "eta"), c_I), "C-II": (("i", "j", "eps"), c_II),
        "C-III": (ij, c_III), "C-IV": (("i", "j", "eps", "eta"), c_IV),
        "C-V": (("i", "j", "eps", "eta"), c_V), "C-VI": (ije, c_VI), "C-VII": (ije, c_VII),
        "C-VIII": (ije, c_VIII), "C-IX": (ij, c_IX), "C-X": (ij, c_X), "C-XI": (("i",), c_XI),
        "C-XII": (("i",), c_XII), "C-XIII": (ije, c_XIII), "C-XIV": (ij, c_XIV),
        "C-XV": (ije, c_XV), "C-XVI": (ij, c_XVI), "C-XVII": (ij, c_XVII),
    }


SIMPLICIAL_IDENTITIES = _simplicial_identities()
CUBICAL_IDENTITIES = _cubical_identities()


def identity_table(mode: str) -> dict:
    return SIMPLICIAL_IDENTITIES if check_mode(mode) == SIMPLICIAL else CUBICAL_IDENTITIES


@dataclass(frozen=True)
class IdentityInstance:
    identity: str
    indices: tuple[tuple[str, int], ...]
    lhs: OpWord
    rhs: OpWord

    @property
    def degree(self) -> int:
        """Largest object degree the left-hand side passes through."""
        return max(self.lhs.degrees())


def identity_instances(mode: str, max_degree: int, names: Iterable[str] | None = None) -> Iterator[IdentityInstance]:
    """Every identity instance whose left-hand side is defined within ``max_degree``."""
    mode = check_mode(mode)
    table = identity_table(mode)
    lo = -1 if mode == SIMPLICIAL else 0
    idx_range = range(-1, max_degree + 3)
    for name in (names or table):
        varnames, rule = table[name]
        for dom in range(lo, max_degree + 1):
            for combo in product(*(((0, 1) if v in ("eps", "eta") else idx_range) for v in varnames)):
                kw = dict(zip(varnames, combo))
                res = rule(**kw)
                if res is None:
                    continue
                lhs = OpWord(mode, tuple(res[0]), dom)
                if not lhs.admissible(max_degree):
                    continue
                yield IdentityInstance(name, tuple(kw.items()), lhs, OpWord(mode, tuple(res[1]), dom))


def check_instance(inst: IdentityInstance) -> tuple[bool, str]:
    lhs = evaluate(inst.lhs)
    if not inst.rhs.admissible():
        return False, "right-hand side not defined"
    rhs = evaluate(inst.rhs)
    if lhs != rhs:
        return False, f"maps differ: {lhs.table} vs {rhs.table}"
    return True, ""


def identity_suite(mode: str, max_degree: int, names: Iterable[str] | None = None) -> list[dict]:
    """One record per instantiated identity; failures are reported, not raised."""
    if max_degree > 8:
        raise ResourceCapError("identity suite is capped at degree 8")
    records = []
    for inst in identity_instances(mode, max_degree, names):
        ok, why = check_instance(inst)
        rec = {
            "identity": inst.identity,
            "degree": inst.degree,
            "indices": dict(inst.indices),
            "lhs": str(inst.lhs),
            "rhs": str(inst.rhs),
            "passed": ok,
        }
        if not ok:
            rec["witness"] = why
        records.append(rec)
    return records


# ---------------------------------------------------------------------------
# hom-set enumeration in the cube categories

HOM_DEGREE_CAP = 6


def _check_flags(flags) -> frozenset:
    f = frozenset(flags)
    if not f <= {"t", "r"}:
        raise InvalidInput(f"symmetry flags must be a subset of {{t, r}}, got {sorted(f)}")
    return f


def hom_closure(flags, target: int, max_source: int) -> dict[int, set[FiniteMap]]:
    """All morphisms ``[1]^k -> [1]^target`` for ``k <= max_source``.

    Breadth-first closure of the identity under precomposition with
    generators, with every intermediate object of degree at most
    ``max(max_source, target)``.
    """
    flags = _check_flags(flags)
    top = max(max_source, target)
    if top > HOM_DEGREE_CAP:
        raise ResourceCapError(f"hom enumeration capped at degree {HOM_DEGREE_CAP}")
    found: dict[int, set[FiniteMap]] = {k: set() for k in range(top + 1)}
    start = FiniteMap.identity(CUBICAL, target)
    found[target].add(start)
    frontier = [start]
    gens_into = {c: [generator_fn(CUBICAL, tag, c) for tag in generator_tags(CUBICAL, c, flags)
                     if generator_domain(CUBICAL, tag, c) <= top]
                 for c in range(top + 1)}
    while frontier:
        nxt = []
        for f in frontier:
            for g in gens_into[f.dom]:
                h = f.compose(g)
                bucket = found[h.dom]
                if h not in bucket:
                    bucket.add(h)
                    nxt.append(h)
        frontier = nxt
    return {k: v for k, v in found.items() if k <= max_source}


def _connection_maps(p: int, q: int) -> set[FiniteMap]:
    """All composites of connections ``[1]^p -> [1]^q`` (identity when p == q)."""
    layer = {FiniteMap.identity(CUBICAL, p)}
    for deg in range(p - 1, q - 1, -1):
        gens = [generator_fn(CUBICAL, ("g", i, e), deg) for i in range(1, deg + 1) for e in (0, 1)]
        layer = {g.compose(f) for f in layer for g in gens}
    return layer


def hom_normal_form(flags, k: int, m: int) -> set[FiniteMap]:
    """Morphisms ``[1]^k -> [1]^m`` as faces o connections o symmetries o degeneracies."""
    flags = _check_flags(flags)
    if max(k, m) > HOM_DEGREE_CAP:
        raise ResourceCapError(f"hom enumeration capped at degree {HOM_DEGREE_CAP}")
    out: set[FiniteMap] = set()
    for p in range(0, k + 1):
        # degeneracies: keep coordinates `kept` of the source
        degens = []
        for kept in combinations(range(k), p):
            degens.append(FiniteMap.from_function(CUBICAL, k, p, lambda v, kept=kept: tuple(v[c] for c in kept)))
        syms = []
        if "t" in flags and "r" in flags:
            syms = [FiniteMap.from_function(CUBICAL, p, p, h.apply) for h in enumerate_group(p, "Hyperoct")]
        elif "t" in flags:
            syms = [FiniteMap.from_function(CUBICAL, p, p, lambda v, s=s: tuple(v[s(j) - 1] for j in range(1, p + 1)))
                    for s in enumerate_group(p, "Sym", base=1)]
        elif "r" in flags:
            syms = [FiniteMap.from_function(CUBICAL, p, p, a.apply) for a in enumerate_group(p, "Rev")]
        else:
            syms = [FiniteMap.identity(CUBICAL, p)]
        middle = {s.compose(dg) for s in syms for dg in degens}
        for q in range(0, min(p, m) + 1):
            cons = _connection_maps(p, q)
            left = {c.compose(x) for c in cons for x in middle}
            # faces: choose which m - q target coordinates are constant, and their values
            for fixed in combinations(range(m), m - q):
                free = [c for c in range(m) if c not in fixed]
                for vals in product((0, 1), repeat=m - q):
                    def face(v, fixed=fixed, vals=vals, free=free):
                        w = [0] * m
                        for c, b in zip(fixed, vals):
                            w[c] = b
                        for c, b in zip(free, v):
                            w[c] = b
                        return tuple(w)
                    fm = FiniteMap.from_function(CUBICAL, q, m, face)
                    out.update(fm.compose(x) for x in left)
    return out


def enumerate_hom(flags, k: int, m: int, method: str = "closure") -> set[FiniteMap]:
    """Hom([1]^k, [1]^m) in the cube category with connections and ``flags`` symmetries."""
    if k < 0 or m < 0:
        raise InvalidInput("cube degrees are nonnegative")
    if method == "closure":
        return hom_closure(flags, m, k)[k]
    if method == "normal_form":
        return hom_normal_form(flags, k, m)
    raise InvalidInput(f"unknown method {method!r}")
