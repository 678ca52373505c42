"""From cubical to simplicial modules: ``SX[n]`` is the degree-``n + 1``
cubical chain group of ``X``, with faces the differences of opposite cube
faces and degeneracies the positive connections.

Also the two Moore complexes and the comparisons between them.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from .chain_modules import (
    ComplexRep,
    LinearSystem,
    chain_clean,
    coordinate_quotient,
    cubical_complex_of,
    generators_by_degree,
    quotient_complex,
    simplicial_complex_of,
    span_rank,
    subcomplex,
    subcomplex_generators,
)
from .errors import InvalidInput
from .exact_linalg import vec_add
from .structure_maps import CUBICAL, SIMPLICIAL, check_generator, generator_domain, identity_instances


class SLinear(LinearSystem):
    """The simplicial module produced from a cubical one.

    ``degeneracy`` picks the degeneracy ``s_i``:

    * ``"max"``: the positive connection ``g_{i+1}^0`` (default)
    * ``"neg-max"``: its negative; then ``d_i s_i = -id``, so this choice
      is not simplicial and is kept to demonstrate exactly that
    * ``"neg-min"``: minus the negative connection ``g_{i+1}^1``, a sign
      flipped choice that does satisfy every identity
    """

    DEGENERACIES = {"max": (0, 1), "neg-max": (0, -1), "neg-min": (1, -1)}

    def __init__(self, X: LinearSystem, degeneracy: str = "max"):
        if degeneracy not in self.DEGENERACIES:
            raise InvalidInput(f"degeneracy must be one of {sorted(self.DEGENERACIES)}")
        if X.mode != CUBICAL:
            raise InvalidInput("the S construction takes a cubical system")
        self.source = X
        self.mode = SIMPLICIAL
        self.flags = frozenset({"t"}) if "t" in X.flags else frozenset()
        self.max_deg = X.max_deg - 1
        self.name = f"S{X.name}"
        self.ring = getattr(X, "ring", "Q")
        self.degeneracy = degeneracy
        self.connection_kind, self.degeneracy_sign = self.DEGENERACIES[degeneracy]

    def basis(self, n: int) -> list:
        if n < -1:
            return []
        return self.source.chain_basis(n + 1)

    def action(self, tag, n: int, b) -> dict:
        check_generator(SIMPLICIAL, tag, n)
        if not self.supports(tag):
            raise InvalidInput(f"{self.name} has no action of {tag!r}")
        X = self.source
        kind, i = tag[0], tag[1]
        if kind == "d":
            out = dict(X.chain_action(("d", i + 1, 0), n + 1, b))
            vec_add(out, X.chain_action(("d", i + 1, 1), n + 1, b), -1)
            return chain_clean(out)
        if kind == "s":
            img = X.chain_action(("g", i + 1, self.connection_kind), n + 1, b)
            return {y: self.degeneracy_sign * c for y, c in img.items()}
        return dict(X.chain_action(("t", i + 1), n + 1, b))


@dataclass
class SFunctorResult:
    system: SLinear
    source: LinearSystem


def apply_s(X: LinearSystem, degeneracy: str = "max") -> SFunctorResult:
    return SFunctorResult(SLinear(X, degeneracy), X)


# ---------------------------------------------------------------------------
# identity checks on linear systems


def act_word_module(X: LinearSystem, letters, n: int, chain: Mapping) -> dict:
    """Word action through ``X.action`` (the module itself, no quotient)."""
    cur, deg = dict(chain), n
    for tag in letters:
        check_generator(X.mode, tag, deg)
        out: dict = {}
        for b, c in cur.items():
            vec_add(out, X.action(tag, deg, b), c)
        cur, deg = chain_clean(out), generator_domain(X.mode, tag, deg)
    return cur


def linear_identity_suite(X: LinearSystem, max_degree: int) -> list[dict]:
    """Check every identity instance on every basis element it applies to.

    Instances that use a generator the system lacks are skipped.
    """
    records = []
    top = min(max_degree, X.max_deg)
    for inst in identity_instances(X.mode, top):
        letters = inst.lhs.letters + inst.rhs.letters
        if not all(X.supports(t) for t in letters):
            continue
        cod = inst.lhs.cod
        if cod < X.lo:
            continue
        witness = None
        for b in X.basis(cod):
            lhs = act_word_module(X, inst.lhs.letters, cod, {b: 1})
            rhs = act_word_module(X, inst.rhs.letters, cod, {b: 1})
            if lhs != rhs:
                witness = {"basis": repr(b), "lhs": repr(lhs), "rhs": repr(rhs)}
                break
        rec = {"identity": inst.identity, "degree": inst.degree, "indices": dict(inst.indices),
               "lhs": str(inst.lhs), "rhs": str(inst.rhs), "passed": witness is None}
        if witness:
            rec["witness"] = witness
        records.append(rec)
    return records


# ---------------------------------------------------------------------------
# complex comparisons


def compare_shifted(cubical: ComplexRep, simplicial: ComplexRep) -> dict:
    """Is ``cubical_n`` identical to ``simplicial_{n-1}`` (bases and matrices)?"""
    report = {"passed": True, "degrees": []}
    for n in cubical.degrees():
        m = n - 1
        if m not in simplicial.bases:
            continue
        same_basis = cubical.bases[n] == simplicial.bases[m]
        a, b = cubical.differential(n), simplicial.differential(m)
        diff = None
        if a.shape != b.shape:
            diff = {"shape": [list(a.shape), list(b.shape)]}
        elif a != b:
            for r, c, v in (a - b).items():
                diff = {"row": r, "col": c, "cubical": str(a[r, c]), "simplicial": str(b[r, c])}
                break
        ok = same_basis and diff is None
        report["degrees"].append({"n": n, "dim": cubical.dim(n), "passed": ok})
        if not ok and report["passed"]:
            report["passed"] = False
            report["first_difference"] = {"n": n, "basis_equal": same_basis, "entry": diff}
    return report


def check_complex_shift(X: LinearSystem, max_deg: int, ring: str = "Q") -> dict:
    """Cubical chains of ``X`` against simplicial chains of ``SX``, one degree down."""
    SX = apply_s(X).system
    C = cubical_complex_of(X, max_deg, ring)
    D = simplicial_complex_of(SX, max_deg - 1, ring)
    return compare_shifted(C, D)


def _quotient(C: ComplexRep, gens: Mapping[int, list]) -> ComplexRep:
    units = all(len(g) <= 1 and all(abs(v) == 1 for v in g.values())
                for gs in gens.values() for g in gs)
    if units:
        return coordinate_quotient(C, gens)
    if C.ring != "Q":
        raise InvalidInput("this Moore quotient is not free; use rational coefficients")
    return quotient_complex(C, gens)


def moore_simplicial(X: LinearSystem, max_deg: int, ring: str = "Q") -> ComplexRep:
    """Chains modulo degeneracies."""
    if X.mode != SIMPLICIAL:
        raise InvalidInput("moore_simplicial needs a simplicial system")
    C = simplicial_complex_of(X, max_deg, ring)
    cx = _quotient(C, generators_by_degree("Deg", X, C))
    cx.name = f"N({X.name})"
    return cx


def moore_cubical(X: LinearSystem, max_deg: int, ring: str = "Q") -> ComplexRep:
    """Chains modulo degeneracies and positive connections."""
    if X.mode != CUBICAL:
        raise InvalidInput("moore_cubical needs a cubical system")
    C = cubical_complex_of(X, max_deg, ring)
    cx = _quotient(C, generators_by_degree("posCon", X, C))
    cx.name = f"N({X.name})"
    return cx


def check_moore_shift(X: LinearSystem, max_deg: int, ring: str = "Q") -> dict:
    """Cubical Moore complex of ``X`` against the simplicial Moore complex of ``SX``."""
    SX = apply_s(X).system
    return compare_shifted(moore_cubical(X, max_deg, ring), moore_simplicial(SX, max_deg - 1, ring))


def check_poscon_acyclic(X: LinearSystem, max_deg: int, ring: str = "Z") -> dict:
    """Positive-connection sub-complex: zero homology, and ranks equal to the
    degeneracy sub-complex of ``SX`` one degree down."""
    C = cubical_complex_of(X, max_deg, ring)
    sub = subcomplex(generators_by_degree("posCon", X, C), C, f"posCon({X.name})")
    hom = sub.homology()
    SX = apply_s(X).system
    ranks = []
    for n in C.degrees():
        a = sub.dim(n)
        b = span_rank(subcomplex_generators("Deg", SX, n - 1), SX.chain_basis(n - 1), ring) if n - 1 >= SX.lo else 0
        ranks.append({"n": n, "posCon": a, "Deg_S": b, "equal": a == b})
    return {
        "passed": all(h.is_zero() for h in hom.values()) and all(r["equal"] for r in ranks),
        "homology": {n: str(h) for n, h in hom.items()},
        "ranks": ranks,
    }


def induced_map_commutes(X: LinearSystem, Y: LinearSystem, cell_map: Callable, max_deg: int) -> bool:
    """Does a basis map ``X -> Y`` commute with every generator action up to ``max_deg``?"""
    from .structure_maps import generator_tags

    for n in range(X.lo, max_deg + 1):
        for tag in generator_tags(X.mode, n, X.flags):
            if generator_domain(X.mode, tag, n) > max_deg:
                continue
            for b in X.basis(n):
                left = {cell_map(y): c for y, c in X.action(tag, n, b).items()}
                right = Y.action(tag, n, cell_map(b))
                if chain_clean(left) != chain_clean(right):
                    return False
    return True
