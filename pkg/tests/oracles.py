"""Independent reference computations used by the tests.

Nothing here imports the package under test.  Each oracle takes a different
route from the library: sympy for ranks and determinants, brute force
enumeration for lattices, hom-sets and group actions.
"""
from __future__ import annotations

from itertools import combinations, product
from math import gcd

import sympy


# ---------------------------------------------------------------------------
# simplicial homology of a finite simplicial complex, by brute force


def faces_of(facets) -> dict[int, list[tuple]]:
    """All faces, grouped by dimension, each as a sorted vertex tuple."""
    out: dict[int, set] = {}
    for f in facets:
        f = sorted(f)
        for k in range(1, len(f) + 1):
            for sub in combinations(f, k):
                out.setdefault(k - 1, set()).add(sub)
    return {d: sorted(s) for d, s in out.items()}


def oriented_boundary(faces: dict, d: int) -> sympy.Matrix:
    """Boundary from d-faces to (d-1)-faces; d = 0 maps to the empty face."""
    cols = faces.get(d, [])
    rows = faces.get(d - 1, []) if d > 0 else [()]
    pos = {r: k for k, r in enumerate(rows)}
    M = sympy.zeros(len(rows), len(cols))
    for j, simplex in enumerate(cols):
        for i in range(len(simplex)):
            M[pos[simplex[:i] + simplex[i + 1:]], j] += (-1) ** i
    return M


def reduced_betti(facets) -> tuple[int, ...]:
    """Reduced rational betti numbers in degrees 0..dim."""
    faces = faces_of(facets)
    top = max(faces)
    rank = {d: oriented_boundary(faces, d).rank() for d in range(0, top + 1)}
    rank[top + 1] = 0
    return tuple(len(faces[d]) - rank[d] - rank[d + 1] for d in range(0, top + 1))


# ---------------------------------------------------------------------------
# invariant factors via determinantal divisors


def determinantal_invariant_factors(rows: list[list[int]]) -> tuple[int, ...]:
    """d_k / d_{k-1}, where d_k is the gcd of all k x k minors.  Small inputs only."""
    M = sympy.Matrix(rows)
    m, n = M.shape
    divisors = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rs in combinations(range(m), k):
            for cs in combinations(range(n), k):
                g = gcd(g, int(M.extract(list(rs), list(cs)).det()))
        if g == 0:
            break
        divisors.append(g)
    return tuple(divisors[k] // divisors[k - 1] for k in range(1, len(divisors)))


def integer_det(rows: list[list[int]]) -> int:
    return int(sympy.Matrix(rows).det())


def rank_rational(rows: list[list], ncols: int | None = None) -> int:
    if not rows:
        return 0
    return sympy.Matrix(rows).rank()


# ---------------------------------------------------------------------------
# lattices by enumeration


def lattice_points(generators, coef: int, box: int) -> set[tuple]:
    """Integer combinations with coefficients in [-coef, coef] that land in the box."""
    gens = [tuple(g) for g in generators]
    if not gens:
        return set()
    dim = len(gens[0])
    out = set()
    for cs in product(range(-coef, coef + 1), repeat=len(gens)):
        v = tuple(sum(c * g[k] for c, g in zip(cs, gens)) for k in range(dim))
        if all(abs(x) <= box for x in v):
            out.add(v)
    return out


def in_integer_span(generators, target) -> bool:
    """Decide membership with sympy's Smith form: A x = b has an integer solution."""
    gens = [list(g) for g in generators]
    if not gens:
        return all(x == 0 for x in target)
    A = sympy.Matrix(gens).T
    b = sympy.Matrix(list(target))
    from sympy.matrices.normalforms import smith_normal_decomp

    D, U, V = smith_normal_decomp(A, domain=sympy.ZZ)
    c = U * b
    r = min(D.shape)
    for k in range(D.rows):
        dk = D[k, k] if k < r else 0
        if dk == 0:
            if c[k] != 0:
                return False
        elif c[k] % dk != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# permutations


def perm_sign_by_cycles(images) -> int:
    """(-1)^(n - number of cycles)."""
    seen = set()
    cycles = 0
    for s in range(len(images)):
        if s in seen:
            continue
        cycles += 1
        j = s
        while j not in seen:
            seen.add(j)
            j = images[j]
    return -1 if (len(images) - cycles) % 2 else 1


def delete_row_column(images, i: int) -> tuple[int, ...]:
    """Permutation matrix P[t(j)][j] = 1; drop column i and row t(i); read it back."""
    n = len(images)
    P = [[1 if images[j] == r else 0 for j in range(n)] for r in range(n)]
    Q = [[P[r][c] for c in range(n) if c != i] for r in range(n) if r != images[i]]
    return tuple(next(r for r in range(n - 1) if Q[r][c]) for c in range(n - 1))


# ---------------------------------------------------------------------------
# cube morphisms into [1]


def read_once_tables(k: int) -> set[tuple[int, ...]]:
    """Truth tables of formulas built from the literals x_1..x_k, each used once,
    in order, combined by max and min over contiguous blocks.  With literal
    negation these are the nondegenerate maps [1]^k -> [1] generated by
    connections and reversals."""
    inputs = list(product((0, 1), repeat=k))

    def block(lo: int, hi: int) -> set[tuple]:
        if hi - lo == 1:
            x = tuple(v[lo] for v in inputs)
            return {x, tuple(1 - b for b in x)}
        out = set()
        for mid in range(lo + 1, hi):
            for a in block(lo, mid):
                for b in block(mid, hi):
                    out.add(tuple(max(p, q) for p, q in zip(a, b)))
                    out.add(tuple(min(p, q) for p, q in zip(a, b)))
        return out

    return block(0, k) if k else {(0,), (1,)}


def classes_under_negation(tables: set[tuple]) -> int:
    seen = set()
    count = 0
    for t in tables:
        if t in seen:
            continue
        count += 1
        seen.add(t)
        seen.add(tuple(1 - b for b in t))
    return count


# ---------------------------------------------------------------------------
# graph cube maps


def cube_graph_homs(edges, vertices, n: int) -> int:
    """Count maps {0,1}^n -> V sending cube edges to equal or adjacent vertices."""
    adj = {frozenset(e) for e in edges}
    pts = list(product((0, 1), repeat=n))
    cube_edges = [(p, q) for p, q in combinations(pts, 2) if sum(a != b for a, b in zip(p, q)) == 1]
    count = 0
    for vals in product(list(vertices), repeat=len(pts)):
        f = dict(zip(pts, vals))
        if all(f[p] == f[q] or frozenset((f[p], f[q])) in adj for p, q in cube_edges):
            count += 1
    return count


def tuples_with_face_support(facets, n: int, increasing: bool) -> int:
    """Count (n+1)-tuples of vertices whose support lies in a facet."""
    fs = [frozenset(f) for f in facets]
    verts = sorted(set().union(*fs))
    count = 0
    for t in product(verts, repeat=n + 1):
        if increasing and any(t[k] > t[k + 1] for k in range(n)):
            continue
        if any(set(t) <= f for f in fs):
            count += 1
    return count


def flip_classes(n: int) -> int:
    """Binary words of length n+1 modulo complementing every letter."""
    words = set(product((0, 1), repeat=n + 1))
    return classes_under_negation(words)

