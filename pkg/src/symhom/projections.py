"""Signed group averages on chain groups, the homotopies that contract them
to the identity, and their image complexes.

All operators here work over Q.  Each is evaluated lazily on basis
elements and memoized per system.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable, Mapping

from .chain_modules import (
    ComplexRep,
    FreeLinear,
    LinearSystem,
    PrecompositionSystem,
    SpanBasis,
    boundary,
    _getter,
    chain_clean,
    group_fmap,
)
from .errors import ContractViolation, InvalidInput, ResourceCapError
from .exact_linalg import ExactMatrix, norm_scalar, rank_q, vec_add
from .structure_maps import CUBICAL, SIMPLICIAL, generator_fn
from .symmetries import (
    DEFAULT_GROUP_CAP,
    Permutation,
    enumerate_group,
    group_order,
    sign,
)

Operator = Callable[[int, Mapping], dict]


def _require_rational(X: LinearSystem) -> None:
    if getattr(X, "ring", "Q") != "Q":
        raise InvalidInput("averaging operators divide by group orders and need rational coefficients")


def _require_mode(X: LinearSystem, mode: str, what: str) -> None:
    if X.mode != mode:
        raise InvalidInput(f"{what} needs a {mode} system")


def _cache(X: LinearSystem) -> dict:
    return X.__dict__.setdefault("_operator_cache", {})


def _linear(X: LinearSystem, key, n: int, x: Mapping, on_basis: Callable) -> dict:
    """Extend ``on_basis`` linearly, memoizing basis images under ``key``."""
    memo = _cache(X).setdefault(key, {})
    if len(x) == 1:
        (b, c), = x.items()
        if c == 1:
            img = memo.get(b)
            if img is None:
                img = memo[b] = on_basis(b)
            return dict(img)
    out: dict = {}
    for b, c in x.items():
        img = memo.get(b)
        if img is None:
            img = on_basis(b)
            memo[b] = img
        vec_add(out, img, c)
    return chain_clean(out)


_SIGNED_MAPS: dict = {}


def _signed_maps(mode: str, key: tuple, n: int, elements: Callable) -> list:
    """``[(g, map, sign), ...]`` for a group in degree ``n``, built once per key."""
    hit = _SIGNED_MAPS.get((mode, key, n))
    if hit is None:
        hit = _SIGNED_MAPS[(mode, key, n)] = [(g, group_fmap(mode, g, n), sign(g)) for g in elements()]
    return hit


def _signed_average(X: LinearSystem, n: int, b, pairs: list, order: int) -> dict:
    out: dict = {}
    unit = {b: 1}
    free = isinstance(X, FreeLinear)
    for g, fm, s in pairs:
        img = X.act_map(fm, unit) if free else X.act_group(g, n, unit)
        for y, c in img.items():
            out[y] = out.get(y, 0) + c * s
    return {y: norm_scalar(Fraction(c, order)) for y, c in out.items() if c}


# ---------------------------------------------------------------------------
# simplicial antisymmetrizers


def _embedded_sym(k: int, n: int, cap: int) -> list[Permutation]:
    """Sym([k]) inside Sym([n]), fixing k+1..n."""
    if factorial(k + 1) > cap:
        raise ResourceCapError(f"group of order {factorial(k + 1)} exceeds cap {cap}")
    return [g.extend(n + 1) for g in enumerate_group(k, "Sym", cap, base=0)]


def p_sym(X: LinearSystem, k: int, n: int, x: Mapping, cap: int = DEFAULT_GROUP_CAP) -> dict:
    """Signed average over permutations of the first ``k + 1`` vertices."""
    _require_rational(X)
    _require_mode(X, SIMPLICIAL, "p_sym")
    if not 0 <= k <= n:
        if n == -1 and k == -1:
            return chain_clean(x)
        raise InvalidInput(f"need 0 <= k <= n, got k={k}, n={n}")
    if k == 0 or not x:
        return chain_clean(x)
    if "t" not in X.flags:
        raise InvalidInput(f"{X.name} has no transpositions")
    if factorial(k + 1) > cap:
        raise ResourceCapError(f"group of order {factorial(k + 1)} exceeds cap {cap}")

    def on_basis(b):
        pairs = _signed_maps(X.mode, ("p", k), n, lambda: _embedded_sym(k, n, cap))
        return _signed_average(X, n, b, pairs, factorial(k + 1))

    return _linear(X, ("p", k, n), n, x, on_basis)


def p_full(X: LinearSystem, n: int, x: Mapping, cap: int = DEFAULT_GROUP_CAP) -> dict:
    """The degree-``n`` component of the antisymmetrizing projection."""
    if n <= 0:
        return chain_clean(x)
    return p_sym(X, n, n, x, cap)


def h_sym(X: LinearSystem, n: int, x: Mapping, cap: int = DEFAULT_GROUP_CAP) -> dict:
    """Degree-raising homotopy from the identity to the antisymmetrizer."""
    _require_rational(X)
    _require_mode(X, SIMPLICIAL, "h_sym")
    if n < 0:
        return {}

    def on_basis(b):
        out: dict = {}
        for k in range(n + 1):
            up = X.chain_action(("s", k), n, b)
            vec_add(out, p_sym(X, k, n + 1, up, cap), -1 if k % 2 else 1)
        return chain_clean(out)

    return _linear(X, ("h", n), n, x, on_basis)


def partial_face_sum(X: LinearSystem, n: int, x: Mapping, lo: int, hi: int) -> dict:
    """Signed faces with index in ``[lo, hi]`` (simplicial or cubical signs)."""
    out: dict = {}
    if X.mode == SIMPLICIAL:
        for i in range(max(lo, 0), min(hi, n) + 1):
            vec_add(out, X.act_chain(("d", i), n, x), -1 if i % 2 else 1)
    else:
        for i in range(max(lo, 1), min(hi, n) + 1):
            s = 1 if i % 2 else -1
            vec_add(out, X.act_chain(("d", i, 0), n, x), s)
            vec_add(out, X.act_chain(("d", i, 1), n, x), -s)
    return chain_clean(out)


def mixed_formula_sides(X: LinearSystem, k: int, n: int, x: Mapping,
                        cap: int = DEFAULT_GROUP_CAP) -> tuple[dict, dict]:
    """Both sides of  d p^{k,n} = p^{k-1,n-1} d_{<=k} + p^{k,n-1} d_{>k}
    (simplicial antisymmetrizers) or the reversal analogue (cubical)."""
    if not 0 < k <= n:
        raise InvalidInput(f"need 0 < k <= n, got k={k}, n={n}")
    if X.mode == SIMPLICIAL:
        op = p_sym
    else:
        op = q_rev
    lhs = boundary(X, n, op(X, k, n, x, cap))
    rhs = op(X, k - 1, n - 1, partial_face_sum(X, n, x, 0, k), cap)
    upper = partial_face_sum(X, n, x, k + 1, n)
    if upper:
        vec_add(rhs, op(X, k, n - 1, upper, cap))
    return lhs, chain_clean(rhs)


# ---------------------------------------------------------------------------
# cubical averages


def q_rev(X: LinearSystem, k: int, n: int, x: Mapping, cap: int = DEFAULT_GROUP_CAP) -> dict:
    """Signed average over reversals of the first ``k`` coordinates."""
    _require_rational(X)
    _require_mode(X, CUBICAL, "q_rev")
    if not 0 <= k <= n:
        raise InvalidInput(f"need 0 <= k <= n, got k={k}, n={n}")
    if k == 0 or not x:
        return chain_clean(x)
    if "r" not in X.flags:
        raise InvalidInput(f"{X.name} has no reversals")
    if 1 << k > cap:
        raise ResourceCapError(f"group of order {1 << k} exceeds cap {cap}")

    def on_basis(b):
        pairs = _signed_maps(X.mode, ("q", k), n, lambda: [a.extend(n) for a in enumerate_group(k, "Rev", cap)])
        return _signed_average(X, n, b, pairs, 1 << k)

    return _linear(X, ("q", k, n), n, x, on_basis)


def q_full(X: LinearSystem, n: int, x: Mapping, cap: int = DEFAULT_GROUP_CAP) -> dict:
    return q_rev(X, n, n, x, cap)


def h_rev_raw(X: LinearSystem, n: int, x: Mapping, cap: int = DEFAULT_GROUP_CAP) -> dict:
    """``sum_{k=1}^{n} (-1)^k q^{k,n+1} g_k^0 x``, the sum as usually written.

    It satisfies ``d h + h d = q - id``; :func:`h_rev` is its negative.
    """
    _require_rational(X)
    _require_mode(X, CUBICAL, "h_rev")
    if n <= 0:
        return {}

    def on_basis(b):
        out: dict = {}
        for k in range(1, n + 1):
            up = X.chain_action(("g", k, 0), n, b)
            vec_add(out, q_rev(X, k, n + 1, up, cap), -1 if k % 2 else 1)
        return chain_clean(out)

    return _linear(X, ("hr", n), n, x, on_basis)


def h_rev(X: LinearSystem, n: int, x: Mapping, cap: int = DEFAULT_GROUP_CAP) -> dict:
    """Homotopy with ``d h + h d = id - q``."""
    return {b: -c for b, c in h_rev_raw(X, n, x, cap).items()}


def p_cubical_t(X: LinearSystem, n: int, x: Mapping, cap: int = DEFAULT_GROUP_CAP) -> dict:
    """Signed average over all coordinate permutations of the ``n``-cube."""
    _require_rational(X)
    _require_mode(X, CUBICAL, "p_cubical_t")
    if n <= 1 or not x:
        return chain_clean(x)
    if "t" not in X.flags:
        raise InvalidInput(f"{X.name} has no transpositions")
    if factorial(n) > cap:
        raise ResourceCapError(f"group of order {factorial(n)} exceeds cap {cap}")

    def on_basis(b):
        pairs = _signed_maps(X.mode, ("pt",), n, lambda: enumerate_group(n, "Sym", cap, base=1))
        return _signed_average(X, n, b, pairs, factorial(n))

    return _linear(X, ("pt", n), n, x, on_basis)


def u_hyper(X: LinearSystem, n: int, x: Mapping, cap: int = DEFAULT_GROUP_CAP) -> dict:
    """Signed average over the hyperoctahedral group of the ``n``-cube."""
    _require_rational(X)
    _require_mode(X, CUBICAL, "u_hyper")
    if n == 0 or not x:
        return chain_clean(x)
    if not {"t", "r"} <= X.flags:
        raise InvalidInput(f"{X.name} lacks transpositions or reversals")
    order = group_order(n, "Hyperoct")
    if order > cap:
        raise ResourceCapError(f"group of order {order} exceeds cap {cap}")

    def on_basis(b):
        pairs = _signed_maps(X.mode, ("u",), n, lambda: enumerate_group(n, "Hyperoct", cap))
        return _signed_average(X, n, b, pairs, order)

    return _linear(X, ("u", n), n, x, on_basis)


def projection_for(X: LinearSystem) -> Operator:
    """The full-symmetry projection matching the flags of ``X``."""
    if X.mode == SIMPLICIAL:
        return lambda n, x: p_full(X, n, x)
    if X.flags == {"t"}:
        return lambda n, x: p_cubical_t(X, n, x)
    if X.flags == {"r"}:
        return lambda n, x: q_full(X, n, x)
    if X.flags == {"t", "r"}:
        return lambda n, x: u_hyper(X, n, x)
    raise InvalidInput(f"{X.name} has no symmetries")


# ---------------------------------------------------------------------------
# matrices and checks


def operator_matrix(X: LinearSystem, op: Operator, n: int, out_degree: int | None = None) -> ExactMatrix:
    """Matrix of ``op`` from ``C_n`` to ``C_{out_degree}`` in the chain bases."""
    m = n if out_degree is None else out_degree
    src = X.chain_basis(n)
    dst = X.chain_index(m) if m >= X.lo else {}
    cols = []
    for b in src:
        img = op(n, {b: 1})
        try:
            cols.append({dst[y]: c for y, c in img.items()})
        except KeyError as exc:
            raise ContractViolation(f"operator output {exc.args[0]!r} is not a basis element of degree {m}") from None
    return ExactMatrix.from_columns(cols, len(dst))


def boundary_matrix(X: LinearSystem, n: int) -> ExactMatrix:
    return operator_matrix(X, lambda k, x: boundary(X, k, x), n, n - 1)


def first_difference(a: ExactMatrix, b: ExactMatrix) -> tuple | None:
    d = a - b
    for r, c, v in d.items():
        return (r, c, v)
    return None


def check_chain_map(X: LinearSystem, op: Operator, n: int) -> tuple | None:
    """``d op = op d`` on ``C_n``; None when it holds, else a differing entry."""
    if n <= X.lo:
        return None
    lhs = boundary_matrix(X, n) @ operator_matrix(X, op, n)
    rhs = operator_matrix(X, op, n - 1) @ boundary_matrix(X, n)
    return first_difference(lhs, rhs)


def check_idempotent(X: LinearSystem, op: Operator, n: int) -> tuple | None:
    P = operator_matrix(X, op, n)
    return first_difference(P @ P, P)


def check_homotopy(X: LinearSystem, op: Operator, htpy: Operator, n: int) -> tuple | None:
    """``d h + h d = id - op`` on ``C_n`` as a full matrix identity."""
    dim = len(X.chain_basis(n))
    idx = X.chain_index(n)
    cols_l, cols_r = [], []
    for b in X.chain_basis(n):
        up = htpy(n, {b: 1})
        left = boundary(X, n + 1, up) if up else {}
        down = boundary(X, n, {b: 1})
        if down:
            vec_add(left, htpy(n - 1, down))
        right = {b: 1}
        vec_add(right, op(n, {b: 1}), -1)
        cols_l.append({idx[y]: c for y, c in chain_clean(left).items()})
        cols_r.append({idx[y]: c for y, c in chain_clean(right).items()})
    return first_difference(ExactMatrix.from_columns(cols_l, dim), ExactMatrix.from_columns(cols_r, dim))


def kernel_dimension(X: LinearSystem, op: Operator, n: int) -> int:
    P = operator_matrix(X, op, n)
    return P.ncols - rank_q(P)


# ---------------------------------------------------------------------------
# image complexes


def image_complex(X: LinearSystem, op: Operator, C: ComplexRep, name: str = "") -> ComplexRep:
    """The complex of images of an idempotent chain operator.

    Aborts if the operator is not idempotent, or if the inclusion does not
    split it.
    """
    if C.ring != "Q":
        raise InvalidInput("image complexes are computed over Q")
    spans = {}
    for n in C.degrees():
        P = operator_matrix(X, op, n)
        if C.bases[n] != X.chain_basis(n):
            raise InvalidInput("complex and system bases differ")
        if first_difference(P @ P, P) is not None:
            raise ContractViolation(f"operator is not idempotent in degree {n}")
        span = SpanBasis([c for c in P.column_dicts() if c], "Q")
        for v in span.vectors():
            if P.apply(v) != v:
                raise ContractViolation(f"inclusion does not split the operator in degree {n}")
        spans[n] = span
    bases = {n: [tuple(sorted(v.items())) for v in spans[n].vectors()] for n in spans}
    diffs = {}
    for n in C.degrees():
        d = C.differential(n)
        below = spans.get(n - 1)
        cols = []
        for v in spans[n].vectors():
            img = d.apply(v)
            if below is None:
                cols.append({})
                continue
            coords = below.coordinates(img)
            if coords is None:
                raise ContractViolation(f"image is not closed under the differential in degree {n}")
            cols.append(coords)
        diffs[n] = ExactMatrix.from_columns(cols, len(below) if below is not None else 0)
    cx = ComplexRep(C.lo, bases, diffs, "Q", name or f"im({C.name})")
    cx.check_d2()
    return cx


# ---------------------------------------------------------------------------
# law checks through signed orbits
#
# A symmetry group permutes the chain basis up to sign, and each averaging
# operator satisfies op(g b) = sgn(g) op(b).  So op is known on a whole
# orbit once it is known on one representative, and the values on distinct
# orbits have disjoint supports.  That turns the full-matrix identities
# ``d op = op d`` and ``op op = op`` into coefficient comparisons, one
# column at a time, without forming either matrix.

GROUP_OF = {"p": ("Sym", 0), "p_t": ("Sym", 1), "q": ("Rev", 0), "u": ("Hyperoct", 0)}


def _group_elements(kind: str, n: int, cap: int) -> list:
    name, base = GROUP_OF[kind]
    if name == "Sym":
        return list(enumerate_group(n, "Sym", cap, base=base))
    return list(enumerate_group(n, name, cap))


def _signed_image(X: LinearSystem, g, fm, n: int, b, idx: Mapping) -> tuple:
    if isinstance(X, FreeLinear):
        y = X.cells_of.act(fm, b)
        if y not in idx:
            raise ContractViolation(f"symmetry {g!r} sends {b!r} outside the chain basis")
        return y, 1
    img = X.act_map(fm, {b: 1})
    if len(img) != 1 or abs(next(iter(img.values()))) != 1:
        raise ContractViolation(f"symmetry {g!r} does not permute the basis at {b!r}")
    return next(iter(img.items()))


def signed_orbits(X: LinearSystem, kind: str, n: int, cap: int = DEFAULT_GROUP_CAP) -> tuple[dict, dict]:
    """``(where, last)``: ``where[b] = (rep, s)`` with ``op(b) = s * op(rep)``,
    and for each representative the last orbit member reached (for spot checks)."""
    elems = [(g, group_fmap(X.mode, g, n), sign(g)) for g in _group_elements(kind, n, cap)]
    idx = X.chain_index(n)
    where: dict = {}
    last: dict = {}
    for b in X.chain_basis(n):
        if b in where:
            continue
        where[b] = (b, 1)
        for g, fm, sg in elems:
            y, c = _signed_image(X, g, fm, n, b, idx)
            hit = where.get(y)
            if hit is None:
                where[y] = (b, c * sg)
                last[b] = y
            elif hit[0] != b:
                raise ContractViolation(f"orbits of {b!r} and {hit[0]!r} overlap")
    return where, last


def _face_fn(X: LinearSystem, n: int, below: Mapping) -> Callable:
    """``b -> [(face, sign), ...]``, the boundary of a basis element, with
    nothing memoized (degree-4 graph cubes number in the millions)."""
    if X.mode == CUBICAL and isinstance(X, FreeLinear):
        cells = X.cells_of
        plain = type(cells).canon is PrecompositionSystem.canon
        maps = []
        for i in range(1, n + 1):
            s = 1 if i % 2 else -1
            for eps, e in ((0, s), (1, -s)):
                get = _getter(generator_fn(CUBICAL, ("d", i, eps), n).table)
                maps.append((get if plain else (lambda c, get=get: cells.canon(get(c))), e))

        def faces(b):
            out = []
            for get, e in maps:
                y = get(b)
                if y in below:
                    out.append((y, e))
            return out

        return faces
    return lambda b: list(boundary(X, n, {b: 1}).items())


def _scaled(v: Mapping, order: int) -> dict:
    out = {}
    for y, c in v.items():
        if type(c) is int:
            out[y] = c * order
        else:
            q, r = divmod(c.numerator * order, c.denominator)
            out[y] = Fraction(c.numerator * order, c.denominator) if r else q
    return out


def _blocks(basis: list, partitions: list) -> list:
    """Classes of the finest partition coarser than every ``where`` map given."""
    parent: dict = {}

    def find(x):
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while x != root:
            parent[x], x = root, parent.get(x, x)
        return root

    for where in partitions:
        for b, (rep, _) in where.items():
            ra, rb = find(b), find(rep)
            if ra != rb:
                parent[ra] = rb
    out: dict = {}
    for b in basis:
        out.setdefault(find(b), []).append(b)
    return list(out.values())


def orbit_law_checks(X: LinearSystem, ops: Mapping[str, Operator], n: int,
                     cap: int = DEFAULT_GROUP_CAP, spot_checks: int = 256) -> dict:
    """Chain-map and idempotence checks on ``C_n`` for averaging operators
    named by their group (keys of ``GROUP_OF``).

    Returns ``{name: {"chain_map": witness, "idempotent": witness,
    "equivariant": witness}}`` with None for every law that holds.
    Averages are handled as ``|G| * op`` so the inner loops stay integral.
    Equivariance is spot-checked on one member of each of the first
    ``spot_checks`` orbits.

    Since ``op(g b) = sgn(g) op(b)`` and distinct orbit averages have
    disjoint supports, ``d op = op d`` holds on ``C_n`` exactly when
    ``d op(r) = op(d r)`` for each representative ``r`` and the expansion
    of ``op(d b)`` in averages is ``s`` times that of ``op(d r)`` whenever
    ``op(b) = s op(r)``.
    """
    _require_rational(X)
    lo = X.lo
    report = {}
    lower = []
    for name, op in ops.items():
        order = len(_group_elements(name, n, cap))
        where, last = signed_orbits(X, name, n, cap)
        A = {r: _scaled(op(n, {r: 1}), order) for r, (rep, _) in where.items() if rep == r}
        res = {"chain_map": None, "idempotent": None, "equivariant": None}
        report[name] = res
        for i, (r, y) in enumerate(last.items()):
            if i >= spot_checks:
                break
            s = where[y][1]
            if _scaled(op(n, {y: 1}), order) != {k: s * v for k, v in A[r].items()}:
                res["equivariant"] = (repr(y), repr(r))
                break
        # order^2 op(op(r)) = sum_rep (sum_y A_y s_y) A(rep), to compare with order * A(r)
        for r, a in A.items():
            coef: dict = {}
            for y, c in a.items():
                rep, s = where[y]
                coef[rep] = coef.get(rep, 0) + c * s
            back: dict = {}
            for rep, c in coef.items():
                if c:
                    vec_add(back, A[rep], c)
            if back != {y: order * c for y, c in a.items()}:
                res["idempotent"] = (repr(r),)
                break
        if n > lo:
            order_lo = len(_group_elements(name, n - 1, cap))
            where_lo, _ = signed_orbits(X, name, n - 1, cap)
            A_lo = {r: _scaled(op(n - 1, {r: 1}), order_lo) for r, (rep, _) in where_lo.items() if rep == r}
            lower.append((where, A, where_lo, A_lo, Fraction(order_lo, order), res))
    if not lower:
        return report
    faces = _face_fn(X, n, X.chain_index(n - 1))
    for block in _blocks(X.chain_basis(n), [t[0] for t in lower]):
        fbs = {b: faces(b) for b in block}

        def face_of(y):
            return fbs[y] if y in fbs else faces(y)

        for where, A, where_lo, A_lo, scale, res in lower:
            if res["chain_map"] is None:
                res["chain_map"] = _check_block(block, face_of, where, A, where_lo, A_lo, scale)
    return report


def _check_block(block: list, face_of: Callable, where: Mapping, A: Mapping, where_lo: Mapping,
                 A_lo: Mapping, scale: Fraction) -> tuple | None:
    lam = {}
    for b in block:
        if where[b][0] == b:
            coeffs = _decompose(A[b], face_of, where_lo, A_lo)
            if coeffs is None:
                return (repr(b), "boundary of the average is not a combination of averages")
            # d op(r) = sum_k coeffs[k] * order_lo / order * op(k)
            pos = {k: norm_scalar(c * scale) for k, c in coeffs.items()}
            lam[b] = (pos, {k: -c for k, c in pos.items()})
    for b in block:
        rep, s = where[b]
        coef: dict = {}
        for y, e in face_of(b):
            r2, s2 = where_lo[y]
            if A_lo[r2]:
                coef[r2] = coef.get(r2, 0) + e * s2
        for k in [k for k, v in coef.items() if not v]:
            del coef[k]
        if coef != lam[rep][0 if s == 1 else 1]:
            return (repr(b),)
    return None


def _decompose(a: Mapping, faces: Callable, where_lo: Mapping, A_lo: Mapping) -> dict | None:
    """Coefficients ``k`` with ``d a = sum k[r] * A_lo[r]``, or None if ``d a``
    is not of that form."""
    img: dict = {}
    for b, c in a.items():
        for y, e in faces(b):
            v = img.get(y, 0) + c * e
            if v:
                img[y] = v
            else:
                del img[y]
    parts: dict = {}
    for y, c in img.items():
        parts.setdefault(where_lo[y][0], {})[y] = c
    coeffs = {}
    for r2, part in parts.items():
        target = A_lo[r2]
        if part.keys() != target.keys():
            return None
        y0 = next(iter(part))
        p0, t0 = part[y0], target[y0]
        if any(part[y] * t0 != p0 * target[y] for y in part):
            return None
        coeffs[r2] = Fraction(p0) / t0
    return coeffs
