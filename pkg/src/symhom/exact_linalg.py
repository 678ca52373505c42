"""Exact linear algebra over the integers and the rationals.

Scalars are Python ``int`` (integer mode) or ``fractions.Fraction``
(rational mode).  Fractions with denominator one are stored as ints, so an
integer matrix never carries Fraction objects.  Nothing here ever touches
floating point.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ContractViolation, InvalidInput

Scalar = int | Fraction
SparseVec = dict  # index -> Scalar, never storing zeros

RINGS = ("Q", "Z")


def norm_scalar(v) -> Scalar:
    """Canonical exact scalar: ints stay ints, integral fractions become ints."""
    if isinstance(v, bool):
        return int(v)
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else v
    raise InvalidInput(f"not an exact scalar: {v!r}")


def check_ring(ring: str) -> str:
    r = ring.upper()
    if r not in RINGS:
        raise InvalidInput(f"unknown ring {ring!r}; expected one of {RINGS}")
    return r


# ---------------------------------------------------------------------------
# sparse vector helpers (dicts index -> nonzero scalar)


def vec_add(acc: dict, other: Mapping, scale: Scalar = 1) -> dict:
    """acc += scale * other, in place; returns acc."""
    for k, v in other.items():
        s = acc.get(k, 0) + scale * v
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)
    return acc


def vec_scale(v: Mapping, s: Scalar) -> dict:
    if not s:
        return {}
    return {k: x * s for k, x in v.items()}


def vec_normalize(v: Mapping) -> dict:
    return {k: norm_scalar(x) for k, x in v.items() if x}


def _content(row: Mapping[int, int]) -> int:
    g = 0
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            break
    return g


def _integralize(row: Mapping) -> dict:
    """Scale a rational row to a primitive integer row (same Q-span)."""
    den = 1
    for x in row.values():
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    out = {k: int(x * den) for k, x in row.items() if x}
    g = _content(out)
    if g > 1:
        out = {k: x // g for k, x in out.items()}
    return out


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


# ---------------------------------------------------------------------------


class ExactMatrix:
    """Immutable sparse matrix with exact entries.

    Stored row-major as ``{row: {col: value}}`` with no explicit zeros.
    """

    __slots__ = ("nrows", "ncols", "_rows", "_cols")

    def __init__(self, nrows: int, ncols: int, entries: Mapping | Iterable | None = None):
        if nrows < 0 or ncols < 0:
            raise InvalidInput("matrix dimensions must be nonnegative")
        self.nrows = nrows
        self.ncols = ncols
        rows: dict[int, dict[int, Scalar]] = {}
        if entries is not None:
            # either {(r, c): v} or an iterable of (r, c, v) triples
            if isinstance(entries, Mapping):
                triples = ((r, c, v) for (r, c), v in entries.items())
            else:
                triples = entries
            for r, c, v in triples:
                if not (0 <= r < nrows and 0 <= c < ncols):
                    raise InvalidInput(f"entry ({r}, {c}) outside {nrows}x{ncols}")
                v = norm_scalar(v)
                if v:
                    rows.setdefault(r, {})
                    s = rows[r].get(c, 0) + v
                    if s:
                        rows[r][c] = s
                    else:
                        del rows[r][c]
        self._rows = {r: d for r, d in rows.items() if d}
        self._cols = None

    # construction -----------------------------------------------------------

    @classmethod
    def _raw(cls, nrows: int, ncols: int, rows: dict) -> "ExactMatrix":
        m = cls.__new__(cls)
        m.nrows, m.ncols = nrows, ncols
        m._rows = {r: d for r, d in rows.items() if d}
        m._cols = None
        return m

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], ncols: int | None = None) -> "ExactMatrix":
        nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if nrows else 0
        rows = {}
        for i, row in enumerate(data):
            if len(row) != ncols:
                raise InvalidInput("ragged dense matrix")
            d = {j: norm_scalar(v) for j, v in enumerate(row) if v}
            if d:
                rows[i] = d
        return cls._raw(nrows, ncols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Mapping[int, Scalar]], nrows: int) -> "ExactMatrix":
        rows: dict[int, dict] = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if not 0 <= i < nrows:
                    raise InvalidInput(f"row index {i} outside {nrows}")
                if v:
                    rows.setdefault(i, {})[j] = norm_scalar(v)
        return cls._raw(nrows, len(columns), rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Mapping[int, Scalar]], ncols: int) -> "ExactMatrix":
        out = {}
        for i, row in enumerate(rows):
            d = {j: norm_scalar(v) for j, v in row.items() if v}
            if any(not 0 <= j < ncols for j in d):
                raise InvalidInput("column index out of range")
            if d:
                out[i] = d
        return cls._raw(len(rows), ncols, out)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls._raw(n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "ExactMatrix":
        return cls._raw(nrows, ncols, {})

    # access -------------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def nnz(self) -> int:
        return sum(len(d) for d in self._rows.values())

    def __getitem__(self, rc: tuple[int, int]) -> Scalar:
        r, c = rc
        return self._rows.get(r, {}).get(c, 0)

    def items(self) -> Iterator[tuple[int, int, Scalar]]:
        for r in sorted(self._rows):
            row = self._rows[r]
            for c in sorted(row):
                yield r, c, row[c]

    def row(self, r: int) -> dict:
        return dict(self._rows.get(r, {}))

    def row_dicts(self) -> list[dict]:
        return [dict(self._rows.get(r, {})) for r in range(self.nrows)]

    def column_dicts(self) -> list[dict]:
        cols: list[dict] = [{} for _ in range(self.ncols)]
        for r, row in self._rows.items():
            for c, v in row.items():
                cols[c][r] = v
        return cols

    def column(self, c: int) -> dict:
        return dict(self._columns_cache().get(c, {}))

    def to_dense(self) -> list[list[Scalar]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for r, row in self._rows.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def is_zero(self) -> bool:
        return not self._rows

    def is_integral(self) -> bool:
        return all(isinstance(v, int) for row in self._rows.values() for v in row.values())

    # algebra ----------------------------------------------------------------

    def transpose(self) -> "ExactMatrix":
        rows: dict[int, dict] = {}
        for r, row in self._rows.items():
            for c, v in row.items():
                rows.setdefault(c, {})[r] = v
        return ExactMatrix._raw(self.ncols, self.nrows, rows)

    def apply(self, vec: Mapping[int, Scalar]) -> dict:
        """Matrix times sparse column vector, returned sparse."""
        cols = self._columns_cache()
        out: dict = {}
        for j, x in vec.items():
            if x:
                vec_add(out, cols.get(j, {}), x)
        return vec_normalize(out)

    def _columns_cache(self) -> dict:
        if self._cols is None:
            cols: dict[int, dict] = {}
            for r, row in self._rows.items():
                for c, v in row.items():
                    cols.setdefault(c, {})[r] = v
            self._cols = cols
        return self._cols

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise InvalidInput(f"shape mismatch {self.shape} @ {other.shape}")
        rows = {}
        for r, row in self._rows.items():
            acc: dict = {}
            for k, v in row.items():
                orow = other._rows.get(k)
                if orow:
                    vec_add(acc, orow, v)
            if acc:
                rows[r] = vec_normalize(acc)
        return ExactMatrix._raw(self.nrows, other.ncols, rows)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise InvalidInput("shape mismatch in addition")
        rows = {r: dict(d) for r, d in self._rows.items()}
        for r, row in other._rows.items():
            vec_add(rows.setdefault(r, {}), row)
        return ExactMatrix._raw(self.nrows, self.ncols, {r: vec_normalize(d) for r, d in rows.items()})

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix._raw(self.nrows, self.ncols, {r: {c: -v for c, v in d.items()} for r, d in self._rows.items()})

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def scaled(self, s: Scalar) -> "ExactMatrix":
        s = norm_scalar(s)
        return ExactMatrix._raw(self.nrows, self.ncols, {r: vec_normalize(vec_scale(d, s)) for r, d in self._rows.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, tuple(self.items())))

    def __repr__(self) -> str:
        return f"ExactMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        cpos = {c: j for j, c in enumerate(cols)}
        out = {}
        for i, r in enumerate(rows):
            row = self._rows.get(r)
            if row:
                d = {cpos[c]: v for c, v in row.items() if c in cpos}
                if d:
                    out[i] = d
        return ExactMatrix._raw(len(rows), len(cols), out)


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    U: ExactMatrix
    D: ExactMatrix
    V: ExactMatrix
    invariant_factors: tuple[int, ...]


def _dense_snf(a: list[list[int]], track: bool):
    """In-place Smith reduction of a dense integer matrix.

    Returns (diag, U, V) where U*A*V = D.  U and V are None unless ``track``.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if track else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if track:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if track:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        if q:
            rs, rd = a[src], a[dst]
            for k in range(n):
                if rs[k]:
                    rd[k] += q * rs[k]
            if track:
                us, ud = U[src], U[dst]
                for k in range(m):
                    if us[k]:
                        ud[k] += q * us[k]

    def add_col(dst, src, q):  # col_dst += q * col_src
        if q:
            for row in a:
                if row[src]:
                    row[dst] += q * row[src]
            if track:
                for row in V:
                    if row[src]:
                        row[dst] += q * row[src]

    t = 0
    diag = []
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        dirty = True
            if dirty:
                # move the smallest remaining entry of row/col t into the pivot
                cand = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
                _, i, j = min(cand)
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = None
            for i in range(t + 1, m):
                row = a[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if track:
                U[t] = [-x for x in U[t]]
        diag.append(a[t][t])
        t += 1
    return diag, U, V


def snf(A: ExactMatrix) -> SmithDecomposition:
    """Smith normal form with unimodular transforms: U*A*V = D."""
    if not A.is_integral():
        raise InvalidInput("snf requires integer entries")
    a = A.to_dense()
    diag, U, V = _dense_snf(a, track=True)
    m, n = A.shape
    D = ExactMatrix._raw(m, n, {i: {i: d} for i, d in enumerate(diag)})
    return SmithDecomposition(
        U=ExactMatrix.from_dense(U, m), D=D, V=ExactMatrix.from_dense(V, n),
        invariant_factors=tuple(diag),
    )


def _sparse_eliminate(rows: list[dict], units_only: bool) -> tuple[int, list[dict]]:
    """Sparse pivoting with a Markowitz-style choice.

    ``units_only``: integer rows, only +-1 pivots (each pivot is an
    invariant factor 1); whatever cannot be pivoted is returned.
    Otherwise: primitive integer rows, fraction-free elimination on any
    pivot (rank over Q); nothing is returned.
    """
    active: dict[int, dict] = {}
    col_rows: dict[int, set] = {}
    for rid, row in enumerate(rows):
        if row:
            active[rid] = row
            for c in row:
                col_rows.setdefault(c, set()).add(rid)
    heap = [(len(r), rid) for rid, r in active.items()]
    heapq.heapify(heap)
    rank = 0
    while heap:
        ln, rid = heapq.heappop(heap)
        row = active.get(rid)
        if row is None or len(row) != ln:
            continue
        best = None
        for c, v in row.items():
            av = abs(v)
            if units_only and av != 1:
                continue
            key = (av, len(col_rows[c]))
            if best is None or key < best[0]:
                best = (key, c)
        if best is None:
            continue  # no unit; may become pivotable after later updates
        c = best[1]
        pv = row[c]
        del active[rid]
        for cc in row:
            col_rows[cc].discard(rid)
        for oid in list(col_rows[c]):
            orow = active[oid]
            ov = orow[c]
            for cc in orow:
                col_rows[cc].discard(oid)
            if units_only:
                q = ov * pv  # pv = +-1 so ov / pv = ov * pv
                for cc, v in row.items():
                    s = orow.get(cc, 0) - q * v
                    if s:
                        orow[cc] = s
                    else:
                        orow.pop(cc, None)
            else:
                g = gcd(pv, ov)
                a, b = pv // g, ov // g
                new = {cc: a * v for cc, v in orow.items()}
                for cc, v in row.items():
                    s = new.get(cc, 0) - b * v
                    if s:
                        new[cc] = s
                    else:
                        new.pop(cc, None)
                g2 = _content(new)
                if g2 > 1:
                    new = {cc: v // g2 for cc, v in new.items()}
                orow = new
            if orow:
                active[oid] = orow
                for cc in orow:
                    col_rows.setdefault(cc, set()).add(oid)
                heapq.heappush(heap, (len(orow), oid))
            else:
                del active[oid]
        rank += 1
    return rank, [r for r in active.values() if r]


def rank_q(A: ExactMatrix) -> int:
    """Rank over the rationals (exact)."""
    rows = [_integralize(r) for r in A.row_dicts() if r]
    rank, rest = _sparse_eliminate(rows, units_only=False)
    assert not rest
    return rank


def invariant_factors(A: ExactMatrix) -> tuple[int, ...]:
    """Nonzero invariant factors of an integer matrix, in divisibility order.

    Unit pivots are eliminated sparsely first; the leftover core (usually
    tiny) goes through the dense Smith reduction.
    """
    if not A.is_integral():
        raise InvalidInput("invariant factors require integer entries")
    rows = [dict(r) for r in A.row_dicts() if r]
    ones, rest = _sparse_eliminate(rows, units_only=True)
    if not rest:
        return (1,) * ones
    cols = sorted({c for r in rest for c in r})
    cpos = {c: j for j, c in enumerate(cols)}
    dense = [[0] * len(cols) for _ in rest]
    for i, r in enumerate(rest):
        for c, v in r.items():
            dense[i][cpos[c]] = v
    diag, _, _ = _dense_snf(dense, track=False)
    return (1,) * ones + tuple(diag)


# ---------------------------------------------------------------------------
# echelon forms, lattices, solving


class Echelon:
    """Incrementally built echelon basis of a span of sparse vectors.

    Integer mode keeps an integral basis of the Z-span (gcd row operations);
    rational mode keeps a basis of the Q-span.  With ``track`` each basis
    vector remembers its expression in the inserted vectors.
    """

    def __init__(self, ring: str = "Z", track: bool = False):
        self.ring = check_ring(ring)
        self.track = track
        self.rows: dict[int, dict] = {}   # pivot index -> vector (min key == pivot)
        self.combos: dict[int, dict] = {}
        self._count = 0

    def __len__(self) -> int:
        return len(self.rows)

    def insert(self, vec: Mapping[int, Scalar]) -> bool:
        """Insert a vector; returns True if the rank grew."""
        v = vec_normalize(vec)
        combo = {self._count: 1} if self.track else None
        self._count += 1
        integral = self.ring == "Z"
        while v:
            p = min(v)
            if p not in self.rows:
                if integral and v[p] < 0:
                    v = {k: -x for k, x in v.items()}
                    if combo is not None:
                        combo = {k: -x for k, x in combo.items()}
                self.rows[p] = v
                if combo is not None:
                    self.combos[p] = combo
                return True
            w = self.rows[p]
            if integral:
                wp, vp = w[p], v[p]
                if vp % wp == 0:
                    q = vp // wp
                    v = vec_add(dict(v), w, -q)
                    if combo is not None:
                        combo = vec_add(dict(combo), self.combos[p], -q)
                    continue
                g, x, y = xgcd(wp, vp)
                nw = vec_add(vec_scale(w, x), v, y)
                nv = vec_add(vec_scale(v, wp // g), w, -(vp // g))
                if combo is not None:
                    cw = self.combos[p]
                    ncw = vec_add(vec_scale(cw, x), combo, y)
                    combo = vec_add(vec_scale(combo, wp // g), cw, -(vp // g))
                    self.combos[p] = ncw
                self.rows[p] = nw
                v = nv
            else:
                q = Fraction(v[p]) / w[p]
                v = vec_normalize(vec_add(dict(v), w, -q))
                if combo is not None:
                    combo = vec_normalize(vec_add(dict(combo), self.combos[p], -q))
        return False

    def solve(self, target: Mapping[int, Scalar]) -> dict | None:
        """Coefficients (on inserted vectors if tracking, else on basis pivots)
        expressing ``target`` in the span, or None if it is not in it."""
        r = vec_normalize(target)
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
            r = vec_add(dict(r), w, -q)
            if self.track:
                vec_add(x, self.combos[p], q)
            else:
                x[p] = q
        return vec_normalize(x)

    def hermite_reduce(self) -> None:
        """Bring an integral echelon basis to Hermite shape (entries above each
        pivot reduced into [0, pivot))."""
        if self.ring != "Z":
            raise InvalidInput("Hermite reduction is integer-only")
        pivots = sorted(self.rows)
        for j, p in enumerate(pivots):
            w = self.rows[p]
            d = w[p]
            for q in pivots[:j]:
                u = self.rows[q]
                e = u.get(p, 0)
                f = e // d
                if f:
                    self.rows[q] = vec_add(dict(u), w, -f)
                    if self.track:
                        self.combos[q] = vec_add(dict(self.combos[q]), self.combos[p], -f)

    def rref(self) -> None:
        """Rational mode: make every pivot 1 and clear other pivot columns."""
        if self.ring != "Q":
            raise InvalidInput("rref is rational-only")
        pivots = sorted(self.rows)
        for p in pivots:
            w = self.rows[p]
            if w[p] != 1:
                inv = Fraction(1) / w[p]
                self.rows[p] = vec_normalize(vec_scale(w, inv))
                if self.track:
                    self.combos[p] = vec_normalize(vec_scale(self.combos[p], inv))
        for j in range(len(pivots) - 1, -1, -1):
            p = pivots[j]
            w = self.rows[p]
            for q in pivots[:j]:
                u = self.rows[q]
                e = u.get(p, 0)
                if e:
                    self.rows[q] = vec_normalize(vec_add(dict(u), w, -e))
                    if self.track:
                        self.combos[q] = vec_normalize(vec_add(dict(self.combos[q]), self.combos[p], -e))

    def basis(self) -> list[dict]:
        return [self.rows[p] for p in sorted(self.rows)]


def hnf_basis(generators: Sequence[Sequence[int] | Mapping[int, int]], ncols: int | None = None) -> ExactMatrix:
    """Hermite-shaped row basis of the integer span of the generators."""
    gens = [dict(enumerate(g)) if not isinstance(g, Mapping) else dict(g) for g in generators]
    if ncols is None:
        lengths = {len(g) for g in generators if not isinstance(g, Mapping)}
        if len(lengths) > 1:
            raise InvalidInput("generators have different lengths")
        ncols = lengths.pop() if lengths else 1 + max((k for g in gens for k in g), default=-1)
    ech = Echelon("Z")
    for g in gens:
        if any(not isinstance(v, int) for v in g.values()):
            raise InvalidInput("hnf_basis requires integer vectors")
        ech.insert(g)
    ech.hermite_reduce()
    return ExactMatrix.from_rows(ech.basis(), ncols)


def solve_exact(A: ExactMatrix, b: Sequence[Scalar] | Mapping[int, Scalar], ring: str = "Q") -> list[Scalar] | None:
    """Solve A x = b exactly; None when there is no solution in the ring."""
    ring = check_ring(ring)
    bvec = dict(enumerate(b)) if not isinstance(b, Mapping) else dict(b)
    if isinstance(b, Mapping):
        if any(not 0 <= k < A.nrows for k in bvec):
            raise InvalidInput("right-hand side index out of range")
    elif len(b) != A.nrows:
        raise InvalidInput(f"right-hand side has length {len(b)}, expected {A.nrows}")
    if ring == "Z" and not (A.is_integral() and all(isinstance(norm_scalar(v), int) for v in bvec.values())):
        raise InvalidInput("integer solve needs integer data")
    ech = Echelon(ring, track=True)
    for col in A.column_dicts():
        ech.insert(col)
    x = ech.solve(bvec)
    if x is None:
        return None
    return [norm_scalar(x.get(j, 0)) for j in range(A.ncols)]


# ---------------------------------------------------------------------------
# homology


@dataclass(frozen=True)
class HomologyGroup:
    betti: int
    torsion: tuple[int, ...] = field(default_factory=tuple)

    def is_zero(self) -> bool:
        return self.betti == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.betti:
            parts.append("Z" if self.betti == 1 else f"Z^{self.betti}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"betti": self.betti, "torsion": list(self.torsion)}


def homology_of_pair(d_out: ExactMatrix, d_in: ExactMatrix, ring: str = "Q") -> HomologyGroup:
    """Homology at the middle of  C_{n+1} --d_in--> C_n --d_out--> C_{n-1}.

    Over Z the kernel of d_out is a direct summand of C_n, so the torsion of
    ker/im equals the torsion of coker(d_in): the invariant factors of d_in
    above one.
    """
    ring = check_ring(ring)
    if d_out.ncols != d_in.nrows:
        raise InvalidInput(f"incompatible shapes {d_out.shape} and {d_in.shape}")
    prod = d_out @ d_in
    if not prod.is_zero():
        bad = min(c for _, c, _ in prod.items())
        raise ContractViolation(f"d_out * d_in != 0 (first nonzero column {bad})")
    dim = d_out.ncols
    r_out = rank_q(d_out)
    if ring == "Q":
        return HomologyGroup(dim - r_out - rank_q(d_in), ())
    facs = invariant_factors(d_in)
    return HomologyGroup(dim - r_out - len(facs), tuple(f for f in facs if f > 1))


def kernel_basis_z(A: ExactMatrix) -> list[dict]:
    """Integral basis of ker A (a saturated lattice), via column echelon with
    transforms: the tracked combinations of vanishing columns span the kernel."""
    ech = Echelon("Z", track=True)
    kernel = Echelon("Z")
    for j, col in enumerate(A.column_dicts()):
        v = vec_normalize(col)
        combo = {j: 1}
        while v:
            p = min(v)
            if p not in ech.rows:
                if v[p] < 0:
                    v = {k: -x for k, x in v.items()}
                    combo = {k: -x for k, x in combo.items()}
                ech.rows[p], ech.combos[p] = v, combo
                break
            w, cw = ech.rows[p], ech.combos[p]
            wp, vp = w[p], v[p]
            g, x, y = xgcd(wp, vp)
            ech.rows[p] = vec_add(vec_scale(w, x), v, y)
            ech.combos[p] = vec_add(vec_scale(cw, x), combo, y)
            v = vec_add(vec_scale(v, wp // g), w, -(vp // g))
            combo = vec_add(vec_scale(combo, wp // g), cw, -(vp // g))
        else:
            kernel.insert(combo)
    return kernel.basis()
