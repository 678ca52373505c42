"""Permutations, reversal masks and hyperoctahedral elements, with signs.

Two index conventions are used and never mixed silently:

* simplicial permutations act on ``[n] = {0, ..., n}`` (``base=0``);
* cubical permutations act on coordinate positions ``{1, ..., n}`` (``base=1``).

Every element is also a concrete map ("bold map").  A simplicial permutation
is the function ``j -> t(j)`` on ``[n]``.  A cubical permutation ``sigma``
is the map of cubes ``v -> (v_{sigma(1)}, ..., v_{sigma(n)})``, which is what
a simple transposition ``t_i`` does for ``sigma = (i i+1)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as _iter_perms
from itertools import product
from math import factorial
from typing import Iterator, Sequence

from .errors import InvalidInput, ResourceCapError

DEFAULT_GROUP_CAP = factorial(10)


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{base, ..., base + len(images) - 1}``.

    ``images[k]`` is the image of ``base + k``.
    """

    images: tuple[int, ...]
    base: int = 0

    def __post_init__(self):
        imgs = tuple(self.images)
        object.__setattr__(self, "images", imgs)
        if self.base not in (0, 1):
            raise InvalidInput("permutation base must be 0 or 1")
        if sorted(imgs) != list(range(self.base, self.base + len(imgs))):
            raise InvalidInput(f"not a permutation of {self.base}..{self.base + len(imgs) - 1}: {imgs}")

    @classmethod
    def identity(cls, size: int, base: int = 0) -> "Permutation":
        return cls(tuple(range(base, base + size)), base)

    @classmethod
    def simple(cls, i: int, size: int, base: int = 0) -> "Permutation":
        """The transposition exchanging ``i`` and ``i + 1``."""
        if not base <= i < base + size - 1:
            raise InvalidInput(f"simple transposition index {i} out of range")
        imgs = list(range(base, base + size))
        imgs[i - base], imgs[i + 1 - base] = i + 1, i
        return cls(tuple(imgs), base)

    @property
    def size(self) -> int:
        return len(self.images)

    @property
    def degree(self) -> int:
        """Ambient degree: ``n`` for Sym([n]) and for S_n on cube coordinates."""
        return self.size - 1 if self.base == 0 else self.size

    def __call__(self, j: int) -> int:
        k = j - self.base
        if not 0 <= k < self.size:
            raise InvalidInput(f"{j} outside the permutation's domain")
        return self.images[k]

    def compose(self, other: "Permutation") -> "Permutation":
        """``self o other`` as functions (other first)."""
        self._check_same(other)
        return Permutation(tuple(self(other(j)) for j in self.domain()), self.base)

    __mul__ = compose

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for k, img in enumerate(self.images):
            inv[img - self.base] = k + self.base
        return Permutation(tuple(inv), self.base)

    def domain(self) -> range:
        return range(self.base, self.base + self.size)

    def is_identity(self) -> bool:
        return all(img == k + self.base for k, img in enumerate(self.images))

    def extend(self, size: int) -> "Permutation":
        """Embed into a larger symmetric group, fixing the new points."""
        if size < self.size:
            raise InvalidInput("cannot extend to a smaller size")
        return Permutation(self.images + tuple(range(self.base + self.size, self.base + size)), self.base)

    def inversions(self) -> int:
        imgs = self.images
        return sum(1 for a in range(len(imgs)) for b in range(a + 1, len(imgs)) if imgs[a] > imgs[b])

    def simple_word(self) -> list[int]:
        """Indices ``i_1, ..., i_k`` with ``self = t_{i_1} o ... o t_{i_k}`` as functions.

        For cube maps use :meth:`cube_word`; precomposition reverses the order.
        """
        # bubble sort the images; each swap at position k is t_{base+k} applied on the right
        imgs = list(self.images)
        word: list[int] = []
        changed = True
        while changed:
            changed = False
            for k in range(len(imgs) - 1):
                if imgs[k] > imgs[k + 1]:
                    imgs[k], imgs[k + 1] = imgs[k + 1], imgs[k]
                    word.append(k + self.base)
                    changed = True
        # self o t_{w1} o ... o t_{wm} = id  =>  self = t_{wm} o ... o t_{w1}
        word.reverse()
        return word

    def cube_word(self) -> list[int]:
        """Indices with ``v -> v o self`` equal to the map ``t_{i_1} o ... o t_{i_k}`` of cubes."""
        if self.base != 1:
            raise InvalidInput("cube_word needs a cubical (1-indexed) permutation")
        return self.simple_word()[::-1]

    def to_base(self, base: int) -> "Permutation":
        shift = base - self.base
        return Permutation(tuple(x + shift for x in self.images), base)

    def _check_same(self, other: "Permutation") -> None:
        if self.base != other.base or self.size != other.size:
            raise InvalidInput("permutations act on different sets")

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)}, base={self.base})"


@dataclass(frozen=True)
class ReversalMask:
    """Element ``a`` of Z_2^n; bit ``a_i`` (1-indexed) flips coordinate ``i``."""

    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise InvalidInput("reversal bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def zero(cls, n: int) -> "ReversalMask":
        return cls((0,) * n)

    @classmethod
    def simple(cls, i: int, n: int) -> "ReversalMask":
        if not 1 <= i <= n:
            raise InvalidInput(f"simple reversal index {i} out of range 1..{n}")
        return cls(tuple(int(k == i) for k in range(1, n + 1)))

    @property
    def degree(self) -> int:
        return len(self.bits)

    def __getitem__(self, i: int) -> int:
        """1-indexed bit access."""
        return self.bits[i - 1]

    def compose(self, other: "ReversalMask") -> "ReversalMask":
        if self.degree != other.degree:
            raise InvalidInput("masks of different length")
        return ReversalMask(tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    __mul__ = compose

    def inverse(self) -> "ReversalMask":
        return self

    def is_identity(self) -> bool:
        return not any(self.bits)

    def support(self) -> list[int]:
        return [i for i, b in enumerate(self.bits, start=1) if b]

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(x ^ b for x, b in zip(v, self.bits))

    def extend(self, n: int) -> "ReversalMask":
        if n < self.degree:
            raise InvalidInput("cannot extend to a smaller length")
        return ReversalMask(self.bits + (0,) * (n - self.degree))


@dataclass(frozen=True)
class HyperoctElement:
    """``h = t a``: the map of cubes ``P_perm o R_mask``.

    The reversal acts first, then the coordinate permutation.
    """

    perm: Permutation
    mask: ReversalMask

    def __post_init__(self):
        if self.perm.base != 1:
            raise InvalidInput("hyperoctahedral permutations use cube coordinates (base 1)")
        if self.perm.size != self.mask.degree:
            raise InvalidInput("permutation degree and mask length differ")

    @classmethod
    def identity(cls, n: int) -> "HyperoctElement":
        return cls(Permutation.identity(n, 1), ReversalMask.zero(n))

    @property
    def degree(self) -> int:
        return self.mask.degree

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        w = self.mask.apply(v)
        return tuple(w[self.perm(j) - 1] for j in range(1, self.degree + 1))

    def compose(self, other: "HyperoctElement") -> "HyperoctElement":
        """``self o other`` as maps of cubes."""
        if self.degree != other.degree:
            raise InvalidInput("hyperoctahedral elements of different degree")
        s, t = self.perm, other.perm
        # R_a P_t = P_t R_c with c_m = a_{t^{-1}(m)}
        tinv = t.inverse()
        c = tuple(self.mask[tinv(m)] for m in range(1, self.degree + 1))
        perm = t.compose(s)  # P_s P_t = P_{t o s}
        return HyperoctElement(perm, ReversalMask(c).compose(other.mask))

    __mul__ = compose

    def inverse(self) -> "HyperoctElement":
        # (P_s R_a)^{-1} = R_a P_{s^{-1}} = P_{s^{-1}} R_c, c_m = a_{s(m)}
        s = self.perm
        c = tuple(self.mask[s(m)] for m in range(1, self.degree + 1))
        return HyperoctElement(s.inverse(), ReversalMask(c))

    def is_identity(self) -> bool:
        return self.perm.is_identity() and self.mask.is_identity()


# ---------------------------------------------------------------------------
# signs


def sign_perm(t: Permutation) -> int:
    return -1 if t.inversions() % 2 else 1


def sign_reversal(a: ReversalMask) -> int:
    return -1 if sum(a.bits) % 2 else 1


def sign_hyperoct(h: HyperoctElement) -> int:
    return sign_perm(h.perm) * sign_reversal(h.mask)


def sign(g) -> int:
    if isinstance(g, Permutation):
        return sign_perm(g)
    if isinstance(g, ReversalMask):
        return sign_reversal(g)
    if isinstance(g, HyperoctElement):
        return sign_hyperoct(g)
    raise InvalidInput(f"not a group element: {g!r}")


# ---------------------------------------------------------------------------
# index deletion maps


def phi(i: int, t: Permutation) -> Permutation:
    """Delete column ``i`` and row ``t(i)`` of the permutation matrix of ``t``.

    ``t`` is a simplicial permutation of ``[n]``; the result permutes ``[n-1]``.
    """
    if t.base != 0:
        raise InvalidInput("phi expects a simplicial (0-indexed) permutation")
    n = t.degree
    if n < 1:
        raise InvalidInput("phi needs n >= 1")
    if not 0 <= i <= n:
        raise InvalidInput(f"phi index {i} outside [0, {n}]")
    ti = t(i)
    out = []
    for k in range(n):
        v = t(k) if k < i else t(k + 1)
        out.append(v if v < ti else v - 1)
    return Permutation(tuple(out), 0)


def psi(i: int, a: ReversalMask) -> ReversalMask:
    """Drop coordinate ``i`` (1-indexed) of a reversal."""
    if not 1 <= i <= a.degree:
        raise InvalidInput(f"psi index {i} outside 1..{a.degree}")
    return ReversalMask(a.bits[: i - 1] + a.bits[i:])


# ---------------------------------------------------------------------------
# enumeration

GROUP_KINDS = ("Sym", "Rev", "Hyperoct")


def group_order(n: int, kind: str, base: int = 0) -> int:
    if kind == "Sym":
        return factorial(n + 1 if base == 0 else n)
    if kind == "Rev":
        return 2 ** n
    if kind == "Hyperoct":
        return factorial(n) * 2 ** n
    raise InvalidInput(f"unknown group kind {kind!r}; expected one of {GROUP_KINDS}")


def enumerate_group(n: int, kind: str, cap: int = DEFAULT_GROUP_CAP, base: int = 0) -> Iterator:
    """Every element of the degree-``n`` group exactly once, in a fixed order.

    ``Sym`` is Sym([n]) for ``base=0`` and S_n on cube coordinates for
    ``base=1``; ``Rev`` is Z_2^n; ``Hyperoct`` is S_n x| Z_2^n.
    """
    if n < (-1 if kind == "Sym" and base == 0 else 0):
        raise InvalidInput(f"degree {n} invalid for {kind}")
    order = group_order(n, kind, base)
    if order > cap:
        raise ResourceCapError(f"{kind} group in degree {n} has {order} elements, cap is {cap}")
    if kind == "Sym":
        size = n + 1 if base == 0 else n
        for imgs in _iter_perms(range(base, base + size)):
            yield Permutation(imgs, base)
    elif kind == "Rev":
        for bits in product((0, 1), repeat=n):
            yield ReversalMask(bits)
    else:
        for imgs in _iter_perms(range(1, n + 1)):
            p = Permutation(imgs, 1)
            for bits in product((0, 1), repeat=n):
                yield HyperoctElement(p, ReversalMask(bits))

