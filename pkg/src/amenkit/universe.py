"""Finitely generated semigroup models, balls and growth.

A :class:`Universe` is a generator list plus a product on hashable element
representations.  Elements are stored in canonical form, so the canonical key
of an element is the element itself unless a constructor says otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Hashable, Sequence

from amenkit.errors import (
    CanonicalKeyCollision,
    KlaweWitnessNotFound,
    NotAssociative,
    ResourceLimit,
    TooFewPoints,
    max_elements,
)
from amenkit.semigroup import FiniteSemigroup, compose, is_left_cancellative

# Associativity is re-checked on all triples of a ball up to this many elements.
ASSOC_CHECK_CAP = 24


@dataclass(frozen=True)
class Flags:
    """Certified metadata.  ``None`` means "not certified", never "false"."""

    commutative: bool | None = None
    left_cancellative: bool | None = None
    inverse: bool | None = None
    growth: str = "uncertified"  # "polynomial" | "exponential" | "uncertified"
    growth_degree: int | None = None
    # a certified pair (a, b) with aS and bS disjoint
    disjoint_right_ideals: tuple | None = None


@dataclass(frozen=True)
class Universe:
    name: str
    generators: tuple
    multiply: Callable[[Any, Any], Any] = field(compare=False)
    key: Callable[[Any], Hashable] = field(default=lambda x: x, compare=False)
    flags: Flags = Flags()
    finite: bool = False

    def mul(self, a, b):
        return self.multiply(a, b)

    def product(self, word: Sequence) -> Any:
        """Product of a nonempty sequence of elements."""
        it = iter(word)
        acc = next(it)
        for x in it:
            acc = self.multiply(acc, x)
        return acc


# -- built-in universes ---------------------------------------------------------

def table_universe(S: FiniteSemigroup, generators: Sequence[int] | None = None) -> Universe:
    gens = tuple(range(S.n)) if generators is None else tuple(generators)
    t = S.table
    flags = Flags(
        commutative=S.is_commutative(),
        left_cancellative=is_left_cancellative(S).holds,
        growth="polynomial",
        growth_degree=0,
    )
    return Universe(f"table:{S.n}", gens, lambda a, b: t[a][b], flags=flags, finite=True)


def free_universe(k: int) -> Universe:
    """Free semigroup on k letters; elements are words as tuples of letters."""
    if k < 1:
        raise ValueError("k must be positive")
    gens = tuple((i,) for i in range(k))
    flags = Flags(
        commutative=k == 1,
        left_cancellative=True,
        inverse=False,
        growth="polynomial" if k == 1 else "exponential",
        growth_degree=1 if k == 1 else None,
        disjoint_right_ideals=(gens[0], gens[1]) if k >= 2 else None,
    )
    return Universe(f"free:{k}", gens, lambda a, b: a + b, flags=flags)


def freecomm_universe(k: int) -> Universe:
    """Free commutative semigroup; elements are nonzero exponent vectors."""
    if k < 1:
        raise ValueError("k must be positive")
    gens = tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
    flags = Flags(commutative=True, left_cancellative=True, growth="polynomial", growth_degree=k)
    return Universe(f"freecomm:{k}", gens,
                    lambda a, b: tuple(x + y for x, y in zip(a, b)), flags=flags)


def bicyclic_multiply(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    """(q^a p^b)(q^c p^d) = q^(a + max(c-b, 0)) p^(d + max(b-c, 0))."""
    a, b = x
    c, d = y
    return a + max(c - b, 0), d + max(b - c, 0)


BICYCLIC_P = (0, 1)
BICYCLIC_Q = (1, 0)


def bicyclic_universe() -> Universe:
    """Bicyclic monoid <p, q | pq = 1>; element (a, b) is q^a p^b."""
    flags = Flags(commutative=False, left_cancellative=False, inverse=True,
                  growth="polynomial", growth_degree=2)
    return Universe("bicyclic", (BICYCLIC_P, BICYCLIC_Q), bicyclic_multiply, flags=flags)


def transformation_universe(degree: int, gens: Sequence[Sequence[int]]) -> Universe:
    """Maps on ``range(degree)`` acting on the right; no certified flags."""
    gens = tuple(tuple(g) for g in gens)
    for g in gens:
        if len(g) != degree or any(not 0 <= p < degree for p in g):
            raise ValueError(f"bad transformation {g} of degree {degree}")
    return Universe(f"transformations:{degree}", gens, compose, finite=True)


# -- balls ------------------------------------------------------------------------

class BallTable:
    """Balls B_1 ⊆ ... ⊆ B_N, grown layer by layer as B_{i+1} = B_i ∪ X·B_i."""

    def __init__(self, U: Universe, cap: int | None = None):
        self.universe = U
        self.cap = max_elements() if cap is None else cap
        self.layers: list[list] = []
        self._index: dict = {}
        self._order: list = []
        self._sizes: list[int] = []

    @property
    def radius(self) -> int:
        return len(self.layers)

    def _add(self, x, radius: int) -> bool:
        k = self.universe.key(x)
        prev = self._index.get(k)
        if prev is not None:
            if self._order[prev] != x:
                raise CanonicalKeyCollision(f"key {k!r} shared by {self._order[prev]!r} and {x!r}")
            return False
        if len(self._order) >= self.cap:
            raise ResourceLimit(self.cap)
        self._index[k] = len(self._order)
        self._order.append(x)
        return True

    def grow(self, radius: int) -> BallTable:
        U = self.universe
        while self.radius < radius:
            r = self.radius + 1
            if r == 1:
                layer = [g for g in U.generators if self._add(g, 1)]
            else:
                layer = []
                for x in U.generators:
                    for b in self.layers[-1]:
                        p = U.mul(x, b)
                        if self._add(p, r):
                            layer.append(p)
            self.layers.append(layer)
            self._sizes.append(len(self._order))
            self._spot_check()
        return self

    def saturate(self) -> BallTable:
        """Grow until a layer adds nothing (finite universes only)."""
        while not self.layers or self.layers[-1]:
            self.grow(self.radius + 1)
        return self

    def _spot_check(self):
        U = self.universe
        elems = self._order if len(self._order) <= ASSOC_CHECK_CAP else list(U.generators)
        for a in elems:
            for b in elems:
                ab = U.mul(a, b)
                for c in elems:
                    if U.key(U.mul(ab, c)) != U.key(U.mul(a, U.mul(b, c))):
                        raise NotAssociative(a, b, c)

    def size(self, i: int) -> int:
        if i <= 0:
            return 0
        self.grow(i)
        return self._sizes[i - 1]

    def ball(self, i: int) -> frozenset:
        return frozenset(self.ordered(i))

    def ordered(self, i: int) -> list:
        """Elements of B_i in discovery order."""
        return self._order[: self.size(i)]

    def contains(self, x, i: int) -> bool:
        pos = self._index.get(self.universe.key(x))
        return pos is not None and pos < self.size(i)

    def sizes(self, N: int) -> list[int]:
        self.grow(N)
        return self._sizes[:N]


def ball_table(U: Universe, N: int, cap: int | None = None) -> BallTable:
    return BallTable(U, cap).grow(N)


def ball(U: Universe, i: int, cap: int | None = None) -> frozenset:
    """Elements expressible as products of 1..i generators; B_0 is empty."""
    if i < 0:
        raise ValueError("radius must be non-negative")
    if i == 0:
        return frozenset()
    return ball_table(U, i, cap).ball(i)


def growth_table(U: Universe, N: int, cap: int | None = None) -> list[int]:
    return ball_table(U, N, cap).sizes(N)


# -- growth heuristics -----------------------------------------------------------

GROWTH_DELTA = Fraction(1, 8)


@dataclass(frozen=True)
class GrowthGuess:
    kind: str  # "polynomial" | "exponential" | "inconclusive"
    estimate: float | None
    heuristic: bool = True

    def to_json(self) -> dict:
        return {"kind": f"{self.kind}_likely" if self.kind != "inconclusive" else self.kind,
                "estimate": self.estimate, "heuristic": True}


def _degree_estimate(sizes: Sequence[int]) -> float:
    """Least-squares slope of log|B_i| against log i over the last half."""
    N = len(sizes)
    pts = [(math.log(i), math.log(s)) for i, s in enumerate(sizes, start=1)
           if i > N // 2 and s > 0]
    mx = sum(p[0] for p in pts) / len(pts)
    my = sum(p[1] for p in pts) / len(pts)
    sxx = sum((p[0] - mx) ** 2 for p in pts)
    sxy = sum((p[0] - mx) * (p[1] - my) for p in pts)
    return round(sxy / sxx, 1) if sxx else 0.0


def _local_degrees(sizes: Sequence[int]) -> list[Fraction]:
    # (r_i - 1) * i tracks the polynomial degree and grows linearly under
    # exponential growth.
    return [(Fraction(sizes[i], sizes[i - 1]) - 1) * i for i in range(len(sizes) - 3, len(sizes))]


def classify_growth(sizes: Sequence[int]) -> GrowthGuess:
    """Heuristic growth class from ball sizes |B_1|, ..., |B_N| (N >= 6)."""
    if len(sizes) < 6:
        raise TooFewPoints(f"need at least 6 ball sizes, got {len(sizes)}")
    if any(s <= 0 for s in sizes) or any(b < a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("ball sizes must be positive and weakly increasing")
    ratios = [Fraction(sizes[i + 1], sizes[i]) for i in range(len(sizes) - 4, len(sizes) - 1)]
    d = GROWTH_DELTA
    if max(ratios) < 1 + d:
        return GrowthGuess("polynomial", _degree_estimate(sizes))
    if min(ratios) > 1 + 4 * d:
        geo = math.prod(float(r) for r in ratios) ** (1 / len(ratios))
        return GrowthGuess("exponential", round(geo, 2))
    local = _local_degrees(sizes)
    if min(local) > 0 and max(local) <= (1 + d) * min(local):
        return GrowthGuess("polynomial", _degree_estimate(sizes))
    return GrowthGuess("inconclusive", None)


# -- free pairs and right ideal intersections ----------------------------------------

@dataclass(frozen=True)
class FreeUpTo:
    length: int


@dataclass(frozen=True)
class Collision:
    u: str
    v: str


def _words(L: int):
    for n in range(1, L + 1):
        for m in range(1 << n):
            yield "".join("ab"[(m >> (n - 1 - i)) & 1] for i in range(n))


def evaluate_word(U: Universe, a, b, word: str):
    return U.product([a if c == "a" else b for c in word])


def free_pair_check(U: Universe, a, b, L: int) -> FreeUpTo | Collision:
    """First pair of distinct words over {a, b} (length <= L) with equal products.

    Words are scanned by length, then lexicographically with a < b.
    """
    if L < 1:
        raise ValueError("L must be positive")
    cap = max_elements()
    if 2 ** (L + 1) > cap:
        raise ResourceLimit(cap, "words")
    seen: dict = {}
    for w in _words(L):
        k = U.key(evaluate_word(U, a, b, w))
        if k in seen:
            return Collision(seen[k], w)
        seen[k] = w
    return FreeUpTo(L)


@dataclass(frozen=True)
class CommonMultiple:
    """``element = a * right_a = b * right_b``; ``right_* is None`` means the empty factor."""

    element: Any
    s: Any
    right_a: Any
    right_b: Any


def _check_common(U: Universe, a, b, c: CommonMultiple) -> CommonMultiple:
    lhs = U.mul(a, c.right_a)
    rhs = U.mul(b, c.right_b)
    if U.key(lhs) != U.key(c.element) or U.key(rhs) != U.key(c.element):
        raise ArithmeticError("common multiple failed verification")
    return c


def intersection_from_collision(U: Universe, a, b, u: str, v: str, radius: int = 6) -> CommonMultiple:
    """Turn a collision f(u) = f(v) into a common element of aS and bS."""
    if u == v:
        raise ValueError("collision words must differ")
    if U.key(evaluate_word(U, a, b, u)) != U.key(evaluate_word(U, a, b, v)):
        raise ValueError(f"words {u!r} and {v!r} have different products")
    if v.startswith(u) or u.startswith(v):
        short, long_ = (u, v) if len(u) < len(v) else (v, u)
        c = "b" if long_[len(short)] == "a" else "a"
        u, v = u + c, v + c
    w = 0
    while u[w] == v[w]:
        w += 1
    u1, v1 = u[w:], v[w:]
    fu, fv = evaluate_word(U, a, b, u1), evaluate_word(U, a, b, v1)
    if w == 0:
        s = U.generators[0]
    else:
        s = None
        for cand in ball_table(U, radius).ordered(radius):
            if U.key(U.mul(fu, cand)) == U.key(U.mul(fv, cand)):
                s = cand
                break
        if s is None:
            raise KlaweWitnessNotFound(radius)
    a_word, b_word = (u1, v1) if u1[0] == "a" else (v1, u1)
    right_a = U.mul(evaluate_word(U, a, b, a_word[1:]), s) if len(a_word) > 1 else s
    right_b = U.mul(evaluate_word(U, a, b, b_word[1:]), s) if len(b_word) > 1 else s
    return _check_common(U, a, b, CommonMultiple(U.mul(fu, s), s, right_a, right_b))


@dataclass(frozen=True)
class NotFoundUpTo:
    radius: int


def right_ideal_intersection_search(U: Universe, a, b, Rmax: int,
                                    cap: int | None = None) -> CommonMultiple | NotFoundUpTo:
    """Search aB_i ∩ bB_i for i = 1..Rmax; the least common key wins at the first hit."""
    if Rmax < 1:
        raise ValueError("Rmax must be positive")
    table = BallTable(U, cap)
    a_side: dict = {}
    b_side: dict = {}
    done = 0
    for i in range(1, Rmax + 1):
        for m in table.ordered(i)[done:]:
            a_side.setdefault(U.key(U.mul(a, m)), (U.mul(a, m), m))
            b_side.setdefault(U.key(U.mul(b, m)), (U.mul(b, m), m))
        done = table.size(i)
        common = a_side.keys() & b_side.keys()
        if common:
            k = min(common)
            elem, ma = a_side[k]
            mb = b_side[k][1]
            return _check_common(U, a, b, CommonMultiple(elem, None, ma, mb))
    return NotFoundUpTo(Rmax)
