"""Finite semigroups as validated multiplication tables.

Elements are the indices ``0..n-1``; ``table[a][b]`` is the product ``ab``.
All deciders here are exact scans over the table.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from amenkit.errors import (
    ChainStepFailed,
    IndexOutOfRange,
    NotACongruence,
    NotAssociative,
    NotLeftReversible,
    PreconditionFailed,
    ResourceLimit,
    SearchExhausted,
)
from amenkit.verdict import Verdict, verdict


@dataclass(frozen=True)
class ElemSet:
    """Subset of ``range(n)`` stored as a bit-vector."""

    n: int
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.n:
            raise IndexOutOfRange("ElemSet", bin(self.bits), self.n)

    @classmethod
    def of(cls, n: int, items: Iterable[int] = ()) -> ElemSet:
        bits = 0
        for x in items:
            if not 0 <= x < n:
                raise IndexOutOfRange("ElemSet member", x, n)
            bits |= 1 << x
        return cls(n, bits)

    @classmethod
    def full(cls, n: int) -> ElemSet:
        return cls(n, (1 << n) - 1)

    @property
    def cardinality(self) -> int:
        return self.bits.bit_count()

    def __len__(self):
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        bits, i = self.bits, 0
        while bits:
            if bits & 1:
                yield i
            bits >>= 1
            i += 1

    def __contains__(self, x) -> bool:
        return isinstance(x, int) and 0 <= x < self.n and bool(self.bits >> x & 1)

    def _check(self, other: ElemSet):
        if other.n != self.n:
            raise ValueError(f"ElemSet universes differ: {self.n} vs {other.n}")

    def __or__(self, other: ElemSet) -> ElemSet:
        self._check(other)
        return ElemSet(self.n, self.bits | other.bits)

    def __and__(self, other: ElemSet) -> ElemSet:
        self._check(other)
        return ElemSet(self.n, self.bits & other.bits)

    def __sub__(self, other: ElemSet) -> ElemSet:
        self._check(other)
        return ElemSet(self.n, self.bits & ~other.bits)

    def __le__(self, other: ElemSet) -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def isdisjoint(self, other: ElemSet) -> bool:
        self._check(other)
        return self.bits & other.bits == 0

    def __repr__(self):
        return f"ElemSet({self.n}, {{{', '.join(map(str, self))}}})"


def _associativity_violation(n: int, t: Sequence[Sequence[int]]):
    for a in range(n):
        ta = t[a]
        for b in range(n):
            tab = t[ta[b]]
            tb = t[b]
            for c in range(n):
                if tab[c] != ta[tb[c]]:
                    return a, b, c
    return None


def validate_table(n: int, entries: Sequence[Sequence[int]]) -> FiniteSemigroup:
    """Check shape, range and associativity; raise on the first violation."""
    if n < 1:
        raise IndexOutOfRange("n", n, n)
    if len(entries) != n:
        raise IndexOutOfRange("rows", len(entries), n)
    rows = []
    for a, row in enumerate(entries):
        if len(row) != n:
            raise IndexOutOfRange((a, "length"), len(row), n)
        for b, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < n:
                raise IndexOutOfRange((a, b), v, n)
        rows.append(tuple(row))
    bad = _associativity_violation(n, rows)
    if bad is not None:
        raise NotAssociative(*bad)
    return FiniteSemigroup._trusted(n, tuple(rows))


@dataclass(frozen=True)
class FiniteSemigroup:
    n: int
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        validate_table(self.n, self.table)

    @classmethod
    def _trusted(cls, n: int, table: tuple[tuple[int, ...], ...]) -> FiniteSemigroup:
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "table", table)
        return obj

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> FiniteSemigroup:
        return validate_table(len(rows), rows)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def elements(self) -> ElemSet:
        return ElemSet.full(self.n)

    def elemset(self, items: Iterable[int]) -> ElemSet:
        return ElemSet.of(self.n, items)

    def is_commutative(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.n) for b in range(a + 1, self.n))

    def idempotents(self) -> list[int]:
        return [e for e in range(self.n) if self.table[e][e] == e]

    def _index(self, x: int, what: str = "element"):
        if not isinstance(x, int) or not 0 <= x < self.n:
            raise IndexOutOfRange(what, x, self.n)

    def _as_set(self, A) -> ElemSet:
        if isinstance(A, ElemSet):
            if A.n != self.n:
                raise IndexOutOfRange("ElemSet universe", A.n, self.n)
            return A
        return ElemSet.of(self.n, A)

    def __repr__(self):
        return f"FiniteSemigroup({[list(r) for r in self.table]})"


# -- standard small semigroups -------------------------------------------------

def cyclic_group(n: int) -> FiniteSemigroup:
    return FiniteSemigroup.from_rows([[(a + b) % n for b in range(n)] for a in range(n)])


def left_zero(n: int) -> FiniteSemigroup:
    """xy = x."""
    return FiniteSemigroup.from_rows([[a] * n for a in range(n)])


def right_zero(n: int) -> FiniteSemigroup:
    """xy = y."""
    return FiniteSemigroup.from_rows([list(range(n)) for _ in range(n)])


def null_semigroup(n: int) -> FiniteSemigroup:
    """All products equal the zero element 0."""
    return FiniteSemigroup.from_rows([[0] * n for _ in range(n)])


def monogenic(index: int, period: int) -> FiniteSemigroup:
    """<a | a^(index+period) = a^index>; element i stands for a^(i+1)."""
    if index < 1 or period < 1:
        raise ValueError("index and period must be positive")
    n = index + period - 1

    def reduce(e):
        return e if e < index + period else index + (e - index) % period

    return FiniteSemigroup.from_rows(
        [[reduce(a + b + 2) - 1 for b in range(n)] for a in range(n)]
    )


Z2 = cyclic_group(2)
ZL2 = left_zero(2)
RZ2 = right_zero(2)
N2 = null_semigroup(2)
MONO_4_2 = monogenic(2, 2)


# -- translations and ideals ---------------------------------------------------

def left_translate(S: FiniteSemigroup, s: int, A) -> ElemSet:
    """sA = {sa : a in A}."""
    S._index(s)
    A = S._as_set(A)
    row = S.table[s]
    bits = 0
    for a in A:
        bits |= 1 << row[a]
    return ElemSet(S.n, bits)


def right_translate(S: FiniteSemigroup, A, t: int) -> ElemSet:
    """At = {at : a in A}."""
    S._index(t)
    A = S._as_set(A)
    bits = 0
    for a in A:
        bits |= 1 << S.table[a][t]
    return ElemSet(S.n, bits)


def principal_right_ideal(S: FiniteSemigroup, a: int) -> ElemSet:
    """aS^1 = {a} ∪ aS."""
    S._index(a)
    return left_translate(S, a, S.elements()) | ElemSet(S.n, 1 << a)


def _right_multiples(S: FiniteSemigroup, a: int) -> ElemSet:
    return left_translate(S, a, S.elements())


def right_ideal_generated(S: FiniteSemigroup, Y) -> ElemSet:
    """YS^1 for a subset Y."""
    Y = S._as_set(Y)
    out = Y
    for y in Y:
        out = out | _right_multiples(S, y)
    return out


def principal_two_sided_ideal(S: FiniteSemigroup, a: int) -> ElemSet:
    """S^1 a S^1."""
    S._index(a)
    t = S.table
    left = {a} | {t[x][a] for x in range(S.n)}
    out = set(left)
    for u in left:
        out.update(t[u])
    return S.elemset(out)


def principal_left_ideal(S: FiniteSemigroup, a: int) -> ElemSet:
    """S^1 a."""
    S._index(a)
    return S.elemset({a} | {S.table[x][a] for x in range(S.n)})


def generated_subsemigroup(S: FiniteSemigroup, gens) -> ElemSet:
    """Closure of ``gens`` under the product."""
    gens = list(S._as_set(gens))
    seen = set(gens)
    frontier = list(gens)
    t = S.table
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                for p in (t[g][x], t[x][g]):
                    if p not in seen:
                        seen.add(p)
                        nxt.append(p)
        frontier = nxt
    return S.elemset(seen)


# -- deciders ------------------------------------------------------------------

def is_left_reversible(S: FiniteSemigroup) -> Verdict:
    ideals = [principal_right_ideal(S, a) for a in range(S.n)]
    for a in range(S.n):
        for b in range(a + 1, S.n):
            if ideals[a].isdisjoint(ideals[b]):
                return verdict("left_reversible", False, (a, b),
                               (f"{a}S^1 and {b}S^1 are disjoint", "definition"))
    return verdict("left_reversible", True, None,
                   ("every pair of principal right ideals intersects", "exact-scan"))


def is_left_thick(S: FiniteSemigroup, E) -> Verdict:
    """E is left thick iff St ⊆ E for some t; F = S dominates every finite F."""
    E = S._as_set(E)
    full = S.elements()
    for t in range(S.n):
        if right_translate(S, full, t) <= E:
            return verdict("left_thick", True, t, (f"S·{t} ⊆ E", "definition"))
    return verdict("left_thick", False, None, ("St ⊄ E for every t", "exact-scan"))


def thickness_witness_chain(S: FiniteSemigroup, a: int, F) -> int:
    """Build t = t1...tk with f_i t1...ti in aS for each f_i in F, so Ft ⊆ aS^1.

    Each step picks the least t_i that works; existence is guaranteed by left
    reversibility.
    """
    S._index(a)
    F = S._as_set(F)
    rev = is_left_reversible(S)
    if not rev.holds:
        raise NotLeftReversible(rev.witness)
    target = _right_multiples(S, a)
    t = S.table
    prefix = None
    for step, f in enumerate(F, start=1):
        head = f if prefix is None else t[f][prefix]
        for ti in range(S.n):
            if t[head][ti] in target:
                break
        else:
            raise ChainStepFailed(step)
        prefix = ti if prefix is None else t[prefix][ti]
    if prefix is None:
        prefix = 0
    if not right_translate(S, F, prefix) <= principal_right_ideal(S, a):
        raise ChainStepFailed(len(F))
    return prefix


def is_left_cancellative(S: FiniteSemigroup) -> Verdict:
    t = S.table
    for s in range(S.n):
        seen = {}
        for x in range(S.n):
            y = seen.setdefault(t[s][x], x)
            if y != x:
                return verdict("left_cancellative", False, (s, y, x),
                               (f"{s}·{y} = {s}·{x} with {y} != {x}", "definition"))
    return verdict("left_cancellative", True, None, ("every row is injective", "exact-scan"))


def is_right_cancellative(S: FiniteSemigroup) -> Verdict:
    t = S.table
    for s in range(S.n):
        seen = {}
        for x in range(S.n):
            y = seen.setdefault(t[x][s], x)
            if y != x:
                return verdict("right_cancellative", False, (s, y, x),
                               (f"{y}·{s} = {x}·{s} with {y} != {x}", "definition"))
    return verdict("right_cancellative", True, None, ("every column is injective", "exact-scan"))


def _equalised(S: FiniteSemigroup, x: int, y: int) -> int | None:
    t = S.table
    for s in range(S.n):
        if t[x][s] == t[y][s]:
            return s
    return None


def is_klawe(S: FiniteSemigroup) -> Verdict:
    """sx = sy must imply xt = yt for some t."""
    t = S.table
    for s in range(S.n):
        for x in range(S.n):
            for y in range(x + 1, S.n):
                if t[s][x] == t[s][y] and _equalised(S, x, y) is None:
                    return verdict("klawe", False, (s, x, y),
                                   (f"{s}·{x} = {s}·{y} but {x}t != {y}t for all t", "definition"))
    return verdict("klawe", True, None, ("every coincidence sx = sy is equalised on the right", "exact-scan"))


def _injective_on(S: FiniteSemigroup, s: int, E: ElemSet) -> bool:
    return len(left_translate(S, s, E)) == len(E)


def is_near_left_cancellative(S: FiniteSemigroup) -> Verdict:
    """Some left thick E with s injective on E, for every s.

    Candidates are the sets St: each is left thick, and every left thick E
    contains one of them, so injectivity on E restricts to St.
    """
    full = S.elements()
    columns = [right_translate(S, full, t) for t in range(S.n)]
    witness = {}
    for s in range(S.n):
        for t, St in enumerate(columns):
            if _injective_on(S, s, St):
                witness[s] = t
                break
        else:
            return verdict("near_left_cancellative", False, s,
                           (f"{s} is not injective on any St", "exact-scan"))
    return verdict("near_left_cancellative", True, witness,
                   ("each s is injective on S·witness[s], a left thick set", "definition"))


def near_left_cancellative_bruteforce(S: FiniteSemigroup) -> bool:
    """All-subsets oracle: every s injective on some left thick subset."""
    if S.n > 12:
        raise ResourceLimit(12, "elements for subset brute force")
    full = S.elements()
    columns = [right_translate(S, full, t).bits for t in range(S.n)]
    thick = [ElemSet(S.n, m) for m in range(1, 1 << S.n)
             if any(c & ~m == 0 for c in columns)]
    return all(any(_injective_on(S, s, E) for E in thick) for s in range(S.n))


def every_principal_ideal_has_idempotent(S: FiniteSemigroup) -> Verdict:
    witness = {}
    idem = set(S.idempotents())
    for a in range(S.n):
        found = [e for e in principal_two_sided_ideal(S, a) if e in idem]
        if not found:
            return verdict("ideals_have_idempotents", False, a,
                           (f"S^1{a}S^1 has no idempotent", "exact-scan"))
        witness[a] = found[0]
    return verdict("ideals_have_idempotents", True, witness,
                   ("every principal ideal contains an idempotent", "exact-scan"))


@dataclass(frozen=True)
class NearLCWitness:
    """Output of the idempotent construction: s is injective on E = fS."""

    f: int
    E: ElemSet
    t: int
    x: int
    y: int


def near_lc_witness_via_idempotent(S: FiniteSemigroup, s: int) -> NearLCWitness:
    """Idempotent e = xsy in SsS; f idempotent L-related to xsyxs; f = ts; E = fS."""
    S._index(s)
    rev = is_left_reversible(S)
    if not rev.holds:
        raise PreconditionFailed(f"not left reversible: {rev.witness}")
    idem = every_principal_ideal_has_idempotent(S)
    if not idem.holds:
        raise PreconditionFailed(f"ideal without idempotent at {idem.witness}")
    t = S.table
    n = S.n
    found = None
    for x in range(n):
        for y in range(n):
            e = t[t[x][s]][y]
            if t[e][e] == e:
                found = x, y
                break
        if found:
            break
    if found is None:
        raise SearchExhausted("no idempotent xsy in SsS")
    x, y = found
    xs = t[x][s]
    m = t[t[t[xs][y]][x]][s]
    left_class = principal_left_ideal(S, m)
    f = next((e for e in S.idempotents() if principal_left_ideal(S, e) == left_class), None)
    if f is None:
        raise SearchExhausted("no idempotent L-related to xsyxs")
    tt = next((u for u in range(n) if t[u][s] == f), None)
    if tt is None:
        raise SearchExhausted("f is not of the form ts")
    E = _right_multiples(S, f)
    if not _injective_on(S, s, E):
        raise SearchExhausted(f"left translation by {s} not injective on fS")
    return NearLCWitness(f=f, E=E, t=tt, x=x, y=y)


# -- the relation x ~ y iff xs = ys for some s ----------------------------------

@dataclass(frozen=True)
class CongruenceStatus:
    kind: str  # "congruence" | "not_transitive" | "not_compatible"
    witness: tuple = ()

    @property
    def is_congruence(self) -> bool:
        return self.kind == "congruence"


@dataclass(frozen=True)
class CongRelation:
    n: int
    related: tuple[tuple[bool, ...], ...]
    status: CongruenceStatus = field(compare=False)

    def __call__(self, x: int, y: int) -> bool:
        return self.related[x][y]


def cong_relation(S: FiniteSemigroup) -> CongRelation:
    """Relation x ~ y iff xs = ys for some s; congruence status is scanned."""
    n = S.n
    t = S.table
    r = tuple(tuple(_equalised(S, x, y) is not None for y in range(n)) for x in range(n))
    status = CongruenceStatus("congruence")
    for x, y, z in itertools.product(range(n), repeat=3):
        if r[x][y] and r[y][z] and not r[x][z]:
            status = CongruenceStatus("not_transitive", (x, y, z))
            break
    else:
        for x, y in itertools.product(range(n), repeat=2):
            if not r[x][y]:
                continue
            bad = next((z for z in range(n)
                        if not r[t[z][x]][t[z][y]] or not r[t[x][z]][t[y][z]]), None)
            if bad is not None:
                status = CongruenceStatus("not_compatible", (x, y, bad))
                break
    return CongRelation(n, r, status)


def quotient(S: FiniteSemigroup, rel: CongRelation) -> tuple[FiniteSemigroup, tuple[int, ...]]:
    """Quotient table and projection; classes are numbered by least member."""
    if not rel.status.is_congruence:
        raise NotACongruence(f"{rel.status.kind}: {rel.status.witness}")
    if rel.n != S.n:
        raise ValueError("relation and semigroup sizes differ")
    proj = [-1] * S.n
    reps = []
    for x in range(S.n):
        if proj[x] < 0:
            k = len(reps)
            reps.append(x)
            for y in range(x, S.n):
                if rel(x, y):
                    proj[y] = k
    t = S.table
    rows = [[proj[t[a][b]] for b in reps] for a in reps]
    Q = validate_table(len(reps), rows)
    for a in range(S.n):
        for b in range(S.n):
            if proj[t[a][b]] != Q.table[proj[a]][proj[b]]:
                raise NotACongruence(f"projection not multiplicative at {(a, b)}")
    return Q, tuple(proj)


# -- corpus enumeration ---------------------------------------------------------

MAX_ENUMERATION_ORDER = 4


def enumerate_semigroup_tables(n: int) -> Iterator[FiniteSemigroup]:
    """All labeled associative n×n tables, in row-major lexicographic order.

    Backtracking over cells; after each assignment every associativity triple
    using the new cell in one of its four lookups is checked once all its
    lookups are filled.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > MAX_ENUMERATION_ORDER:
        raise ResourceLimit(MAX_ENUMERATION_ORDER, "order for exhaustive enumeration")
    cells = n * n
    t = [-1] * cells
    rng = range(n)

    def consistent(a: int, b: int) -> bool:
        v = t[a * n + b]
        for z in rng:
            # (ab)z = a(bz)
            bz = t[b * n + z]
            if bz >= 0:
                lhs, rhs = t[v * n + z], t[a * n + bz]
                if lhs >= 0 and rhs >= 0 and lhs != rhs:
                    return False
        for x in rng:
            # (xa)b = x(ab)
            xa = t[x * n + a]
            if xa >= 0:
                lhs, rhs = t[xa * n + b], t[x * n + v]
                if lhs >= 0 and rhs >= 0 and lhs != rhs:
                    return False
        for x in rng:
            for y in rng:
                # cell used as the outer lookup (xy)b with xy = a
                if t[x * n + y] == a:
                    yb = t[y * n + b]
                    if yb >= 0:
                        rhs = t[x * n + yb]
                        if rhs >= 0 and rhs != v:
                            return False
                # cell used as the outer lookup a(yz) with yz = b
                if t[x * n + y] == b:
                    ay = t[a * n + x]
                    if ay >= 0:
                        lhs = t[ay * n + y]
                        if lhs >= 0 and lhs != v:
                            return False
        return True

    def rec(k: int):
        if k == cells:
            yield FiniteSemigroup._trusted(
                n, tuple(tuple(t[a * n:(a + 1) * n]) for a in range(n)))
            return
        a, b = divmod(k, n)
        for v in rng:
            t[k] = v
            if consistent(a, b):
                yield from rec(k + 1)
        t[k] = -1

    yield from rec(0)


def canonical_form(S: FiniteSemigroup) -> tuple[tuple[int, ...], ...]:
    """Lexicographically least relabeling of the table."""
    n = S.n
    best = None
    for perm in itertools.permutations(range(n)):
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        cand = tuple(tuple(perm[S.table[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
        if best is None or cand < best:
            best = cand
    return best


def dedup_isomorphism(tables: Iterable[FiniteSemigroup]) -> list[FiniteSemigroup]:
    """One representative (first seen) per isomorphism class."""
    seen = set()
    out = []
    for S in tables:
        key = canonical_form(S)
        if key not in seen:
            seen.add(key)
            out.append(S)
    return out


def transformation_closure(degree: int, gens: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Elements of the semigroup generated by maps on ``range(degree)``, sorted.

    Maps act on the right: the product fg applies f first, then g.
    """
    gens = [tuple(g) for g in gens]
    seen = set(gens)
    frontier = list(seen)
    while frontier:
        nxt = []
        for f in frontier:
            for g in gens:
                h = tuple(g[f[p]] for p in range(degree))
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return sorted(seen)


def table_from_elements(elems: Sequence, mul) -> FiniteSemigroup:
    index = {e: i for i, e in enumerate(elems)}
    return validate_table(len(elems), [[index[mul(a, b)] for b in elems] for a in elems])


def opposite(S: FiniteSemigroup) -> FiniteSemigroup:
    """Same elements with the product a*b := ba."""
    return validate_table(S.n, [[S.table[b][a] for b in range(S.n)] for a in range(S.n)])


def compose(f: tuple[int, ...], g: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(g[p] for p in f)


def random_semigroup(rng: random.Random, max_order: int = 5, max_tries: int = 10_000) -> FiniteSemigroup:
    """Closure of random transformations, randomly relabeled.

    A target order in [2, max_order] is drawn first and closures are resampled
    until one has exactly that order, so larger orders are not swamped by
    trivial closures.  Half of the results are replaced by the opposite
    semigroup (transposed table): right-acting maps favour right zeros.
    """
    target = rng.randint(min(2, max_order), max_order)
    for _ in range(max_tries):
        degree = rng.randint(2, 5)
        k = rng.randint(1, 3)
        gens = [tuple(rng.randrange(degree) for _ in range(degree)) for _ in range(k)]
        elems = transformation_closure(degree, gens)
        if len(elems) != target:
            continue
        S = table_from_elements(elems, compose)
        if rng.random() < 0.5:
            S = opposite(S)
        perm = list(range(S.n))
        rng.shuffle(perm)
        inv = [0] * S.n
        for i, p in enumerate(perm):
            inv[p] = i
        return validate_table(S.n, [[perm[S.table[inv[a]][inv[b]]] for b in range(S.n)]
                                    for a in range(S.n)])
    raise SearchExhausted(f"no closure of order {target} in {max_tries} tries")


def random_corpus(count: int, seed: int = 0, max_order: int = 5) -> list[FiniteSemigroup]:
    rng = random.Random(seed)
    return [random_semigroup(rng, max_order) for _ in range(count)]
