"""Digraphs with directed semimetrics, out-boundaries, Cayley graphs and quasi-isometries."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from amenkit.errors import EmptySet, InequalityViolated, QiNotVerified, ResourceLimit, max_elements
from amenkit.semigroup import FiniteSemigroup
from amenkit.universe import Universe, ball_table
from amenkit.verdict import Verdict, verdict

INF = math.inf

# 2**n subsets are scanned for the proper isoperimetric number.
MAX_ISOPERIMETRIC_VERTICES = 20


@dataclass(frozen=True)
class Digraph:
    n: int
    out: tuple[tuple[int, ...], ...]
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.out) != self.n:
            raise ValueError("adjacency list length differs from vertex count")
        for u, nbrs in enumerate(self.out):
            if len(set(nbrs)) != len(nbrs):
                raise ValueError(f"duplicate edge out of {u}")
            for v in nbrs:
                if not 0 <= v < self.n:
                    raise ValueError(f"edge {u}->{v} leaves the vertex set")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=None) -> Digraph:
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u].add(v)
        return cls(n, tuple(tuple(sorted(a)) for a in adj), None if labels is None else tuple(labels))

    def edges(self):
        for u, nbrs in enumerate(self.out):
            for v in nbrs:
                yield u, v

    @property
    def out_degree_bound(self) -> int:
        return max((len(a) for a in self.out), default=0)

    def index_of(self, label) -> int:
        if self.labels is None:
            return label
        return self.labels.index(label)


def cycle_graph(n: int) -> Digraph:
    return Digraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_with_loops(n: int) -> Digraph:
    return Digraph.from_edges(n, [(u, v) for u in range(n) for v in range(n)])


# -- semimetric ---------------------------------------------------------------

@dataclass(frozen=True)
class Semimetric:
    dist: tuple[tuple[float, ...], ...]

    def __call__(self, x: int, y: int):
        return self.dist[x][y]

    @property
    def n(self) -> int:
        return len(self.dist)


def _bfs(G: Digraph, src: int) -> list:
    d = [INF] * G.n
    d[src] = 0
    q = deque([src])
    while q:
        u = q.popleft()
        for v in G.out[u]:
            if d[v] is INF:
                d[v] = d[u] + 1
                q.append(v)
    return d


def semimetric(G: Digraph) -> Semimetric:
    """Shortest directed path lengths; unreachable pairs are at distance INF."""
    return Semimetric(tuple(tuple(_bfs(G, s)) for s in range(G.n)))


def triangle_violation(d: Semimetric):
    """First (x, y, z) with d(x,z) > d(x,y) + d(y,z), or None."""
    n = d.n
    for x in range(n):
        for y in range(n):
            dxy = d.dist[x][y]
            for z in range(n):
                if d.dist[x][z] > dxy + d.dist[y][z]:
                    return x, y, z
    return None


# -- boundaries -----------------------------------------------------------------

def out_boundary(G: Digraph, A: Iterable[int]) -> frozenset:
    """Vertices outside A receiving an edge from A."""
    A = frozenset(A)
    return frozenset(v for u in A for v in G.out[u] if v not in A)


def isoperimetric_ratio(G: Digraph, A: Iterable[int]) -> Fraction:
    A = frozenset(A)
    if not A:
        raise EmptySet("isoperimetric ratio of the empty set")
    return Fraction(len(out_boundary(G, A)), len(A))


def proper_isoperimetric_minimizer(G: Digraph) -> tuple[Fraction, frozenset]:
    """Least |∂A|/|A| over nonempty proper A, with the least-bitmask minimizer.

    A = V always gives 0 on a finite digraph, so only proper subsets are
    informative.
    """
    n = G.n
    if n < 2:
        raise ValueError("need at least 2 vertices")
    if n > MAX_ISOPERIMETRIC_VERTICES:
        raise ResourceLimit(MAX_ISOPERIMETRIC_VERTICES, "vertices for subset brute force")
    nbr = [sum(1 << v for v in G.out[u]) for u in range(n)]
    full = (1 << n) - 1
    reach = [0] * (1 << n)
    best = None
    best_mask = 0
    for mask in range(1, full):
        low = mask & -mask
        reach[mask] = reach[mask ^ low] | nbr[low.bit_length() - 1]
        r = Fraction((reach[mask] & ~mask).bit_count(), mask.bit_count())
        if best is None or r < best:
            best, best_mask = r, mask
    return best, frozenset(i for i in range(n) if best_mask >> i & 1)


def proper_isoperimetric_number(G: Digraph) -> Fraction:
    return proper_isoperimetric_minimizer(G)[0]


def isoperimetric_number(G: Digraph) -> Fraction:
    """Infimum over all finite vertex sets; always 0 for a finite digraph (A = V)."""
    return isoperimetric_ratio(G, range(G.n)) if G.n else Fraction(0)


# -- Cayley graphs ----------------------------------------------------------------

def _cayley(source, X, R, vertices, side: str) -> Digraph:
    if isinstance(source, FiniteSemigroup):
        X = list(range(source.n)) if X is None else list(X)
        verts = list(range(source.n)) if vertices is None else list(vertices)
        mul = source.mul
    elif isinstance(source, Universe):
        X = list(source.generators) if X is None else list(X)
        if vertices is None:
            if R is None:
                raise ValueError("a universe needs a truncation radius R")
            verts = ball_table(source, R).ordered(R)
        else:
            verts = list(vertices)
        mul = source.mul
    else:
        raise TypeError(f"cannot build a Cayley graph of {type(source).__name__}")
    index = {v: i for i, v in enumerate(verts)}
    edges = []
    for i, v in enumerate(verts):
        for x in X:
            w = mul(x, v) if side == "left" else mul(v, x)
            j = index.get(w)
            if j is not None:
                edges.append((i, j))
    return Digraph.from_edges(len(verts), edges, labels=verts)


def cayley_left(source, X=None, R: int | None = None, vertices=None) -> Digraph:
    """Edges s -> xs.  For a universe the vertices are B_R unless given."""
    return _cayley(source, X, R, vertices, "left")


def cayley_right(source, X=None, R: int | None = None, vertices=None) -> Digraph:
    """Edges s -> sx.  For a universe the vertices are B_R unless given."""
    return _cayley(source, X, R, vertices, "right")


# -- quasi-isometries ----------------------------------------------------------------

def _lower_ok(dg, dd, lam: Fraction) -> bool:
    # dd/lam - lam <= dg
    if dd is INF:
        return dg is INF
    if dg is INF:
        return True
    return Fraction(dd) / lam - lam <= dg


def _upper_ok(dg, dd, lam: Fraction) -> bool:
    # dg <= lam*dd + lam
    if dg is INF:
        return dd is INF
    if dd is INF:
        return True
    return dg <= lam * dd + lam


def verify_qi(G: Digraph, H: Digraph, phi: Sequence[int], lam,
              dG: Semimetric | None = None, dH: Semimetric | None = None) -> Verdict:
    """Check that phi: V(G) -> V(H) is a lam-quasi-isometry."""
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    if len(phi) != G.n or any(not 0 <= p < H.n for p in phi):
        raise ValueError("phi must map every vertex of G into V(H)")
    dG = semimetric(G) if dG is None else dG
    dH = semimetric(H) if dH is None else dH
    for x in range(G.n):
        for y in range(G.n):
            dg, dd = dG.dist[x][y], dH.dist[phi[x]][phi[y]]
            if not _lower_ok(dg, dd, lam):
                return verdict("quasi_isometry", False, ("lower", x, y),
                               (f"d_H(phi {x}, phi {y})/lam - lam > d_G({x},{y}) = {dg}", "definition"))
            if not _upper_ok(dg, dd, lam):
                return verdict("quasi_isometry", False, ("upper", x, y),
                               (f"d_G({x},{y}) = {dg} > lam·{dd} + lam", "definition"))
    image = sorted(set(phi))
    for y in range(H.n):
        if not any(dH.dist[z][y] <= lam and dH.dist[y][z] <= lam for z in image):
            return verdict("quasi_isometry", False, ("density", y),
                           (f"vertex {y} of H is not within lam of the image both ways", "definition"))
    return verdict("quasi_isometry", True, None,
                   ("both distance inequalities and lam-density hold", "exact-scan"))


@dataclass(frozen=True)
class TransferConstants:
    C: int  # fibre bound sum_{i<=floor(lam)} k^i
    D: int  # max walks of length <= 2lam^2+2lam from a vertex of G
    E: int  # max walks of length <= lam from a vertex of H


def walk_counts(G: Digraph, max_len: int) -> list[int]:
    """Number of directed walks of length 0..max_len starting at each vertex."""
    if max_len * max(1, len(list(G.edges()))) > max_elements():
        raise ResourceLimit(max_elements(), "walk-count steps")
    exact = [1] * G.n
    total = [1] * G.n
    for _ in range(max_len):
        exact = [sum(exact[w] for w in G.out[v]) for v in range(G.n)]
        total = [a + b for a, b in zip(total, exact)]
    return total


def transfer_constants(G: Digraph, H: Digraph, lam) -> TransferConstants:
    lam = Fraction(lam)
    k = G.out_degree_bound
    C = sum(k ** i for i in range(math.floor(lam) + 1))
    D = max(walk_counts(G, math.floor(2 * lam * lam + 2 * lam)), default=1)
    E = max(walk_counts(H, math.floor(lam)), default=1)
    return TransferConstants(C, D, E)


@dataclass(frozen=True)
class TransferReport:
    Q: frozenset
    constants: TransferConstants
    size_A: int
    size_Q: int
    boundary_A: int
    boundary_Q: int

    @property
    def size_ok(self) -> bool:
        return self.size_Q * self.constants.C >= self.size_A

    @property
    def boundary_ok(self) -> bool:
        return self.boundary_Q <= self.constants.D * self.constants.E * self.boundary_A

    def to_json(self) -> dict:
        c = self.constants
        return {"C": c.C, "D": c.D, "E": c.E, "|A|": self.size_A, "|Q|": self.size_Q,
                "|dA|": self.boundary_A, "|dQ|": self.boundary_Q,
                "|Q| >= |A|/C": self.size_ok, "|dQ| <= DE|dA|": self.boundary_ok}


def transfer_folner_set(G: Digraph, H: Digraph, phi: Sequence[int], lam, A: Iterable[int]):
    """Push a thin set A of G to Q = union of two-sided lam-balls around phi(A) in H."""
    lam = Fraction(lam)
    A = frozenset(A)
    if not A:
        raise EmptySet("A must be nonempty")
    dG, dH = semimetric(G), semimetric(H)
    qi = verify_qi(G, H, phi, lam, dG, dH)
    if not qi.holds:
        raise QiNotVerified(f"phi is not a {lam}-quasi-isometry: {qi.witness}")
    centres = {phi[a] for a in A}
    Q = frozenset(v for v in range(H.n)
                  if any(dH.dist[v][c] <= lam and dH.dist[c][v] <= lam for c in centres))
    consts = transfer_constants(G, H, lam)
    rep = TransferReport(Q, consts, len(A), len(Q),
                         len(out_boundary(G, A)), len(out_boundary(H, Q)))
    if not rep.size_ok:
        raise InequalityViolated(f"|Q| = {rep.size_Q} < |A|/C = {Fraction(rep.size_A, consts.C)}")
    if not rep.boundary_ok:
        raise InequalityViolated(f"|dQ| = {rep.boundary_Q} > DE|dA| = "
                                 f"{consts.D * consts.E * rep.boundary_A}")
    return Q, rep


def frontier_distance(G: Digraph, A: Iterable[int], frontier: Iterable[int]) -> float:
    """Least directed distance from a vertex of A to a frontier vertex."""
    frontier = set(frontier)
    best = INF
    for a in A:
        d = _bfs(G, a)
        best = min([best] + [d[f] for f in frontier])
    return best


def truncation_frontier(G: Digraph, generators: int) -> list[int]:
    """Vertices that lost an out-edge to the truncation."""
    return [v for v in range(G.n) if len(G.out[v]) < generators]
