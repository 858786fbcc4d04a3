"""Independent reference computations used only by the tests.

Nothing here imports the deciders; each function recomputes its answer from
the raw multiplication table or by listing words.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def all_associative_tables(n: int):
    """Every associative operation on range(n), by listing all n^(n*n) tables."""
    triples = list(itertools.product(range(n), repeat=3))
    for values in itertools.product(range(n), repeat=n * n):
        t = [values[i * n:(i + 1) * n] for i in range(n)]
        if all(t[t[a][b]][c] == t[a][t[b][c]] for a, b, c in triples):
            yield tuple(tuple(r) for r in t)


def right_ideal_s1(t, a):
    return {a} | set(t[a])


def left_reversible(t) -> bool:
    n = len(t)
    return all(right_ideal_s1(t, a) & right_ideal_s1(t, b) for a in range(n) for b in range(n))


def sfc_subsets(t) -> bool:
    """Some nonempty F with |F \\ sF| = 0 for every s, over all subsets."""
    n = len(t)
    for r in range(1, n + 1):
        for F in itertools.combinations(range(n), r):
            F = set(F)
            if all(F <= {t[s][x] for x in F} for s in range(n)):
                return True
    return False


def klawe(t) -> bool:
    n = len(t)
    for s, x, y in itertools.product(range(n), repeat=3):
        if t[s][x] == t[s][y] and not any(t[x][u] == t[y][u] for u in range(n)):
            return False
    return True


def word_products(mul, gens, max_len):
    """Set of all products of words of length 1..max_len."""
    seen = set()
    layer = list(gens)
    seen.update(layer)
    for _ in range(max_len - 1):
        layer = [mul(w, g) for w in layer for g in gens]
        seen.update(layer)
    return seen


def bicyclic_ball_size(i: int) -> int:
    """#{(a,b): a+b <= i} minus the identity, back in once pq is a word (i >= 2)."""
    pairs = (i + 1) * (i + 2) // 2
    return pairs - 1 + (1 if i >= 2 else 0)


def bfs_out_boundary(edges, A):
    A = set(A)
    return {v for u, v in edges if u in A and v not in A}


def brute_isoperimetric(n, edges):
    best = None
    for r in range(1, n):
        for A in itertools.combinations(range(n), r):
            val = Fraction(len(bfs_out_boundary(edges, A)), len(A))
            best = val if best is None else min(best, val)
    return best


def floyd_warshall(n, edges):
    inf = float("inf")
    d = [[0 if i == j else inf for j in range(n)] for i in range(n)]
    for u, v in edges:
        if u != v:
            d[u][v] = 1
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d
