"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
Tolerances are exact (rational or integer equality) unless a runtime bound is
stated in the criterion's test.
"""

from __future__ import annotations

import itertools
import json
import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

import oracles
from instances import freecomm_transfer_setup, refine_instances
from amenkit.digraph import (
    INF,
    Digraph,
    cayley_left,
    cayley_right,
    cycle_graph,
    out_boundary,
    proper_isoperimetric_number,
    semimetric,
    transfer_folner_set,
    triangle_violation,
    verify_qi,
)
from amenkit.errors import InequalityViolated
from amenkit.folner import Found, decide_sfc_finite, folner_search_balls, refine_injective, sfc_bruteforce_oracle
from amenkit.semigroup import (
    N2,
    Z2,
    ZL2,
    cong_relation,
    enumerate_semigroup_tables,
    is_klawe,
    is_left_cancellative,
    is_left_reversible,
    quotient,
    random_corpus,
)
from amenkit.universe import NotFoundUpTo, ball, bicyclic_universe, free_universe, freecomm_universe, growth_table

# Runtime bounds in seconds, one per timed criterion.
LIMIT_COUNTS = 10.0
LIMIT_SFC_ORACLE = 30.0
LIMIT_BALLS = 5.0
LIMIT_TRANSFER = 60.0

RANDOM_COUNT = 1000
RANDOM_SEED = 0
REFINE_COUNT = 200
REFINE_SEED = 0

ROOT = Path(__file__).resolve().parents[1]


@pytest.fixture(scope="module")
def corpus3():
    return [S for n in (1, 2, 3) for S in enumerate_semigroup_tables(n)]


@pytest.fixture(scope="module")
def random1000():
    return random_corpus(RANDOM_COUNT, seed=RANDOM_SEED, max_order=5)


@pytest.fixture
def criterion(request, capsys):
    """Yields a dict for details; prints the verdict line after the test body."""
    info = {"detail": ""}
    start = time.perf_counter()
    yield info
    elapsed = time.perf_counter() - start
    failed = getattr(request.node, "rep_call", None)
    status = "FAIL" if failed is None or failed.failed else "PASS"
    with capsys.disabled():
        print(f"\n[{status}] criterion {info['number']}: {info['name']} ({elapsed:.2f}s) {info['detail']}")


def test_01_corpus_counts(criterion):
    criterion.update(number=1, name="enumeration counts 1, 8, 113")
    start = time.perf_counter()
    counts = [sum(1 for _ in enumerate_semigroup_tables(n)) for n in (1, 2, 3)]
    elapsed = time.perf_counter() - start
    oracle = [sum(1 for _ in oracles.all_associative_tables(n)) for n in (1, 2, 3)]
    criterion["detail"] = f"counts={counts} oracle={oracle} enum_time={elapsed:.2f}s"
    assert counts == oracle == [1, 8, 113]
    assert elapsed < LIMIT_COUNTS


def test_02_sfc_oracle(criterion, corpus3, random1000):
    criterion.update(number=2, name="decide_sfc_finite agrees with subset oracle")
    tables = corpus3 + random1000
    start = time.perf_counter()
    disagreements = [S.table for S in tables
                     if decide_sfc_finite(S).status != sfc_bruteforce_oracle(S).status]
    elapsed = time.perf_counter() - start
    criterion["detail"] = f"tables={len(tables)} disagreements={len(disagreements)} time={elapsed:.2f}s"
    assert len(corpus3) == 122 and len(random1000) == RANDOM_COUNT
    assert disagreements == []
    assert elapsed < LIMIT_SFC_ORACLE


def test_03_sfc_iff_reversible(criterion, corpus3):
    criterion.update(number=3, name="SFC <=> left reversible on order <= 3")
    bad = [S.table for S in corpus3 if decide_sfc_finite(S).holds != is_left_reversible(S).holds]
    criterion["detail"] = f"tables={len(corpus3)} counterexamples={len(bad)}"
    assert bad == []


def test_04_theorem_instances(criterion, corpus3, random1000):
    criterion.update(number=4, name="SFC => Klawe => quotient LC; Klawe => SFC; commutative => SFC")
    bad = []
    for S in corpus3 + random1000:
        sfc = decide_sfc_finite(S).holds
        klawe = is_klawe(S).holds
        if klawe:
            rel = cong_relation(S)
            quotient_lc = rel.status.is_congruence and is_left_cancellative(quotient(S, rel)[0]).holds
        else:
            quotient_lc = None
        if sfc and not klawe:
            bad.append(("sfc=>klawe", S.table))
        if klawe and not quotient_lc:
            bad.append(("klawe=>quotient_lc", S.table))
        if klawe and not sfc:
            bad.append(("klawe=>sfc", S.table))
        if S.is_commutative() and not sfc:
            bad.append(("commutative=>sfc", S.table))
    criterion["detail"] = f"tables={len(corpus3) + len(random1000)} counterexamples={len(bad)}"
    assert bad == []


def test_05_ball_closed_forms(criterion):
    criterion.update(number=5, name="ball sizes match closed forms for i <= 12")
    start = time.perf_counter()
    free = growth_table(free_universe(2), 12)
    comm = growth_table(freecomm_universe(2), 12)
    bic = growth_table(bicyclic_universe(), 12)
    elapsed = time.perf_counter() - start
    criterion["detail"] = f"bicyclic={bic} time={elapsed:.2f}s"
    assert free == [2 ** (i + 1) - 2 for i in range(1, 13)]
    assert comm == [(i + 1) * (i + 2) // 2 - 1 for i in range(1, 13)]
    assert bic == [oracles.bicyclic_ball_size(i) for i in range(1, 13)]
    U = bicyclic_universe()
    assert bic == [len(oracles.word_products(U.mul, U.generators, i)) for i in range(1, 13)]
    assert bic[:3] == [2, 6, 10]
    assert elapsed < LIMIT_BALLS


def test_06_folner_search(criterion):
    criterion.update(number=6, name="Følner ball search")
    U = freecomm_universe(2)
    res = folner_search_balls(U, U.generators, Fraction(1, 2), 10)
    V = free_universe(2)
    miss = folner_search_balls(V, V.generators, Fraction(1, 2), 10)
    criterion["detail"] = f"freecomm={getattr(res, 'radius', res)} free={miss}"
    assert isinstance(res, Found) and res.radius == 4 and res.F == ball(U, 4)
    assert max(res.defects.values()) == Fraction(5, 14)
    assert all(isinstance(d, Fraction) for d in res.defects.values())
    assert miss == NotFoundUpTo(10)


def test_07_refinement(criterion):
    criterion.update(number=7, name="injective refinement inequalities")
    violated = 0
    for S, A, F, mu in refine_instances(REFINE_COUNT, seed=REFINE_SEED):
        try:
            refine_injective(S, A, F, mu)
        except InequalityViolated:
            violated += 1
    B, report = refine_injective(N2, {0, 1}, {1}, Fraction(3, 5))
    size = next(c for c in report if c.name.startswith("|A\\B|"))
    criterion["detail"] = f"instances={REFINE_COUNT} violated={violated} N2: |A\\B|={size.lhs} <= {size.rhs}"
    assert violated == 0
    assert B == frozenset() and size.lhs == 2 and size.rhs == Fraction(12, 5)


def _graph_test_set() -> list[Digraph]:
    rng = random.Random(2024)
    graphs = [cycle_graph(n) for n in range(1, 65)]
    for _ in range(60):
        n = rng.randint(1, 64)
        m = rng.randint(0, 3 * n)
        graphs.append(Digraph.from_edges(n, {(rng.randrange(n), rng.randrange(n)) for _ in range(m)}))
    for S in enumerate_semigroup_tables(3):
        graphs += [cayley_left(S), cayley_right(S)]
    graphs.append(cayley_right(free_universe(2), R=4))
    graphs.append(cayley_left(freecomm_universe(2), R=9))
    graphs.append(cayley_right(bicyclic_universe(), R=8))
    return [G for G in graphs if G.n <= 64]


def test_08_digraph_geometry(criterion):
    criterion.update(number=8, name="cycle isoperimetric numbers, boundaries, triangle inequality")
    cycles = {n: proper_isoperimetric_number(cycle_graph(n)) for n in range(3, 11)}
    assert all(v == Fraction(1, n - 1) for n, v in cycles.items())
    for n in range(3, 11):
        assert cycles[n] == oracles.brute_isoperimetric(n, list(cycle_graph(n).edges()))
    graphs = _graph_test_set()
    rng = random.Random(7)
    for G in graphs:
        edges = list(G.edges())
        for _ in range(5):
            A = {v for v in range(G.n) if rng.random() < 0.5} or {0}
            dA = out_boundary(G, A)
            assert dA == oracles.bfs_out_boundary(edges, A) and not dA & A
        d = semimetric(G)
        assert triangle_violation(d) is None
        ref = oracles.floyd_warshall(G.n, edges)
        for x, y in itertools.product(range(G.n), repeat=2):
            expect = INF if ref[x][y] == float("inf") else ref[x][y]
            assert d(x, y) == expect
            for z in range(G.n):
                if d(x, y) is not INF and d(y, z) is not INF:
                    assert d(x, z) <= d(x, y) + d(y, z)
    criterion["detail"] = f"graphs={len(graphs)} max_n={max(G.n for G in graphs)}"


def test_09_qi_and_transfer(criterion):
    criterion.update(number=9, name="QI verification and Følner transfer")
    start = time.perf_counter()
    assert verify_qi(cayley_left(ZL2), cayley_left(Z2), [0, 1], 1).holds
    U, G, H, phi, A = freecomm_transfer_setup(12)
    assert verify_qi(G, H, phi, 2).holds
    Q, rep = transfer_folner_set(G, H, phi, Fraction(2), A)
    elapsed = time.perf_counter() - start
    c = rep.constants
    criterion["detail"] = (f"C={c.C} D={c.D} E={c.E} |A|={rep.size_A} |Q|={rep.size_Q} "
                           f"|dA|={rep.boundary_A} |dQ|={rep.boundary_Q} time={elapsed:.2f}s")
    assert rep.size_A == len(ball(U, 5)) == 20
    assert (c.C, c.D, c.E) == (7, 4095, 13)
    assert rep.size_Q * c.C >= rep.size_A
    assert rep.boundary_Q <= c.D * c.E * rep.boundary_A
    assert elapsed < LIMIT_TRANSFER


def _corpus_run() -> dict:
    out = subprocess.run([sys.executable, "-m", "amenkit", "corpus", "--order", "3", "--jobs", "4"],
                         capture_output=True, text=True, check=True, cwd=ROOT)
    return json.loads(out.stdout)


def test_10_determinism(criterion):
    criterion.update(number=10, name="corpus --order 3 --jobs 4 is reproducible")
    a, b = _corpus_run(), _corpus_run()

    def section(r):
        return json.dumps({"body": r["body"], "checksum": r["checksum"]}, sort_keys=True).encode()

    criterion["detail"] = f"checksum={a['checksum'][:16]}..."
    assert section(a) == section(b)
    assert a["body"]["data"]["checks"]["sfc_iff_reversible"] == "113/113"


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
