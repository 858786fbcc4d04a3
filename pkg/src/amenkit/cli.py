"""Command-line front end producing JSON reports.

Exit codes: 0 when the analysis completed (whatever the verdicts), 2 on
parse errors, 3 when a resource limit was hit.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import replace
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from amenkit import __version__
from amenkit.crosscheck import CHECKS, check_batch
from amenkit.digraph import (
    isoperimetric_number,
    proper_isoperimetric_minimizer,
    transfer_constants,
    transfer_folner_set,
    verify_qi,
)
from amenkit.errors import ParseError, ResourceLimit
from amenkit.folner import (
    amenability_verdict_finite,
    amenability_verdict_fg,
    decide_fc_finite,
    decide_sfc_finite,
    folner_search_balls,
)
from amenkit.formats import load_universe, parse_digraph, parse_ratio, parse_table, parse_vertex_map
from amenkit.semigroup import (
    FiniteSemigroup,
    cong_relation,
    enumerate_semigroup_tables,
    is_klawe,
    is_left_cancellative,
    is_left_reversible,
    is_near_left_cancellative,
    is_right_cancellative,
    quotient,
    random_corpus,
)
from amenkit.universe import (
    BallTable,
    NotFoundUpTo,
    Universe,
    classify_growth,
    free_pair_check,
    right_ideal_intersection_search,
)
from amenkit.verdict import jsonable, unknown, verdict

SCHEMA = 1


class Report:
    """A deterministic body plus a checksum; resource usage sits outside the checksum."""

    def __init__(self, command: str, input_descriptor):
        self.command = command
        self.input = input_descriptor
        self.verdicts: list[dict] = []
        self.data: dict = {}
        self.elements = 0
        self._start = time.perf_counter()

    def add(self, v):
        self.verdicts.append(v.to_json())

    def body(self) -> dict:
        return {"command": self.command, "input": self.input,
                "verdicts": self.verdicts, "data": jsonable(self.data)}

    def to_json(self) -> dict:
        body = self.body()
        canon = json.dumps(body, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
        return {
            "schema": SCHEMA,
            "tool": {"name": "amenkit", "version": __version__},
            "body": body,
            "checksum": hashlib.sha256(canon.encode()).hexdigest(),
            "resources": {"elements_enumerated": self.elements,
                          "wall_time_s": round(time.perf_counter() - self._start, 3)},
        }


def _describe(path: str) -> dict:
    data = _read(path).encode()
    return {"path": path, "sha256": hashlib.sha256(data).hexdigest()}


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise ParseError(0, f"cannot read {path!r}: {e.strerror}") from e


# -- analyze -----------------------------------------------------------------------

def analyze_finite(S: FiniteSemigroup, rep: Report):
    rep.add(is_left_reversible(S))
    rep.add(is_klawe(S))
    rep.add(is_near_left_cancellative(S))
    rep.add(is_left_cancellative(S))
    rep.add(is_right_cancellative(S))
    rel = cong_relation(S)
    rep.add(verdict("cong_is_congruence", rel.status.is_congruence,
                    {"status": rel.status.kind, "witness": list(rel.status.witness)},
                    ("transitivity and compatibility scanned", "exact-scan")))
    if rel.status.is_congruence:
        Q, proj = quotient(S, rel)
        rep.add(replace(is_left_cancellative(Q), check="quotient_left_cancellative"))
        rep.add(replace(is_right_cancellative(Q), check="quotient_right_cancellative"))
        rep.data["projection"] = list(proj)
        rep.data["quotient_order"] = Q.n
    else:
        for name in ("quotient_left_cancellative", "quotient_right_cancellative"):
            rep.add(unknown(name, f"~ is not a congruence ({rel.status.kind})"))
    rep.add(decide_sfc_finite(S))
    rep.add(decide_fc_finite(S))
    rep.add(amenability_verdict_finite(S))
    rep.data["order"] = S.n
    rep.elements = S.n


def analyze_universe(U: Universe, rep: Report, radius: int):
    table = BallTable(U)
    sizes = table.sizes(radius)
    rep.elements = sizes[-1]
    rep.data["growth_table"] = sizes
    if len(sizes) >= 6:
        rep.data["growth_guess"] = classify_growth(sizes).to_json()
    probes = []
    gens = U.generators
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            hit = right_ideal_intersection_search(U, a, b, min(radius, 6))
            pair = free_pair_check(U, a, b, min(radius, 8))
            probes.append({
                "a": a, "b": b,
                "common_right_multiple": None if isinstance(hit, NotFoundUpTo) else hit.element,
                "free_pair": getattr(pair, "length", None),
                "collision": None if hasattr(pair, "length") else [pair.u, pair.v],
            })
    rep.data["generator_pairs"] = probes
    rep.data["flags"] = {k: getattr(U.flags, k) for k in
                         ("commutative", "left_cancellative", "inverse", "growth", "growth_degree")}
    rep.add(amenability_verdict_fg(U))


def cmd_analyze(args) -> Report:
    source = args.universe or args.source
    if source is None:
        raise ParseError(0, "analyze needs a source or --universe")
    kind, _, path = source.partition(":")
    if kind == "table" or (not path and Path(source).is_file()):
        path = path or source
        S = parse_table(_read(path))
        rep = Report("analyze", {"kind": "table", **_describe(path)})
        analyze_finite(S, rep)
        return rep
    U = load_universe(source)
    desc = {"kind": "universe", "name": source}
    if kind == "transformations":
        desc.update(_describe(path))
    rep = Report("analyze", desc)
    analyze_universe(U, rep, args.radius)
    return rep


# -- folner / growth ---------------------------------------------------------------

def _parse_H(U: Universe, text: str | None) -> list:
    if text is None:
        return list(U.generators)
    H = []
    for word in text.split(","):
        try:
            idx = [int(w) for w in word.split(".")]
        except ValueError:
            raise ParseError(1, f"bad --H word {word!r}") from None
        if not idx or any(not 0 <= i < len(U.generators) for i in idx):
            raise ParseError(1, f"--H word {word!r} uses a generator index out of range")
        H.append(U.product([U.generators[i] for i in idx]))
    return H


def cmd_folner(args) -> Report:
    U = load_universe(args.universe)
    eps = parse_ratio(args.eps)
    H = _parse_H(U, args.H)
    rep = Report("folner", {"universe": args.universe, "eps": args.eps, "H": args.H, "rmax": args.rmax})
    res = folner_search_balls(U, H, eps, args.rmax)
    if isinstance(res, NotFoundUpTo):
        rep.data["result"] = {"found": False, "not_found_up_to": res.radius}
    else:
        rep.data["result"] = {**res.to_json(), "F": sorted(res.F)}
        rep.elements = len(res.F)
    return rep


def cmd_growth(args) -> Report:
    U = load_universe(args.universe)
    rep = Report("growth", {"universe": args.universe, "n": args.n})
    sizes = BallTable(U).sizes(args.n)
    rep.elements = sizes[-1] if sizes else 0
    rep.data["sizes"] = sizes
    rep.data["classification"] = classify_growth(sizes).to_json() if len(sizes) >= 6 else None
    return rep


# -- digraphs ----------------------------------------------------------------------

def cmd_isoperimetric(args) -> Report:
    G = parse_digraph(_read(args.digraph))
    rep = Report("isoperimetric", _describe(args.digraph))
    value, A = proper_isoperimetric_minimizer(G)
    rep.data["proper_isoperimetric_number"] = value
    rep.data["minimizer"] = A
    rep.data["isoperimetric_number"] = isoperimetric_number(G)
    rep.elements = G.n
    return rep


def cmd_qi(args) -> Report:
    G = parse_digraph(_read(args.graph_a))
    H = parse_digraph(_read(args.graph_b))
    phi = parse_vertex_map(_read(args.map), G.n)
    lam = parse_ratio(args.lam)
    rep = Report("qi", {"graph_a": _describe(args.graph_a), "graph_b": _describe(args.graph_b),
                        "map": _describe(args.map), "lambda": args.lam})
    v = verify_qi(G, H, phi, lam)
    rep.add(v)
    if v.holds:
        c = transfer_constants(G, H, lam)
        rep.data["constants"] = {"C": c.C, "D": c.D, "E": c.E}
        if args.transfer:
            A = [int(x) for x in args.transfer.split(",")]
            Q, tr = transfer_folner_set(G, H, phi, lam, A)
            rep.data["transfer"] = {**tr.to_json(), "Q": sorted(Q)}
    rep.elements = G.n + H.n
    return rep


# -- corpus ------------------------------------------------------------------------

def _chunks(items: list, jobs: int) -> list[list]:
    size = max(1, -(-len(items) // (jobs * 4)))
    return [items[i:i + size] for i in range(0, len(items), size)]


def run_corpus(tables: list[FiniteSemigroup], jobs: int = 1) -> list[dict[str, bool]]:
    items = [(i, S.table) for i, S in enumerate(tables)]
    if jobs <= 1:
        results = check_batch(items)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = [r for part in pool.map(check_batch, _chunks(items, jobs)) for r in part]
    results.sort(key=lambda r: r[0])
    return [r for _, r in results]


def cmd_corpus(args) -> Report:
    tables = list(enumerate_semigroup_tables(args.order))
    label = [f"order{args.order}"] * len(tables)
    if args.random:
        rnd = random_corpus(args.random, seed=args.seed)
        tables += rnd
        label += ["random"] * len(rnd)
    rep = Report("corpus", {"order": args.order, "random": args.random, "seed": args.seed})
    results = run_corpus(tables, args.jobs)
    rep.elements = sum(S.n for S in tables)
    total = len(tables)
    passed = {c: sum(r[c] for r in results) for c in CHECKS}
    counter = [{"index": i, "source": label[i], "check": c, "table": tables[i].table}
               for i, r in enumerate(results) for c in CHECKS if not r[c]]
    rep.data["semigroups"] = {"order": args.order, "enumerated": label.count(f"order{args.order}"),
                              "random": args.random, "total": total}
    rep.data["checks"] = {c: f"{passed[c]}/{total}" for c in CHECKS}
    rep.data["counterexamples"] = counter
    for c in CHECKS:
        rep.add(verdict(f"corpus:{c}", passed[c] == total,
                        None if passed[c] == total else [x["index"] for x in counter if x["check"] == c],
                        (f"holds on {passed[c]}/{total} tables", "exact-scan")))
    return rep


# -- entry point -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="amenkit", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"amenkit {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="run every decider on a semigroup source")
    a.add_argument("source", nargs="?", help="table:PATH or a universe string")
    a.add_argument("--universe", help="free:k, freecomm:k, bicyclic, table:PATH, transformations:PATH")
    a.add_argument("--radius", type=int, default=8, help="ball radius for universe probes")
    a.set_defaults(func=cmd_analyze)

    f = sub.add_parser("folner", parents=[common], help="search balls for Følner sets")
    f.add_argument("--universe", required=True)
    f.add_argument("--eps", required=True, help="rational p/q")
    f.add_argument("--H", help="comma-separated words of generator indices joined by '.'")
    f.add_argument("--rmax", type=int, default=10)
    f.set_defaults(func=cmd_folner)

    i = sub.add_parser("isoperimetric", parents=[common], help="proper isoperimetric number of a digraph file")
    i.add_argument("digraph")
    i.set_defaults(func=cmd_isoperimetric)

    q = sub.add_parser("qi", parents=[common], help="verify a quasi-isometry between two digraph files")
    q.add_argument("graph_a")
    q.add_argument("graph_b")
    q.add_argument("map")
    q.add_argument("--lambda", dest="lam", required=True, help="rational p/q")
    q.add_argument("--transfer", help="comma-separated vertex set A of graph_a to push forward")
    q.set_defaults(func=cmd_qi)

    g = sub.add_parser("growth", parents=[common], help="ball sizes and heuristic growth class")
    g.add_argument("--universe", required=True)
    g.add_argument("--n", type=int, default=10)
    g.set_defaults(func=cmd_growth)

    c = sub.add_parser("corpus", parents=[common], help="cross-check theorem instances over all tables of one order")
    c.add_argument("--order", type=int, required=True)
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--random", type=int, default=0, help="also check this many random closures")
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rep = args.func(args)
    except ParseError as e:
        print(f"amenkit: parse error: {e}", file=sys.stderr)
        return 2
    except ResourceLimit as e:
        print(f"amenkit: {e}", file=sys.stderr)
        return 3
    text = json.dumps(rep.to_json(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
