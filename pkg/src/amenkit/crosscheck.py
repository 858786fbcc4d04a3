"""Theorem instances evaluated on a single finite semigroup.

Each check returns True when the stated implication or equivalence holds on
the given table; a False is a counterexample and indicates a bug in one of
the deciders.
"""

from __future__ import annotations

import itertools

from amenkit.errors import AmenkitError
from amenkit.folner import (
    amenability_verdict_finite,
    decide_sfc_finite,
    exists_injective_folner_set_bruteforce,
    injective_folner_check,
    sfc_bruteforce_oracle,
)
from amenkit.semigroup import (
    ElemSet,
    FiniteSemigroup,
    cong_relation,
    every_principal_ideal_has_idempotent,
    is_klawe,
    is_left_cancellative,
    is_left_reversible,
    is_left_thick,
    is_near_left_cancellative,
    is_right_cancellative,
    near_lc_witness_via_idempotent,
    near_left_cancellative_bruteforce,
    principal_right_ideal,
    quotient,
    right_ideal_generated,
    thickness_witness_chain,
)

CHECKS = (
    "associative",
    "reversible_via_ideals",
    "reversible_thick",
    "thickness_chain",
    "near_lc_oracle",
    "near_lc_implies_klawe",
    "reversible_implies_near_lc",
    "klawe_iff_quotient_lc",
    "reversible_quotient_rc",
    "rc_klawe_implies_lc",
    "ideals_have_idempotents",
    "sfc_oracle",
    "sfc_iff_reversible",
    "sfc_implies_klawe_quotient_lc",
    "klawe_implies_sfc",
    "commutative_implies_sfc",
    "injective_folner_coherence",
    "amenable_iff_sfc",
)


def _implies(p: bool, q: bool) -> bool:
    return not p or q


def _associative(S: FiniteSemigroup) -> bool:
    t = S.table
    return all(t[t[a][b]][c] == t[a][t[b][c]] for a, b, c in itertools.product(range(S.n), repeat=3))


def _pairwise_ideals_meet(S: FiniteSemigroup) -> bool:
    ideals = [set(principal_right_ideal(S, a)) for a in range(S.n)]
    return all(ideals[a] & ideals[b] for a in range(S.n) for b in range(S.n))


def _chain_ok(S: FiniteSemigroup) -> bool:
    full = S.elements()
    for a in range(S.n):
        t = thickness_witness_chain(S, a, full)
        if not {S.table[f][t] for f in full} <= set(principal_right_ideal(S, a)):
            return False
    return True


def cross_check(S: FiniteSemigroup) -> dict[str, bool]:
    rev = is_left_reversible(S).holds
    klawe = is_klawe(S).holds
    nlc = is_near_left_cancellative(S).holds
    lc = is_left_cancellative(S).holds
    rc = is_right_cancellative(S).holds
    sfc = decide_sfc_finite(S)
    rel = cong_relation(S)
    quot = quotient(S, rel)[0] if rel.status.is_congruence else None
    out = {}

    out["associative"] = _associative(S)
    out["reversible_via_ideals"] = rev == _pairwise_ideals_meet(S)

    principal_thick = all(is_left_thick(S, principal_right_ideal(S, a)).holds for a in range(S.n))
    all_ideals_thick = all(is_left_thick(S, right_ideal_generated(S, ElemSet(S.n, m))).holds
                           for m in range(1, 1 << S.n))
    out["reversible_thick"] = rev == principal_thick == all_ideals_thick

    if rev:
        try:
            out["thickness_chain"] = _chain_ok(S)
        except AmenkitError:
            out["thickness_chain"] = False
    else:
        out["thickness_chain"] = True

    out["near_lc_oracle"] = nlc == near_left_cancellative_bruteforce(S)
    out["near_lc_implies_klawe"] = _implies(nlc, klawe)

    constructive = True
    if rev:
        try:
            for s in range(S.n):
                near_lc_witness_via_idempotent(S, s)
        except AmenkitError:
            constructive = False
    out["reversible_implies_near_lc"] = _implies(rev, nlc and constructive)

    if rev:
        ok = quot is not None
        if ok:
            out["klawe_iff_quotient_lc"] = klawe == is_left_cancellative(quot).holds
            out["reversible_quotient_rc"] = is_right_cancellative(quot).holds
        else:
            out["klawe_iff_quotient_lc"] = False
            out["reversible_quotient_rc"] = False
    else:
        out["klawe_iff_quotient_lc"] = True
        out["reversible_quotient_rc"] = True

    out["rc_klawe_implies_lc"] = _implies(rc and klawe, lc)
    out["ideals_have_idempotents"] = every_principal_ideal_has_idempotent(S).holds
    out["sfc_oracle"] = sfc.status == sfc_bruteforce_oracle(S).status
    out["sfc_iff_reversible"] = sfc.holds == rev
    out["sfc_implies_klawe_quotient_lc"] = _implies(
        sfc.holds, klawe and quot is not None and is_left_cancellative(quot).holds)
    out["klawe_implies_sfc"] = _implies(klawe, sfc.holds)
    out["commutative_implies_sfc"] = _implies(S.is_commutative(), sfc.holds)

    if sfc.holds:
        out["injective_folner_coherence"] = injective_folner_check(
            S, list(range(S.n)), 0, sfc.witness).holds
    else:
        out["injective_folner_coherence"] = exists_injective_folner_set_bruteforce(S) is None

    out["amenable_iff_sfc"] = amenability_verdict_finite(S).status == sfc.status
    return out


def check_batch(batch: list[tuple[int, tuple]]) -> list[tuple[int, dict[str, bool]]]:
    """Worker entry point: (index, table rows) pairs to (index, results)."""
    return [(i, cross_check(FiniteSemigroup._trusted(len(rows), rows))) for i, rows in batch]
