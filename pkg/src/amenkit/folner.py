"""Følner defects, exact SFC/FC decisions, ball search and the verdict engine."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from amenkit.errors import (
    DenominatorNonpositive,
    EmptySet,
    InequalityViolated,
    PreconditionDefectTooLarge,
    ResourceLimit,
)
from amenkit.semigroup import (
    ElemSet,
    FiniteSemigroup,
    every_principal_ideal_has_idempotent,
    is_left_reversible,
    left_translate,
)
from amenkit.universe import (
    BallTable,
    NotFoundUpTo,
    Universe,
    right_ideal_intersection_search,
)
from amenkit.verdict import CITES, Claim, Verdict, unknown, verdict


def _context(ctx):
    """(multiply, to_set) for a finite semigroup or a universe."""
    if isinstance(ctx, FiniteSemigroup):
        t = ctx.table
        return (lambda a, b: t[a][b]), (lambda A: frozenset(ctx._as_set(A)))
    if isinstance(ctx, Universe):
        return ctx.mul, frozenset
    raise TypeError(f"expected FiniteSemigroup or Universe, got {type(ctx).__name__}")


def _ordered(F, as_set) -> list:
    items = F if isinstance(F, (list, tuple)) else as_set(F)
    try:
        return sorted(set(items))
    except TypeError:
        return list(items)


def _translate(mul, s, A: frozenset) -> frozenset:
    return frozenset(mul(s, a) for a in A)


@dataclass(frozen=True)
class FolnerDefect:
    weak: Fraction    # |sF \ F| / |F|
    strong: Fraction  # |F \ sF| / |F|


def folner_defect(context, F, s) -> FolnerDefect:
    mul, as_set = _context(context)
    F = as_set(F)
    if not F:
        raise EmptySet("Følner defect of an empty set")
    sF = _translate(mul, s, F)
    return FolnerDefect(Fraction(len(sF - F), len(F)), Fraction(len(F - sF), len(F)))


def folner_defects(context, F, H: Iterable) -> dict:
    """Per-element breakdown s -> FolnerDefect over H."""
    return {s: folner_defect(context, F, s) for s in H}


# -- finite semigroups ---------------------------------------------------------------

def sfc_fixpoint(S: FiniteSemigroup) -> ElemSet:
    """Greatest F with F ⊆ sF for every s, by iterating F -> {x in F : x in sF for all s}."""
    F = S.elements()
    while True:
        nxt = F
        for s in range(S.n):
            nxt = nxt & left_translate(S, s, F)
        if nxt == F:
            return F
        F = nxt


def decide_sfc_finite(S: FiniteSemigroup) -> Verdict:
    """SFC on a finite S: with H = S and eps < 1/|S| the defect must vanish."""
    F = sfc_fixpoint(S)
    if len(F):
        return verdict("sfc", True, F,
                       ("F = maximal set with sF = F for all s", "finite-sfc-fixpoint"))
    return verdict("sfc", False, None,
                   ("the fixpoint iteration from S reaches the empty set", "finite-sfc-fixpoint"))


def sfc_bruteforce_oracle(S: FiniteSemigroup) -> Verdict:
    """Try every nonempty F ⊆ S; witness is the first (least bitmask) solution."""
    if S.n > 15:
        raise ResourceLimit(15, "elements for subset brute force")
    t = S.table
    n = S.n
    for mask in range(1, 1 << n):
        ok = True
        for s in range(n):
            row = t[s]
            image = 0
            m, i = mask, 0
            while m:
                if m & 1:
                    image |= 1 << row[i]
                m >>= 1
                i += 1
            if mask & ~image:
                ok = False
                break
        if ok:
            return verdict("sfc_bruteforce", True, ElemSet(n, mask),
                           ("F ⊆ sF for all s", "exact-scan"))
    return verdict("sfc_bruteforce", False, None,
                   ("no nonempty F has F ⊆ sF for all s", "exact-scan"))


def decide_fc_finite(S: FiniteSemigroup) -> Verdict:
    return verdict("fc", True, S.elements(), ("sS ⊆ S for every s", "finite-fc"))


def amenability_verdict_finite(S: FiniteSemigroup) -> Verdict:
    idem = every_principal_ideal_has_idempotent(S)
    sfc = decide_sfc_finite(S)
    chain = [
        Claim("S is finite, so every ideal contains an idempotent", CITES["finite-idempotent"]),
        Claim(f"principal ideal idempotents: {idem.status.value}", CITES["exact-scan"]),
        Claim("hence left amenable <=> SFC", CITES["idempotent-sfc"]),
        Claim(f"SFC is {sfc.status.value}", CITES["finite-sfc-fixpoint"]),
    ]
    if not sfc.holds:
        rev = is_left_reversible(S)
        if rev.fails:
            chain.append(Claim(f"not left reversible: {rev.witness[0]}S^1 ∩ {rev.witness[1]}S^1 = ∅",
                               CITES["reversible-necessary"]))
    return Verdict("left_amenable", sfc.status, sfc.witness, tuple(chain))


# -- the injective refinement --------------------------------------------------------

def injective_bound(F_size: int, mu: Fraction) -> Fraction:
    """(1 + 2|F|)mu / (1 - 2|F|mu), the defect bound on the refined set."""
    mu = Fraction(mu)
    den = 1 - 2 * F_size * mu
    if den <= 0:
        raise DenominatorNonpositive(f"mu = {mu} >= 1/(2|F|) = {Fraction(1, 2 * F_size)}")
    return (1 + 2 * F_size) * mu / den


@dataclass(frozen=True)
class InequalityCheck:
    name: str
    lhs: Fraction
    rhs: Fraction | None  # None: not applicable (nonpositive denominator)

    @property
    def holds(self) -> bool:
        return self.rhs is None or self.lhs <= self.rhs

    def to_json(self) -> dict:
        return {"name": self.name, "lhs": str(self.lhs),
                "rhs": None if self.rhs is None else str(self.rhs), "holds": self.holds}


def refine_injective(context, A, F, mu) -> tuple[frozenset, list[InequalityCheck]]:
    """Drop from A every element sharing a fibre of some f in F.

    The returned B has every f acting injectively.  The report checks the
    size bound |A \\ B| <= 2|F|mu|A|, its consequence on |B|, and for each s
    in F the defect bound |B \\ sB| <= (1+2|F|)mu/(1-2|F|mu)|B| when the
    denominator is positive.
    """
    mul, as_set = _context(context)
    A = as_set(A)
    F = _ordered(F, as_set)
    mu = Fraction(mu)
    if not A or not F:
        raise EmptySet("A and F must be nonempty")
    for f in F:
        fA = _translate(mul, f, A)
        if len(fA - A) > mu * len(A) or len(A - fA) > mu * len(A):
            raise PreconditionDefectTooLarge(
                f"defects of A under {f!r}: {len(fA - A)}, {len(A - fA)} > {mu}·{len(A)}")

    shared = set()
    for f in F:
        fibres: dict = {}
        for a in A:
            fibres.setdefault(mul(f, a), []).append(a)
        for fibre in fibres.values():
            if len(fibre) > 1:
                shared.update(fibre)
    B = frozenset(A - shared)

    k = len(F)
    size_A = len(A)
    report = [
        InequalityCheck("|A\\B| <= 2|F|mu|A|", Fraction(size_A - len(B)), 2 * k * mu * size_A),
        InequalityCheck("(1-2|F|mu)|A| <= |B|", (1 - 2 * k * mu) * size_A, Fraction(len(B))),
    ]
    den = 1 - 2 * k * mu
    for s in F:
        sB = _translate(mul, s, B)
        lhs = Fraction(len(B - sB))
        if den > 0:
            report.append(InequalityCheck(f"|B\\sB| <= (1+2|F|)mu|A| [s={s!r}]", lhs, (1 + 2 * k) * mu * size_A))
            report.append(InequalityCheck(f"|B\\sB| <= bound·|B| [s={s!r}]", lhs, injective_bound(k, mu) * len(B)))
        else:
            report.append(InequalityCheck(f"|B\\sB| bound [s={s!r}]", lhs, None))
        report.append(InequalityCheck(f"|sB| = |B| [s={s!r}]", Fraction(len(B)), Fraction(len(sB))))
    bad = [c for c in report if not c.holds]
    if bad:
        raise InequalityViolated("; ".join(f"{c.name}: {c.lhs} > {c.rhs}" for c in bad))
    return B, report


def injective_folner_check(context, F, eps, X) -> Verdict:
    """Every f in F moves at most eps|X| points out of X and is injective on X."""
    mul, as_set = _context(context)
    X = as_set(X)
    if not X:
        raise EmptySet("X must be nonempty")
    eps = Fraction(eps)
    F = _ordered(F, as_set)
    for f in F:
        fX = _translate(mul, f, X)
        if len(fX - X) > eps * len(X):
            return verdict("injective_folner", False, f,
                           (f"|{f!r}X \\ X| = {len(fX - X)} > {eps}·{len(X)}", "definition"))
        if len(fX) != len(X):
            return verdict("injective_folner", False, f, (f"{f!r} is not injective on X", "definition"))
    return verdict("injective_folner", True, X,
                   ("weak defect within eps and every f injective on X", "exact-scan"))


def exists_injective_folner_set_bruteforce(S: FiniteSemigroup, eps=0) -> ElemSet | None:
    """Least-bitmask X passing injective_folner_check with F = S, or None."""
    if S.n > 15:
        raise ResourceLimit(15, "elements for subset brute force")
    full = list(range(S.n))
    for mask in range(1, 1 << S.n):
        X = ElemSet(S.n, mask)
        if injective_folner_check(S, full, eps, X).holds:
            return X
    return None


# -- finitely generated universes ------------------------------------------------------

@dataclass(frozen=True)
class Found:
    radius: int
    F: frozenset
    defects: dict  # h -> weak defect (Fraction)

    def to_json(self) -> dict:
        return {"found": True, "radius": self.radius, "size": len(self.F),
                "defects": [[repr(h), f"{d.numerator}/{d.denominator}"] for h, d in self.defects.items()]}


def folner_search_balls(U: Universe, H, eps, Rmax: int, cap: int | None = None) -> Found | NotFoundUpTo:
    """Scan balls for |B_{i+1}|/|B_i| < 1 + eps, then verify the actual defects.

    For h in the generating set the ratio test already bounds the defect;
    for other h it is only a trigger, so the defect is always recomputed.
    """
    eps = Fraction(eps)
    H = list(H)
    table = BallTable(U, cap)
    for i in range(1, Rmax + 1):
        if Fraction(table.size(i + 1), table.size(i)) >= 1 + eps:
            continue
        B = table.ball(i)
        defects = {h: folner_defect(U, B, h).weak for h in H}
        if all(d <= eps for d in defects.values()):
            return Found(i, B, defects)
    return NotFoundUpTo(Rmax)


def _reversibility_probes(U: Universe, radius: int) -> tuple[bool, list]:
    gens = U.generators
    notes = []
    ok = True
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            res = right_ideal_intersection_search(U, a, b, radius)
            hit = not isinstance(res, NotFoundUpTo)
            notes.append((a, b, hit))
            ok = ok and hit
    return ok, notes


def amenability_verdict_fg(U: Universe, probe_radius: int = 4) -> Verdict:
    """Left amenability of a finitely generated universe via certified routes only.

    True needs a certified Klawe-implying flag and certified polynomial growth;
    False needs a certified pair of disjoint right ideals.  Everything else is
    Unknown.
    """
    fl = U.flags
    check = "left_amenable"
    if fl.disjoint_right_ideals is not None:
        a, b = fl.disjoint_right_ideals
        return verdict(check, False, (a, b),
                       (f"{a!r}S ∩ {b!r}S = ∅ in the free model", "free-disjoint"),
                       ("not left reversible, hence not left amenable", "reversible-necessary"))
    klawe = None
    if fl.commutative:
        klawe = ("commutative, so Klawe holds", "commutative-amenable")
    elif fl.inverse:
        klawe = ("inverse semigroup, so Klawe holds", "inverse-klawe")
    elif fl.left_cancellative:
        ok, _ = _reversibility_probes(U, probe_radius)
        if ok:
            klawe = ("left cancellative, so Klawe holds; reversibility probes all succeed",
                     "left-cancellative-klawe")
        else:
            return unknown(check, "left cancellative but some generator pair has no common right "
                                  f"multiple up to radius {probe_radius}")
    if klawe is None:
        return unknown(check, "no certified flag implies the Klawe condition")
    if fl.growth != "polynomial":
        return unknown(check, f"growth class is {fl.growth}, not certified polynomial", klawe)
    return verdict(check, True, None, klawe,
                   (f"certified polynomial growth of degree {fl.growth_degree}", "definition"),
                   ("subexponential growth + Klawe give left amenability and SFC", "subexp-klawe"))

