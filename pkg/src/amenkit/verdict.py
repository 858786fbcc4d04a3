"""Three-valued verdicts with witnesses and justification chains."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


class Status(str, enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, value: bool) -> Status:
        return cls.TRUE if value else cls.FALSE


# Short citation labels for the results a justification may rest on.
CITES = {
    "definition": "definition",
    "exact-scan": "exhaustive finite check",
    "reversible-necessary": "left reversibility is necessary for left amenability",
    "reversible-thick": "left reversible <=> every principal right ideal is left thick",
    "idempotent-near-lc": "left reversible + every ideal has an idempotent => near left cancellative",
    "near-lc-klawe": "near left cancellative => Klawe condition",
    "klawe-quotient": "left reversible: Klawe <=> S/~ left cancellative",
    "reversible-quotient": "left reversible => ~ is a congruence and S/~ is right cancellative",
    "klawe-sfc": "Klawe condition: left amenable <=> SFC",
    "idempotent-sfc": "every ideal has an idempotent: left amenable <=> SFC",
    "sfc-amenable": "SFC => left amenable",
    "finite-sfc-fixpoint": "finite S: SFC <=> some nonempty F has sF = F for all s",
    "finite-fc": "finite S: F = S gives sS \\ S = empty, so FC holds",
    "finite-idempotent": "in a finite semigroup every ideal contains an idempotent",
    "subexp-klawe": "f.g., subexponential growth + Klawe => left amenable and SFC",
    "commutative-amenable": "commutative semigroups are amenable",
    "left-cancellative-klawe": "left cancellative => Klawe condition (vacuously)",
    "inverse-klawe": "inverse => left reversible, ideals have idempotents, hence Klawe",
    "free-disjoint": "distinct free generators x, y: xS and yS are disjoint",
    "heuristic": "finite-data heuristic, not a proof",
    "policy": "verdict policy: no certified route applies",
}


@dataclass(frozen=True)
class Claim:
    claim: str
    cite: str

    def to_json(self) -> dict:
        return {"claim": self.claim, "cite": self.cite}


@dataclass(frozen=True)
class Verdict:
    """Result of a decision procedure.

    ``witness`` is a finite checkable object (set, element, pair, map) for
    TRUE/FALSE; for UNKNOWN the blocking reason is the last justification.
    """

    check: str
    status: Status
    witness: Any = None
    justification: tuple[Claim, ...] = field(default=())

    def __bool__(self):
        raise TypeError("Verdict is three-valued; test .status or .holds instead")

    @property
    def holds(self) -> bool:
        return self.status is Status.TRUE

    @property
    def fails(self) -> bool:
        return self.status is Status.FALSE

    def with_claim(self, claim: str, cite: str) -> Verdict:
        return Verdict(self.check, self.status, self.witness, self.justification + (Claim(claim, cite),))

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "status": self.status.value,
            "witness": jsonable(self.witness),
            "justification": [c.to_json() for c in self.justification],
        }


def verdict(check: str, value: bool, witness=None, *claims: tuple[str, str]) -> Verdict:
    return Verdict(check, Status.of(value), witness, tuple(Claim(c, CITES.get(k, k)) for c, k in claims))


def unknown(check: str, reason: str, *claims: tuple[str, str]) -> Verdict:
    chain = tuple(Claim(c, CITES.get(k, k)) for c, k in claims) + (Claim(reason, CITES["policy"]),)
    return Verdict(check, Status.UNKNOWN, None, chain)


def _sort_key(x):
    return (type(x).__name__, repr(x)) if not isinstance(x, (int, tuple, str)) else (type(x).__name__, x)


def jsonable(obj):
    """Convert witnesses to JSON: sets become sorted arrays, ratios "p/q"."""
    from amenkit.semigroup import ElemSet

    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, float):
        return obj
    if isinstance(obj, ElemSet):
        return list(obj)
    if isinstance(obj, (set, frozenset)):
        try:
            items = sorted(obj)
        except TypeError:
            items = sorted(obj, key=_sort_key)
        return [jsonable(x) for x in items]
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {str(jsonable(k)) if not isinstance(k, str) else k: jsonable(v) for k, v in obj.items()}
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return repr(obj)
