"""Exception hierarchy shared by all amenkit modules."""

from __future__ import annotations

import os

DEFAULT_MAX_ELEMENTS = 10**6


def max_elements() -> int:
    """Enumeration cap, overridable through ``AMENKIT_MAX_ELEMENTS``."""
    raw = os.environ.get("AMENKIT_MAX_ELEMENTS")
    if raw is None:
        return DEFAULT_MAX_ELEMENTS
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"AMENKIT_MAX_ELEMENTS must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("AMENKIT_MAX_ELEMENTS must be positive")
    return value


class AmenkitError(Exception):
    pass


class IndexOutOfRange(AmenkitError, ValueError):
    def __init__(self, position, value=None, n=None):
        self.position = position
        self.value = value
        self.n = n
        super().__init__(f"index out of range at {position}: {value!r} (n={n})")


class NotAssociative(AmenkitError, ValueError):
    def __init__(self, a: int, b: int, c: int):
        self.triple = (a, b, c)
        super().__init__(f"(ab)c != a(bc) for (a, b, c) = {self.triple}")


class ResourceLimit(AmenkitError):
    def __init__(self, cap: int, what: str = "elements"):
        self.cap = cap
        super().__init__(f"resource limit exceeded: more than {cap} {what}")


class EmptySet(AmenkitError, ValueError):
    pass


class NotLeftReversible(AmenkitError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"semigroup is not left reversible: aS^1 and bS^1 disjoint for {pair}")


class ChainStepFailed(AmenkitError):
    def __init__(self, step: int):
        self.step = step
        super().__init__(f"no multiplier found at chain step {step}")


class PreconditionFailed(AmenkitError):
    pass


class SearchExhausted(AmenkitError):
    pass


class NotACongruence(AmenkitError):
    pass


class TooFewPoints(AmenkitError, ValueError):
    pass


class KlaweWitnessNotFound(AmenkitError):
    def __init__(self, radius: int):
        self.radius = radius
        super().__init__(f"no s with f(u')s = f(v')s among products of length <= {radius}")


class PreconditionDefectTooLarge(AmenkitError):
    pass


class DenominatorNonpositive(AmenkitError):
    pass


class InequalityViolated(AmenkitError):
    pass


class QiNotVerified(AmenkitError):
    pass


class CanonicalKeyCollision(AmenkitError):
    pass


class ParseError(AmenkitError, ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")
