"""Divisibility and uniqueness rules for singularities of exact orbifold fillings.

Each supported boundary carries a conjunctive list of divisors D, meaning
every isotropy order must divide D; the effective bound is the gcd of the
list. Rules whose hypotheses fail yield an explicitly inapplicable set, so
silence is never mistaken for permission.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NotApplicable
from .groups import FiniteUnitaryGroup

LENS = "lens"
BRIESKORN = "brieskorn"
SUBCRITICAL = "subcritical"
DILATION = "dilation"


@dataclass(frozen=True)
class BoundaryDescriptor:
    variant: str
    n: int
    k: int | None = None

    def __post_init__(self):
        if self.variant in (LENS, BRIESKORN):
            if self.k is None or self.k < 2:
                raise ValueError("k must be at least 2")
            if self.n < 2:
                raise ValueError("n must be at least 2")
        elif self.variant in (SUBCRITICAL, DILATION):
            if self.n < 1:
                raise ValueError("n must be positive")
        else:
            raise ValueError(f"unknown boundary variant {self.variant!r}")

    @property
    def dimension(self) -> int:
        return 2 * self.n - 1

    def describe(self) -> str:
        if self.variant in (LENS, BRIESKORN):
            return f"{self.variant}:{self.k},{self.n}"
        return f"{self.variant}:{self.n}"

    @staticmethod
    def parse(text: str) -> "BoundaryDescriptor":
        head, _, rest = text.partition(":")
        head = head.strip().lower()
        parts = [p.strip() for p in rest.split(",") if p.strip()]
        try:
            if head in (LENS, BRIESKORN):
                k, n = (int(p) for p in parts)
                return BoundaryDescriptor(head, n, k)
            if head in (SUBCRITICAL, DILATION):
                (n,) = (int(p) for p in parts)
                return BoundaryDescriptor(head, n)
        except (TypeError, ValueError) as e:
            raise ValueError(f"bad boundary descriptor {text!r}: {e}")
        raise ValueError(f"unknown boundary kind {head!r}")


@dataclass(frozen=True)
class ConstraintSet:
    divisors: tuple[int, ...]
    rules: tuple[str, ...]
    applicable: bool
    reason: str | None = None
    uniqueness: dict | None = None

    @property
    def effective_bound(self) -> int:
        if not self.applicable or not self.divisors:
            raise NotApplicable(self.reason or "no constraints apply")
        return math.gcd(*self.divisors)

    def describe(self) -> dict:
        out = {
            "applicable": self.applicable,
            "divisors": [
                {"divides": d, "rule": r} for d, r in zip(self.divisors, self.rules)
            ],
        }
        if self.applicable:
            out["effective_bound"] = self.effective_bound
        if self.reason:
            out["reason"] = self.reason
        if self.uniqueness:
            out["uniqueness"] = self.uniqueness
        return out


def is_squarefree(k: int) -> bool:
    """No repeated prime factor."""
    if k < 1:
        raise ValueError("squarefree is defined for positive integers")
    if k % 4 == 0:
        return False
    while k % 2 == 0:
        k //= 2
    d = 3
    while d * d <= k:
        if k % d == 0:
            k //= d
            if k % d == 0:
                return False
        else:
            d += 2
    return True


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def _rp_uniqueness(n: int) -> dict:
    return {"count": 1, "model": f"C^{n}/(Z/2)"}


def constraint_for_boundary(b: BoundaryDescriptor) -> ConstraintSet:
    if b.variant == SUBCRITICAL:
        return ConstraintSet((1,), ("subcritical-smooth",), True)
    if b.variant == DILATION:
        return ConstraintSet((1,), ("dilation-smooth",), True)
    if b.variant == BRIESKORN:
        if b.k >= b.n:
            return ConstraintSet(
                (), (), False, reason=f"requires k < n, got k={b.k}, n={b.n}"
            )
        divisors = [math.factorial(b.k)]
        rules = ["brieskorn-factorial"]
        if 2 * b.k < b.n + 1 or (2 * b.k == b.n + 1 and is_squarefree(b.k)):
            divisors.append(math.factorial(b.k - 1))
            rules.append("brieskorn-refined-factorial")
        return ConstraintSet(tuple(divisors), tuple(rules), True)
    # lens space L(k; 1, ..., 1)
    divisors = [math.factorial(b.k)]
    rules = ["lens-factorial"]
    if b.k < b.n:
        divisors.append(b.k**b.n)
        rules.append("lens-power")
    uniqueness = None
    if b.k == 2 and not is_power_of_two(b.n):
        uniqueness = _rp_uniqueness(b.n)
    return ConstraintSet(tuple(divisors), tuple(rules), True, uniqueness=uniqueness)


def admissible(group: FiniteUnitaryGroup, b: BoundaryDescriptor) -> tuple[bool, str]:
    """Whether the group order satisfies every divisor constraint."""
    cs = constraint_for_boundary(b)
    if not cs.applicable:
        raise NotApplicable(cs.reason)
    order = group.order
    for d, rule in zip(cs.divisors, cs.rules):
        if d % order:
            return False, f"|G| = {order} does not divide {d} ({rule})"
    return True, f"|G| = {order} divides every constraint divisor"


def rp_report(n: int) -> dict:
    """The uniqueness statement for real projective boundaries of dimension 2n-1."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if is_power_of_two(n):
        return {
            "n": n,
            "conclusion": None,
            "note": f"no conclusion: n = {n} is a power of two",
        }
    return {
        "n": n,
        "conclusion": (
            f"every exact orbifold filling of RP^{2 * n - 1} has exactly one "
            f"singularity C^{n}/(Z/2)"
        ),
        "uniqueness": _rp_uniqueness(n),
    }
