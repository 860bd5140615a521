"""Coefficient ring descriptors: Q, Z, or Z/m."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class CoefficientRing:
    kind: str  # "Q", "Z", or "Z/m"
    modulus: int | None = None

    @staticmethod
    def rationals() -> "CoefficientRing":
        return CoefficientRing("Q")

    @staticmethod
    def integers() -> "CoefficientRing":
        return CoefficientRing("Z")

    @staticmethod
    def integers_mod(m: int) -> "CoefficientRing":
        if m < 2:
            raise ValueError("modulus must be at least 2")
        return CoefficientRing("Z/m", m)

    def is_invertible(self, k: int) -> bool:
        """Whether the integer k is a unit in this ring."""
        if self.kind == "Q":
            return k != 0
        if self.kind == "Z":
            return abs(k) == 1
        return math.gcd(k, self.modulus) == 1

    def describe(self) -> str:
        return f"Z/{self.modulus}" if self.kind == "Z/m" else self.kind

    @staticmethod
    def parse(text: str) -> "CoefficientRing":
        t = text.strip().lower()
        if t in ("q", "rationals"):
            return CoefficientRing.rationals()
        if t in ("z", "integers"):
            return CoefficientRing.integers()
        if t.startswith("z/"):
            return CoefficientRing.integers_mod(int(t[2:]))
        raise ValueError(f"unknown coefficient ring {text!r}")
