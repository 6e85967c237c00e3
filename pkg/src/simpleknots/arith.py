"""Exact residue arithmetic.

Python integers never overflow, so the "wide intermediate" requirement is met
for free here.  The compiled sweep kernels work in int64 and are guarded by
:func:`word_budget`.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass

from .errors import NotInvertible, ResourceLimit

#: Environment variable overriding the largest p the int64 kernels accept.
WORD_BUDGET_ENV = "SIMPLEKNOTS_MAX_P"
DEFAULT_WORD_BUDGET = 2**31 - 1
# p * p must stay below 2**63 inside the kernels
_HARD_WORD_LIMIT = 3_037_000_499


@dataclass(frozen=True)
class Residue:
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        if not 0 <= self.value < self.modulus:
            raise ValueError(f"{self.value} is not reduced mod {self.modulus}")

    def __int__(self):
        return self.value

    def __mul__(self, other: "Residue | int") -> "Residue":
        return normalized_residue(self.value * int(other), self.modulus)

    def __add__(self, other: "Residue | int") -> "Residue":
        return normalized_residue(self.value + int(other), self.modulus)

    def __neg__(self) -> "Residue":
        return normalized_residue(-self.value, self.modulus)

    def inverse(self) -> "Residue":
        return mod_inverse(self)


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def normalized_residue(x: int, p: int) -> Residue:
    """``x mod p`` in ``[0, p-1]``, also for negative ``x``."""
    return Residue(x % p, p)


def _egcd(a: int, b: int) -> tuple[int, int]:
    # returns (g, s) with s*a == g (mod b)
    x0, x1 = 1, 0
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
    return a, x0


def inverse_mod(x: int, p: int) -> int:
    """Integer-level inverse of ``x`` modulo ``p`` by extended Euclid."""
    g, s = _egcd(x % p, p)
    if g != 1:
        raise NotInvertible(f"{x} is not invertible mod {p} (gcd {g})")
    return s % p


def mod_inverse(x: Residue) -> Residue:
    return Residue(inverse_mod(x.value, x.modulus), x.modulus)


def word_budget() -> int:
    raw = os.environ.get(WORD_BUDGET_ENV)
    if raw is None:
        return DEFAULT_WORD_BUDGET
    try:
        budget = int(raw)
    except ValueError:
        raise ResourceLimit(f"{WORD_BUDGET_ENV}={raw!r} is not an integer") from None
    return min(budget, _HARD_WORD_LIMIT)


def check_word_budget(p: int) -> None:
    budget = word_budget()
    if p > budget:
        raise ResourceLimit(f"p={p} exceeds the arithmetic word budget {budget} "
                            f"(set {WORD_BUDGET_ENV} to raise it)")
