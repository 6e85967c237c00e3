"""Simple knots K(p, q, k) in the lens space L(p, q)."""
from __future__ import annotations

from dataclasses import dataclass, field

from .arith import Residue, gcd, inverse_mod
from .errors import InvalidKnot, InvalidLensSpace, NotPrimitive


@dataclass(frozen=True, order=True)
class SimpleKnot:
    """The simple knot joining intersection points x_0 and x_k of L(p, q).

    ``q`` and ``k`` are always stored reduced to ``[0, p-1]``; use
    :func:`validate` to build one from arbitrary integers.
    """

    p: int
    q: int
    k: int

    def __post_init__(self):
        if self.p < 2:
            raise InvalidLensSpace(f"p must be >= 2, got {self.p}")
        if not (0 <= self.q < self.p and 0 <= self.k < self.p):
            raise InvalidKnot(f"q, k must be reduced mod p: {self.q}, {self.k}")
        if gcd(self.q, self.p) != 1:
            raise InvalidLensSpace(f"gcd(q,p) must be 1 (got q={self.q}, p={self.p})")
        if self.k == 0:
            raise InvalidKnot("k must be nonzero mod p")

    def __str__(self):
        return f"K({self.p},{self.q},{self.k})"

    @property
    def q_inverse(self) -> int:
        return inverse_mod(self.q, self.p)


def validate(p: int, q: int, k: int) -> SimpleKnot:
    if p < 2:
        raise InvalidLensSpace(f"p must be >= 2, got {p}")
    if gcd(q, p) != 1:
        raise InvalidLensSpace(f"gcd(q,p) must be 1 (got q={q}, p={p})")
    if k % p == 0:
        raise InvalidKnot(f"k must be nonzero mod p (got k={k}, p={p})")
    return SimpleKnot(p, q % p, k % p)


def homology_class(K: SimpleKnot) -> Residue:
    return Residue(K.k, K.p)


def is_primitive(K: SimpleKnot) -> bool:
    return gcd(K.k, K.p) == 1


def _require_primitive(K: SimpleKnot) -> None:
    if not is_primitive(K):
        raise NotPrimitive(f"{K} is not primitive (gcd(k,p) = {gcd(K.k, K.p)})")


def equivalent_parameter_set(K: SimpleKnot) -> set[tuple[int, int]]:
    """(q, k) pairs naming the same unoriented knot inside L(p, q)."""
    _require_primitive(K)
    p, q, k = K.p, K.q, K.k
    qi = inverse_mod(q, p)
    kq = k * qi % p
    return {(q, k), (q, p - k), (qi, kq), (qi, p - kq)}


def canonical_form(K: SimpleKnot) -> SimpleKnot:
    q, k = min(equivalent_parameter_set(K))
    return SimpleKnot(K.p, q, k)


def self_linking(K: SimpleKnot) -> Residue:
    """Numerator a of the self-linking number a/p, i.e. k^2 q^-1 mod p."""
    _require_primitive(K)
    return Residue(K.k * K.k * K.q_inverse % K.p, K.p)


def has_integer_zhs_surgery(K: SimpleKnot) -> bool:
    k2 = K.k * K.k % K.p
    return k2 == K.q or k2 == (-K.q) % K.p


@dataclass(frozen=True)
class SurgeryDescriptor:
    knot: SimpleKnot
    a: int
    window: tuple[int, int]
    coefficients: tuple[int, ...] = field(default=())

    @property
    def homology_sphere_coefficients(self) -> tuple[int, ...]:
        return tuple(m for m in self.coefficients if m in (1, -1))


def admissible_coefficient(K: SimpleKnot, m: int) -> bool:
    """Whether m is the coefficient of an integer surgery on K."""
    return (m + self_linking(K).value) % K.p == 0


def surgery_descriptor(K: SimpleKnot, window: tuple[int, int] = (-10, 10)) -> SurgeryDescriptor:
    lo, hi = window
    a = self_linking(K).value
    # m = -a + t p
    start = lo + ((-a - lo) % K.p)
    coeffs = tuple(range(start, hi + 1, K.p))
    return SurgeryDescriptor(K, a, (lo, hi), coeffs)
