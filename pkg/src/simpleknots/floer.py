"""Knot Floer data of simple knots: grading profile, width, genus, polynomials.

Every simple knot has one knot Floer generator per Spin^c structure, so all
of its Floer-theoretic data is read off the integer profile ``f`` defined by

    f(0) = 0,   f(i+1) - f(i) = k - p   if  (i*q mod p) in [1, k]
                                 k       otherwise.

Gradings are stored doubled so that even-p knots, whose symmetric gradings
are half-integers, stay in integer arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .arith import check_word_budget
from .errors import NotPrimitive
from .kernels import width_kernel
from .knot import SimpleKnot, is_primitive, validate
from .laurent import LaurentPolynomial


def iter_f(p: int, q: int, k: int) -> Iterator[int]:
    """Yield f(0), ..., f(p-1)."""
    f = 0
    r = 0
    for _ in range(p):
        yield f
        f += k - p if 1 <= r <= k else k
        r = (r + q) % p


@dataclass(frozen=True)
class GradingProfile:
    knot: SimpleKnot
    f: tuple[int, ...]
    width: int
    doubled_gradings: tuple[int, ...]
    genus: int | None

    @property
    def gradings(self) -> list[Fraction]:
        """Symmetric Alexander gradings, sorted descending."""
        return sorted((Fraction(d, 2) for d in self.doubled_gradings), reverse=True)

    @property
    def center_doubled(self) -> int:
        """max(f) + min(f); subtracting it from 2f gives the doubled gradings."""
        return max(self.f) + min(self.f)


def profile_array(p: int, q: int, k: int) -> np.ndarray:
    """f(0), ..., f(p-1) as an int64 array (vectorized :func:`iter_f`)."""
    r = np.arange(p - 1, dtype=np.int64) * q % p
    steps = np.where((r >= 1) & (r <= k), k - p, k)
    return np.concatenate(([0], np.cumsum(steps)))


def f_profile(K: SimpleKnot) -> GradingProfile:
    f = profile_array(K.p, K.q, K.k)
    hi, lo = int(f.max()), int(f.min())
    w = hi - lo
    doubled = 2 * f - (hi + lo)
    genus = (w - K.p + 1) // 2 if is_primitive(K) else None
    return GradingProfile(K, tuple(f.tolist()), w, tuple(doubled.tolist()), genus)


def width_reference(p: int, q: int, k: int) -> int:
    """Pure-Python O(p) width; the oracle the compiled kernel is tested against."""
    hi = lo = 0
    for v in iter_f(p, q, k):
        if v > hi:
            hi = v
        elif v < lo:
            lo = v
    return hi - lo


def width(p: int, q: int, k: int) -> int:
    K = validate(p, q, k)
    check_word_budget(K.p)
    return int(width_kernel(K.p, K.q, K.k))


def genus(K: SimpleKnot) -> int:
    if not is_primitive(K):
        raise NotPrimitive(f"genus formula needs a primitive knot, {K} is not")
    return (width(K.p, K.q, K.k) - K.p + 1) // 2


def euler_characteristic(K: SimpleKnot) -> LaurentPolynomial:
    """Symmetrized graded Euler characteristic: sum of t^g over all gradings g."""
    return LaurentPolynomial.from_exponents(f_profile(K).doubled_gradings, doubled=True)


def alexander_polynomial(K: SimpleKnot) -> LaurentPolynomial:
    """Symmetric Alexander polynomial with Delta(1) = 1.

    Computed as (t - 1) * sum_i t^f(i) / (t^p - 1); the division must be exact.
    """
    if not is_primitive(K):
        raise NotPrimitive(f"{K} is not primitive")
    raw = LaurentPolynomial.from_exponents(profile_array(K.p, K.q, K.k))
    numerator = raw * LaurentPolynomial({2: 1, 0: -1})
    delta = numerator.divide_exact_by_binomial(K.p).symmetrized()
    if delta.at_one() < 0:
        delta = -delta
    return delta


# -- Fox calculus -------------------------------------------------------------

@dataclass(frozen=True)
class Word:
    """A word in the free group on ``a`` and ``m``.

    ``letters`` holds (generator, +-1) pairs; ``weights`` gives the image of each
    generator in the abelianization Z = <t>.
    """

    letters: tuple[tuple[str, int], ...]
    weights: dict

    def __post_init__(self):
        for g, e in self.letters:
            if g not in self.weights or e not in (1, -1):
                raise ValueError(f"bad letter {g}^{e}")

    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(generator index into sorted(weights), exponent sign, abelian step) per letter."""
        cached = self.__dict__.get("_arrays")
        if cached is None:
            names = sorted(self.weights)
            idx = {g: i for i, g in enumerate(names)}
            n = len(self.letters)
            gens = np.fromiter((idx[g] for g, _ in self.letters), dtype=np.int64, count=n)
            signs = np.fromiter((e for _, e in self.letters), dtype=np.int64, count=n)
            weights = np.array([self.weights[g] for g in names], dtype=np.int64)
            steps = weights[gens] * signs if n else signs
            cached = (gens, signs, steps)
            object.__setattr__(self, "_arrays", cached)
        return cached

    @classmethod
    def parse(cls, text: str, weights: dict) -> "Word":
        """Parse e.g. ``"amama^3"`` or ``"a m^-1 a"``; whitespace is ignored."""
        letters = []
        s = text.replace(" ", "")
        i = 0
        while i < len(s):
            g = s[i]
            i += 1
            exp = 1
            if i < len(s) and s[i] == "^":
                j = i + 1
                if j < len(s) and s[j] in "+-":
                    j += 1
                while j < len(s) and s[j].isdigit():
                    j += 1
                exp = int(s[i + 1:j])
                i = j
            letters.extend([(g, 1 if exp > 0 else -1)] * abs(exp))
        return cls(tuple(letters), dict(weights))

    def degree(self) -> int:
        """Image |w| in the abelianization."""
        return int(self.arrays()[2].sum())

    def syllables(self) -> str:
        return "".join(g if e == 1 else f"{g}^-1" for g, e in self.letters)

    def __str__(self):
        out = []
        for g, e in self.letters:
            if e == 1 and out and out[-1][0] == g and out[-1][1] > 0:
                out[-1][1] += 1
            elif e == -1 and out and out[-1][0] == g and out[-1][1] < 0:
                out[-1][1] -= 1
            else:
                out.append([g, e])
        return "".join(g if n == 1 else f"{g}^{n}" for g, n in out)


_A, _M = ("a", 1), ("m", 1)


def relator_word(K: SimpleKnot) -> Word:
    """The beta relator w_0 ... w_{p-1}, with w_i = ma when iq mod p lies in [1, k]."""
    r = np.arange(K.p, dtype=np.int64) * K.q % K.p
    hits = (r >= 1) & (r <= K.k)
    letters = []
    for hit in hits.tolist():
        if hit:
            letters.append(_M)
        letters.append(_A)
    word = Word(tuple(letters), {"a": K.k, "m": -K.p})
    # the letter arrays are known already; hand them to the word
    gens = np.zeros(len(letters), dtype=np.int64)
    gens[np.flatnonzero(hits) + np.arange(int(hits.sum()))] = 1
    object.__setattr__(word, "_arrays", (gens, np.ones(len(letters), dtype=np.int64),
                                         np.where(gens == 1, -K.p, K.k)))
    return word


def free_derivative(w: Word, generator: str) -> LaurentPolynomial:
    """Fox derivative d w / d generator, pushed into Z[t, t^-1].

    A letter x at position i contributes t^(|prefix|) if it is x and
    -t^(|prefix| - |x|) if it is x^-1, since d(x^-1) = -x^-1 d(x).
    """
    gens, signs, steps = w.arrays()
    if generator not in w.weights:
        return LaurentPolynomial()
    sel = gens == sorted(w.weights).index(generator)
    prefix = np.cumsum(steps) - steps
    exps = np.where(signs == 1, prefix, prefix + steps)[sel]
    return LaurentPolynomial._from_arrays(2 * exps, signs[sel].copy())


def fundamental_formula_check(w: Word) -> bool:
    """sum_x (d w / d x) (t^|x| - 1) == t^|w| - 1."""
    one = LaurentPolynomial.monomial(0)
    lhs = LaurentPolynomial()
    for g, weight in w.weights.items():
        lhs = lhs + free_derivative(w, g) * (LaurentPolynomial.monomial(weight) - one)
    return lhs == LaurentPolynomial.monomial(w.degree()) - one
