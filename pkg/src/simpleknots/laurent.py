"""Laurent polynomials in t^(1/2) with integer coefficients.

Exponents are stored doubled: the exponent ``3`` means ``t^(3/2)``.  Terms
live in two sorted numpy arrays (exponents, coefficients) with no zero
coefficients, so a sparse polynomial with a huge degree span stays small.
Coefficients are int64 while that is provably exact and Python ints beyond.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .errors import DivisionNotExact

_INT64_SAFE = 2**62


def _as_coeffs(values, bound: int) -> np.ndarray:
    return np.asarray(values, dtype=np.int64 if bound < _INT64_SAFE else object)


def _max_abs(c: np.ndarray) -> int:
    return int(np.max(np.abs(c))) if c.size else 0


def _reduce(e: np.ndarray, c: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sort by exponent, add up repeated exponents, drop zeros."""
    if e.size == 0:
        return e.astype(np.int64), c
    order = np.argsort(e, kind="stable")
    e, c = e[order], c[order]
    starts = np.flatnonzero(np.concatenate(([True], e[1:] != e[:-1])))
    e = e[starts]
    c = np.add.reduceat(c, starts)
    keep = c != 0
    return e[keep], c[keep]


class LaurentPolynomial:
    __slots__ = ("_e", "_v")

    def __init__(self, coefficients: Mapping[int, int] | None = None):
        items = [(e, c) for e, c in (coefficients or {}).items() if c]
        e = np.array([x for x, _ in items], dtype=np.int64)
        bound = max((abs(c) for _, c in items), default=0)
        self._e, self._v = _reduce(e, _as_coeffs([c for _, c in items], bound))

    @classmethod
    def _from_arrays(cls, e: np.ndarray, v: np.ndarray, reduced: bool = False) -> "LaurentPolynomial":
        out = cls.__new__(cls)
        out._e, out._v = (e, v) if reduced else _reduce(np.asarray(e, dtype=np.int64), v)
        return out

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPolynomial":
        """``coefficient * t^exponent`` for an integer exponent."""
        return cls({2 * exponent: coefficient})

    @classmethod
    def from_exponents(cls, exponents: Iterable[int], doubled: bool = False) -> "LaurentPolynomial":
        """Sum of ``t^e`` over ``exponents`` (with multiplicity)."""
        if isinstance(exponents, np.ndarray):
            e = exponents.astype(np.int64)
        else:
            e = np.fromiter(exponents, dtype=np.int64)
        if not doubled:
            e = 2 * e
        return cls._from_arrays(e, np.ones(e.size, dtype=np.int64))

    @classmethod
    def from_integer_coefficients(cls, low: int, coeffs: Iterable[int]) -> "LaurentPolynomial":
        coeffs = list(coeffs)
        e = 2 * (low + np.arange(len(coeffs), dtype=np.int64))
        return cls._from_arrays(e, _as_coeffs(coeffs, max(map(abs, coeffs), default=0)))

    # -- inspection -------------------------------------------------------
    @property
    def coefficients(self) -> dict[int, int]:
        return dict(self.terms())

    def terms(self) -> list[tuple[int, int]]:
        return list(zip(self._e.tolist(), (int(c) for c in self._v)))

    def __len__(self):
        return int(self._e.size)

    def is_zero(self) -> bool:
        return self._e.size == 0

    def is_integral(self) -> bool:
        return bool(np.all(self._e % 2 == 0))

    def min_degree(self) -> Fraction:
        return Fraction(int(self._e[0]), 2)

    def max_degree(self) -> Fraction:
        return Fraction(int(self._e[-1]), 2)

    def at_one(self) -> int:
        return int(self._v.sum()) if self._v.size else 0

    def exponent_multiset(self) -> Counter:
        """Doubled exponents, repeated by coefficient (coefficients must be >= 0)."""
        if np.any(self._v < 0):
            raise ValueError("negative coefficient has no multiset meaning")
        return Counter(dict(self.terms()))

    # -- arithmetic -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            return np.array_equal(self._e, other._e) and np.array_equal(self._v, other._v)
        if isinstance(other, int):
            return self == LaurentPolynomial({0: other})
        return NotImplemented

    def __hash__(self):
        return hash((self._e.tobytes(), tuple(int(c) for c in self._v)))

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        bound = _max_abs(self._v) + _max_abs(other._v)
        v = np.concatenate((_as_coeffs(self._v, bound), _as_coeffs(other._v, bound)))
        return LaurentPolynomial._from_arrays(np.concatenate((self._e, other._e)), v)

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial._from_arrays(self._e, -self._v, reduced=True)

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-other)

    def __mul__(self, other: "LaurentPolynomial | int") -> "LaurentPolynomial":
        if isinstance(other, (int, np.integer)):
            other = int(other)
            if other == 0:
                return LaurentPolynomial()
            v = _as_coeffs(self._v, _max_abs(self._v) * abs(other)) * other
            return LaurentPolynomial._from_arrays(self._e, v, reduced=True)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        small, big = (self, other) if len(self) <= len(other) else (other, self)
        if small.is_zero():
            return LaurentPolynomial()
        bound = _max_abs(small._v) * _max_abs(big._v) * len(small)
        sv, bv = _as_coeffs(small._v, bound), _as_coeffs(big._v, bound)
        # outer products in row chunks keep memory near 4M terms
        rows = max(1, 4_000_000 // max(len(big), 1))
        acc = LaurentPolynomial()
        for s in range(0, len(small), rows):
            se, svs = small._e[s:s + rows], sv[s:s + rows]
            part = LaurentPolynomial._from_arrays(
                (se[:, None] + big._e[None, :]).ravel(),
                (svs[:, None] * bv[None, :]).ravel())
            acc = part if acc.is_zero() else acc + part
        return acc

    __rmul__ = __mul__

    def shift(self, doubled_amount: int) -> "LaurentPolynomial":
        """Multiply by ``t^(doubled_amount/2)``."""
        return LaurentPolynomial._from_arrays(self._e + doubled_amount, self._v, reduced=True)

    def substitute_inverse(self) -> "LaurentPolynomial":
        """``P(t^-1)``."""
        return LaurentPolynomial._from_arrays(-self._e[::-1], self._v[::-1], reduced=True)

    def is_symmetric(self) -> bool:
        return self == self.substitute_inverse()

    def symmetrized(self) -> "LaurentPolynomial":
        """Shift so that the lowest and highest exponents are negatives of each other."""
        if self.is_zero():
            return self
        return self.shift(-(int(self._e[0]) + int(self._e[-1])) // 2)

    def divide_exact_by_binomial(self, n: int) -> "LaurentPolynomial":
        """Divide by ``t^n - 1`` (n >= 1).

        Exponents are split into chains by residue mod n.  Along a chain the
        quotient coefficient just below a term is the sum of that term and
        everything above it, so it is constant between consecutive terms.
        Raises DivisionNotExact if some chain does not sum to zero.
        """
        if n < 1:
            raise ValueError("n must be >= 1")
        if self.is_zero():
            return self
        step = 2 * n
        res = self._e % step
        order = np.lexsort((self._e, res))
        e, v, res = self._e[order], self._v[order], res[order]
        starts = np.flatnonzero(np.concatenate(([True], res[1:] != res[:-1])))
        ends = np.concatenate((starts[1:], [e.size])) - 1
        csum = np.cumsum(v)
        group = np.repeat(np.arange(starts.size), np.diff(np.concatenate((starts, [e.size]))))
        suffix = csum[ends][group] - csum + v          # sum of v over [t, end of chain]
        if np.any(suffix[starts] != 0):
            raise DivisionNotExact(f"nonzero remainder dividing by t^{n} - 1")
        inner = np.flatnonzero(np.concatenate((group[1:] == group[:-1], [False])))
        vals = suffix[inner + 1]
        keep = vals != 0
        inner, vals = inner[keep], vals[keep]
        lengths = (e[inner + 1] - e[inner]) // step
        total = int(lengths.sum())
        offsets = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(lengths) - lengths, lengths)
        qe = np.repeat(e[inner], lengths) + step * offsets
        return LaurentPolynomial._from_arrays(qe, np.repeat(vals, lengths))

    # -- rendering --------------------------------------------------------
    def serialize(self) -> list[str]:
        """Sorted ``doubled-exponent:coefficient`` pairs."""
        return [f"{e}:{c}" for e, c in self.terms()]

    @classmethod
    def deserialize(cls, pairs: Iterable[str]) -> "LaurentPolynomial":
        out = {}
        for item in pairs:
            e, c = item.split(":")
            out[int(e)] = out.get(int(e), 0) + int(c)
        return cls(out)

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for e, c in self.terms():
            if e == 0:
                mono = ""
            elif e == 2:
                mono = "t"
            elif e % 2 == 0:
                mono = f"t^{e // 2}"
            else:
                mono = f"t^({e}/2)"
            mag = abs(c)
            body = mono if mag == 1 and mono else (f"{mag}{'*' if mono else ''}{mono}" if mono else str(mag))
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPolynomial({self.terms()!r})"
