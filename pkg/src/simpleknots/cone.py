"""Combinatorial mapping cone for knots whose knot Floer homology is Z^p.

This model is only valid when each Spin^c structure of the ambient lens space
carries exactly one Z summand of knot Floer homology, which is the case for
every simple knot.  It does not apply to general knots.

For the unique grading n_c in the class c (mod p), the group A_n is labelled

* ``+``  if n > n_c   (pi^+ is an isomorphism, pi^- vanishes)
* ``-``  if n < n_c   (pi^- is an isomorphism, pi^+ vanishes)
* ``o``  if n = n_c   (both are isomorphisms)

and the complex C(K, m) splits into |m| chains A_n -- B_(n+m) -- A_(n+m) ...
Between two consecutive non-``o`` labels the chain contributes one Z exactly
when the two labels differ.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidCoefficient
from .floer import f_profile
from .knot import SimpleKnot, _require_primitive, admissible_coefficient, self_linking


@dataclass(frozen=True)
class SpincProfile:
    """``n[c]`` is the grading carrying HFK in the Spin^c class c mod p.

    For even p the symmetric gradings are half-integers; they are shifted up by
    1/2 (``shift`` records this) to land on integers.  Ranks do not depend on a
    uniform shift.
    """

    p: int
    n: tuple[int, ...]
    shift: Fraction = Fraction(0)

    def mirror(self) -> "SpincProfile":
        out = [0] * self.p
        for v in self.n:
            out[(-v) % self.p] = -v
        return SpincProfile(self.p, tuple(out), -self.shift)


def spinc_profile(K: SimpleKnot) -> SpincProfile:
    _require_primitive(K)
    prof = f_profile(K)
    odd = K.p % 2 == 1
    values = [d // 2 if odd else (d + 1) // 2 for d in prof.doubled_gradings]
    n = [None] * K.p
    for v in values:
        c = v % K.p
        assert n[c] is None, "two generators in one Spin^c class"
        n[c] = v
    return SpincProfile(K.p, tuple(n), Fraction(0) if odd else Fraction(1, 2))


@dataclass(frozen=True)
class ChainSummary:
    residue: int              # class of n mod m
    start: int                # first n shown in ``labels``
    labels: str               # trimmed to the informative part of the chain
    rank: int


@dataclass(frozen=True)
class ConeDiagram:
    knot: SimpleKnot
    m: int
    window: tuple[int, int]
    mirrored: bool
    chains: tuple[ChainSummary, ...]
    summands: tuple[tuple[int, int, str, str], ...]   # (a, b, left, right)

    @property
    def rank(self) -> int:
        return sum(c.rank for c in self.chains)

    @property
    def is_lspace(self) -> bool:
        return self.rank == abs(self.m)


_CHARS = np.array(["-", "o", "+"])


def _check_coefficient(K: SimpleKnot, m: int) -> None:
    _require_primitive(K)
    if m == 0:
        raise InvalidCoefficient("m must be nonzero")
    if not admissible_coefficient(K, m):
        a = self_linking(K).value
        raise InvalidCoefficient(f"m={m} is not an integer surgery of {K}: "
                                 f"need m = -{a} (mod {K.p})")


def default_window(profile: SpincProfile, m: int) -> tuple[int, int]:
    pad = profile.p + abs(m)
    return min(profile.n) - pad, max(profile.n) + pad


def _prepare(K: SimpleKnot, m: int, window):
    _check_coefficient(K, m)
    profile = spinc_profile(K)
    mirrored = m < 0
    if mirrored:
        profile = profile.mirror()
        m = -m
    lo, hi = window or default_window(profile, m)
    return profile, m, mirrored, lo, hi


def _chains(profile: SpincProfile, m: int, lo: int, hi: int):
    """Yield (residue, n values, signs of n - n_c) for each class of n mod m."""
    nc = np.asarray(profile.n, dtype=np.int64)
    for r in range(m):
        start = lo + ((r - lo) % m)
        ns = np.arange(start, hi + 1, m, dtype=np.int64)
        yield r, ns, np.sign(ns - nc[ns % profile.p])


def _sign_changes(signs: np.ndarray) -> int:
    nz = signs[signs != 0]
    return int(np.count_nonzero(nz[1:] != nz[:-1]))


def cone_diagram(K: SimpleKnot, m: int, window: tuple[int, int] | None = None) -> ConeDiagram:
    profile, m, mirrored, lo, hi = _prepare(K, m, window)
    chains = []
    summands = []
    for r, ns, signs in _chains(profile, m, lo, hi):
        rank = _sign_changes(signs)
        # keep one "-" before and one "+" after the informative stretch
        not_minus = np.flatnonzero(signs != -1)
        not_plus = np.flatnonzero(signs != 1)
        first = max(int(not_minus[0]) - 1, 0) if not_minus.size else 0
        last = min(int(not_plus[-1]) + 1, ns.size - 1) if not_plus.size else ns.size - 1
        labels = "".join(_CHARS[signs[first:last + 1] + 1])
        chains.append(ChainSummary(r, int(ns[first]), labels, rank))
        nz = np.flatnonzero(signs)
        ends = nz[(nz >= first) & (nz <= last)]
        for a_idx, b_idx in zip(ends[:-1].tolist(), ends[1:].tolist()):
            summands.append((int(ns[a_idx]), int(ns[b_idx]),
                             "+" if signs[a_idx] > 0 else "-",
                             "+" if signs[b_idx] > 0 else "-"))
    return ConeDiagram(K, -m if mirrored else m, (lo, hi), mirrored, tuple(chains), tuple(summands))


def surgery_rank(K: SimpleKnot, m: int, window: tuple[int, int] | None = None) -> int:
    """Rank of HF-hat of the m-surgery on K, by the interval-label walk."""
    profile, m, _mirrored, lo, hi = _prepare(K, m, window)
    return sum(_sign_changes(signs) for _r, _ns, signs in _chains(profile, m, lo, hi))


def is_lspace_surgery(K: SimpleKnot, m: int) -> bool:
    return surgery_rank(K, m) == abs(m)


# -- brute-force oracle --------------------------------------------------------

def _rank_rational(rows: list[dict[int, int]]) -> int:
    """Rank of a sparse integer matrix over Q by exact Gaussian elimination."""
    pivots: dict[int, dict[int, Fraction]] = {}
    rank = 0
    for row in rows:
        v = {c: Fraction(x) for c, x in row.items() if x}
        while v:
            col = min(v)
            if col not in pivots:
                pivots[col] = v
                rank += 1
                break
            piv = pivots[col]
            factor = v[col] / piv[col]
            for c, x in piv.items():
                y = v.get(c, 0) - factor * x
                if y:
                    v[c] = y
                else:
                    v.pop(c, None)
    return rank


def truncated_complex_rank(K: SimpleKnot, m: int, window: tuple[int, int] | None = None) -> int:
    """Homology rank of the truncated two-row complex, built directly for any sign of m.

    Keeps A_n for lo <= n <= hi and B_n for lo + m <= n <= hi (for m < 0 the
    B range reaches below lo), writes out the incidence matrix of the
    nontrivial pi^+ / pi^- arrows and uses rank-nullity.
    """
    _check_coefficient(K, m)
    profile = spinc_profile(K)
    lo, hi = window or default_window(profile, m)
    b_lo, b_hi = lo + m, hi
    n_b = b_hi - b_lo + 1
    n_a = hi - lo + 1
    rows = []
    for n in range(lo, hi + 1):
        nc = profile.n[n % profile.p]
        row = {}
        if n >= nc and b_lo <= n <= b_hi:
            row[n - b_lo] = 1
        if n <= nc and b_lo <= n + m <= b_hi:
            row[n + m - b_lo] = row.get(n + m - b_lo, 0) + 1
        rows.append(row)
    r = _rank_rational(rows)
    return n_a + n_b - 2 * r
