"""Compiled streaming kernels for the width computation.

These are the hot loops of the sweep.  They keep no shared state, so one
instance per worker process is safe.  All arithmetic is int64; callers must
respect :func:`simpleknots.arith.check_word_budget` (width) and
``SWEEP_WORD_LIMIT`` (the congruence mask forms products near 4 p^2).
"""
from __future__ import annotations

import numpy as np
from numba import njit

SWEEP_WORD_LIMIT = 2**30


@njit(cache=True, nogil=True)
def width_kernel(p, q, k):
    """max(f) - min(f) for the f-profile of K(p, q, k), in O(p) time, O(1) space."""
    f = 0
    hi = 0
    lo = 0
    r = 0  # i*q mod p, updated incrementally
    for _ in range(p - 1):
        if r >= 1 and r <= k:
            f += k - p
            if f < lo:
                lo = f
        else:
            f += k
            if f > hi:
                hi = f
        r += q
        if r >= p:
            r -= p
    return hi - lo


@njit(cache=True, nogil=True)
def square_widths(p, ks):
    """Widths of K(p, k^2 mod p, k) for every k in ``ks``."""
    out = np.empty(ks.shape[0], dtype=np.int64)
    for j in range(ks.shape[0]):
        k = ks[j]
        out[j] = width_kernel(p, (k * k) % p, k)
    return out


@njit(cache=True, nogil=True)
def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@njit(cache=True, nogil=True)
def _divisor_hit(r, kk, mult, base, mode):
    # mode 0: no side condition, 1: base/d odd, 2: d odd
    d = 1
    while d * d <= base:
        if base % d == 0:
            e = base // d
            for dd in (d, e):
                if mode == 1 and (base // dd) % 2 == 0:
                    continue
                if mode == 2 and dd % 2 == 0:
                    continue
                if (r - mult * dd) % kk == 0 or (r + mult * dd) % kk == 0:
                    return True
        d += 1
    return False


@njit(cache=True, nogil=True)
def berge_congruence_mask(p):
    """mask[k] is True when the representative k satisfies a Berge type I-V, VII or VIII condition.

    Mirrors the pure-Python predicates in :mod:`simpleknots.families`; the two
    are cross-checked in the test suite.
    """
    mask = np.zeros(p, dtype=np.bool_)
    for k in range(1, p):
        kk = k * k
        r = p % kk
        hit = False
        for s in (1, -1):
            if (r - s) % k == 0:
                i = ((r - s) // k) % k
                g = _gcd(i, k)
                if g == 1 or g == 2:
                    hit = True
        if not hit:
            v = k * k % p
            for s1 in (1, -1):
                for s2 in (1, -1):
                    if (v + s1 * k + s2) % p == 0:
                        hit = True
        if not hit:
            hit = (_divisor_hit(r, kk, 2 * k - 1, k + 1, 1)
                   or _divisor_hit(r, kk, 2 * k + 1, k - 1, 1)
                   or _divisor_hit(r, kk, k - 1, 2 * k + 1, 0)
                   or _divisor_hit(r, kk, k + 1, 2 * k - 1, 0)
                   or _divisor_hit(r, kk, k + 1, k + 1, 2)
                   or _divisor_hit(r, kk, k - 1, k - 1, 2))
        mask[k] = hit
    return mask


@njit(cache=True, nogil=True)
def inverse_table(p):
    """inv[k] = k^-1 mod p for k coprime to p, 0 otherwise."""
    inv = np.zeros(p, dtype=np.int64)
    for k in range(1, p):
        a, b = k, p
        x0, x1 = 1, 0
        while b:
            q = a // b
            a, b = b, a - q * b
            x0, x1 = x1, x0 - q * x1
        if a == 1:
            inv[k] = x0 % p
    return inv
