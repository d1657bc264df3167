"""Brute force over SL2(Z/qZ) for checking the local factors of the singular series.

The semigroup reduces onto all of SL2(Z/qZ), so the local factor at ``q`` is
the average of ``c_q(d - n)`` over the whole finite group.  Everything here
is exact (integers and :class:`fractions.Fraction`); the production path in
:mod:`cfml.arith` uses the closed form instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .arith import _factor_small, ramanujan_c

MAX_MODULUS = 128


def _is_prime(p: int) -> bool:
    return p >= 2 and _factor_small(p) == [(p, 1)]


def sl2_order(q: int) -> int:
    """``q^3 * prod_{p | q} (1 - 1/p^2)``."""
    order = q**3
    for p, _ in _factor_small(q):
        order = order // (p * p) * (p * p - 1)
    return order


@dataclass(frozen=True, eq=False)
class Sl2ModQ:
    """All ``(a, b, c, d)`` mod ``q`` with ``ad - bc = 1``, one row each."""

    q: int
    elements: np.ndarray

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def d(self) -> np.ndarray:
        return self.elements[:, 3]


@lru_cache(maxsize=32)
def enumerate_sl2(q: int) -> Sl2ModQ:
    if not isinstance(q, int) or not 2 <= q <= MAX_MODULUS:
        raise ValueError(f"modulus must be in 2..{MAX_MODULUS}, got {q!r}")
    r = np.arange(q, dtype=np.int64)
    b, c = (x.ravel() for x in np.meshgrid(r, r, indexing="ij"))
    blocks = []
    for a in range(q):
        if math.gcd(a, q) == 1:
            # d is forced: d = a^-1 (1 + bc)
            d = pow(a, -1, q) * (1 + b * c) % q
            blocks.append(np.column_stack([np.full_like(b, a), b, c, d]))
        else:
            bb, cc, dd = (x.ravel() for x in np.meshgrid(r, r, r, indexing="ij"))
            keep = (a * dd - bb * cc) % q == 1
            bb, cc, dd = bb[keep], cc[keep], dd[keep]
            blocks.append(np.column_stack([np.full_like(bb, a), bb, cc, dd]))
    elements = np.concatenate(blocks)
    elements.flags.writeable = False
    g = Sl2ModQ(q=q, elements=elements)
    if g.order != sl2_order(q):
        raise AssertionError(f"SL2(Z/{q}) has {g.order} elements, expected {sl2_order(q)}")
    return g


def count_d_classes(g: Sl2ModQ, p: int) -> tuple[int, int]:
    """Return ``(#{d coprime to p}, #{d = 0 mod p})`` for a prime modulus."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if g.q != p:
        raise ValueError(f"group is mod {g.q}, not mod {p}")
    zero = int((g.d % p == 0).sum())
    return g.order - zero, zero


def cbar_bruteforce(q: int, n: int) -> Fraction:
    """Group average of ``c_q(d - n)`` over SL2(Z/qZ), exactly."""
    g = enumerate_sl2(q)
    per_residue = np.bincount(g.d, minlength=q)
    total = sum(int(k) * ramanujan_c(q, r - n) for r, k in enumerate(per_residue) if k)
    return Fraction(total, g.order)


def cbar_closed(p: int, t: int, n: int) -> Fraction:
    """Closed-form local factor at the prime power ``p^t``."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if t < 1:
        raise ValueError(f"exponent must be >= 1, got {t}")
    if t >= 2:
        return Fraction(0)
    if n % p == 0:
        return Fraction(-1, p + 1)
    return Fraction(1, p * p - 1)


def lifts(base, p: int, t: int) -> np.ndarray:
    """Elements of SL2(Z/p^t) reducing to ``base`` modulo ``p^(t-1)``.

    ``base`` is ``(a, b, c, d)`` with determinant 1 mod ``p^(t-1)``; each
    entry is shifted by ``p^(t-1) * k`` with ``0 <= k < p`` independently.
    """
    if t < 2:
        raise ValueError(f"lifting needs t >= 2, got {t}")
    lo, hi = p ** (t - 1), p**t
    a, b, c, d = (int(x) % lo for x in base)
    if (a * d - b * c) % lo != 1:
        raise ValueError(f"{tuple(base)} is not in SL2(Z/{lo})")
    k = np.arange(p, dtype=np.int64)
    k1, k2, k3, k4 = (x.ravel() for x in np.meshgrid(k, k, k, k, indexing="ij"))
    cand = np.column_stack([a + lo * k1, b + lo * k2, c + lo * k3, d + lo * k4])
    det = (cand[:, 0] * cand[:, 3] - cand[:, 1] * cand[:, 2]) % hi
    return cand[det == 1]
