"""Arithmetic functions behind the singular series.

The singular series of the heuristic collapses to

    G(n) = zeta(2) * prod_{p | n} (p - 1) / p = zeta(2) * phi(n) / n,

so everything here reduces to factoring ``n``.  A smallest-prime-factor
table does that in ``O(log n)`` per query.
"""

from __future__ import annotations

import cmath
import math
from functools import cached_property

import numpy as np

ZETA2 = math.pi**2 / 6


class SpfSieve:
    """Smallest-prime-factor table for ``2 <= n <= limit``.

    ``spf[0]`` and ``spf[1]`` are stored as 0 and 1 and are never consulted.
    """

    def __init__(self, limit: int):
        if limit < 1:
            raise ValueError(f"sieve limit must be >= 1, got {limit}")
        self.limit = limit
        spf = np.arange(limit + 1, dtype=np.int64)
        for p in range(2, math.isqrt(limit) + 1):
            if spf[p] != p:
                continue
            tail = spf[p * p :: p]
            # still-unmarked multiples carry their own index
            fresh = tail == np.arange(p * p, limit + 1, p)
            tail[fresh] = p
        spf.flags.writeable = False
        self.spf = spf

    def __repr__(self):
        return f"SpfSieve(limit={self.limit})"

    def _check(self, n: int) -> None:
        if not 1 <= n <= self.limit:
            raise ValueError(f"{n} outside sieve range 1..{self.limit}")

    @cached_property
    def primes(self) -> np.ndarray:
        idx = np.arange(self.limit + 1)
        return idx[(idx >= 2) & (self.spf == idx)]

    def is_prime(self, n: int) -> bool:
        self._check(n)
        return n >= 2 and int(self.spf[n]) == n

    def factorize(self, n: int) -> list[tuple[int, int]]:
        """Prime factorization of ``n`` as ``[(p, e), ...]`` with ``p`` increasing."""
        self._check(n)
        out = []
        while n > 1:
            p = int(self.spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out

    def prime_divisors(self, n: int) -> list[int]:
        return [p for p, _ in self.factorize(n)]

    def mobius(self, n: int) -> int:
        fac = self.factorize(n)
        if any(e > 1 for _, e in fac):
            return 0
        return -1 if len(fac) % 2 else 1

    @cached_property
    def totients(self) -> np.ndarray:
        """``phi(n)`` for ``0 <= n <= limit`` (``phi(0)`` reported as 0)."""
        phi = np.arange(self.limit + 1, dtype=np.int64)
        for p in self.primes:
            p = int(p)
            phi[p::p] -= phi[p::p] // p
        phi.flags.writeable = False
        return phi


def mobius(m: int, sieve: SpfSieve) -> int:
    return sieve.mobius(m)


def _factor_small(q: int) -> list[tuple[int, int]]:
    # trial division; Ramanujan sums are only needed for modest q
    out = []
    p = 2
    while p * p <= q:
        if q % p == 0:
            e = 0
            while q % p == 0:
                q //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if q > 1:
        out.append((q, 1))
    return out


def ramanujan_c(q: int, n: int) -> int:
    """Ramanujan sum ``c_q(n)`` in exact integer arithmetic.

    Uses ``c_q(n) = sum_{s | gcd(q, n)} s * mu(q / s)``.  Only ``s`` with
    ``q / s`` squarefree contribute, so the sum runs over subsets of the
    primes of ``q``.
    """
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    g = math.gcd(q, abs(n) % q)  # gcd(q, 0) = q
    total = 0
    primes = [p for p, _ in _factor_small(q)]
    # q / s = product of a subset of distinct primes of q
    for mask in range(1 << len(primes)):
        r = 1
        bits = 0
        for k, p in enumerate(primes):
            if mask >> k & 1:
                r *= p
                bits += 1
        s = q // r
        if g % s == 0:
            total += -s if bits % 2 else s
    return total


def ramanujan_c_direct(q: int, n: int) -> complex:
    """Literal exponential sum ``sum_{(a, q) = 1} e(a n / q)``; test oracle only."""
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    r = n % q
    return sum(
        (cmath.exp(2j * math.pi * a * r / q) for a in range(1, q + 1) if math.gcd(a, q) == 1),
        0j,
    )


def singular_series(n: int, sieve: SpfSieve) -> float:
    """``zeta(2) * prod_{p | n} (p - 1) / p``."""
    g = ZETA2
    for p in sieve.prime_divisors(n):
        g *= (p - 1) / p
    return g


def singular_series_table(N: int, sieve: SpfSieve) -> np.ndarray:
    """Vectorised :func:`singular_series` for ``0 <= n <= N``; entry 0 is NaN."""
    if not 1 <= N <= sieve.limit:
        raise ValueError(f"N={N} outside sieve range 1..{sieve.limit}")
    phi = sieve.totients[: N + 1]
    out = np.empty(N + 1)
    out[0] = np.nan
    out[1:] = ZETA2 * phi[1:] / np.arange(1, N + 1)
    return out


def _primes_upto(P: int) -> np.ndarray:
    if P < 2:
        return np.zeros(0, dtype=np.int64)
    mark = np.ones(P + 1, dtype=bool)
    mark[:2] = False
    for p in range(2, math.isqrt(P) + 1):
        if mark[p]:
            mark[p * p :: p] = False
    return np.flatnonzero(mark)


def singular_series_truncated(n: int, prime_bound: int) -> float:
    """Euler product over ``p <= prime_bound`` of the local factors.

    The local factor at ``p`` is ``1 + C_p``: ``1 - 1/(p + 1)`` when
    ``p | n`` and ``1 + 1/(p^2 - 1)`` otherwise (higher prime powers
    contribute nothing).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if prime_bound < 2:
        raise ValueError(f"prime_bound must be >= 2, got {prime_bound}")
    primes = _primes_upto(prime_bound)
    p = primes.astype(np.float64)
    local = np.where(n % primes == 0, -1.0 / (p + 1.0), 1.0 / (p * p - 1.0))
    # summing log1p keeps a million near-1 factors accurate
    return float(np.exp(np.log1p(local).sum()))


def average_singular(N: int, sieve: SpfSieve) -> float:
    """``(1/N) * sum_{n <= N} G(n)``, which tends to 1."""
    if not 1 <= N <= sieve.limit:
        raise ValueError(f"N={N} outside sieve range 1..{sieve.limit}")
    return float(math.fsum(singular_series_table(N, sieve)[1:]) / N)
