"""Exact multiplicity tallies by pruned depth-first search of the pair tree.

The tree has the identity at its root and children ``w @ g`` for every pair
product ``g = [[1, j], [i, i*j + 1]]``.  Right multiplication by a pair
strictly increases the bottom-right entry, so a subtree can be cut as soon
as its root's denominator passes the bound.

Right multiplication only mixes entries within a row, and the bottom row of
``w @ g`` is ``(c + d*i, c*j + d*(i*j + 1))``.  The compiled kernel therefore
carries just ``(c, d)``; the full-matrix walk in :func:`walk` is kept as a
slow, independent reference.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numba
import numpy as np

from .equidist import ResidueHistogram
from .matrix import IDENTITY, INT64_MAX, Alphabet, Mat2, mul, project_f

log = logging.getLogger(__name__)

MAX_BOUND = 2**50


@dataclass(frozen=True)
class EnumConfig:
    alphabet: int = 5
    max_n: int = 1000
    workers: int = 1
    moduli: int = 0

    def __post_init__(self):
        if not isinstance(self.alphabet, int) or self.alphabet < 1:
            raise ValueError(f"alphabet bound must be >= 1, got {self.alphabet!r}")
        if not isinstance(self.max_n, int) or self.max_n < 1:
            raise ValueError(f"max_n must be >= 1, got {self.max_n!r}")
        if self.max_n > MAX_BOUND:
            raise ValueError(f"max_n {self.max_n} exceeds supported bound 2**50")
        if Alphabet(self.alphabet).growth_bound * self.max_n > INT64_MAX:
            raise ValueError("alphabet and bound together can overflow 64-bit entries")
        if not isinstance(self.workers, int) or self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers!r}")
        if not isinstance(self.moduli, int) or self.moduli < 0:
            raise ValueError(f"moduli must be >= 0, got {self.moduli!r}")
        if self.moduli > self.max_n:
            raise ValueError(f"moduli {self.moduli} exceeds max_n {self.max_n}")


@dataclass(frozen=True, eq=False)
class TallyTable:
    """Exact counts ``mult[n]`` for ``0 <= n <= N`` (entries 0 and 1 are zero).

    ``ball[n]`` is the number of elements with denominator at most ``n``.
    Arrays are read-only.
    """

    N: int
    mult: np.ndarray
    total_nodes: int
    ball: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        mult = np.array(self.mult, dtype=np.int64)
        if mult.shape != (self.N + 1,):
            raise ValueError(f"mult must have length N + 1 = {self.N + 1}, got {mult.shape}")
        if (mult < 0).any():
            raise ValueError("negative multiplicity")
        ball = np.cumsum(mult)
        if int(ball[-1]) != self.total_nodes:
            raise ValueError(
                f"sum of multiplicities {int(ball[-1])} != total_nodes {self.total_nodes}"
            )
        mult.flags.writeable = False
        ball.flags.writeable = False
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "ball", ball)

    @classmethod
    def from_mult(cls, mult) -> TallyTable:
        mult = np.asarray(mult, dtype=np.int64)
        return cls(N=len(mult) - 1, mult=mult, total_nodes=int(mult.sum()))

    def truncate(self, n: int) -> TallyTable:
        if not 1 <= n <= self.N:
            raise ValueError(f"truncation bound {n} outside 1..{self.N}")
        return TallyTable.from_mult(self.mult[: n + 1])

    def __eq__(self, other):
        if not isinstance(other, TallyTable):
            return NotImplemented
        return (
            self.N == other.N
            and self.total_nodes == other.total_nodes
            and np.array_equal(self.mult, other.mult)
        )

    __hash__ = None


def sphere_count(t: TallyTable, n: int) -> int:
    """Number of elements of norm exactly ``n``; norm and denominator coincide."""
    if not 2 <= n <= t.N:
        raise ValueError(f"n={n} outside 2..{t.N}")
    return int(t.mult[n])


# -- compiled kernel ---------------------------------------------------------


@numba.njit(nogil=True, cache=True)
def _tally_subtrees(roots_c, roots_d, A, N, stack_size, mult):
    """Add every proper descendant of each root to ``mult``; return their count."""
    sc = np.empty(stack_size, np.int64)
    sd = np.empty(stack_size, np.int64)
    visited = 0
    for k in range(roots_c.shape[0]):
        sc[0] = roots_c[k]
        sd[0] = roots_d[k]
        top = 1
        while top > 0:
            top -= 1
            c = sc[top]
            d = sd[top]
            for i in range(1, A + 1):
                # smallest child for this i has j = 1: d' = c + d*(i + 1)
                c2 = c + d * i
                if c2 + d > N:
                    break
                for j in range(1, A + 1):
                    d2 = c * j + d * (i * j + 1)
                    if d2 > N:
                        break
                    mult[d2] += 1
                    visited += 1
                    sc[top] = c2
                    sd[top] = d2
                    top += 1
    return visited


def _stack_size(A: int, N: int) -> int:
    # d' = c*j + d*(i*j + 1) >= 2*d, so paths are at most log2(N) deep;
    # each popped node pushes at most A*A children.
    depth = max(N, 2).bit_length() + 1
    return A * A * (depth + 1) + 1


def _expand_frontier(A: int, N: int, want: int, mult: np.ndarray):
    """Breadth-first expansion from the root until ``want`` nodes are queued.

    Every node created here is tallied into ``mult``.  Returns the frontier
    as two int64 arrays plus the number of nodes tallied.
    """
    frontier = [(0, 1)]
    visited = 0
    while frontier and len(frontier) < want:
        nxt = []
        for c, d in frontier:
            for i in range(1, A + 1):
                c2 = c + d * i
                if c2 + d > N:
                    break
                for j in range(1, A + 1):
                    d2 = c * j + d * (i * j + 1)
                    if d2 > N:
                        break
                    mult[d2] += 1
                    visited += 1
                    nxt.append((c2, d2))
        frontier = nxt
    roots = np.array(frontier, dtype=np.int64).reshape(-1, 2)
    return roots[:, 0].copy(), roots[:, 1].copy(), visited


def default_workers() -> int:
    env = os.environ.get("CFML_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ValueError(f"CFML_THREADS must be an integer, got {env!r}") from None
        if n < 1:
            raise ValueError(f"CFML_THREADS must be >= 1, got {n}")
        return n
    return os.cpu_count() or 1


def enumerate_semigroup(config: EnumConfig):
    """Tally every element with denominator at most ``config.max_n``.

    Returns ``(TallyTable, ResidueHistogram or None)``; the histogram is built
    when ``config.moduli > 0``.  The result does not depend on
    ``config.workers``.
    """
    A, N, W = config.alphabet, config.max_n, config.workers
    mult = np.zeros(N + 1, dtype=np.int64)
    stack_size = _stack_size(A, N)

    if W == 1:
        roots_c = np.zeros(1, np.int64)
        roots_d = np.ones(1, np.int64)
        visited = _tally_subtrees(roots_c, roots_d, A, N, stack_size, mult)
    else:
        roots_c, roots_d, visited = _expand_frontier(A, N, 4 * W, mult)
        log.debug("frontier of %d subtrees for %d workers", len(roots_c), W)
        # strided assignment spreads the large low-d subtrees across workers
        shares = [(roots_c[w::W], roots_d[w::W]) for w in range(W)]
        privates = [np.zeros(N + 1, dtype=np.int64) for _ in range(W)]
        with ThreadPoolExecutor(max_workers=W) as pool:
            futures = [
                pool.submit(_tally_subtrees, rc, rd, A, N, stack_size, priv)
                for (rc, rd), priv in zip(shares, privates)
            ]
            visited += sum(f.result() for f in futures)
        for priv in privates:
            mult += priv

    table = TallyTable(N=N, mult=mult, total_nodes=int(visited))
    hist = ResidueHistogram.from_tally(table, config.moduli) if config.moduli else None
    return table, hist


# -- reference walk ----------------------------------------------------------


def walk(alphabet: int, max_n: int):
    """Yield every non-root tree node with ``d <= max_n`` as a :class:`Mat2`.

    Pure Python over full matrices with overflow-checked products.  Intended
    for validation at small bounds.
    """
    A = Alphabet(alphabet)
    pairs = A.gen_pairs
    stack = [IDENTITY]
    while stack:
        w = stack.pop()
        for i in range(A.bound):
            for j in range(A.bound):
                child = mul(w, pairs[i * A.bound + j])
                if project_f(child) > max_n:
                    break
                yield child
                stack.append(child)
            else:
                continue
            if j == 0:
                # d grows with i as well, so no later row can fit either
                break


def enumerate_reference(config: EnumConfig):
    """Slow counterpart of :func:`enumerate_semigroup` using :func:`walk`.

    Residues are incremented node by node rather than folded from the tally.
    """
    N, M = config.max_n, config.moduli
    mult = np.zeros(N + 1, dtype=np.int64)
    counts = [np.zeros(m, dtype=np.int64) for m in range(M + 1)]
    total = 0
    for w in walk(config.alphabet, N):
        d = project_f(w)
        mult[d] += 1
        total += 1
        for m in range(1, M + 1):
            counts[m][d % m] += 1
    table = TallyTable(N=N, mult=mult, total_nodes=total)
    hist = ResidueHistogram(M=M, total=total, counts=tuple(counts[1:])) if M else None
    return table, hist


def find_duplicates(alphabet: int, max_n: int) -> list[Mat2]:
    """Matrices reached by more than one tree path (expected: none)."""
    seen: set[tuple[int, int, int, int]] = set()
    dupes = []
    for w in walk(alphabet, max_n):
        key = w.as_tuple()
        if key in seen:
            dupes.append(w)
        seen.add(key)
    return dupes
