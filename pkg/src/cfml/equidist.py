"""Distribution of denominators over residue classes.

For a finite truncation ``T`` of the semigroup and each modulus ``m`` the
histogram records how many elements have ``d = r (mod m)``.  Deviation from
the uniform count ``|T| / m`` measures how far the truncation is from
equidistributed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError

DEFAULT_MODULI = 30


@dataclass(frozen=True, eq=False)
class ResidueHistogram:
    """``counts[m - 1][r]`` is the number of elements with ``d = r (mod m)``."""

    M: int
    total: int
    counts: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.counts) != self.M:
            raise ValueError(f"expected {self.M} moduli, got {len(self.counts)}")
        for m, row in enumerate(self.counts, start=1):
            if len(row) != m:
                raise ValueError(f"modulus {m} has {len(row)} residue classes")
            if int(row.sum()) != self.total:
                raise ValueError(f"modulus {m} counts sum to {int(row.sum())}, not {self.total}")

    @classmethod
    def from_tally(cls, tally, M: int = DEFAULT_MODULI) -> ResidueHistogram:
        """Fold the multiplicity table by residue, for moduli ``1..M``.

        Each element contributes exactly its denominator, so folding ``mult``
        gives the same histogram as counting node by node.
        """
        if M < 1:
            raise ValueError(f"M must be >= 1, got {M}")
        mult = np.asarray(tally.mult, dtype=np.int64)
        counts = []
        for m in range(1, M + 1):
            padded = np.zeros(-(-len(mult) // m) * m, dtype=np.int64)
            padded[: len(mult)] = mult
            counts.append(padded.reshape(-1, m).sum(axis=0))
        return cls(M=M, total=int(mult.sum()), counts=tuple(counts))

    def row(self, m: int) -> np.ndarray:
        if not 1 <= m <= self.M:
            raise ValueError(f"modulus {m} outside 1..{self.M}")
        return self.counts[m - 1]


def absolute_error(h: ResidueHistogram, r: int, m: int) -> float:
    row = h.row(m)
    if not 0 <= r < m:
        raise ValueError(f"residue {r} outside 0..{m - 1}")
    # |count - total/m| with one rounding
    return abs(int(row[r]) * m - h.total) / m


def largest_error(h: ResidueHistogram, m: int) -> float:
    row = h.row(m)
    return int(np.abs(row * m - h.total).max()) / m


def normalized_largest_error(h: ResidueHistogram, m: int) -> float:
    if h.total == 0:
        raise DataError("empty truncation: no elements to normalize by")
    row = h.row(m)
    return int(np.abs(row * m - h.total).max()) / (m * h.total)


def error_table(h: ResidueHistogram) -> list[tuple[int, float, float]]:
    """Rows ``(m, largest_error, normalized_largest_error)`` for ``m = 1..M``."""
    return [
        (m, largest_error(h, m), normalized_largest_error(h, m))
        for m in range(1, h.M + 1)
    ]
