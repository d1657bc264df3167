"""2x2 nonnegative integer matrices and the generators of the semigroup.

A word ``[a1, ..., a2k]`` of partial quotients maps to the product
``g(a1) g(a2) ... g(a2k)`` with ``g(i) = [[0, 1], [1, i]]``.  Even-length
products have determinant 1; their bottom-right entry is the denominator of
the encoded rational.  Enumeration only ever multiplies on the right by a
pair ``g(i) g(j)``, so the pair set is exposed directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

INT64_MAX = 2**63 - 1


@dataclass(frozen=True, slots=True)
class Mat2:
    """Row-major ``[[a, b], [c, d]]`` with entries in ``[0, 2**63)``."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            v = getattr(self, name)
            if v < 0:
                raise ValueError(f"negative entry {name}={v}")
            if v > INT64_MAX:
                raise OverflowError(f"entry {name}={v} exceeds 64 bits")

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def is_identity(self) -> bool:
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)

    def __matmul__(self, other: Mat2) -> Mat2:
        return mul(self, other)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def check_semigroup_element(self) -> None:
        """Raise ``ValueError`` unless this looks like a non-root element.

        Non-root elements have determinant 1, ``d >= 2`` and the entry
        ordering ``a <= b <= d``, ``a <= c <= d``.
        """
        if self.is_identity:
            raise ValueError("identity is the tree root, not a semigroup element")
        if self.det != 1:
            raise ValueError(f"determinant {self.det} != 1")
        if self.d < 2:
            raise ValueError(f"bottom-right entry {self.d} < 2")
        if not (self.a <= self.b <= self.d and self.a <= self.c <= self.d):
            raise ValueError(f"entry ordering violated for {self.as_tuple()}")


IDENTITY = Mat2(1, 0, 0, 1)


def _check_index(i: int, alphabet_bound: int | None) -> None:
    if not isinstance(i, int) or i < 1:
        raise ValueError(f"partial quotient must be a positive integer, got {i!r}")
    if alphabet_bound is not None and i > alphabet_bound:
        raise ValueError(f"partial quotient {i} outside alphabet 1..{alphabet_bound}")


def generator(i: int, alphabet_bound: int | None = None) -> Mat2:
    """Return ``[[0, 1], [1, i]]``."""
    _check_index(i, alphabet_bound)
    return Mat2(0, 1, 1, i)


def compose_pair(i: int, j: int, alphabet_bound: int | None = None) -> Mat2:
    """Return ``generator(i) @ generator(j)``, which is ``[[1, j], [i, i*j + 1]]``."""
    _check_index(i, alphabet_bound)
    _check_index(j, alphabet_bound)
    return Mat2(1, j, i, i * j + 1)


def mul(w: Mat2, g: Mat2) -> Mat2:
    # Python ints never wrap; the check keeps results inside the int64 range
    # the compiled enumerator relies on.
    a = w.a * g.a + w.b * g.c
    b = w.a * g.b + w.b * g.d
    c = w.c * g.a + w.d * g.c
    d = w.c * g.b + w.d * g.d
    if max(a, b, c, d) > INT64_MAX:
        raise OverflowError(f"matrix product overflows 64 bits: {w} @ {g}")
    return Mat2(a, b, c, d)


def project_f(w: Mat2) -> int:
    """Denominator projection: the bottom-right entry."""
    return w.d


@dataclass(frozen=True)
class Alphabet:
    """Partial quotients ``{1, ..., bound}`` and the pair products ``S x S``."""

    bound: int

    def __post_init__(self):
        if not isinstance(self.bound, int) or self.bound < 1:
            raise ValueError(f"alphabet bound must be >= 1, got {self.bound!r}")

    @cached_property
    def generators(self) -> tuple[Mat2, ...]:
        return tuple(generator(i) for i in range(1, self.bound + 1))

    @cached_property
    def gen_pairs(self) -> tuple[Mat2, ...]:
        # ordered by (i, j); the enumerator relies on d growing with both
        return tuple(
            compose_pair(i, j)
            for i in range(1, self.bound + 1)
            for j in range(1, self.bound + 1)
        )

    @property
    def growth_bound(self) -> int:
        """Largest factor by which one pair step can multiply ``d``."""
        A = self.bound
        return A * A + A + 1
