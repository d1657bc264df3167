"""Exact denominator multiplicities for continued fractions with bounded
partial quotients, and a singular-series heuristic for them."""

__version__ = "0.1.0"

from .arith import (
    ZETA2,
    SpfSieve,
    average_singular,
    mobius,
    ramanujan_c,
    ramanujan_c_direct,
    singular_series,
    singular_series_table,
    singular_series_truncated,
)
from .enumerator import (
    EnumConfig,
    TallyTable,
    enumerate_reference,
    enumerate_semigroup,
    find_duplicates,
    sphere_count,
    walk,
)
from .equidist import (
    ResidueHistogram,
    absolute_error,
    error_table,
    largest_error,
    normalized_largest_error,
)
from .errors import DataError, ParseError
from .heuristic import (
    ComparisonRecord,
    PowerLawFit,
    compare,
    fit_growth,
    heuristic_mult,
    partial_sum_check,
    sphere_estimate,
)
from .matrix import IDENTITY, Alphabet, Mat2, compose_pair, generator, mul, project_f
from .sl2 import Sl2ModQ, cbar_bruteforce, cbar_closed, count_d_classes, enumerate_sl2, lifts
