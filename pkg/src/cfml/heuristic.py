"""Power-law growth fit and the conjectured multiplicity.

The heuristic for the number of elements with denominator ``n`` is

    h(n) = (2 delta |B_n| / n) * G(n)

where ``|B_n|`` is the exact ball count from the enumeration, ``2 delta`` is
the growth exponent fitted from the same ball counts, and ``G`` is the
singular series.  Ratios are reported as ``exact / heuristic``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import SpfSieve, singular_series, singular_series_table
from .errors import DataError

MAX_FIT_POINTS = 10_000
MIN_FIT_POINTS = 10
DEFAULT_WINDOW = 0.5


@dataclass(frozen=True)
class PowerLawFit:
    c: float
    two_delta: float
    window_lo: int
    window_hi: int
    rms_residual: float

    @property
    def delta(self) -> float:
        return self.two_delta / 2


@dataclass(frozen=True)
class ComparisonRecord:
    n: int
    exact_mult: int
    heuristic: float
    singular: float
    ratio: float

    @property
    def zero_target(self) -> bool:
        return self.exact_mult == 0


def _ball_array(tally_or_ball) -> np.ndarray:
    return np.asarray(getattr(tally_or_ball, "ball", tally_or_ball))


def fit_growth(tally, window_fraction: float = DEFAULT_WINDOW) -> PowerLawFit:
    """Least-squares fit of ``ln ball[n] = ln c + 2 delta ln n``.

    Uses ``n`` in ``[ceil(window_fraction * N), N]``, thinned to at most
    10,000 geometrically spaced points.  ``tally`` may also be a bare array
    of ball counts indexed by ``n``.
    """
    if not 0 < window_fraction < 1:
        raise ValueError(f"window_fraction must lie in (0, 1), got {window_fraction}")
    ball = _ball_array(tally)
    N = len(ball) - 1
    lo = max(math.ceil(window_fraction * N), 1)
    if N - lo + 1 < MIN_FIT_POINTS:
        raise ValueError(f"fit window [{lo}, {N}] has fewer than {MIN_FIT_POINTS} points")
    n = np.unique(np.rint(np.geomspace(lo, N, MAX_FIT_POINTS)).astype(np.int64))
    y = ball[n].astype(np.float64)
    if (y <= 0).any():
        raise DataError(f"zero ball count inside fit window [{lo}, {N}]")
    x = np.log(n.astype(np.float64))
    y = np.log(y)
    design = np.column_stack([x, np.ones_like(x)])
    (slope, intercept), *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - (slope * x + intercept)
    return PowerLawFit(
        c=float(math.exp(intercept)),
        two_delta=float(slope),
        window_lo=int(lo),
        window_hi=int(N),
        rms_residual=float(np.sqrt(np.mean(resid**2))),
    )


def sphere_estimate(fit: PowerLawFit, ball_n: int, n: int) -> float:
    """Smoothed sphere size ``2 delta * ball_n / n``."""
    return fit.two_delta * ball_n / n


def heuristic_mult(fit: PowerLawFit, tally, n: int, sieve: SpfSieve) -> float:
    if not 2 <= n <= tally.N:
        raise ValueError(f"n={n} outside 2..{tally.N}")
    return sphere_estimate(fit, int(tally.ball[n]), n) * singular_series(n, sieve)


def heuristic_table(tally, fit: PowerLawFit, sieve: SpfSieve):
    """Vectorised heuristic; returns ``(singular, heuristic)`` arrays indexed by n.

    Entries 0 and 1 are NaN.
    """
    N = tally.N
    singular = singular_series_table(N, sieve)
    singular[:2] = np.nan
    n = np.arange(N + 1, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        heur = fit.two_delta * tally.ball / n * singular
    heur[:2] = np.nan
    return singular, heur


def ratio_table(tally, fit: PowerLawFit, sieve: SpfSieve) -> np.ndarray:
    """``exact / heuristic`` indexed by n; 0 where the exact count is 0."""
    _, heur = heuristic_table(tally, fit, sieve)
    ratio = np.zeros(tally.N + 1)
    hit = tally.mult > 0
    hit[:2] = False
    ratio[hit] = tally.mult[hit] / heur[hit]
    ratio[:2] = np.nan
    return ratio


def compare(tally, fit: PowerLawFit, sieve: SpfSieve) -> list[ComparisonRecord]:
    singular, heur = heuristic_table(tally, fit, sieve)
    ratio = ratio_table(tally, fit, sieve)
    return [
        ComparisonRecord(
            n=n,
            exact_mult=int(tally.mult[n]),
            heuristic=float(heur[n]),
            singular=float(singular[n]),
            ratio=float(ratio[n]),
        )
        for n in range(2, tally.N + 1)
    ]


def mean_abs_deviation(ratio: np.ndarray, lo: int, hi: int) -> float:
    """Mean of ``|ratio - 1|`` over ``lo <= n <= hi`` inclusive."""
    return float(np.mean(np.abs(ratio[lo : hi + 1] - 1.0)))


def partial_sum_check(tally, fit: PowerLawFit, sieve: SpfSieve, N: int | None = None) -> float:
    """``sum_{2 <= n <= N} h(n) / ball[N]``; tends to 1 if the heuristic is right."""
    N = tally.N if N is None else N
    if not 2 <= N <= tally.N:
        raise ValueError(f"N={N} outside 2..{tally.N}")
    _, heur = heuristic_table(tally, fit, sieve)
    return float(math.fsum(heur[2 : N + 1]) / tally.ball[N])

