import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cfml.arith import (
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

PI2 = math.pi**2


@pytest.fixture(scope="module")
def sieve():
    return SpfSieve(20000)


def trial_spf(n):
    return next(p for p in range(2, n + 1) if n % p == 0)


def test_spf_matches_trial_division(sieve):
    for n in range(2, 3000):
        assert sieve.spf[n] == trial_spf(n)


def test_primes(sieve):
    assert sieve.primes[:10].tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert len(sieve.primes) == 2262  # pi(20000)


@pytest.mark.parametrize("m, mu", [(1, 1), (6, 1), (12, 0), (2, -1), (30, -1), (49, 0)])
def test_mobius(sieve, m, mu):
    assert mobius(m, sieve) == mu


def test_mobius_out_of_range(sieve):
    with pytest.raises(ValueError):
        mobius(20001, sieve)
    with pytest.raises(ValueError):
        mobius(0, sieve)


def test_mobius_inversion_identity(sieve):
    # sum_{d | n} mu(d) = [n == 1]
    for n in range(1, 400):
        assert sum(mobius(d, sieve) for d in range(1, n + 1) if n % d == 0) == (n == 1)


@pytest.mark.parametrize("q, n, c", [(1, 0, 1), (1, 7, 1), (4, 2, -2), (6, 4, -1), (5, 5, 4), (5, 3, -1)])
def test_ramanujan_examples(q, n, c):
    assert ramanujan_c(q, n) == c


def test_ramanujan_direct_examples():
    assert abs(ramanujan_c_direct(1, 7) - 1) < 1e-12
    assert abs(ramanujan_c_direct(4, 2) - (-2)) < 1e-9
    assert abs(ramanujan_c_direct(5, 5) - 4) < 1e-9
    # two-term sum written out
    assert abs(cmath.exp(1j * math.pi) + cmath.exp(3j * math.pi) - ramanujan_c_direct(4, 2)) < 1e-12


def test_ramanujan_negative_arguments():
    for q in range(1, 40):
        for n in range(-40, 40):
            assert ramanujan_c(q, n) == ramanujan_c(q, -n) == ramanujan_c(q, n + q)


@given(st.integers(1, 60), st.integers(1, 60), st.integers(-500, 500))
def test_ramanujan_multiplicative(q1, q2, n):
    if math.gcd(q1, q2) == 1:
        assert ramanujan_c(q1 * q2, n) == ramanujan_c(q1, n) * ramanujan_c(q2, n)


def test_ramanujan_totient_at_zero(sieve):
    phi = sieve.totients
    for q in range(1, 300):
        assert ramanujan_c(q, 0) == phi[q]


@pytest.mark.parametrize("n, value", [(1, PI2 / 6), (2, PI2 / 12), (6, PI2 / 18)])
def test_singular_series_examples(sieve, n, value):
    assert singular_series(n, sieve) == pytest.approx(value, rel=1e-14)


def test_singular_series_bounds(sieve):
    g = singular_series_table(20000, sieve)
    assert g[1] == pytest.approx(ZETA2)
    assert (g[2:] > 0).all() and (g[2:] < ZETA2).all()


def test_singular_table_matches_scalar(sieve):
    g = singular_series_table(5000, sieve)
    for n in range(1, 5001):
        assert g[n] == pytest.approx(singular_series(n, sieve), rel=1e-13)


def test_singular_series_out_of_range(sieve):
    with pytest.raises(ValueError):
        singular_series(20001, sieve)


def test_totients_by_definition(sieve):
    for n in range(1, 500):
        assert sieve.totients[n] == sum(1 for a in range(1, n + 1) if math.gcd(a, n) == 1)


@pytest.mark.parametrize("n, P, value", [(1, 2, 4 / 3), (2, 2, 2 / 3), (3, 3, (4 / 3) * (3 / 4))])
def test_truncated_examples(n, P, value):
    assert singular_series_truncated(n, P) == pytest.approx(value, rel=1e-14)


def test_truncated_converges_to_zeta2():
    assert abs(singular_series_truncated(1, 10**6) - ZETA2) < 1e-5


@pytest.mark.parametrize("n", [1, 2, 6, 12, 30, 97, 210, 2 * 3 * 5 * 7 * 11])
def test_truncated_monotone_convergence(sieve, n):
    target = singular_series(n, sieve)
    errs = [abs(singular_series_truncated(n, P) - target) for P in (10**2, 10**3, 10**4)]
    assert errs[0] > errs[1] > errs[2]
    # tail of prod_{p > P} (1 + 1/(p^2 - 1)) is below ~ zeta(2) / P
    assert errs[2] < 2 * ZETA2 / 10**4


def test_average_small_values(sieve):
    assert average_singular(1, sieve) == pytest.approx(PI2 / 6)
    assert average_singular(2, sieve) == pytest.approx(PI2 / 8)
    assert PI2 / 8 == pytest.approx(1.2337, abs=1e-4)


def test_average_matches_mobius_form(sieve):
    # (1/N) sum_n G(n) = zeta(2)/N * sum_{m <= N} mu(m)/m * floor(N/m)
    for N in (10, 137, 1000):
        direct = ZETA2 / N * sum(mobius(m, sieve) / m * (N // m) for m in range(1, N + 1))
        assert average_singular(N, sieve) == pytest.approx(direct, rel=1e-12)


def test_average_error_bound(sieve):
    for N in (1000, 5000, 20000):
        assert abs(average_singular(N, sieve) - 1) < ZETA2 * (math.log(N) + 2) / N


def test_sieve_read_only(sieve):
    with pytest.raises(ValueError):
        sieve.spf[4] = 3
    assert isinstance(sieve.totients, np.ndarray)
