import pytest
from hypothesis import given
from hypothesis import strategies as st

from cfml.matrix import IDENTITY, INT64_MAX, Alphabet, Mat2, compose_pair, generator, mul, project_f


def naive_product(x, y):
    return [[sum(x[r][k] * y[k][col] for k in range(2)) for col in range(2)] for r in range(2)]


def rows(w):
    return [[w.a, w.b], [w.c, w.d]]


@pytest.mark.parametrize("i, expected", [(1, (0, 1, 1, 1)), (5, (0, 1, 1, 5))])
def test_generator(i, expected):
    assert generator(i, 5).as_tuple() == expected


@pytest.mark.parametrize("i", [0, -1, 6])
def test_generator_out_of_range(i):
    with pytest.raises(ValueError):
        generator(i, 5)


@pytest.mark.parametrize(
    "i, j, expected",
    [(1, 1, [[1, 1], [1, 2]]), (2, 1, [[1, 1], [2, 3]]), (2, 2, [[1, 2], [2, 5]])],
)
def test_compose_pair_examples(i, j, expected):
    assert rows(compose_pair(i, j)) == expected
    assert naive_product(rows(generator(i)), rows(generator(j))) == expected


def test_compose_pair_out_of_range():
    with pytest.raises(ValueError):
        compose_pair(1, 6, 5)
    with pytest.raises(ValueError):
        compose_pair(0, 1)


@pytest.mark.parametrize(
    "w, g, expected",
    [
        ((1, 1, 1, 2), (1, 1, 1, 2), [[2, 3], [3, 5]]),
        ((1, 1, 1, 2), (1, 1, 2, 3), [[3, 4], [5, 7]]),
    ],
)
def test_mul_examples(w, g, expected):
    assert rows(mul(Mat2(*w), Mat2(*g))) == expected
    assert rows(Mat2(*w) @ Mat2(*g)) == expected


def test_mul_overflow_raises():
    big = Mat2(2**61, 2**61, 2**61, 2**62)
    with pytest.raises(OverflowError):
        mul(big, big)


def test_entries_bounded_at_construction():
    with pytest.raises(OverflowError):
        Mat2(0, 0, 0, INT64_MAX + 1)
    with pytest.raises(ValueError):
        Mat2(-1, 0, 0, 1)


@pytest.mark.parametrize("w, d", [((1, 1, 1, 2), 2), ((2, 3, 3, 5), 5), ((1, 2, 2, 5), 5)])
def test_project_f(w, d):
    assert project_f(Mat2(*w)) == d


def test_identity_is_not_an_element():
    with pytest.raises(ValueError):
        IDENTITY.check_semigroup_element()


@pytest.mark.parametrize("A", [1, 2, 5, 9])
def test_gen_pairs(A):
    pairs = Alphabet(A).gen_pairs
    assert len(pairs) == A * A
    for g in pairs:
        assert g.det == 1
        assert g.a == 1 and g.d == g.b * g.c + 1


words = st.lists(st.tuples(st.integers(1, 6), st.integers(1, 6)), min_size=1, max_size=8)


@given(words, st.tuples(st.integers(1, 6), st.integers(1, 6)))
def test_pair_step_invariants(word, step):
    w = IDENTITY
    for i, j in word:
        w = mul(w, compose_pair(i, j))
    w.check_semigroup_element()
    g = compose_pair(*step)
    child = mul(w, g)
    child.check_semigroup_element()
    A = max(max(p) for p in word + [step])
    assert project_f(w) < project_f(child) <= Alphabet(A).growth_bound * project_f(w)


@given(
    st.tuples(*[st.integers(0, 10**6)] * 4),
    st.tuples(*[st.integers(0, 10**6)] * 4),
    st.integers(1, 1000),
)
def test_local_condition(x, y, m):
    # shift every entry of x by a multiple of m
    shifted = Mat2(*(a + m * b for a, b in zip(x, y)))
    assert project_f(Mat2(*x)) % m == project_f(shifted) % m
