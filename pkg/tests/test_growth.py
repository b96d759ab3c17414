import pytest
from hypothesis import given
from hypothesis import strategies as st

from ppjoin.errors import GuardExceeded, ValidationError
from ppjoin.growth import MAX_DEGREE, cumulative, pbw_series, rational_rank_series, reconstruction_residual, \
    tensor_series
from ppjoin.oracle import lyndon_ranks


def test_two_three_spheres():
    ranks = rational_rank_series([3, 3], 10)
    assert ranks[1::2] == [2, 1, 2, 3, 6]
    assert ranks[0::2] == [0] * 5


def test_single_three_sphere():
    assert rational_rank_series([3], 4) == [0, 1, 0, 0]


def test_two_two_spheres():
    ranks = rational_rank_series([2, 2], 2)
    assert ranks == [2, 3]
    assert not any(reconstruction_residual([2, 2], rational_rank_series([2, 2], 12), 12))


def test_two_sphere_loop_series():
    # one odd generator: exterior on it times polynomial on its square
    assert rational_rank_series([2], 6) == [1, 1, 0, 0, 0, 0]
    assert tensor_series([1], 6) == [1] * 7


def test_pbw_product_of_known_ranks():
    assert pbw_series([0, 1], 6) == [1, 0, 1, 0, 1, 0, 1]


def test_guards():
    with pytest.raises(GuardExceeded):
        rational_rank_series([3, 3], MAX_DEGREE + 1)
    with pytest.raises(ValidationError):
        rational_rank_series([1, 3], 4)
    with pytest.raises(ValidationError):
        rational_rank_series([], 4)
    with pytest.raises(ValidationError):
        rational_rank_series([3], 0)


@given(st.lists(st.integers(2, 6), min_size=1, max_size=4), st.integers(1, 24))
def test_pbw_residual_is_zero(dims, cap):
    ranks = rational_rank_series(dims, cap)
    assert not any(reconstruction_residual(dims, ranks, cap))


@given(st.integers(1, 3))
def test_even_generators_match_lyndon(q):
    n = 12 if q <= 2 else 8
    ranks = rational_rank_series([3] * q, 2 * n)
    assert ranks[1::2] == lyndon_ranks(q, n)


@given(st.lists(st.integers(2, 5), min_size=2, max_size=3), st.integers(4, 8))
def test_exponential_growth(dims, n):
    ranks = rational_rank_series(dims, 2 * n)
    assert cumulative(ranks, 2 * n) >= 1.5 * cumulative(ranks, n)
