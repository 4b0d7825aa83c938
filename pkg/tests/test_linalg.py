import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from commalg import linalg as la
from commalg.linalg import Field


def matrices(p, max_rows=4, max_cols=4):
    return st.tuples(st.integers(1, max_rows), st.integers(1, max_cols)).flatmap(
        lambda rc: st.lists(st.integers(0, p - 1), min_size=rc[0] * rc[1], max_size=rc[0] * rc[1]).map(
            lambda xs: np.array(xs, dtype=np.int64).reshape(rc)))


def brute_rank(p, m):
    """Oracle: rank = log_p of the number of distinct images of all vectors."""
    images = {tuple((m @ np.array(v)) % p) for v in itertools.product(range(p), repeat=m.shape[1])}
    return round(np.log(len(images)) / np.log(p))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_field_inverse(p):
    f = Field(p)
    for x in range(1, p):
        assert (x * f.inv(x)) % p == 1


def test_field_rejects_composite():
    with pytest.raises(ValueError):
        Field(4)


@given(matrices(2))
def test_rank_matches_bruteforce_f2(m):
    assert la.rank(Field(2), m) == brute_rank(2, m)


@given(matrices(3, 3, 3))
def test_rank_matches_bruteforce_f3(m):
    assert la.rank(Field(3), m) == brute_rank(3, m)


@given(matrices(3))
def test_kernel_is_kernel_and_complementary(m):
    f = Field(3)
    k = la.kernel_basis(f, m)
    assert la.is_zero(f.matmul(m, k))
    assert k.shape[1] + la.rank(f, m) == m.shape[1]
    assert la.rank(f, k) == k.shape[1]


@given(matrices(5), st.data())
def test_solve_finds_solution_when_consistent(m, data):
    f = Field(5)
    x = np.array(data.draw(st.lists(st.integers(0, 4), min_size=m.shape[1], max_size=m.shape[1])),
                 dtype=np.int64).reshape(-1, 1)
    b = f.matmul(m, x)
    y = la.solve(f, m, b)
    assert y is not None
    assert np.array_equal(f.matmul(m, y), b)


@given(matrices(2, 3, 3))
def test_inverse_of_invertible(m):
    f = Field(2)
    if m.shape[0] != m.shape[1] or la.rank(f, m) < m.shape[0]:
        return
    inv = la.inverse(f, m)
    assert np.array_equal(f.matmul(m, inv), f.eye(m.shape[0]))


def test_rationals_exact():
    q = Field(0)
    m = q.array([["1/2", "1/3"], ["1/4", "1/6"]])
    assert la.rank(q, m) == 1
    k = la.kernel_basis(q, m)
    assert la.is_zero(q.matmul(m, k))
    assert all(isinstance(x, Fraction) for x in k.flatten())


def test_projective_points_count():
    assert len(list(la.projective_points(Field(3), 2))) == 4
    assert len(list(la.projective_points(Field(2), 3))) == 7
