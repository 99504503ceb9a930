from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parabolic_moment.errors import IrrationalEigenvalue, NotInvertible, NotRankOne
from parabolic_moment.exact_linalg import (
    char_poly_rational_roots,
    commutator,
    exact_rank,
    fmt_rat,
    identity,
    inverse,
    is_zero,
    kernel_basis,
    matrix,
    mul,
    rank,
    rank_one_factor,
    rat,
    rref,
    zeros,
)


def test_rat_parsing_and_formatting():
    assert rat("3/6") == Fraction(1, 2)
    assert rat(" -4 / 2 ") == -2
    assert fmt_rat(Fraction(-3, 4)) == "-3/4"
    assert fmt_rat(Fraction(6, 3)) == "2"


@pytest.mark.parametrize("m, expected", [
    (zeros(2), 0),
    (identity(4), 4),
    (matrix([[1, 2], [2, 4]]), 1),
])
def test_rank_examples(m, expected):
    assert rank(m) == expected
    assert exact_rank(m) == expected


def test_kernel_identity_is_empty():
    assert kernel_basis(identity(3)) == []


def test_kernel_row_vector():
    (v,) = kernel_basis(matrix([[1, -1]]))
    assert v[0] == v[1] != 0


def test_kernel_rank_one():
    (v,) = kernel_basis(matrix([[1, 2], [2, 4]]))
    assert v[0] == -2 * v[1] and v[1] != 0


def test_char_poly_roots_examples():
    assert char_poly_rational_roots(matrix([[3, 0], [0, 3]])) == [(3, 2)]
    assert char_poly_rational_roots(matrix([[1, 5], [0, 2]])) == [(1, 1), (2, 1)]
    assert char_poly_rational_roots(matrix([[0, 1], [1, 0]])) == [(-1, 1), (1, 1)]
    with pytest.raises(IrrationalEigenvalue):
        char_poly_rational_roots(matrix([[0, 1], [-1, 0]]))


def test_rank_one_factor_examples():
    i, j = rank_one_factor(matrix([[1, 2], [2, 4]]))
    assert list(i) == [1, 2] and list(j) == [1, 2]
    with pytest.raises(NotRankOne):
        rank_one_factor(zeros(2))
    with pytest.raises(NotRankOne):
        rank_one_factor(identity(2))


def test_inverse_and_singular():
    m = matrix([[2, 1], [1, 1]])
    assert np.array_equal(mul(m, inverse(m)), identity(2))
    with pytest.raises(NotInvertible):
        inverse(matrix([[1, 2], [2, 4]]))


def test_mul_handles_fractions():
    a = matrix([["1/2", 0], [0, "1/3"]])
    assert np.array_equal(mul(a, a), matrix([["1/4", 0], [0, "1/9"]]))
    assert is_zero(commutator(a, a))


small = st.integers(-4, 4)


@st.composite
def mats(draw, max_dim=4):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    rows = draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    return matrix(rows)


@settings(max_examples=150, deadline=None)
@given(mats())
def test_rank_nullity(m):
    basis = kernel_basis(m)
    assert rank(m) + len(basis) == m.shape[1]
    for v in basis:
        assert all(x == 0 for x in mul(m, v))


@settings(max_examples=150, deadline=None)
@given(mats())
def test_rank_agrees_with_rref(m):
    _, pivots = rref(m)
    assert exact_rank(m) == len(pivots) == rank(m)


@settings(max_examples=100, deadline=None)
@given(st.lists(small, min_size=1, max_size=4), st.data())
def test_roots_sum_to_trace_for_triangular(diag, data):
    n = len(diag)
    m = zeros(n)
    for p in range(n):
        m[p, p] = Fraction(diag[p])
        for q in range(p + 1, n):
            m[p, q] = Fraction(data.draw(small))
    roots = char_poly_rational_roots(m)
    assert sum(lam * k for lam, k in roots) == sum(diag)
    assert sum(k for _, k in roots) == n


@settings(max_examples=100, deadline=None)
@given(st.lists(small, min_size=2, max_size=4), st.lists(small, min_size=2, max_size=4))
def test_rank_one_roundtrip(u, w):
    k = min(len(u), len(w))
    m = matrix(np.outer(u[:k], w[:k]).tolist())
    if rank(m) != 1:
        return
    i, j = rank_one_factor(m)
    assert np.array_equal(np.outer(i, j), m)
    first = next(x for x in j if x != 0)
    assert first == 1
