import itertools

import numpy as np
import pytest

from parabolic_moment.errors import IrrationalEigenvalue, NotInP
from parabolic_moment.exact_linalg import identity, inverse, matrix, mul, rank
from parabolic_moment.moment import Quad, group_act, sample_group
from parabolic_moment.parabolic import new_context
from parabolic_moment.semicanonical import (
    is_semicanonical,
    random_semicanonical,
    roundtrip_report,
    semicanonicalize,
    spec,
)


def test_semicanonicalize_examples():
    ctx = new_context(2, (1, 1))
    res = semicanonicalize(ctx, matrix([[1, 5], [0, 2]]), check_sweep=True)
    assert np.array_equal(res.m, matrix([[1, 0], [0, 2]]))
    assert np.array_equal(res.b, matrix([[1, -5], [0, 1]]))
    assert res.partition == ((0,), (1,))

    r = matrix([[3, 0], [0, 3]])
    for alpha in [(1, 1), (2,)]:
        res = semicanonicalize(new_context(2, alpha), r)
        assert np.array_equal(res.m, r) and np.array_equal(res.b, identity(2))
        assert res.partition == ((0, 1),)

    nil = matrix([[0, 1], [0, 0]])
    res = semicanonicalize(new_context(2, (2,)), nil)
    assert np.array_equal(res.m, nil) and res.partition == ((0, 1),)


def test_semicanonicalize_rejects_bad_input():
    with pytest.raises(NotInP):
        semicanonicalize(new_context(2, (1, 1)), matrix([[1, 0], [1, 1]]))
    with pytest.raises(IrrationalEigenvalue):
        semicanonicalize(new_context(2, (2,)), matrix([[0, 1], [-1, 0]]))


def test_is_semicanonical_examples():
    m = matrix([[0, 1, 1, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0]])
    m2 = matrix([[0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 0, 1], [0, 0, 0, 0]])
    one_block = new_context(4, (4,))
    for x in (m, m2):
        check = is_semicanonical(one_block, x)
        assert not check.ok and check.condition == 2
    # with every index its own diagonal block both are accepted
    borel = new_context(4, (1, 1, 1, 1))
    assert is_semicanonical(borel, m).ok and is_semicanonical(borel, m2).ok
    ok = is_semicanonical(new_context(2, (1, 1)), matrix([[1, 0], [0, 2]]))
    assert ok.ok and ok.partition == ((0,), (1,))


def test_is_semicanonical_condition_one():
    check = is_semicanonical(new_context(2, (1, 1)), matrix([[1, 5], [0, 2]]))
    assert not check.ok and check.condition == 1 and check.cell == (0, 1)


def test_spec_examples():
    assert spec(new_context(3, (2, 1)), matrix([[2, 0, 0], [0, 1, 0], [0, 0, 5]])).per_block == ((1, 2), (5,))
    ctx = new_context(2, (1, 1))
    r = matrix([[1, 5], [0, 2]])
    assert spec(ctx, r).per_block == ((1,), (2,))
    ctx = new_context(4, (2, 2))
    r = matrix([[1, 2, 3, 4], [0, 1, 5, 6], [0, 0, 2, 0], [0, 0, 1, 3]])
    z = np.zeros(4, dtype=object)
    for seed in range(10):
        b = sample_group(ctx, seed)
        moved = group_act(ctx, b, Quad(r, r * 0, z, z)).r
        assert spec(ctx, moved) == spec(ctx, r)


def _power(m, k):
    out = identity(m.shape[0])
    for _ in range(k):
        out = mul(out, m)
    return out


def test_rank2_borel_orbit_types_exhaustive():
    """Every upper triangular 2x2 integer matrix with entries in [-3, 3] lands in
    one of three orbit types: distinct eigenvalues, a scalar matrix (two Jordan
    blocks) or a single 2x2 Jordan block."""
    ctx = new_context(2, (1, 1))
    seen = set()
    vals = range(-3, 4)
    for a, c, d in itertools.product(vals, vals, vals):
        r = matrix([[a, c], [0, d]])
        res = semicanonicalize(ctx, r, check_sweep=True)
        assert np.array_equal(mul(res.b, r), mul(res.m, res.b))
        assert is_semicanonical(ctx, res.m).ok
        if a != d:
            kind = "distinct"
            assert np.array_equal(res.m, matrix([[a, 0], [0, d]]))
            assert res.partition == ((0,), (1,)) if a < d else ((1,), (0,))
        elif c == 0:
            kind = "two_blocks"
            assert np.array_equal(res.m, r)
        else:
            kind = "one_block"
            assert res.m[0, 1] != 0
            assert rank(res.m - a * identity(2)) == 1 and not _power(res.m - a * identity(2), 2).any()
        seen.add(kind)
    assert seen == {"distinct", "two_blocks", "one_block"}


def test_rank2_general_orbit_types_exhaustive():
    ctx = new_context(2, (2,))
    kinds = set()
    vals = range(-2, 3)
    for entries in itertools.product(vals, repeat=4):
        r = matrix([list(entries[:2]), list(entries[2:])])
        try:
            res = semicanonicalize(ctx, r, check_sweep=True)
        except IrrationalEigenvalue:
            continue
        assert is_semicanonical(ctx, res.m).ok
        assert np.array_equal(mul(res.b, r), mul(res.m, res.b))
        m = res.m
        if m[0, 0] != m[1, 1]:
            kinds.add("distinct")
            assert m[0, 0] < m[1, 1] and m[0, 1] == 0
        elif m[0, 1] == 0:
            kinds.add("two_blocks")
        else:
            kinds.add("one_block")
            assert m[0, 1] == 1
    assert kinds == {"distinct", "two_blocks", "one_block"}


@pytest.mark.parametrize("alpha", [(1, 1), (2,), (2, 1), (1, 2), (3,), (1, 1, 1), (2, 2), (3, 1), (1, 2, 1)])
def test_roundtrip_properties(alpha):
    ctx = new_context(sum(alpha), alpha)
    rep = roundtrip_report(ctx, 40, seed=5)
    assert rep.passed, rep.to_json()


def test_random_semicanonical_is_accepted():
    ctx = new_context(5, (2, 3))
    rng = np.random.default_rng(3)
    for _ in range(50):
        m = random_semicanonical(ctx, rng)
        assert is_semicanonical(ctx, m).ok
        res = semicanonicalize(ctx, m, check_sweep=True)
        assert spec(ctx, res.m) == spec(ctx, m)


def test_fractional_entries():
    ctx = new_context(3, (1, 2))
    r = matrix([["1/2", "3/7", 1], [0, "1/3", "2/5"], [0, 0, "1/3"]])
    res = semicanonicalize(ctx, r, check_sweep=True)
    assert is_semicanonical(ctx, res.m).ok
    assert np.array_equal(mul(mul(res.b, r), inverse(res.b)), res.m)
