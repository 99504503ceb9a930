from fractions import Fraction

import numpy as np
import pytest
import sympy

from parabolic_moment.exact_linalg import identity, inverse, is_zero, matrix, mul, vector, zeros
from parabolic_moment.moment import (
    Quad,
    algebra_act,
    commutant_dimension,
    dmu_matrix,
    group_act,
    isotropy_dimension,
    make_quad,
    moment_differential_rank,
    moment_map,
    sample_group,
    sample_p,
    sample_quad,
    zero_quad,
)
from parabolic_moment.parabolic import Region, dim_p, new_context, project
from parabolic_moment.exact_linalg import exact_rank

CONTEXTS = [new_context(sum(a), a) for a in [(1,), (1, 1), (2,), (2, 1), (1, 2), (1, 1, 1), (2, 2), (1, 3, 1)]]


def e(n, k):
    v = zeros(1, n)[0]
    v[k] = Fraction(1)
    return v


def test_moment_examples():
    ctx = new_context(2, (1, 1))
    d = matrix([[1, 0], [0, 2]])
    assert is_zero(moment_map(ctx, make_quad(ctx, d, d, zeros(1, 2)[0], zeros(1, 2)[0])))
    z = zeros(2)
    assert is_zero(moment_map(ctx, make_quad(ctx, z, z, e(2, 0), e(2, 1))))
    ctx = new_context(2, (2,))
    s = matrix([[0, 1], [0, 0]])
    assert is_zero(moment_map(ctx, make_quad(ctx, matrix([[0, 0], [0, 1]]), s, e(2, 0), e(2, 1))))


def test_group_act_examples():
    ctx = new_context(2, (1, 1))
    q = sample_quad(ctx, 3)
    assert group_act(ctx, identity(2), q) == q
    lam = Fraction(3)
    scaled = group_act(ctx, lam * identity(2), q)
    assert scaled == Quad(q.r, q.s, lam * q.i, q.j / lam)
    r = matrix([[1, 2], [0, 3]])
    moved = group_act(ctx, matrix([[1, 1], [0, 1]]), Quad(r, zeros(2), zeros(1, 2)[0], zeros(1, 2)[0]))
    assert np.array_equal(moved.r, matrix([[1, 4], [0, 3]]))


def test_algebra_act_examples():
    ctx = new_context(2, (2,))
    q = sample_quad(ctx, 5)
    zero = algebra_act(ctx, zeros(2), q)
    assert all(is_zero(x) for x in zero.parts())
    ident = algebra_act(ctx, identity(2), q)
    assert is_zero(ident.r) and is_zero(ident.s)
    assert np.array_equal(ident.i, q.i) and np.array_equal(ident.j, -q.j)
    q1 = Quad(q.r, q.s, e(2, 0), q.j)
    e11 = matrix([[1, 0], [0, 0]])
    assert np.array_equal(algebra_act(ctx, e11, q1).i, e(2, 0))


@pytest.mark.parametrize("ctx", CONTEXTS, ids=lambda c: str(c.alpha))
def test_group_axioms_and_equivariance(ctx):
    rng = np.random.default_rng([7, *ctx.alpha])
    for _ in range(200):
        q = sample_quad(ctx, rng, bound=4)
        b1 = sample_group(ctx, rng, bound=3)
        b2 = sample_group(ctx, rng, bound=3)
        moved = group_act(ctx, b1, q)
        lhs = moment_map(ctx, moved)
        rhs = project(ctx, mul(mul(b1, moment_map(ctx, q)), inverse(b1)), Region.PSTAR)
        assert np.array_equal(lhs, rhs)
        assert group_act(ctx, b1, group_act(ctx, b2, q)) == group_act(ctx, mul(b1, b2), q)
    assert group_act(ctx, identity(ctx.n), q) == q


def _sym(m):
    return sympy.Matrix(np.asarray(m).tolist())


@pytest.mark.parametrize("ctx", CONTEXTS[:6], ids=lambda c: str(c.alpha))
def test_algebra_act_is_first_order_part(ctx):
    t = sympy.Symbol("t")
    rng = np.random.default_rng([11, *ctx.alpha])
    for _ in range(5):
        q = sample_quad(ctx, rng, bound=4)
        v = sample_p(ctx, rng, bound=3)
        g = sympy.eye(ctx.n) + t * _sym(v)
        g_inv = g.inv()
        mask = sympy.Matrix(ctx.mask(Region.PSTAR).astype(int).tolist())
        curves = [
            g * _sym(q.r) * g_inv,
            (g * _sym(q.s) * g_inv).multiply_elementwise(mask),
            g * _sym(q.i.reshape(-1, 1)),
            _sym(q.j.reshape(1, -1)) * g_inv,
        ]
        tangent = algebra_act(ctx, v, q)
        targets = [tangent.r, tangent.s, tangent.i.reshape(-1, 1), tangent.j.reshape(1, -1)]
        for curve, target in zip(curves, targets):
            derivative = curve.diff(t).subs(t, 0).applyfunc(sympy.nsimplify)
            assert derivative == _sym(target)


def test_algebra_act_matches_dmu_image():
    # d mu applied to the tangent of a p-orbit equals [v, mu] mod u
    ctx = new_context(3, (2, 1))
    rng = np.random.default_rng(0)
    for _ in range(20):
        q = sample_quad(ctx, rng, bound=4)
        v = sample_p(ctx, rng, bound=3)
        tan = algebra_act(ctx, v, q)
        x = np.concatenate([
            tan.r.reshape(-1)[ctx.flat_cells[Region.P]],
            tan.s.reshape(-1)[ctx.flat_cells[Region.PSTAR]],
            tan.i,
            tan.j,
        ])
        image = mul(dmu_matrix(ctx, q), x)
        mu = moment_map(ctx, q)
        expected = project(ctx, mul(v, mu) - mul(mu, v), Region.PSTAR).reshape(-1)[ctx.flat_cells[Region.PSTAR]]
        assert np.array_equal(image, expected)


def test_dmu_rank_examples():
    ctx = new_context(1, (1,))
    one = vector([1])
    zero = vector([0])
    z = zeros(1)
    assert moment_differential_rank(ctx, Quad(z, z, one, zero)) == 1 == dim_p(ctx)
    assert moment_differential_rank(ctx, Quad(z, z, zero, zero)) == 0


def test_dmu_rank_matches_exact():
    for ctx in CONTEXTS:
        q = sample_quad(ctx, 1, bound=3)
        assert moment_differential_rank(ctx, q) == exact_rank(dmu_matrix(ctx, q))


def test_isotropy_and_commutant_examples():
    for ctx in CONTEXTS:
        assert isotropy_dimension(ctx, zero_quad(ctx)) == dim_p(ctx)
        assert commutant_dimension(ctx, zeros(ctx.n), zeros(ctx.n)) == dim_p(ctx)
    ctx = new_context(2, (1, 1))
    assert commutant_dimension(ctx, matrix([[1, 0], [0, 2]]), zeros(2)) == 2


def test_sampler_contract():
    ctx = new_context(3, (2, 1))
    assert np.array_equal(sample_group(ctx, 42), sample_group(ctx, 42))
    assert np.array_equal(sample_p(ctx, 42), sample_p(ctx, 42))
    rng = np.random.default_rng(1)
    outside = ~ctx.mask(Region.P)
    for _ in range(1000):
        b = sample_group(ctx, rng)
        assert not b[outside].any()
        assert exact_rank(b) == 3
