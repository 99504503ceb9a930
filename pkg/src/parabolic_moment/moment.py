"""The moment map on T*(p x C^n), the P- and p-actions, and the linear-algebra
queries built on them (differential rank, isotropy, commutant).

A point is a :class:`Quad` ``(r, s, i, j)`` with ``r`` in p, ``s`` the
canonical PSTAR representative of a class in g/u, ``i`` a column vector and
``j`` a row vector (both stored as 1-d object arrays).
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .exact_linalg import commutator, exact_rank, identity, inverse, mul, residues, zeros
from .errors import NotInvertible
from .parabolic import Region, check_region, dim_p, project


@dataclass(frozen=True, eq=False)
class Quad:
    r: np.ndarray
    s: np.ndarray
    i: np.ndarray
    j: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, Quad):
            return NotImplemented
        return all(np.array_equal(a, b) for a, b in zip(self.parts(), other.parts()))

    def parts(self):
        return self.r, self.s, self.i, self.j


@dataclass(frozen=True, eq=False)
class TangentQuad(Quad):
    """Tangent vector (X, Y, a, b) stored in the same four slots as a Quad."""


def make_quad(ctx, r, s, i, j, check=True):
    q = Quad(np.asarray(r, dtype=object), np.asarray(s, dtype=object),
             np.asarray(i, dtype=object), np.asarray(j, dtype=object))
    if check:
        check_region(ctx, q.r, Region.P, "r")
        check_region(ctx, q.s, Region.PSTAR, "s")
        if q.i.shape != (ctx.n,) or q.j.shape != (ctx.n,):
            raise ValueError(f"i and j must have length {ctx.n}")
    return q


def zero_quad(ctx):
    z = zeros(ctx.n)
    v = zeros(1, ctx.n)[0]
    return Quad(z, z.copy(), v, v.copy())


def moment_map(ctx, q):
    """Canonical PSTAR representative of [r, s] + i j modulo u."""
    return project(ctx, commutator(q.r, q.s) + np.outer(q.i, q.j), Region.PSTAR)


def group_act(ctx, b, q):
    """b.(r, s, i, j) = (b r b^-1, [b s b^-1], b i, j b^-1)."""
    b = np.asarray(b, dtype=object)
    check_region(ctx, b, Region.P, "b")
    b_inv = inverse(b)
    return Quad(
        mul(mul(b, q.r), b_inv),
        project(ctx, mul(mul(b, q.s), b_inv), Region.PSTAR),
        mul(b, q.i),
        mul(q.j, b_inv),
    )


def algebra_act(ctx, v, q):
    """Infinitesimal action of v in p: ([v, r], [v, s] mod u, v i, -j v).

    This is the t-derivative of group_act(I + t v, q) at t = 0.
    """
    v = np.asarray(v, dtype=object)
    return TangentQuad(
        commutator(v, q.r),
        project(ctx, commutator(v, q.s), Region.PSTAR),
        mul(v, q.i),
        -mul(q.j, v),
    )


# Linear systems.  Row-major vectorisation: vec(A X B) = (A kron B^T) vec(X).
# The builders are written against plain array arithmetic plus a reduction
# ``red`` so the same code assembles the exact (Fraction) system and its image
# modulo a prime.


def _dmu_system(ctx, r, s, i, j, eye, red):
    n = ctx.n
    rows = ctx.flat_cells[Region.PSTAR]
    p_cols = ctx.flat_cells[Region.P]
    ps_cols = ctx.flat_cells[Region.PSTAR]
    d_x = red(np.kron(eye, s.T)) - red(np.kron(s, eye))
    d_y = red(np.kron(r, eye)) - red(np.kron(eye, r.T))
    d_a = red(np.kron(eye, j.reshape(n, 1)))
    d_b = red(np.kron(i.reshape(n, 1), eye))
    return np.hstack([
        red(d_x[np.ix_(rows, p_cols)]),
        red(d_y[np.ix_(rows, ps_cols)]),
        d_a[rows],
        d_b[rows],
    ])


def _commutant_system(ctx, r, s, eye, red):
    rows = ctx.flat_cells[Region.PSTAR]
    cols = ctx.flat_cells[Region.P]
    c_r = red(np.kron(eye, r.T)) - red(np.kron(r, eye))
    c_s = red(np.kron(eye, s.T)) - red(np.kron(s, eye))
    return np.vstack([red(c_r[:, cols]), red(c_s[np.ix_(rows, cols)])])


def _isotropy_system(ctx, r, s, i, j, eye, red):
    n = ctx.n
    cols = ctx.flat_cells[Region.P]
    v_i = red(np.kron(eye, i.reshape(1, n)))[:, cols]
    j_v = red(np.kron(j.reshape(1, n), eye))[:, cols]
    return np.vstack([_commutant_system(ctx, r, s, eye, red), v_i, j_v])


def _system_rank(ctx, builder, arrays):
    """Rank of a linear system, modular fast path first, exact fallback."""
    p = _kernels.PRIME
    red_arrays = [residues(a, p) for a in arrays]
    if all(a is not None for a in red_arrays):
        mod = builder(ctx, *red_arrays, np.eye(ctx.n, dtype=np.int64), lambda x: x % p)
        k = _kernels.rank_mod_p(mod % p)
        if k == min(mod.shape):
            return k
    exact = builder(ctx, *arrays, identity(ctx.n), lambda x: x)
    return exact_rank(exact)


def dmu_matrix(ctx, q):
    """Exact matrix of the differential of the moment map at q.

    Domain coordinates: X on the P cells, Y on the PSTAR cells, a, b; codomain
    coordinates: the PSTAR cells.  dmu(X, Y, a, b) = [X, s] + [r, Y] + a j + i b mod u.
    """
    return _dmu_system(ctx, q.r, q.s, q.i, q.j, identity(ctx.n), lambda x: x)


def moment_differential_rank(ctx, q):
    return _system_rank(ctx, _dmu_system, [q.r, q.s, q.i, q.j])


def isotropy_matrix(ctx, q):
    return _isotropy_system(ctx, q.r, q.s, q.i, q.j, identity(ctx.n), lambda x: x)


def isotropy_dimension(ctx, q):
    """Dimension of the stabiliser {v in p : v . q = 0} of the p-action."""
    return dim_p(ctx) - _system_rank(ctx, _isotropy_system, [q.r, q.s, q.i, q.j])


def commutant_dimension(ctx, r, s):
    """Dimension of {v in p : [v, r] = 0 and [v, s] = 0 mod u}."""
    return dim_p(ctx) - _system_rank(ctx, _commutant_system, [np.asarray(r), np.asarray(s)])


# Sampling.  Every sampler takes an explicit numpy Generator or seed.


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _random_fill(ctx, rng, bound, region):
    out = zeros(ctx.n)
    for p, q in ctx.cells[region]:
        out[p, q] = Fraction(int(rng.integers(-bound, bound + 1)))
    return out


def sample_p(ctx, seed, bound=10):
    return _random_fill(ctx, _rng(seed), bound, Region.P)


def sample_pstar(ctx, seed, bound=10):
    return _random_fill(ctx, _rng(seed), bound, Region.PSTAR)


def sample_vector(ctx, seed, bound=10):
    rng = _rng(seed)
    return np.array([Fraction(int(x)) for x in rng.integers(-bound, bound + 1, ctx.n)], dtype=object)


def sample_quad(ctx, seed, bound=10):
    rng = _rng(seed)
    return Quad(sample_p(ctx, rng, bound), sample_pstar(ctx, rng, bound),
                sample_vector(ctx, rng, bound), sample_vector(ctx, rng, bound))


def sample_group(ctx, seed, bound=10):
    """Random invertible element of P with integer entries in [-bound, bound].

    Off-diagonal blocks are drawn once; each diagonal block is redrawn until it
    is invertible, which makes the whole block upper triangular matrix invertible.
    """
    rng = _rng(seed)
    b = _random_fill(ctx, rng, bound, Region.U)
    for blk in ctx.blocks:
        sl = slice(blk.start, blk.stop)
        while True:
            block = np.array(
                [[Fraction(int(x)) for x in row] for row in rng.integers(-bound, bound + 1, (len(blk), len(blk)))],
                dtype=object,
            ).reshape(len(blk), len(blk))
            if exact_rank(block) == len(blk):
                break
        b[sl, sl] = block
    return b


def sample_distinct(rng, n, bound=10):
    """n pairwise distinct integers (as Fractions) from [-bound, bound]."""
    rng = _rng(rng)
    if 2 * bound + 1 < n:
        raise ValueError("range too small for distinct values")
    while True:
        vals = [int(x) for x in rng.integers(-bound, bound + 1, n)]
        if len(set(vals)) == n:
            return [Fraction(v) for v in vals]


def is_group_element(ctx, b):
    try:
        check_region(ctx, b, Region.P, "b")
        inverse(np.asarray(b, dtype=object))
    except (NotInvertible, ValueError):
        return False
    return True
