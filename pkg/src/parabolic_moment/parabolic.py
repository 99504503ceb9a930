"""Block structure of a standard parabolic subalgebra of gl_n.

A composition ``alpha`` of ``n`` fixes the diagonal block sizes.  Three cell
regions of an n x n matrix matter:

* ``Region.P``      block upper triangular, diagonal blocks included (the algebra p)
* ``Region.U``      strictly block upper triangular (the nilradical u)
* ``Region.PSTAR``  complement of U, i.e. block lower including diagonal blocks;
  this coordinate subspace is the representative of g/u, the dual of p.

Indices are 0-based in the Python API.  Serialised formats use 1-based indices.
"""

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb, prod

import numpy as np

from .errors import BadComposition, NotInP, OutOfRange, TooManyBlocks
from .exact_linalg import mul

MAX_PROVEN_BLOCKS = 5


class Region(enum.Enum):
    P = "P"
    U = "U"
    PSTAR = "PSTAR"

    @classmethod
    def parse(cls, name):
        try:
            return cls[name.upper().replace("*", "STAR")]
        except KeyError:
            raise ValueError(f"unknown region {name!r}; expected one of P, U, PSTAR") from None


@dataclass(frozen=True)
class ParabolicContext:
    n: int
    alpha: tuple
    allow_conjecture: bool = False

    def __post_init__(self):
        alpha = tuple(int(a) for a in self.alpha)
        object.__setattr__(self, "alpha", alpha)
        if not alpha or any(a < 1 for a in alpha):
            raise BadComposition(f"composition parts must be positive integers, got {list(alpha)}")
        if sum(alpha) != self.n:
            raise BadComposition(f"composition {list(alpha)} sums to {sum(alpha)}, not n={self.n}")
        if len(alpha) > MAX_PROVEN_BLOCKS and not self.allow_conjecture:
            raise TooManyBlocks(
                f"composition {list(alpha)} has {len(alpha)} blocks; at most {MAX_PROVEN_BLOCKS} "
                "are supported without allow_conjecture"
            )

    @property
    def ell(self):
        return len(self.alpha)

    @property
    def conjecture_regime(self):
        return self.ell > MAX_PROVEN_BLOCKS

    @cached_property
    def boundaries(self):
        return tuple(itertools.accumulate(self.alpha, initial=0))

    @cached_property
    def blocks(self):
        """Index range of each diagonal block."""
        b = self.boundaries
        return tuple(range(b[k], b[k + 1]) for k in range(self.ell))

    @cached_property
    def block_of(self):
        return np.repeat(np.arange(self.ell), self.alpha)

    @cached_property
    def masks(self):
        row = self.block_of[:, None]
        col = self.block_of[None, :]
        return {
            Region.P: row <= col,
            Region.U: row < col,
            Region.PSTAR: row >= col,
        }

    @cached_property
    def cells(self):
        """Row-major list of (p, q) cells in each region."""
        return {reg: [tuple(map(int, c)) for c in np.argwhere(mask)] for reg, mask in self.masks.items()}

    @cached_property
    def flat_cells(self):
        """Row-major flat indices p*n + q of the cells in each region."""
        return {reg: np.flatnonzero(mask.reshape(-1)) for reg, mask in self.masks.items()}

    def mask(self, region):
        return self.masks[region]


def new_context(n, alpha, allow_conjecture=False):
    return ParabolicContext(int(n), tuple(alpha), bool(allow_conjecture))


def compositions(n):
    """All compositions of n, lexicographic by parts."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


def dim_p(ctx):
    return comb(ctx.n + 1, 2) + sum(comb(a, 2) for a in ctx.alpha)


def project(ctx, m, region):
    out = np.array(m, dtype=object, copy=True)
    out[~ctx.mask(region)] = Fraction(0)
    return out


def check_region(ctx, m, region, name="matrix"):
    """Raise NotInP naming the first nonzero cell outside ``region`` (1-based)."""
    m = np.asarray(m)
    if m.shape != (ctx.n, ctx.n):
        raise NotInP(f"{name} must be {ctx.n}x{ctx.n}, got shape {m.shape}")
    outside = ~ctx.mask(region)
    for p, q in np.argwhere(outside):
        if m[p, q] != 0:
            raise NotInP(
                f"{name} has nonzero entry {m[p, q]} at cell ({p + 1},{q + 1}) outside region {region.value}",
                cell=(int(p) + 1, int(q) + 1),
            )


def component_indices(ctx):
    """All a with 0 <= a <= alpha, lexicographically."""
    return [tuple(a) for a in itertools.product(*(range(k + 1) for k in ctx.alpha))]


def component_count(ctx):
    return prod(a + 1 for a in ctx.alpha)


def _check_index(ctx, a):
    a = tuple(int(x) for x in a)
    if len(a) != ctx.ell or any(x < 0 or x > k for x, k in zip(a, ctx.alpha)):
        raise OutOfRange(f"component index {list(a)} is not <= alpha={list(ctx.alpha)}")
    return a


def support_down(ctx, a):
    """First a_k indices of each diagonal block."""
    a = _check_index(ctx, a)
    return frozenset(i for blk, ak in zip(ctx.blocks, a) for i in blk[:ak])


def support_up(ctx, a):
    """Last a_k indices of each diagonal block."""
    a = _check_index(ctx, a)
    return frozenset(i for blk, ak in zip(ctx.blocks, a) for i in blk[len(blk) - ak:])


def diagonal_block(ctx, m, k):
    blk = ctx.blocks[k]
    return np.asarray(m)[blk.start:blk.stop, blk.start:blk.stop]


def invariant_g(ctx, k, iota, r):
    """Trace of the iota-th power of the k-th diagonal block (k is 0-based)."""
    if not 0 <= k < ctx.ell:
        raise OutOfRange(f"block index {k} out of range for {ctx.ell} blocks")
    if not 1 <= iota <= ctx.alpha[k]:
        raise OutOfRange(f"power {iota} must lie in [1, {ctx.alpha[k]}]")
    rk = diagonal_block(ctx, r, k)
    power = rk
    for _ in range(iota - 1):
        power = mul(power, rk)
    return Fraction(sum(power[d, d] for d in range(rk.shape[0])))


def invariants(ctx, r):
    """All g_{k,iota}, keyed by (k, iota)."""
    return {(k, i): invariant_g(ctx, k, i, r) for k in range(ctx.ell) for i in range(1, ctx.alpha[k] + 1)}


def lambda_conjugate(ctx, t, r):
    """Conjugate r by the one-parameter subgroup diag(t^(l-1) I, ..., t I, I).

    Block (k, k') is scaled by t^(k'-k); on p only k' >= k occurs.
    """
    t = Fraction(t)
    if t == 0:
        raise OutOfRange("the one-parameter subgroup is only defined for t != 0")
    out = np.array(r, dtype=object, copy=True)
    bk = ctx.block_of
    for p in range(ctx.n):
        for q in range(ctx.n):
            if out[p, q] != 0:
                out[p, q] = out[p, q] * t ** int(bk[q] - bk[p])
    return out


def lambda_limit(ctx, r):
    """The t -> 0 limit of lambda_conjugate: the block-diagonal part of r."""
    same = ctx.block_of[:, None] == ctx.block_of[None, :]
    out = np.array(r, dtype=object, copy=True)
    out[~same] = Fraction(0)
    return out
