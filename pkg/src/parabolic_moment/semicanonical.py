"""Jordan P-semicanonical forms.

``semicanonicalize`` brings a matrix r in p into a P-conjugate M in two phases:

1. Levi phase: every diagonal block is put into Jordan canonical form by a
   block-diagonal conjugation (eigenvalues ascending, Jordan block sizes
   descending within an eigenvalue).  The result is upper triangular.
2. Sweep phase: positions (a, a') with a < a' are visited row by row from the
   bottom row up, left to right inside a row.  Where the diagonal entries
   differ, conjugating by the elementary matrix I + x E_{a a'} with
   x = -M[a, a'] / (M[a', a'] - M[a, a]) clears that entry.  Such a step only
   alters row a to the right of a' and column a' above row a, so no cell
   already visited and no cell inside a diagonal block changes.

The grouping of indices by diagonal value is the partition returned with M.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NotInP
from .exact_linalg import char_poly_rational_roots, identity, inverse, kernel_basis, mul, rank
from .parabolic import Region, check_region, diagonal_block


@dataclass(frozen=True, eq=False)
class SemicanonicalResult:
    m: np.ndarray
    b: np.ndarray
    partition: tuple


@dataclass(frozen=True)
class SemicanonicalCheck:
    """Outcome of :func:`is_semicanonical`.  On failure ``condition`` is 1, 2 or 3
    and ``cell`` the first offending 0-based cell."""

    ok: bool
    partition: tuple = ()
    condition: int = 0
    cell: tuple = ()
    reason: str = ""


@dataclass(frozen=True)
class SpecValue:
    per_block: tuple

    def to_json(self):
        from .exact_linalg import fmt_rat

        return [[fmt_rat(x) for x in blk] for blk in self.per_block]


def _jordan_basis(block):
    """Columns Q with Q^-1 A Q in Jordan form; 1s sit on the superdiagonal."""
    m = block.shape[0]
    columns = []
    for lam, mult in char_poly_rational_roots(block):
        nil = block - lam * identity(m)
        kernels = [[]]
        power = identity(m)
        while len(kernels[-1]) < mult:
            power = mul(power, nil)
            kernels.append(kernel_basis(power))
        depth = len(kernels) - 1
        tops = {}  # level -> chain tops of that length
        for level in range(depth, 0, -1):
            span = list(kernels[level - 1])
            for higher, ws in tops.items():
                for w in ws:
                    v = w
                    for _ in range(higher - level):
                        v = mul(nil, v)
                    span.append(v)
            chosen = []
            base_rank = rank(np.array(span).reshape(len(span), m)) if span else 0
            for cand in kernels[level]:
                trial = span + chosen + [cand]
                r = rank(np.array(trial).reshape(len(trial), m))
                if r > base_rank + len(chosen):
                    chosen.append(cand)
            tops[level] = chosen
        for level in range(depth, 0, -1):
            for w in tops[level]:
                chain = [w]
                for _ in range(level - 1):
                    chain.append(mul(nil, chain[-1]))
                columns.extend(reversed(chain))
    q = np.empty((m, m), dtype=object)
    for c, v in enumerate(columns):
        q[:, c] = v
    return q


def _levi_phase(ctx, r):
    q = identity(ctx.n)
    for k, blk in enumerate(ctx.blocks):
        sl = slice(blk.start, blk.stop)
        q[sl, sl] = _jordan_basis(diagonal_block(ctx, r, k))
    b = inverse(q)
    return mul(mul(b, r), q), b


def _sweep_order(n):
    for a in range(n - 2, -1, -1):
        for a2 in range(a + 1, n):
            yield a, a2


def _sweep(ctx, m, b, check=False):
    n = ctx.n
    same_block = ctx.block_of[:, None] == ctx.block_of[None, :]
    done = []
    for a, a2 in _sweep_order(n):
        if m[a, a] != m[a2, a2]:
            before = m.copy() if check else None
            x = -m[a, a2] / (m[a2, a2] - m[a, a])
            if x != 0:
                m[a] = m[a] + x * m[a2]
                m[:, a2] = m[:, a2] - x * m[:, a]
                b[a] = b[a] + x * b[a2]
            if check:
                assert m[a, a2] == 0, f"sweep step {(a, a2)} left a nonzero target"
                for cell in done:
                    assert m[cell] == before[cell], f"sweep step {(a, a2)} changed processed cell {cell}"
                assert np.array_equal(m[same_block], before[same_block]), (
                    f"sweep step {(a, a2)} changed a diagonal-block cell"
                )
        done.append((a, a2))
    return m, b


def eigenvalue_partition(m):
    """Indices grouped by diagonal value, groups ordered by ascending value."""
    groups = {}
    for a in range(m.shape[0]):
        groups.setdefault(m[a, a], []).append(a)
    return tuple(tuple(groups[v]) for v in sorted(groups))


def semicanonicalize(ctx, r, check_sweep=False):
    """Return (M, b, partition) with M = b r b^-1 in Jordan P-semicanonical form."""
    r = np.asarray(r, dtype=object)
    check_region(ctx, r, Region.P, "r")
    m, b = _levi_phase(ctx, r)
    if any(m[p, q] != 0 for p in range(ctx.n) for q in range(p)):
        raise NotInP("Levi phase did not produce an upper triangular matrix")
    m, b = _sweep(ctx, m, b, check=check_sweep)
    return SemicanonicalResult(m, b, eigenvalue_partition(m))


def _is_jordan_block(ctx, m, k):
    blk = ctx.blocks[k]
    for p in blk:
        for q in blk:
            x = m[p, q]
            if p == q:
                continue
            if q == p + 1:
                if x == 0:
                    continue
                if x != 1:
                    return (p, q), f"superdiagonal entry {x} is neither 0 nor 1"
                if m[p, p] != m[q, q]:
                    return (p, q), "superdiagonal 1 joins different eigenvalues"
            elif x != 0:
                return (p, q), f"entry {x} off the diagonal and superdiagonal"
    return None


def is_semicanonical(ctx, m):
    m = np.asarray(m, dtype=object)
    check_region(ctx, m, Region.P, "m")
    partition = eigenvalue_partition(m)
    label = {a: g for g, cell in enumerate(partition) for a in cell}
    for k in range(ctx.ell):
        bad = _is_jordan_block(ctx, m, k)
        if bad:
            return SemicanonicalCheck(False, partition, 2, bad[0], f"diagonal block {k + 1}: {bad[1]}")
    for a in range(ctx.n):
        for a2 in range(ctx.n):
            if label[a] != label[a2] and m[a, a2] != 0:
                return SemicanonicalCheck(False, partition, 1, (a, a2),
                                          "nonzero entry couples indices with different eigenvalues")
    # condition (3) holds by construction of the eigenvalue partition
    return SemicanonicalCheck(True, partition)


def spec(ctx, r):
    """Per-block ascending eigenvalue lists of the diagonal blocks of r."""
    r = np.asarray(r, dtype=object)
    check_region(ctx, r, Region.P, "r")
    out = []
    for k in range(ctx.ell):
        vals = []
        for lam, mult in char_poly_rational_roots(diagonal_block(ctx, r, k)):
            vals.extend([Fraction(lam)] * mult)
        out.append(tuple(vals))
    return SpecValue(tuple(out))


def random_semicanonical(ctx, rng, values=(-2, -1, 0, 1, 2), coupling=3):
    """A random matrix already in semicanonical form (with this module's
    Jordan ordering): Jordan diagonal blocks, and entries between different
    blocks only where the two diagonal values agree."""
    n = ctx.n
    m = np.empty((n, n), dtype=object)
    m.fill(Fraction(0))
    for blk in ctx.blocks:
        eig = sorted(int(v) for v in rng.choice(values, size=len(blk)))
        pos = blk.start
        for lam in sorted(set(eig)):
            left = eig.count(lam)
            sizes = []
            while left:
                size = int(rng.integers(1, left + 1))
                sizes.append(size)
                left -= size
            for size in sorted(sizes, reverse=True):
                for k in range(size):
                    m[pos + k, pos + k] = Fraction(lam)
                    if k:
                        m[pos + k - 1, pos + k] = Fraction(1)
                pos += size
    bk = ctx.block_of
    for p in range(n):
        for q in range(p + 1, n):
            if bk[p] != bk[q] and m[p, p] == m[q, q]:
                m[p, q] = Fraction(int(rng.integers(-coupling, coupling + 1)))
    return m


def roundtrip_report(ctx, trials, seed):
    """Semicanonicalise b M b^-1 for random semicanonical M and random b in P."""
    from .moment import sample_group
    from .report import VerificationReport, regime_of

    rng = np.random.default_rng([int(seed), *ctx.alpha, 3])
    failing = {"accepted": [], "conjugator": [], "spec_preserved": []}
    for t in range(trials):
        base = random_semicanonical(ctx, rng)
        b = sample_group(ctx, rng)
        r = mul(mul(b, base), inverse(b))
        res = semicanonicalize(ctx, r, check_sweep=True)
        if not is_semicanonical(ctx, res.m).ok:
            failing["accepted"].append(t)
        in_p = all(x == 0 for x in np.asarray(res.b)[~ctx.mask(Region.P)])
        if not (in_p and np.array_equal(mul(res.b, r), mul(res.m, res.b))):
            failing["conjugator"].append(t)
        if spec(ctx, res.m) != spec(ctx, r):
            failing["spec_preserved"].append(t)
    rep = VerificationReport("semicanonical", ctx.n, ctx.alpha, int(seed), trials, regime_of(ctx))
    rep.add("accepted", "every P-orbit contains a Jordan P-semicanonical form",
            not failing["accepted"], failing_trials=failing["accepted"])
    rep.add("conjugator", "returned b lies in P and m = b r b^-1",
            not failing["conjugator"], failing_trials=failing["conjugator"])
    rep.add("spec_preserved", "Spec is constant along P-orbits",
            not failing["spec_preserved"], failing_trials=failing["spec_preserved"])
    return rep
