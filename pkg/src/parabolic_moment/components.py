"""Representatives of the strata M'_a (irreducible components of the zero
fiber) and M''_a (defective strata), plus per-component verification."""

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DegenerateSpectrum, NotDefective, OutOfRange, PostconditionFailed
from .exact_linalg import is_zero, zeros
from .moment import (
    Quad,
    _rng,
    isotropy_dimension,
    moment_differential_rank,
    moment_map,
    sample_distinct,
)
from .parabolic import Region, component_indices, dim_p, support_down, support_up
from .report import VerificationReport, regime_of


@dataclass(frozen=True)
class ComponentParams:
    a: tuple
    rho: tuple
    sigma: tuple


@dataclass(frozen=True)
class DefectiveParams:
    a: tuple
    aprime: tuple
    rho: tuple
    sigma: tuple


def enumerate_components(ctx):
    return component_indices(ctx)


def _check_spectrum(ctx, rho, sigma):
    rho = tuple(Fraction(x) for x in rho)
    sigma = tuple(Fraction(x) for x in sigma)
    if len(rho) != ctx.n or len(sigma) != ctx.n:
        raise OutOfRange(f"rho and sigma must have length {ctx.n}")
    if len(set(rho)) != ctx.n:
        raise DegenerateSpectrum(f"rho has repeated values: {[str(x) for x in rho]}")
    return rho, sigma


def _indicator(n, support):
    return np.array([Fraction(1) if p in support else Fraction(0) for p in range(n)], dtype=object)


def _solve_s(ctx, rho, sigma, i, j):
    # [r, s]_pq = (rho_p - rho_q) s_pq for diagonal r, so each PSTAR cell of
    # [r, s] + i j = 0 pins s_pq = -i_p j_q / (rho_p - rho_q).
    s = zeros(ctx.n)
    for p in range(ctx.n):
        s[p, p] = sigma[p]
    for p, q in ctx.cells[Region.PSTAR]:
        if p != q and i[p] * j[q] != 0:
            s[p, q] = -i[p] * j[q] / (rho[p] - rho[q])
    return s


def _build(ctx, rho, sigma, i_support, j_support):
    i = _indicator(ctx.n, i_support)
    j = _indicator(ctx.n, j_support)
    r = zeros(ctx.n)
    for p in range(ctx.n):
        r[p, p] = rho[p]
    q = Quad(r, _solve_s(ctx, rho, sigma, i, j), i, j)
    mu = moment_map(ctx, q)
    if not is_zero(mu):
        raise PostconditionFailed("constructed representative is not in the zero fiber")
    return q


def component_representative(ctx, params):
    """Point of M'_a: r = diag(rho), supp(i) = a_down, supp(j) = (alpha - a)_up."""
    rho, sigma = _check_spectrum(ctx, params.rho, params.sigma)
    a = tuple(params.a)
    down = support_down(ctx, a)
    up = support_up(ctx, tuple(k - x for k, x in zip(ctx.alpha, a)))
    return _build(ctx, rho, sigma, down, up)


def admissible_defective_pairs(ctx):
    """All (a, a') with a + a' <= alpha and a + a' != alpha."""
    out = []
    for a in component_indices(ctx):
        for a2 in itertools.product(*(range(k - x + 1) for k, x in zip(ctx.alpha, a))):
            if tuple(x + y for x, y in zip(a, a2)) != ctx.alpha:
                out.append((a, tuple(a2)))
    return out


def defective_representative(ctx, params):
    """Point of M''_a: supp(i) = a_down, supp(j) = a'_up with a + a' < alpha."""
    a, a2 = tuple(params.a), tuple(params.aprime)
    total = tuple(x + y for x, y in zip(a, a2))
    if len(total) != ctx.ell or any(t > k for t, k in zip(total, ctx.alpha)):
        raise OutOfRange(f"a + a' = {list(total)} is not <= alpha = {list(ctx.alpha)}")
    if total == ctx.alpha:
        raise NotDefective("a + a' = alpha gives a component representative, not a defective one")
    rho, sigma = _check_spectrum(ctx, params.rho, params.sigma)
    return _build(ctx, rho, sigma, support_down(ctx, a), support_up(ctx, a2))


def support(v):
    return frozenset(p for p, x in enumerate(v) if x != 0)


def sample_params(ctx, rng, a, bound=10):
    rng = _rng(rng)
    rho = sample_distinct(rng, ctx.n, max(bound, ctx.n))
    sigma = [Fraction(int(x)) for x in rng.integers(-bound, bound + 1, ctx.n)]
    return ComponentParams(tuple(a), tuple(rho), tuple(sigma))


def trial_rng(seed, ctx, *tags):
    return np.random.default_rng([int(seed), *ctx.alpha, *(int(t) for t in tags)])


def verify_component(ctx, a, trials, seed):
    """Check zero fiber, free action and dmu surjectivity at random points of M'_a."""
    a = tuple(a)
    d = dim_p(ctx)
    rng = trial_rng(seed, ctx, 1, *a)
    down = support_down(ctx, a)
    up = support_up(ctx, tuple(k - x for k, x in zip(ctx.alpha, a)))
    fails = {"moment_zero": [], "supports": [], "isotropy_zero": [], "dmu_rank": []}
    ranks, isos = set(), set()
    for t in range(trials):
        q = component_representative(ctx, sample_params(ctx, rng, a))
        if not is_zero(moment_map(ctx, q)):
            fails["moment_zero"].append(t)
        if support(q.i) != down or support(q.j) != up:
            fails["supports"].append(t)
        iso = isotropy_dimension(ctx, q)
        isos.add(iso)
        if iso != 0:
            fails["isotropy_zero"].append(t)
        k = moment_differential_rank(ctx, q)
        ranks.add(k)
        if k != d:
            fails["dmu_rank"].append(t)
    rep = VerificationReport("component", ctx.n, ctx.alpha, int(seed), trials, regime_of(ctx))
    rep.extra["component"] = list(a)
    rep.add("moment_zero", "zero fiber: [r,s] + ij = 0 mod u at the M'_a representative",
            not fails["moment_zero"], failing_trials=fails["moment_zero"])
    rep.add("supports", "supp(i) = a_down and supp(j) = (alpha - a)_up",
            not fails["supports"], a_down=sorted(p + 1 for p in down),
            alpha_minus_a_up=sorted(p + 1 for p in up), failing_trials=fails["supports"])
    rep.add("isotropy_zero", "free p-action on M'_a: trivial isotropy Lie algebra",
            not fails["isotropy_zero"], observed=sorted(isos), failing_trials=fails["isotropy_zero"])
    rep.add("dmu_rank", "moment map is a submersion at generic points: rank dmu = d_p",
            not fails["dmu_rank"], expected=d, observed=sorted(ranks), failing_trials=fails["dmu_rank"])
    ok = not fails["dmu_rank"] and not fails["moment_zero"]
    rep.add("dimension_witness", "complete intersection, dim M = d_p + 2n",
            ok, ambient=2 * d + 2 * ctx.n, codimension=d, tangent_dimension=2 * d + 2 * ctx.n - d,
            expected=d + 2 * ctx.n)
    return rep
