"""Calogero-Moser fiber: points with [r, s] + I + i j = 0 mod u.

Representatives have r = diag(-rho), i = (-1, ..., -1), j = (1, ..., 1) and a
block lower Calogero-Moser matrix s.  For r diagonal, cell (p, q) of
[r, s] + I + i j is (rho_q - rho_p) s_pq - 1 off the diagonal, so the
off-diagonal PSTAR entries are s_pq = 1 / (rho_q - rho_p).
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DegenerateSpectrum, OutOfRange, PostconditionFailed
from .exact_linalg import commutator, identity, is_zero, mul, rank, rank_one_factor, zeros
from .moment import (
    Quad,
    _rng,
    commutant_dimension,
    isotropy_dimension,
    moment_differential_rank,
    sample_distinct,
)
from .parabolic import Region, dim_p, project
from .report import VerificationReport, regime_of


@dataclass(frozen=True)
class CMParams:
    rho: tuple
    sigma: tuple


def _params(ctx, p):
    rho = tuple(Fraction(x) for x in p.rho)
    sigma = tuple(Fraction(x) for x in p.sigma)
    if len(rho) != ctx.n or len(sigma) != ctx.n:
        raise OutOfRange(f"rho and sigma must have length {ctx.n}")
    if len(set(rho)) != ctx.n:
        raise DegenerateSpectrum(f"rho has repeated values: {[str(x) for x in rho]}")
    return rho, sigma


def fiber_residual(ctx, q):
    """[r, s] + I + i j reduced mod u; zero exactly on the fiber."""
    return project(ctx, commutator(q.r, q.s) + identity(ctx.n) + np.outer(q.i, q.j), Region.PSTAR)


def cm_representative(ctx, p):
    rho, sigma = _params(ctx, p)
    n = ctx.n
    r = zeros(n)
    s = zeros(n)
    for k in range(n):
        r[k, k] = -rho[k]
        s[k, k] = sigma[k]
    for a, b in ctx.cells[Region.PSTAR]:
        if a != b:
            s[a, b] = 1 / (rho[b] - rho[a])
    i = np.array([Fraction(-1)] * n, dtype=object)
    j = np.array([Fraction(1)] * n, dtype=object)
    q = Quad(r, s, i, j)
    if not is_zero(fiber_residual(ctx, q)):
        raise PostconditionFailed("Calogero-Moser representative fails [r,s] + I + ij = 0 mod u")
    return q


def interaction_terms(ctx, rho):
    """Per block, the pair terms (p, q, (rho_p - rho_q)^-2) for p < q in that block."""
    out = []
    for blk in ctx.blocks:
        out.append([(p, q, 1 / (rho[p] - rho[q]) ** 2) for p in blk for q in blk if p < q])
    return out


def closed_form_trace_square(ctx, p):
    rho, sigma = _params(ctx, p)
    kinetic = sum(x * x for x in sigma)
    pair = sum(t for blk in interaction_terms(ctx, rho) for _, _, t in blk)
    return Fraction(kinetic - 2 * pair)


def cm_trace_square(ctx, p):
    """tr(s^2) of the representative's s, checked against the closed form."""
    q = cm_representative(ctx, p)
    s = q.s
    value = Fraction(sum(mul(s, s)[k, k] for k in range(ctx.n)))
    expected = closed_form_trace_square(ctx, p)
    if value != expected:
        raise PostconditionFailed(f"tr s^2 = {value} but the closed form gives {expected}")
    return value


def sample_cm_params(ctx, rng, bound=10):
    rng = _rng(rng)
    rho = sample_distinct(rng, ctx.n, max(bound, ctx.n))
    sigma = [Fraction(int(x)) for x in rng.integers(-bound, bound + 1, ctx.n)]
    return CMParams(tuple(rho), tuple(sigma))


def _proportional(u, v):
    """True when u and v are nonzero multiples of each other."""
    m = np.vstack([u, v])
    return any(x != 0 for x in u) and rank(m) == 1


def check_cm_point(ctx, p):
    """The six point checks; returns {name: (passed, witness)}."""
    q = cm_representative(ctx, p)
    d = dim_p(ctx)
    out = {}
    out["fiber_equation"] = (is_zero(fiber_residual(ctx, q)), {})
    # [r,s] + I agrees with -ij on PSTAR; fill U with -ij to get the full matrix.
    full = commutator(q.r, q.s) + identity(ctx.n)
    minus_ij = -np.outer(q.i, q.j)
    full[ctx.mask(Region.U)] = minus_ij[ctx.mask(Region.U)]
    rk = rank(full)
    recovered = False
    if rk == 1:
        i2, j2 = rank_one_factor(full)
        recovered = _proportional(i2, q.i) and _proportional(j2, q.j) and np.array_equal(
            np.outer(i2, j2), minus_ij)
    out["rank_one"] = (rk == 1 and recovered, {"rank": rk, "factor_recovers_ij": recovered})
    k = moment_differential_rank(ctx, q)
    out["dmu_surjective"] = (k == d, {"rank": k, "expected": d})
    iso = isotropy_dimension(ctx, q)
    out["free_action"] = (iso == 0, {"isotropy_dimension": iso})
    com = commutant_dimension(ctx, q.r, q.s)
    out["commutant_scalar"] = (com == 1, {"commutant_dimension": com})
    quotient = (d + 2 * ctx.n) - d
    out["quotient_dimension"] = (k == d and iso == 0 and quotient == 2 * ctx.n,
                                 {"fiber_dimension": d + 2 * ctx.n, "quotient_dimension": quotient})
    return out


_ANCHORS = {
    "fiber_equation": "[r,s] + I_n = -ij mod u",
    "rank_one": "rk([r,s] + I_n) = 1 and i, j recovered up to a common scalar",
    "dmu_surjective": "differential of the moment map surjective on the fiber: rank = d_p",
    "free_action": "P acts freely on the fiber: trivial isotropy",
    "commutant_scalar": "only scalars commute with both r and s",
    "quotient_dimension": "smooth quotient of dimension 2n",
}


def verify_cm_point(ctx, p):
    rep = VerificationReport("cm_point", ctx.n, ctx.alpha, 0, 1, regime_of(ctx))
    for name, (ok, witness) in check_cm_point(ctx, p).items():
        rep.add(name, _ANCHORS[name], ok, **witness)
    return rep


def verify_cm(ctx, trials, seed):
    """verify_cm_point over ``trials`` random parameter choices, aggregated."""
    rng = np.random.default_rng([int(seed), *ctx.alpha, 2])
    failing = {name: [] for name in _ANCHORS}
    observed = {name: set() for name in _ANCHORS}
    for t in range(trials):
        for name, (ok, witness) in check_cm_point(ctx, sample_cm_params(ctx, rng)).items():
            if not ok:
                failing[name].append(t)
            observed[name].add(tuple(sorted(witness.items())))
    rep = VerificationReport("cm", ctx.n, ctx.alpha, int(seed), trials, regime_of(ctx))
    for name in _ANCHORS:
        values = sorted({dict(w).__repr__(): dict(w) for w in observed[name]}.items())
        rep.add(name, _ANCHORS[name], not failing[name],
                observed=[v for _, v in values], failing_trials=failing[name])
    return rep
