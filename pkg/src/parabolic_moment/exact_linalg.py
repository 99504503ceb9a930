"""Dense exact-rational linear algebra.

Matrices are numpy ``object`` arrays whose entries are :class:`fractions.Fraction`;
column vectors and row vectors are 1-d object arrays.  Nothing here ever
touches a float.
"""

from fractions import Fraction
from math import lcm

import numpy as np

from . import _kernels
from .errors import IrrationalEigenvalue, NotInvertible, NotRankOne

__all__ = [
    "rat",
    "fmt_rat",
    "matrix",
    "vector",
    "zeros",
    "identity",
    "mul",
    "commutator",
    "is_zero",
    "inverse",
    "residues",
    "rank",
    "exact_rank",
    "rref",
    "kernel_basis",
    "char_poly",
    "char_poly_rational_roots",
    "rank_one_factor",
]


def rat(x):
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction("".join(x.split()))
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def fmt_rat(x):
    x = rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def matrix(rows):
    rows = [list(r) for r in rows]
    if not rows:
        return np.empty((0, 0), dtype=object)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged matrix")
    out = np.empty((len(rows), width), dtype=object)
    for p, r in enumerate(rows):
        for q, x in enumerate(r):
            out[p, q] = rat(x)
    return out


def vector(values):
    values = list(values)
    out = np.empty(len(values), dtype=object)
    for k, x in enumerate(values):
        out[k] = rat(x)
    return out


def zeros(rows, cols=None):
    if cols is None:
        cols = rows
    out = np.empty((rows, cols), dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n):
    out = zeros(n)
    for k in range(n):
        out[k, k] = Fraction(1)
    return out


def _to_integers(m):
    """(integer object array, common denominator) with m == ints / den."""
    flat = [rat(x) for x in m.flat]
    den = lcm(*(x.denominator for x in flat)) if flat else 1
    ints = np.empty(m.shape, dtype=object)
    ints.flat[:] = [x.numerator * (den // x.denominator) for x in flat]
    return ints, den


def _from_integers(ints, den):
    out = np.empty(ints.shape, dtype=object)
    out.flat[:] = [Fraction(int(x), den) for x in ints.flat]
    return out


def mul(a, b):
    """Exact product a.b, computed on a common-denominator integer image."""
    a = np.asarray(a)
    b = np.asarray(b)
    ai, ad = _to_integers(a)
    bi, bd = _to_integers(b)
    return _from_integers(ai.dot(bi), ad * bd)


def commutator(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    ai, ad = _to_integers(a)
    bi, bd = _to_integers(b)
    return _from_integers(ai.dot(bi) - bi.dot(ai), ad * bd)


def is_zero(m):
    return all(x == 0 for x in np.asarray(m).flat)


def inverse(m):
    """Gauss-Jordan inverse; raises NotInvertible on a singular matrix."""
    n, cols = m.shape
    if n != cols:
        raise NotInvertible("only square matrices can be inverted")
    a = m.copy()
    inv = identity(n)
    for c in range(n):
        pivot = next((r for r in range(c, n) if a[r, c] != 0), None)
        if pivot is None:
            raise NotInvertible("matrix is singular")
        if pivot != c:
            a[[c, pivot]] = a[[pivot, c]]
            inv[[c, pivot]] = inv[[pivot, c]]
        scale = a[c, c]
        a[c] = a[c] / scale
        inv[c] = inv[c] / scale
        for r in range(n):
            if r != c and a[r, c] != 0:
                f = a[r, c]
                a[r] = a[r] - f * a[c]
                inv[r] = inv[r] - f * inv[c]
    return inv


def residues(m, p=_kernels.PRIME):
    """Reduce a rational matrix modulo ``p``; None if some denominator vanishes mod p."""
    m = np.asarray(m)
    out = np.empty(m.shape, dtype=np.int64)
    flat = out.reshape(-1)
    for k, x in enumerate(m.flat):
        x = rat(x)
        d = x.denominator % p
        if d == 0:
            return None
        num = x.numerator % p
        flat[k] = num if d == 1 else (num * pow(d, -1, p)) % p
    return out


def _integer_rows(m):
    rows = []
    for r in m:
        den = lcm(*(rat(x).denominator for x in r)) if len(r) else 1
        rows.append([int(rat(x) * den) for x in r])
    return rows


def exact_rank(m):
    """Rank over Q by fraction-free (Bareiss) elimination on integer rows."""
    m = np.asarray(m)
    if m.size == 0:
        return 0
    a = _integer_rows(m)
    rows, cols = len(a), len(a[0])
    rank = 0
    prev = 1
    for c in range(cols):
        if rank == rows:
            break
        pivot = next((r for r in range(rank, rows) if a[r][c] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        pr = a[rank]
        pv = pr[c]
        for r in range(rank + 1, rows):
            row = a[r]
            f = row[c]
            if f == 0:
                if pv != prev:
                    # keep the Bareiss invariant: every row below carries the
                    # same scaling, so rows with a zero in this column are
                    # rescaled too (the division is exact).
                    a[r] = [(pv * x) // prev for x in row]
                continue
            a[r] = [(pv * x - f * y) // prev for x, y in zip(row, pr)]
        prev = pv
        rank += 1
    return rank


def rank(m):
    """Exact rank over Q.

    A modular rank equal to min(rows, cols) is already a proof of full rank, so
    the compiled modular kernel answers most queries; anything else is settled
    by exact elimination.
    """
    m = np.asarray(m)
    if m.size == 0:
        return 0
    full = min(m.shape)
    res = residues(m)
    if res is not None and _kernels.rank_mod_p(res) == full:
        return full
    return exact_rank(m)


def rref(m):
    """Reduced row echelon form over Q; returns (R, pivot_columns)."""
    a = np.array(m, dtype=object, copy=True)
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot = next((k for k in range(r, rows) if a[k, c] != 0), None)
        if pivot is None:
            continue
        if pivot != r:
            a[[r, pivot]] = a[[pivot, r]]
        a[r] = a[r] / a[r, c]
        for k in range(rows):
            if k != r and a[k, c] != 0:
                a[k] = a[k] - a[k, c] * a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def kernel_basis(m):
    """Basis of the right null space, one vector per free column of the RREF."""
    m = np.asarray(m)
    rows, cols = m.shape
    if rows == 0:
        return [_unit(cols, k) for k in range(cols)]
    reduced, pivots = rref(m)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = zeros(1, cols)[0]
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r, f]
        basis.append(v)
    return basis


def _unit(n, k):
    v = zeros(1, n)[0]
    v[k] = Fraction(1)
    return v


def char_poly(m):
    """Coefficients of det(tI - m), leading coefficient first (Faddeev-LeVerrier)."""
    n, cols = m.shape
    if n != cols:
        raise ValueError("characteristic polynomial needs a square matrix")
    coeffs = [Fraction(1)]
    acc = zeros(n)
    eye = identity(n)
    c = Fraction(1)
    for k in range(1, n + 1):
        acc = mul(m, acc + c * eye)
        c = -sum(acc[d, d] for d in range(n)) / k
        coeffs.append(Fraction(c))
    return coeffs


def char_poly_rational_roots(m):
    """All eigenvalues of ``m`` with multiplicity, as ascending (root, mult) pairs.

    Raises IrrationalEigenvalue when the characteristic polynomial does not
    split into linear factors over Q.
    """
    import sympy

    coeffs = char_poly(m)
    if len(coeffs) == 1:
        return []
    t = sympy.Symbol("t")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs], t, domain="QQ")
    _, factors = poly.factor_list()
    roots = []
    for factor, mult in factors:
        if factor.degree() != 1:
            raise IrrationalEigenvalue(
                f"characteristic polynomial has the irreducible factor {factor.as_expr()} over Q"
            )
        a1, a0 = factor.all_coeffs()
        root = -sympy.Rational(a0) / sympy.Rational(a1)
        roots.append((Fraction(int(root.p), int(root.q)), int(mult)))
    roots.sort()
    return roots


def rank_one_factor(m):
    """Factor a rank-1 matrix as an outer product ``i j``.

    The scalar freedom is fixed by making the first nonzero entry of ``j``
    equal to 1.
    """
    m = np.asarray(m)
    k = rank(m)
    if k != 1:
        raise NotRankOne(f"matrix has rank {k}, expected 1")
    p0 = next(p for p in range(m.shape[0]) if any(x != 0 for x in m[p]))
    q0 = next(q for q in range(m.shape[1]) if m[p0, q] != 0)
    j = vector(m[p0] / m[p0, q0])
    i = vector(m[:, q0])
    return i, j
