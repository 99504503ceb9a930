"""Hot modular-arithmetic kernels.

Rank computations over Z/pZ back the exact rank queries in ``exact_linalg``:
a rank found modulo a prime never exceeds the rational rank, so a full modular
rank certifies full rational rank.  Two interchangeable implementations exist,
a numba-compiled loop and a vectorised numpy version.  Set the environment
variable ``PARABOLIC_MOMENT_NO_NUMBA=1`` to force the numpy path.
"""

import os

import numpy as np

# Mersenne prime 2**31 - 1: products of two residues fit in int64.
PRIME = 2147483647

_DISABLED = os.environ.get("PARABOLIC_MOMENT_NO_NUMBA", "").strip().lower() in {"1", "true", "yes"}

try:
    if _DISABLED:
        raise ImportError("numba disabled by PARABOLIC_MOMENT_NO_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


def _inv_mod(a, p):
    # Fermat inversion by square-and-multiply; written without pow() so numba
    # can compile it.
    result = 1
    base = a % p
    e = p - 2
    while e > 0:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


def rank_mod_p_numpy(a, p=PRIME):
    """Rank of an int64 residue matrix modulo ``p`` using row-vectorised numpy."""
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(a[rank:, c])[0]
        if nz.size == 0:
            continue
        pivot = rank + nz[0]
        if pivot != rank:
            a[[rank, pivot]] = a[[pivot, rank]]
        inv = pow(int(a[rank, c]), p - 2, p)
        a[rank] = (a[rank] * inv) % p
        below = a[rank + 1:, c].copy()
        if below.any():
            a[rank + 1:] = (a[rank + 1:] - (below[:, None] * a[rank]) % p) % p
        rank += 1
    return rank


if HAVE_NUMBA:
    _inv_mod_jit = njit(cache=True)(_inv_mod)

    @njit(cache=True)
    def _rank_mod_p_jit(a, p):
        a = a.copy()
        rows, cols = a.shape
        rank = 0
        for c in range(cols):
            if rank == rows:
                break
            pivot = -1
            for r in range(rank, rows):
                if a[r, c] != 0:
                    pivot = r
                    break
            if pivot < 0:
                continue
            if pivot != rank:
                for k in range(c, cols):
                    tmp = a[rank, k]
                    a[rank, k] = a[pivot, k]
                    a[pivot, k] = tmp
            inv = _inv_mod_jit(a[rank, c], p)
            for k in range(c, cols):
                a[rank, k] = (a[rank, k] * inv) % p
            for r in range(rank + 1, rows):
                f = a[r, c]
                if f != 0:
                    for k in range(c, cols):
                        a[r, k] = (a[r, k] - f * a[rank, k]) % p
            rank += 1
        return rank

    def rank_mod_p_numba(a, p=PRIME):
        """Rank of an int64 residue matrix modulo ``p`` (numba-compiled)."""
        a = np.ascontiguousarray(np.asarray(a, dtype=np.int64) % p)
        return int(_rank_mod_p_jit(a, np.int64(p)))

    rank_mod_p = rank_mod_p_numba
else:
    rank_mod_p_numba = None
    rank_mod_p = rank_mod_p_numpy


def backend():
    return "numba" if HAVE_NUMBA else "numpy"
