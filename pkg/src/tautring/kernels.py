"""Hot integer kernels: modular screening for the Psi scan and modular rank.

Every kernel exists twice: a numba ``@njit`` version and a pure-numpy
version. The active implementation is chosen at import time; set
``TAUTRING_DISABLE_NUMBA=1`` to force the numpy path (numba missing has the
same effect). Both paths work in int64 arithmetic modulo primes below 2**31,
so products never overflow.

Neither kernel decides anything on its own. A modular zero is only a
candidate that the caller re-checks exactly, and a modular rank is only
trusted when it is already maximal (rank mod p never exceeds rank over Q).
"""
from __future__ import annotations

import os

import numpy as np

PRIMES = (2147483647, 1000000007)

_disabled = os.environ.get("TAUTRING_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")

try:
    if _disabled:
        raise ImportError("numba disabled by TAUTRING_DISABLE_NUMBA")
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def decorator(func):
            return func

        return decorator


BACKEND = "numba" if NUMBA_AVAILABLE else "numpy"


def inverse_factorials(r: int, p: int) -> np.ndarray:
    """1/k! mod p for k = 0..r (p prime, p > r)."""
    out = np.ones(r + 1, dtype=np.int64)
    fact = 1
    for k in range(1, r + 1):
        fact = fact * k % p
        out[k] = pow(fact, p - 2, p)
    return out


# ---------------------------------------------------------------------------
# Psi(g, i, r) mod p
# ---------------------------------------------------------------------------


def _falling_mod_np(z: np.ndarray, k: int, p: int) -> np.ndarray:
    acc = np.ones_like(z)
    for t in range(k):
        acc = acc * ((z - t) % p) % p
    return acc


def _binom_mod_np(z: np.ndarray, k: int, p: int, invfact: np.ndarray) -> np.ndarray:
    if k < 0:
        return np.zeros_like(z)
    return _falling_mod_np(z, k, p) * invfact[k] % p


def _g_coefficients(r: int, i_max: int, p: int, invfact: np.ndarray) -> np.ndarray:
    """Row k holds the coefficient of g^k in Psi(g, i, r) / (i - r + 1) mod p, for i = 0..i_max.

    binom(i-a, r-a) = (i-r+1) (i-a)...(i-r+2) / (r-a)!, so the division is exact
    term by term and the trivial zero at i = r - 1 never appears.
    """
    i_all = np.arange(0, i_max + 1, dtype=np.int64)
    out = np.zeros((r, i_max + 1), dtype=np.int64)
    for a in range(r):
        reduced = _falling_mod_np(i_all - a, r - a - 1, p) * invfact[r - a] % p
        fixed = reduced * _binom_mod_np(i_all - r - 1, r - 1 - a, p, invfact) % p
        # binom(i - g, a) as a polynomial in g: prod_t ((i - t) - g) / a!
        poly = np.zeros((a + 1, i_max + 1), dtype=np.int64)
        poly[0] = 1
        for t in range(a):
            shifted = np.zeros_like(poly)
            shifted[1:] = (p - poly[:-1]) % p
            poly = (poly * ((i_all - t) % p) % p + shifted) % p
        for k in range(a + 1):
            out[k] = (out[k] + poly[k] * invfact[a] % p * fixed) % p
    return out


_SCAN_PRIME = PRIMES[0]


@njit(cache=True)
def _psi_scan_nb(g_lo, g_hi, p, coeffs, out):
    # write (g, i) where the reduced factor is 0 mod p into out; return the total count,
    # which may exceed len(out) (the caller then retries with more room).
    # The default prime is a compile-time constant, so its reduction avoids a hardware divide.
    top = coeffs.shape[0] - 1
    fixed_prime = p == _SCAN_PRIME
    found = 0
    for g in range(g_lo, g_hi + 1):
        for i in range(1, g):
            s = coeffs[top, i]
            if fixed_prime:
                for k in range(top - 1, -1, -1):
                    s = (s * g + coeffs[k, i]) % _SCAN_PRIME
            else:
                for k in range(top - 1, -1, -1):
                    s = (s * g + coeffs[k, i]) % p
            if s == 0:
                if found < out.shape[0]:
                    out[found, 0] = g
                    out[found, 1] = i
                found += 1
    return found


def _psi_scan_np(g_lo, g_hi, p, coeffs, out):
    top = coeffs.shape[0] - 1
    found = 0
    for g in range(g_lo, g_hi + 1):
        s = coeffs[top, 1:g].copy()
        for k in range(top - 1, -1, -1):
            s = (s * g + coeffs[k, 1:g]) % p
        for i in np.flatnonzero(s == 0) + 1:
            if found < out.shape[0]:
                out[found] = g, i
            found += 1
    return found


def psi_zero_candidates(r: int, g_lo: int, g_hi: int, backend: str | None = None, p: int = PRIMES[0]) -> list[tuple[int, int]]:
    """Pairs (g, i), g_lo <= g <= g_hi, 1 <= i < g, where Psi / (i - r + 1) is 0 mod p, ascending.

    A superset of the true zeros; callers confirm each candidate exactly.
    """
    if g_hi < g_lo:
        return []
    backend = backend or BACKEND
    scan = _psi_scan_nb if backend == "numba" else _psi_scan_np
    if backend == "numba" and not NUMBA_AVAILABLE:
        raise RuntimeError("numba backend requested but numba is unavailable")
    if g_hi >= p:
        raise ValueError("genus range must stay below the modulus")
    coeffs = _g_coefficients(r, g_hi, p, inverse_factorials(r, p))
    out = np.zeros((256, 2), dtype=np.int64)
    count = scan(g_lo, g_hi, p, coeffs, out)
    if count > len(out):
        out = np.zeros((count, 2), dtype=np.int64)
        scan(g_lo, g_hi, p, coeffs, out)
    return [(int(g), int(i)) for g, i in out[:count]]



# ---------------------------------------------------------------------------
# rank mod p
# ---------------------------------------------------------------------------


@njit(cache=True)
def _rank_mod_nb(a, p):
    m = a.copy()
    rows, cols = m.shape
    rank = 0
    for c in range(cols):
        piv = -1
        for r in range(rank, rows):
            if m[r, c] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for k in range(cols):
                tmp = m[piv, k]
                m[piv, k] = m[rank, k]
                m[rank, k] = tmp
        # modular inverse by Fermat
        inv = 1
        base = m[rank, c]
        e = p - 2
        while e > 0:
            if e & 1:
                inv = inv * base % p
            base = base * base % p
            e >>= 1
        for r in range(rank + 1, rows):
            f = m[r, c] * inv % p
            if f != 0:
                for k in range(c, cols):
                    m[r, k] = (m[r, k] - f * m[rank, k]) % p
        rank += 1
        if rank == rows:
            break
    return rank


def _rank_mod_np(a: np.ndarray, p: int) -> int:
    m = a.copy()
    rows, cols = m.shape
    rank = 0
    for c in range(cols):
        nz = np.nonzero(m[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        inv = pow(int(m[rank, c]), p - 2, p)
        f = m[rank + 1 :, c] * inv % p
        m[rank + 1 :, c:] = (m[rank + 1 :, c:] - (f[:, None] * m[rank, c:][None, :]) % p) % p
        rank += 1
        if rank == rows:
            break
    return rank


def rank_mod_p(a: np.ndarray, p: int = PRIMES[0], backend: str | None = None) -> int:
    """Rank over GF(p) of an int64 matrix whose entries are already reduced mod p."""
    backend = backend or BACKEND
    if a.size == 0:
        return 0
    if backend == "numba":
        if not NUMBA_AVAILABLE:
            raise RuntimeError("numba backend requested but numba is unavailable")
        return int(_rank_mod_nb(a, p))
    return _rank_mod_np(a, p)
