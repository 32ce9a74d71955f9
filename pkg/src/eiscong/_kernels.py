"""Modular-arithmetic inner loops.

Each kernel has a numba ``@njit`` body and a pure-numpy body.  The numba
path is used when numba imports cleanly and ``EISCONG_BACKEND`` is not
set to ``numpy``.  Both paths work on int64 and need ``mod < 2**31`` so
that a product of two residues fits; larger moduli go through numpy
object arrays (exact Python ints) regardless of the backend.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

INT64_SAFE_MOD = 1 << 31

_backend = "numba" if HAVE_NUMBA and os.environ.get("EISCONG_BACKEND", "").lower() != "numpy" else "numpy"


def get_backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not available")
    _backend = name


# ---------------------------------------------------------------- numpy path


def _powmod_np(base, e, mod):
    r = np.ones_like(base) % mod
    b = base % mod
    while e:
        if e & 1:
            r = r * b % mod
        b = b * b % mod
        e >>= 1
    return r


def _sieve_np(n_max, e_unit, e_pdiv, p, mod, exclude, dtype):
    ds = np.arange(n_max + 1, dtype=np.int64).astype(dtype)
    dp = _powmod_np(ds, e_unit, mod)
    pdiv = np.arange(n_max + 1) % p == 0
    if exclude or e_pdiv < 0:
        dp[pdiv] = 0
    else:
        dp[pdiv] = _powmod_np(ds[pdiv], e_pdiv, mod)
    acc = np.zeros(n_max + 1, dtype=dtype)
    for d in range(1, n_max + 1):
        if dp[d]:
            acc[d::d] = (acc[d::d] + dp[d]) % mod
    return acc


def _triangular_np(stir, w, mod):
    # a[m] = sum_{M >= m} stir[M, m] * w[M]; stir is lower triangular
    prod = stir * w[:, None] % mod
    return prod.sum(axis=0) % mod


def _horner_np(coeffs, x, mod):
    acc = 0
    for c in coeffs[::-1]:
        acc = (acc * x + int(c)) % mod
    return acc


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:

    @njit(cache=True)
    def _powmod_nb(b, e, m):
        r = 1 % m
        b = b % m
        while e > 0:
            if e & 1:
                r = r * b % m
            b = b * b % m
            e >>= 1
        return r

    @njit(cache=True)
    def _sieve_nb(n_max, e_unit, e_pdiv, p, mod, exclude):
        acc = np.zeros(n_max + 1, dtype=np.int64)
        for d in range(1, n_max + 1):
            if d % p == 0:
                if exclude or e_pdiv < 0:
                    continue
                dp = _powmod_nb(d, e_pdiv, mod)
            else:
                dp = _powmod_nb(d, e_unit, mod)
            if dp == 0:
                continue
            for n in range(d, n_max + 1, d):
                acc[n] = (acc[n] + dp) % mod
        return acc

    @njit(cache=True)
    def _triangular_nb(stir, w, mod):
        size = w.shape[0]
        out = np.zeros(size, dtype=np.int64)
        for m in range(size):
            s = 0
            for M in range(m, size):
                s = (s + stir[M, m] * w[M] % mod) % mod
            out[m] = s
        return out

    @njit(cache=True)
    def _horner_nb(coeffs, x, mod):
        acc = 0
        x = x % mod
        for i in range(coeffs.shape[0] - 1, -1, -1):
            acc = (acc * x + coeffs[i]) % mod
        return acc


# ---------------------------------------------------------------- dispatch


def _small(mod):
    return mod < INT64_SAFE_MOD


def divisor_power_sieve(n_max: int, e: int, p: int, W: int, exclude: bool) -> list[int]:
    """``[sum_{d | n} d**e mod p**W for n in 0..n_max]`` (entry 0 is 0).

    With ``exclude`` the divisors divisible by ``p`` are omitted.
    """
    mod = p ** W
    lam = (p - 1) * p ** (W - 1)
    # d**e for p not dividing d depends only on e mod lam
    e_unit = e % lam
    # p | d: d**e vanishes mod p**W once e >= W
    e_pdiv = e if e < W else -1
    if n_max < 1:
        return [0] * (n_max + 1)
    if _small(mod) and _backend == "numba":
        acc = _sieve_nb(n_max, e_unit, e_pdiv, p, mod, exclude)
    elif _small(mod):
        acc = _sieve_np(n_max, e_unit, e_pdiv, p, mod, exclude, np.int64)
    else:
        acc = _sieve_np(n_max, e_unit, e_pdiv, p, mod, exclude, object)
    return [int(a) for a in acc]


def triangular_matvec(stir: list[list[int]], w: list[int], mod: int) -> list[int]:
    """``out[m] = sum_{M>=m} stir[M][m] * w[M] mod mod``."""
    if not w:
        return []
    if _small(mod):
        s = np.array([[x % mod for x in row] for row in stir], dtype=np.int64)
        v = np.array([x % mod for x in w], dtype=np.int64)
        fn = _triangular_nb if _backend == "numba" else _triangular_np
        out = fn(s, v, mod)
    else:
        s = np.array([[x % mod for x in row] for row in stir], dtype=object)
        v = np.array([x % mod for x in w], dtype=object)
        out = _triangular_np(s, v, mod)
    return [int(a) for a in out]


def horner_mod(coeffs: list[int], x: int, mod: int) -> int:
    if not coeffs:
        return 0
    if _small(mod) and _backend == "numba":
        return int(_horner_nb(np.array(coeffs, dtype=np.int64) % mod, x % mod, mod))
    return _horner_np(coeffs, x, mod)
