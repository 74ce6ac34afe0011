"""Elementary number-theoretic primitives.

Everything here is exact integer arithmetic: deterministic primality,
factorization (trial division up to 10^6, Miller-Rabin on the cofactor,
Brent rho for the rare composite leftover), square roots modulo prime
powers, and the solver for b^2 = D (mod 4a) that drives quadratic-form
enumeration.  The modular square-root machinery is the hot path of the
large-discriminant enumeration, so it caches per-prime-power root sets.
"""

from __future__ import annotations

import math
from functools import lru_cache
from math import gcd, isqrt

# ----------------------------------------------------------------------
# primality and factorization
# ----------------------------------------------------------------------

_TRIAL_LIMIT = 10**6

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Deterministic Miller-Rabin witness set, valid for n < 3.3 * 10^24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """One nontrivial factor of composite n with no factor <= 10^6."""
    if n % 2 == 0:
        return 2
    import random

    rng = random.Random(0xD1AC)
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n >= 1 as sorted (p, exponent) pairs."""
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    fac: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            fac[p] = fac.get(p, 0) + 1
            n //= p
    p = 7
    # wheel over residues coprime to 30
    steps = (4, 2, 4, 6, 2, 6, 4, 2)
    i = 0
    while p * p <= n and p <= _TRIAL_LIMIT:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            fac[p] = k
        p += steps[i]
        i = (i + 1) % 8
    if n > 1:
        stack = [n]
        while stack:
            m = stack.pop()
            if is_prime(m):
                fac[m] = fac.get(m, 0) + 1
                continue
            d = _brent_rho(m)
            stack.append(d)
            stack.append(m // d)
    return sorted(fac.items())


def squarefree_decompose(n: int) -> tuple[int, int]:
    """n >= 1 as s * m^2 with s squarefree; returns (s, m)."""
    s = m = 1
    for p, e in factorize(n):
        if e % 2:
            s *= p
        m *= p ** (e // 2)
    return s, m


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i, v in enumerate(sieve) if v]


def primorials_below(limit: int) -> list[int]:
    """All primorials (2, 6, 30, ...) that are <= limit."""
    out = []
    prod = 1
    p = 2
    while True:
        prod *= p
        if prod > limit:
            return out
        out.append(prod)
        p = next_prime(p)


def next_prime(p: int) -> int:
    q = p + 1
    while not is_prime(q):
        q += 1
    return q


# ----------------------------------------------------------------------
# square roots modulo prime powers
# ----------------------------------------------------------------------


def tonelli(n: int, p: int) -> int:
    """A square root of n modulo the odd prime p; n must be a QR."""
    n %= p
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)
    q = p - 1
    s = 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        t2 = t
        i = 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def sqrt_mod_odd_prime_power(n: int, p: int, k: int) -> tuple[int, ...]:
    """All x in [0, p^k) with x^2 = n (mod p^k), p an odd prime."""
    pk = p**k
    n %= pk
    if n == 0:
        step = p ** ((k + 1) // 2)
        return tuple(range(0, pk, step))
    v = 0
    m = n
    while m % p == 0:
        m //= p
        v += 1
    if v % 2:
        return ()
    r = v // 2
    j = k - v
    if pow(m % p, (p - 1) // 2, p) != 1:
        return ()
    y = tonelli(m, p)
    pj = p**j
    pe = p
    while pe < pj:
        pe2 = min(pe * pe, pj)
        y = (y - (y * y - m) * pow(2 * y, -1, pe2)) % pe2
        pe = pe2
    mod_small = p ** (j + r)
    pr = p**r
    out = []
    for yy in (y % pj, (pj - y) % pj):
        base = pr * yy % mod_small
        t = base
        while t < pk:
            out.append(t)
            t += mod_small
    return tuple(sorted(set(out)))


def sqrt_mod_pow2(n: int, e: int) -> tuple[int, ...]:
    """All x in [0, 2^e) with x^2 = n (mod 2^e)."""
    M = 1 << e
    n %= M
    if e == 1:
        return (n & 1,)
    if n == 0:
        step = 1 << ((e + 1) // 2)
        return tuple(range(0, M, step))
    v = 0
    m = n
    while m % 2 == 0:
        m //= 2
        v += 1
    if v % 2:
        return ()
    r = v // 2
    j = e - v
    if j == 1:
        ys: tuple[int, ...] = (1,)
    elif j == 2:
        ys = (1, 3) if m % 4 == 1 else ()
    elif m % 8 != 1:
        ys = ()
    else:
        # lift the root mod 8 one bit at a time
        y = 1
        for t in range(3, j):
            if (y * y - m) % (1 << (t + 1)):
                y += 1 << (t - 1)
        mj = 1 << j
        half = 1 << (j - 1)
        ys = tuple(sorted({y % mj, (-y) % mj, (y + half) % mj, (-y + half) % mj}))
    if not ys:
        return ()
    out = set()
    mod_small = 1 << (j + r)
    for yy in ys:
        base = (yy << r) % mod_small
        t = base
        while t < M:
            out.add(t)
            t += mod_small
    return tuple(sorted(out))


def sqrt_mod(n: int, modulus: int) -> tuple[int, ...]:
    """All x in [0, modulus) with x^2 = n (mod modulus). Brute-force-free:
    factors the modulus and CRT-combines prime-power roots."""
    if modulus == 1:
        return (0,)
    sols: tuple[int, ...] = (0,)
    mod = 1
    for p, k in factorize(modulus):
        rs = sqrt_mod_pow2(n, k) if p == 2 else sqrt_mod_odd_prime_power(n, p, k)
        if not rs:
            return ()
        pk = p**k
        inv = pow(mod, -1, pk)
        newmod = mod * pk
        sols = tuple(
            (s + mod * (inv * (r - s) % pk)) % newmod for s in sols for r in rs
        )
        mod = newmod
    return tuple(sorted(sols))


# ----------------------------------------------------------------------
# the enumeration kernel: solutions of b^2 = D (mod 4a), reduced mod 2a
# ----------------------------------------------------------------------


class FormRootSolver:
    """Per-discriminant solver for b^2 = D (mod 4a).

    The solution set mod 4a is invariant under b -> b + 2a, so roots are
    reported as residues mod 2a; each residue corresponds to exactly one
    candidate b in (-a, a].  Prime and prime-power root sets are cached
    across values of a (they depend only on D mod p^k).
    """

    def __init__(self, delta: int, a_limit: int):
        self.delta = delta
        self.a_limit = a_limit
        self._spf = _spf_table(a_limit)
        self._cache: dict[tuple[int, int], tuple[int, ...]] = {}

    def _roots_pp(self, p: int, k: int, pk: int) -> tuple[int, ...]:
        key = (pk, self.delta % pk)
        rs = self._cache.get(key)
        if rs is None:
            if p == 2:
                rs = sqrt_mod_pow2(self.delta, k)
            else:
                rs = sqrt_mod_odd_prime_power(self.delta, p, k)
            self._cache[key] = rs
        return rs

    def residues_mod_2a(self, a: int) -> set[int]:
        """Residues r mod 2a with r^2 = D (mod 4a); empty set if none."""
        # split 4a = 2^e2 * odd prime powers
        e2 = 2
        aa = a
        while aa % 2 == 0:
            aa //= 2
            e2 += 1
        sols = self._roots_pp(2, e2, 1 << e2)
        if not sols:
            return set()
        mod = 1 << e2
        spf = self._spf
        while aa > 1:
            p = int(spf[aa])
            k = 0
            while aa % p == 0:
                aa //= p
                k += 1
            pk = p**k
            rs = self._roots_pp(p, k, pk)
            if not rs:
                return set()
            inv = pow(mod, -1, pk)
            newmod = mod * pk
            sols = tuple(
                (s + mod * (inv * (r - s) % pk)) % newmod for s in sols for r in rs
            )
            mod = newmod
        twoa = 2 * a
        return {s % twoa for s in sols}


_SPF_CACHE: dict[int, "object"] = {}


def _spf_table(limit: int):
    """Smallest-prime-factor table up to limit (numpy int32)."""
    import numpy as np

    for cap, table in _SPF_CACHE.items():
        if cap >= limit:
            return table
    n = max(limit, 1024)
    spf = np.arange(n + 1, dtype=np.int64)
    for p in range(2, isqrt(n) + 1):
        if spf[p] == p:
            sl = spf[p * p :: p]
            sl[sl == np.arange(p * p, n + 1, p)] = p
    _SPF_CACHE.clear()
    _SPF_CACHE[n] = spf
    return spf


def omega_sieve(limit: int):
    """numpy array w with w[n] = number of distinct prime factors of n."""
    import numpy as np

    w = np.zeros(limit + 1, dtype=np.int8)
    for p in range(2, limit + 1):
        if w[p] == 0:
            w[p::p] += 1
    return w
