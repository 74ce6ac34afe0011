"""Multiplicative helpers behind the counting bounds.

omega, sigma_k, the "square gcd" gcd2, the 2^omega maximum F(Delta), its
companion E(Delta) = F(Delta) * (log|Delta|)^4, and the Robin inequality
check omega(n) <= 1.4 log n / log log n.

F is computed through primorials: the maximum of omega(a) over a <= X is
attained at the largest primorial <= X, so F(Delta) = 2^k where k is the
number of primes in that primorial.  This is what keeps F computable for
|Delta| ~ 10^50, where scanning a <= sqrt(|Delta|) is impossible; the
primorial-equivalence itself is property-tested at reachable scales.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from mpmath import mp, mpf, workprec

from .errors import DomainError
from .forms import FactoredDiscriminant, validate_discriminant
from .ntheory import factorize, primorials_below
from .precision import resolve


def omega(n: int) -> int:
    """Number of distinct prime divisors of n >= 1."""
    if n < 1:
        raise DomainError("omega expects n >= 1")
    return len(factorize(n)) if n > 1 else 0


def sigma_k(n: int, k: int) -> int:
    """Divisor sum sum_{d | n} d^k for k in {0, 1}."""
    if n < 1:
        raise DomainError("sigma_k expects n >= 1")
    if k not in (0, 1):
        raise DomainError("sigma_k implemented for k = 0, 1 only")
    out = 1
    for p, e in factorize(n):
        if k == 0:
            out *= e + 1
        else:
            out *= (p ** (e + 1) - 1) // (p - 1)
    return out


def gcd2(m: int, n: int) -> int:
    """Largest d >= 1 with d^2 | m and d^2 | n.

    Equals the square root of the largest square divisor of gcd(m, n).
    """
    if m == 0 and n == 0:
        raise DomainError("gcd2(0, 0) is undefined")
    g = gcd(abs(m), abs(n))  # d^2 | m and d^2 | n iff d^2 | gcd
    d = 1
    for p, e in factorize(g):
        d *= p ** (e // 2)
    return d


def _as_discriminant(d: FactoredDiscriminant | int) -> FactoredDiscriminant:
    return d if isinstance(d, FactoredDiscriminant) else validate_discriminant(d)


def big_F(d: FactoredDiscriminant | int) -> int:
    """F(Delta) = max{ 2^omega(a) : a <= |Delta|^(1/2) }."""
    dd = _as_discriminant(d)
    return 1 << len(primorials_below(isqrt(dd.abs_delta)))


def big_F_of_limit(x: int) -> int:
    """max{ 2^omega(a) : a <= x } for an integer limit x >= 1."""
    return 1 << len(primorials_below(x))


def big_E(d: FactoredDiscriminant | int, prec: int | None = None) -> mpf:
    """E(Delta) = F(Delta) * (log |Delta|)^4."""
    dd = _as_discriminant(d)
    if dd.abs_delta < 2:
        raise DomainError("big_E expects |Delta| >= 2")
    prec = resolve(prec)
    with workprec(prec):
        return mpf(big_F(dd)) * mp.log(dd.abs_delta) ** 4


def log_big_E(d: FactoredDiscriminant | int, prec: int | None = None) -> mpf:
    """log E(Delta), usable where E itself would overflow floats."""
    dd = _as_discriminant(d)
    prec = resolve(prec)
    with workprec(prec):
        k = len(primorials_below(isqrt(dd.abs_delta)))
        return k * mp.log(2) + 4 * mp.log(mp.log(dd.abs_delta))


def robin_check(n: int, prec: int | None = None) -> bool:
    """omega(n) <= 1.4 log n / log log n (expected true for all n >= 3)."""
    if n < 3:
        raise DomainError("robin_check requires n >= 3")
    prec = resolve(prec)
    with workprec(prec):
        rhs = mpf("1.4") * mp.log(n) / mp.log(mp.log(n))
        return mpf(omega(n)) <= rhs


@dataclass(frozen=True)
class ArithProfile:
    """F, E and the divisor sums of the modified conductor for one Delta."""

    delta: FactoredDiscriminant
    F_value: int
    E_value: mpf
    sigma0_ftilde: int
    sigma1_ftilde: int


def arith_profile(d: FactoredDiscriminant | int, prec: int | None = None) -> ArithProfile:
    dd = _as_discriminant(d)
    ft = dd.modified_conductor
    return ArithProfile(
        delta=dd,
        F_value=big_F(dd),
        E_value=big_E(dd, prec),
        sigma0_ftilde=sigma_k(ft, 0),
        sigma1_ftilde=sigma_k(ft, 1),
    )
