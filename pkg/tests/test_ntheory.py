"""Integer primitives against brute force and sympy."""

import random
from math import gcd, isqrt

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from moduli_gauge import ntheory


def brute_sqrt_mod(n, m):
    return tuple(x for x in range(m) if (x * x - n) % m == 0)


@given(st.integers(min_value=2, max_value=10**6))
def test_factorize_matches_sympy(n):
    assert dict(ntheory.factorize(n)) == sympy.factorint(n)


def test_factorize_large_semiprime():
    p, q = 10**7 + 19, 10**7 + 79
    assert ntheory.factorize(p * q) == [(p, 1), (q, 1)]


@given(st.integers(min_value=0, max_value=10**4))
def test_is_prime_matches_sympy(n):
    assert ntheory.is_prime(n) == sympy.isprime(n)


def test_sqrt_mod_prime_powers_brute():
    rng = random.Random(5)
    for _ in range(300):
        p = rng.choice([3, 5, 7, 11, 13])
        k = rng.randrange(1, 4)
        n = rng.randrange(0, p**k)
        got = ntheory.sqrt_mod_odd_prime_power(n, p, k)
        assert got == brute_sqrt_mod(n, p**k), (n, p, k)


def test_sqrt_mod_pow2_brute():
    rng = random.Random(6)
    for e in range(1, 9):
        for _ in range(60):
            n = rng.randrange(0, 1 << e)
            assert ntheory.sqrt_mod_pow2(n, e) == brute_sqrt_mod(n, 1 << e), (n, e)


def test_sqrt_mod_composite_brute():
    rng = random.Random(7)
    for _ in range(150):
        m = rng.randrange(2, 600)
        n = rng.randrange(0, m)
        assert ntheory.sqrt_mod(n, m) == brute_sqrt_mod(n, m), (n, m)


def test_form_root_solver_residues():
    rng = random.Random(8)
    for _ in range(100):
        n = rng.randrange(3, 5000)
        if (-n) % 4 not in (0, 1):
            continue
        delta = -n
        solver = ntheory.FormRootSolver(delta, 600)
        for a in rng.sample(range(1, 400), 25):
            want = {x % (2 * a) for x in brute_sqrt_mod(delta, 4 * a)}
            assert solver.residues_mod_2a(a) == want, (delta, a)


def test_primorials():
    assert ntheory.primorials_below(1) == []
    assert ntheory.primorials_below(2) == [2]
    assert ntheory.primorials_below(10**7) == [2, 6, 30, 210, 2310, 30030, 510510, 9699690]


def test_squarefree_decompose():
    for n in range(1, 2000):
        s, m = ntheory.squarefree_decompose(n)
        assert s * m * m == n
        assert all(e == 1 for _, e in ntheory.factorize(s)) or s == 1
