"""Forms: decomposition, enumeration, class numbers, roots, heights."""

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mp, mpf, workprec

from moduli_gauge import forms
from moduli_gauge.errors import NonDiscriminant
from moduli_gauge.verify import oracle_class_number_table, oracle_reduced_forms

valid_discs = st.integers(min_value=3, max_value=10**5).map(lambda n: -n).filter(
    lambda d: d % 4 in (0, 1)
)


def brute_decompose(delta):
    """Square-divisor scan oracle for the fundamental decomposition."""
    n = -delta
    for d in range(math.isqrt(n), 0, -1):
        if n % (d * d) == 0 and forms.is_fundamental(delta // (d * d)):
            return delta // (d * d), d
    raise AssertionError("no fundamental divisor found")


def test_validate_examples():
    d = forms.validate_discriminant(-4)
    assert (d.fundamental, d.conductor, d.modified_conductor) == (-4, 1, 2)
    d = forms.validate_discriminant(-12)
    assert (d.fundamental, d.conductor, d.modified_conductor) == (-3, 2, 2)
    d = forms.validate_discriminant(-7)
    assert (d.fundamental, d.conductor, d.modified_conductor) == (-7, 1, 1)


def test_validate_rejects():
    for bad in (0, 4, -1, -2, -5, -6, 3):
        with pytest.raises(NonDiscriminant):
            forms.validate_discriminant(bad)


@given(valid_discs)
def test_decomposition_matches_square_divisor_scan(delta):
    d = forms.validate_discriminant(delta)
    fund, f = brute_decompose(delta)
    assert (d.fundamental, d.conductor) == (fund, f)
    assert d.fundamental * d.conductor**2 == delta
    ft = d.modified_conductor
    quotient = delta / (ft * ft)
    # Delta / ftilde^2 is a squarefree integer
    assert quotient == int(quotient)
    from moduli_gauge.ntheory import squarefree_decompose

    s, m = squarefree_decompose(int(-quotient))
    assert m == 1


def test_enumerate_examples():
    assert [f.as_tuple() for f in forms.enumerate_reduced_forms(-4)] == [(1, 0, 1)]
    assert [f.as_tuple() for f in forms.enumerate_reduced_forms(-3)] == [(1, 1, 1)]
    assert [f.as_tuple() for f in forms.enumerate_reduced_forms(-23)] == [
        (1, 1, 6),
        (2, -1, 3),
        (2, 1, 3),
    ]


@given(valid_discs)
def test_enumeration_matches_triple_loop_oracle(delta):
    if -delta > 4000:
        delta = -(-delta % 4000 + 3)
        if delta % 4 not in (0, 1):
            delta -= 1
        if delta % 4 not in (0, 1) or delta >= -3:
            return
    got = [f.as_tuple() for f in forms.enumerate_reduced_forms(delta)]
    assert got == oracle_reduced_forms(delta)


def test_class_number_examples():
    assert forms.class_number(-4) == 1
    assert forms.class_number(-23) == 3
    assert forms.class_number(-47) == 5
    assert forms.class_number(-163) == 1


def test_class_number_table_small():
    limit = 5000
    tally = oracle_class_number_table(limit)
    for n in range(3, limit + 1):
        if (-n) % 4 in (0, 1):
            assert forms.class_number(-n) == int(tally[n]), -n


@given(valid_discs, st.lists(st.integers(min_value=1, max_value=10**4), max_size=4))
def test_range_split_concatenation(delta, cuts):
    amax = forms.a_bound(delta)
    points = sorted({c % (amax + 1) for c in cuts if 1 <= c % (amax + 1) <= amax})
    ranges = []
    lo = 1
    for c in points:
        ranges.append((lo, c))
        lo = c + 1
    ranges.append((lo, amax))
    merged = []
    for r in ranges:
        merged.extend(forms.enumerate_reduced_forms(delta, r))
    assert merged == forms.enumerate_reduced_forms(delta)


def test_form_root_examples():
    with workprec(80):
        r = forms.form_root(forms.QuadraticForm(1, 0, 1), 64)
        assert abs(r.re) < 1e-18 and abs(r.im - 1) < 1e-18
        r = forms.form_root(forms.QuadraticForm(1, 1, 1), 64)
        assert abs(r.re + 0.5) < 1e-18 and abs(r.im - mp.sqrt(3) / 2) < 1e-18
        r = forms.form_root(forms.QuadraticForm(2, 1, 3), 64)
        assert abs(r.re + 0.25) < 1e-18 and abs(r.im - mp.sqrt(23) / 4) < 1e-18
        assert r.in_closed_fundamental_domain()


def test_quadratic_height_examples():
    assert forms.quadratic_height(forms.QuadraticForm(1, 0, 1)) == 0
    assert forms.quadratic_height(forms.QuadraticForm(1, 1, 1)) == 0
    with workprec(80):
        got = forms.quadratic_height(forms.QuadraticForm(2, 1, 3), 64)
        assert abs(got - mp.log(3) / 2) < 1e-18


def test_quadratic_height_matches_mahler_root_oracle():
    # h = (1/deg)(log lc + sum log+ |root|) via numeric root finding
    with workprec(100):
        for (a, b, c) in [(2, 1, 3), (3, 2, 5), (1, 0, 11), (5, -4, 7)]:
            if math.gcd(math.gcd(a, b), c) != 1 or b * b - 4 * a * c >= 0:
                continue
            roots = mp.polyroots([a, b, c])
            mahler = (mp.log(a) + sum(mp.log(max(1, abs(r))) for r in roots)) / 2
            q = forms.QuadraticForm(a, b, c) if abs(b) <= a <= c else None
            if q is None:
                continue
            assert abs(forms.quadratic_height(q, 80) - mahler) < 1e-20


@given(valid_discs)
def test_root_height_below_log_sqrt_delta(delta):
    if -delta > 10**4:
        return
    bound = mp.log(-delta) / 2
    for f in forms.enumerate_reduced_forms(delta):
        assert forms.quadratic_height(f, 64) <= bound + mpf(2) ** -50


def test_parallel_class_number_matches_serial():
    for delta in (-47119, -99991 - 1 + 0, -65536 + 1 - 1):
        if delta % 4 not in (0, 1):
            delta += 1
        if delta % 4 in (0, 1):
            assert forms.class_number(delta, workers=2) == forms.class_number(delta)
