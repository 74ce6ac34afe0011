"""Exact neighborhood counts of form roots and their explicit bounds.

cm_count(Delta, xi, eps) is the number of reduced primitive forms whose
root (-b + i sqrt|Delta|)/(2a) lies in the open eps-disc around xi.  The
a-range is restricted to the interval forced by |Im(root) - Im(xi)| < eps
and, per a, candidate b values come from the solutions of
b^2 = Delta (mod 4a); each candidate is then tested exactly.

Exactness: xi and eps are converted to rationals (floats and mpf values
are dyadic, so the conversion is lossless), and the disc membership test
|root - xi|^2 < eps^2 reduces to comparing a rational against a rational
multiple of sqrt(|Delta|), which is decided in integer arithmetic.  A
float prefilter with a wide safety margin keeps the exact path off the
hot loop.

The two upper bounds (the sigma-weighted one and the xi-free one for
|Delta| >= 10^14) are evaluated in interval arithmetic and reported with
outward rounding, so a reported bound never understates the true one.
Certification flags follow the stated hypotheses: eps < 1/4 and, for the
xi-free bound, |Delta| >= 10^14.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable

from mpmath import iv, mp, mpf, workprec

from .arith import big_F, sigma_k
from .errors import DomainError
from .forms import FactoredDiscriminant, QuadraticForm, a_bound, validate_discriminant
from .ntheory import FormRootSolver
from .parallel import pmap_ordered, split_range
from .precision import iv_upper, resolve

_SQRT3_HALF = Fraction(866025403784438646763723170752, 10**30)  # < sqrt(3)/2
COROLLARY_MIN_ABS_DELTA = 10**14


def exact_fraction(x) -> Fraction:
    """Lossless conversion of int/Fraction/float/str/mpf to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, mpf) or hasattr(x, "_mpf_"):
        sign, man, exp, _ = x._mpf_
        if man == 0 and exp != 0:
            raise ValueError(f"cannot convert special value {x}")
        v = Fraction(man) * Fraction(2) ** exp
        return -v if sign else v
    raise TypeError(f"cannot convert {type(x)} to an exact rational")


@dataclass(frozen=True)
class NeighborhoodQuery:
    """A disc query: discriminant, center xi (Im >= sqrt(3)/2), radius eps.

    eps < 1/4 matches the hypotheses of the certified bounds; values in
    [1/4, 1/2) are accepted but mark the query non-certified.
    """

    delta: FactoredDiscriminant
    xi_re: Fraction
    xi_im: Fraction
    eps: Fraction

    def __post_init__(self):
        if not self.xi_im >= _SQRT3_HALF:
            raise DomainError("queries require Im(xi) >= sqrt(3)/2")
        if not 0 < self.eps < Fraction(1, 2):
            raise DomainError("queries require 0 < eps < 1/2")

    @property
    def certified(self) -> bool:
        return self.eps < Fraction(1, 4)


def make_query(delta, xi_re, xi_im, eps) -> NeighborhoodQuery:
    dd = delta if isinstance(delta, FactoredDiscriminant) else validate_discriminant(delta)
    return NeighborhoodQuery(
        dd, exact_fraction(xi_re), exact_fraction(xi_im), exact_fraction(eps)
    )


@dataclass(frozen=True)
class CountReport:
    exact_count: int
    lemma_bound: float
    corollary_bound: float
    a_interval: tuple[float, float]
    certified: bool
    corollary_certified: bool


# ----------------------------------------------------------------------
# exact disc membership
# ----------------------------------------------------------------------


def _inside_disc_exact(a: int, b: int, abs_delta: int, q: NeighborhoodQuery) -> bool:
    """|(-b + i sqrt|D|)/(2a) - xi|^2 < eps^2 decided in exact arithmetic.

    The squared distance is L0 - S sqrt|D| with rational L0, S; comparing
    against eps^2 reduces to one rational comparison after squaring.
    """
    L = (
        (q.xi_re + Fraction(b, 2 * a)) ** 2
        + Fraction(abs_delta, 4 * a * a)
        + q.xi_im * q.xi_im
        - q.eps * q.eps
    )
    if L < 0:
        return True
    S = q.xi_im / a
    return L * L < S * S * abs_delta


def _inside_disc(
    a: int, b: int, abs_delta: int, q: NeighborhoodQuery, xr: float, xi: float, eps2: float
) -> bool:
    # float prefilter; 1e-9 relative margin vastly exceeds the float error
    re = -b / (2.0 * a)
    im = math.sqrt(abs_delta) / (2.0 * a)
    d2 = (re - xr) ** 2 + (im - xi) ** 2
    margin = 1e-9 * (1.0 + d2 + eps2)
    if d2 - eps2 < -margin:
        return True
    if d2 - eps2 > margin:
        return False
    return _inside_disc_exact(a, b, abs_delta, q)


# ----------------------------------------------------------------------
# counting
# ----------------------------------------------------------------------


def _a_window(q: NeighborhoodQuery) -> tuple[int, int]:
    """Integer a with Im(root) possibly within eps of Im(xi):
    a in (sqrt|D| / (2 Im xi + 2 eps), sqrt|D| / (2 Im xi - 2 eps))."""
    abs_delta = q.delta.abs_delta
    lo_den = 2 * (q.xi_im + q.eps)
    hi_den = 2 * (q.xi_im - q.eps)
    # conservative integer bounds (then each candidate is tested exactly)
    lo = isqrt(int(abs_delta / (lo_den * lo_den)))  # ~ sqrt|D|/lo_den
    hi = isqrt(int(abs_delta / (hi_den * hi_den))) + 2
    return max(1, lo), min(hi, a_bound(q.delta.delta))


def _count_candidates(
    q: NeighborhoodQuery, a_lo: int, a_hi: int, solver: FormRootSolver, collect: bool
) -> tuple[int, list[QuadraticForm]]:
    delta = q.delta.delta
    abs_delta = -delta
    xr = float(q.xi_re)
    xim = float(q.xi_im)
    eps2 = float(q.eps) ** 2
    epsf = float(q.eps)
    count = 0
    found: list[QuadraticForm] = []
    for a in range(a_lo, a_hi + 1):
        residues = solver.residues_mod_2a(a)
        if not residues:
            continue
        twoa = 2 * a
        foura = 4 * a
        # b must satisfy |(-b/2a) - Re xi| < eps
        b_mid = -2.0 * a * xr
        b_rad = twoa * epsf + 1.0
        for r in residues:
            # the single representative of r mod 2a nearest to b_mid
            b = r + twoa * math.floor((b_mid - r) / twoa + 0.5)
            for cand in (b - twoa, b, b + twoa):
                if abs(cand - b_mid) > b_rad or not -a < cand <= a:
                    continue
                c, rem = divmod(cand * cand - delta, foura)
                if rem or c < a:
                    continue
                if cand < 0 and a == c:
                    continue
                if gcd(gcd(a, cand), c) != 1:
                    continue
                if _inside_disc(a, cand, abs_delta, q, xr, xim, eps2):
                    count += 1
                    if collect:
                        found.append(QuadraticForm(a, cand, c))
    return count, found


def _cm_chunk(args) -> int:
    q, a_limit, lo, hi = args
    solver = FormRootSolver(q.delta.delta, a_limit)
    return _count_candidates(q, lo, hi, solver, False)[0]


def cm_count(q: NeighborhoodQuery, workers: int = 1) -> int:
    """Exact number of reduced primitive forms with root inside the disc."""
    a_lo, a_hi = _a_window(q)
    if a_lo > a_hi:
        return 0
    if workers <= 1:
        solver = FormRootSolver(q.delta.delta, a_hi)
        return _count_candidates(q, a_lo, a_hi, solver, False)[0]
    chunks = split_range(a_lo, a_hi, workers * 4)
    return sum(pmap_ordered(_cm_chunk, [(q, a_hi, lo, hi) for lo, hi in chunks], workers))


def cm_forms(q: NeighborhoodQuery) -> list[QuadraticForm]:
    """The matching forms themselves (small-scale introspection)."""
    a_lo, a_hi = _a_window(q)
    if a_lo > a_hi:
        return []
    solver = FormRootSolver(q.delta.delta, a_hi)
    return _count_candidates(q, a_lo, a_hi, solver, True)[1]


# full-scan variant: walk every reduced form of the discriminant


def _full_chunk(args) -> tuple[int, int]:
    q, a_limit, lo, hi = args
    delta = q.delta.delta
    solver = FormRootSolver(delta, a_limit)
    abs_delta = -delta
    xr = float(q.xi_re)
    xim = float(q.xi_im)
    eps2 = float(q.eps) ** 2
    total = 0
    inside = 0
    for a in range(lo, hi + 1):
        residues = solver.residues_mod_2a(a)
        if not residues:
            continue
        twoa = 2 * a
        foura = 4 * a
        for r in residues:
            b = r if r <= a else r - twoa
            c, rem = divmod(b * b - delta, foura)
            if rem or c < a:
                continue
            if b < 0 and a == c:
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            total += 1
            if _inside_disc(a, b, abs_delta, q, xr, xim, eps2):
                inside += 1
    return total, inside


def cm_count_full_scan(q: NeighborhoodQuery, workers: int = 1) -> tuple[int, int]:
    """(class number, exact count) by enumerating every reduced form.

    This is the heavyweight cross-check of cm_count: at |Delta| ~ 10^14
    it walks ~10^7 forms; chunks over a merge deterministically.
    """
    amax = a_bound(q.delta.delta)
    chunks = split_range(1, amax, workers * 8 if workers > 1 else 1)
    parts = pmap_ordered(_full_chunk, [(q, amax, lo, hi) for lo, hi in chunks], workers)
    return sum(p[0] for p in parts), sum(p[1] for p in parts)


# ----------------------------------------------------------------------
# the explicit bounds (outward-rounded)
# ----------------------------------------------------------------------


def _iv_fraction(x: Fraction):
    return iv.mpf(x.numerator) / iv.mpf(x.denominator)


def lemma_bound(q: NeighborhoodQuery, prec: int | None = None) -> mpf:
    """F(D) (32 (sigma1(ft)/ft) sqrt|D|/(4y^2-1) eps^2
            + 8 sigma0(ft) |D/3|^(1/4) eps + 8 sqrt|D|/(4y^2-1) eps + 2),
    rounded outward (upper interval endpoint)."""
    prec = resolve(prec)
    old = iv.prec
    iv.prec = prec
    try:
        d = q.delta
        ft = d.modified_conductor
        F = big_F(d)
        eps = _iv_fraction(q.eps)
        y = _iv_fraction(q.xi_im)
        sqrt_d = iv.sqrt(iv.mpf(d.abs_delta))
        quarter = iv.sqrt(iv.sqrt(iv.mpf(d.abs_delta) / 3))
        denom = 4 * y**2 - 1
        total = F * (
            32 * (iv.mpf(sigma_k(ft, 1)) / ft) * (sqrt_d / denom) * eps**2
            + 8 * sigma_k(ft, 0) * quarter * eps
            + 8 * (sqrt_d / denom) * eps
            + 2
        )
        return iv_upper(total)
    finally:
        iv.prec = old


def corollary_bound(
    delta: FactoredDiscriminant | int, eps, prec: int | None = None
) -> tuple[mpf, bool]:
    """F(D) (32 sqrt|D| eps^2 loglog(sqrt|D|) + 11 sqrt|D| eps + 2) with
    outward rounding; certified only for |Delta| >= 10^14 and eps < 1/4."""
    prec = resolve(prec)
    dd = delta if isinstance(delta, FactoredDiscriminant) else validate_discriminant(delta)
    eps_f = exact_fraction(eps)
    if not 0 < eps_f < Fraction(1, 2):
        raise DomainError("corollary_bound requires 0 < eps < 1/2")
    certified = dd.abs_delta >= COROLLARY_MIN_ABS_DELTA and eps_f < Fraction(1, 4)
    old = iv.prec
    iv.prec = prec
    try:
        F = big_F(dd)
        e = _iv_fraction(eps_f)
        sqrt_d = iv.sqrt(iv.mpf(dd.abs_delta))
        loglog = iv.log(iv.log(sqrt_d))
        total = F * (32 * sqrt_d * e**2 * loglog + 11 * sqrt_d * e + 2)
        return iv_upper(total), certified
    finally:
        iv.prec = old


def count_report(q: NeighborhoodQuery, workers: int = 1, prec: int | None = None) -> CountReport:
    prec = resolve(prec)
    exact = cm_count(q, workers)
    lb = lemma_bound(q, prec)
    cb, cb_cert = corollary_bound(q.delta, q.eps, prec)
    a_lo, a_hi = _a_window(q)
    return CountReport(
        exact_count=exact,
        lemma_bound=float(lb),
        corollary_bound=float(cb),
        a_interval=(float(a_lo), float(a_hi)),
        certified=q.certified,
        corollary_certified=cb_cert,
    )
