"""Property suites and their independent brute-force oracles.

The oracles deliberately avoid the production code paths: forms come
from a literal triple loop, F from a full omega sieve, counts from a
distance scan over the complete form list.  The suites run these
against the implementation at CLI-friendly scale; the acceptance tests
reuse them at the full stated scale.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from mpmath import mp, mpf, mpc, workprec

from . import arith, counting, effective, forms, heights, jfun
from .parallel import pmap_ordered, split_range


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


# ----------------------------------------------------------------------
# oracles
# ----------------------------------------------------------------------


def oracle_reduced_forms(delta: int) -> list[tuple[int, int, int]]:
    """Triple-loop enumeration: a, b, c scanned directly, all invariants
    tested from the definition."""
    out = []
    amax = isqrt(-delta // 3)
    for a in range(1, amax + 1):
        for b in range(-a, a + 1):
            num = b * b - delta
            for c in range(a, num // (4 * a) + 2):
                d = b * b - 4 * a * c
                if d > delta:
                    continue
                if d < delta:
                    break
                if b < 0 and (a == -b or a == c):
                    continue
                if gcd(gcd(a, b), c) != 1:
                    continue
                out.append((a, b, c))
    return sorted(out)


def oracle_class_number_table(limit: int):
    """h(Delta) for all 3 <= |Delta| <= limit by one global triple loop
    (numpy tally; independent of the congruence enumeration)."""
    import numpy as np

    tally = np.zeros(limit + 1, dtype=np.int64)
    amax = isqrt(limit // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            g_ab = gcd(a, b)
            c_lo = a
            c_hi = (b * b + limit) // (4 * a)
            if c_hi < c_lo:
                continue
            c = np.arange(c_lo, c_hi + 1)
            absd = 4 * a * c - b * b
            mask = absd >= 3
            if b < 0:
                mask &= c != a
            if g_ab > 1:
                mask &= np.gcd(g_ab, c) == 1
            np.add.at(tally, absd[mask], 1)
    return tally  # tally[n] = h(-n) for valid -n, 0 otherwise


def oracle_big_F(x: int, omega_table=None) -> int:
    """Brute max of 2^omega(a) over a <= x."""
    if omega_table is None:
        from .ntheory import omega_sieve

        omega_table = omega_sieve(x)
    m = int(omega_table[1 : x + 1].max()) if x >= 1 else 0
    return 1 << m


def oracle_cm_count(delta: int, xi_re, xi_im, eps) -> int:
    """Distance scan over the complete reduced-form list."""
    q = counting.make_query(delta, xi_re, xi_im, eps)
    n = 0
    for (a, b, c) in oracle_reduced_forms(delta):
        if counting._inside_disc_exact(a, b, -delta, q):
            n += 1
    return n


# ----------------------------------------------------------------------
# suites
# ----------------------------------------------------------------------


def _check(name: str, passed: bool, detail: str = "") -> Check:
    return Check(name, bool(passed), detail)


def suite_forms(limit: int = 3000, workers: int = 1) -> list[Check]:
    out = []
    tally = oracle_class_number_table(limit)
    bad = []
    for n in range(3, limit + 1):
        if (-n) % 4 not in (0, 1):
            continue
        if forms.class_number(-n) != int(tally[n]):
            bad.append(-n)
    out.append(
        _check(
            f"class_number matches triple-loop oracle for |Delta| <= {limit}",
            not bad,
            f"mismatches: {bad[:5]}" if bad else f"{limit} swept",
        )
    )
    sample = [-3, -4, -23, -47, -163, -5460, -1000003]
    ok = True
    for d in sample:
        if (d % 4) in (2, 3):
            continue
        fs = forms.enumerate_reduced_forms(d)
        if [f.as_tuple() for f in fs] != sorted(f.as_tuple() for f in fs):
            ok = False
    out.append(_check("enumeration is (a, b)-sorted", ok))
    d = forms.validate_discriminant(-1234 * 4)
    full = forms.enumerate_reduced_forms(d)
    split_pts = [(1, 5), (6, 17), (18, forms.a_bound(d.delta))]
    seq = []
    for lo, hi in split_pts:
        seq.extend(forms.enumerate_reduced_forms(d, (lo, hi)))
    out.append(_check("range-split concatenation equals full enumeration", seq == full))
    viol = None
    for n in range(16, 10**4 + 1):
        if (-n) % 4 not in (0, 1):
            continue
        dd = forms.validate_discriminant(-n)
        for f in forms.enumerate_reduced_forms(dd):
            if f.c > n:  # h(root) = log(max(a, c))/2 <= log sqrt(n) iff c <= n
                viol = (n, f.as_tuple())
                break
        if viol:
            break
    out.append(
        _check(
            "root heights satisfy h <= log sqrt|Delta| (|Delta| <= 1e4)",
            viol is None,
            str(viol) if viol else "",
        )
    )
    bad_cb = []
    with workprec(80):
        for n in range(5, 2 * 10**4, 37):
            if (-n) % 4 not in (0, 1) or n in (3, 4):
                continue
            h = forms.class_number(-n)
            if not mpf(h) <= mp.sqrt(n) * (2 + mp.log(n)) / mp.pi:
                bad_cb.append(-n)
    out.append(
        _check("class-number upper bound pi^-1 sqrt|D| (2+log|D|)", not bad_cb, str(bad_cb[:5]))
    )
    return out


def suite_counting(queries: int = 100, seed: int = 1, workers: int = 1) -> list[Check]:
    rng = random.Random(seed)
    out = []
    bad = 0
    checked = 0
    equal_oracle = 0
    for _ in range(queries):
        n = rng.randrange(3, 10**6)
        if (-n) % 4 not in (0, 1):
            n += 1 if (-n - 1) % 4 in (0, 1) else 2
        if (-n) % 4 not in (0, 1):
            continue
        q = counting.make_query(
            -n,
            Fraction(rng.randrange(-500, 501), 1000),
            Fraction(867, 1000) + Fraction(rng.randrange(0, 3000), 1000),
            Fraction(rng.randrange(1, 249), 1000),
        )
        cnt = counting.cm_count(q)
        lb = counting.lemma_bound(q)
        checked += 1
        if not mpf(cnt) <= lb:
            bad += 1
        if n <= 20000:
            if cnt == oracle_cm_count(-n, q.xi_re, q.xi_im, q.eps):
                equal_oracle += 1
            else:
                bad += 1
    out.append(
        _check(
            f"cm_count <= lemma_bound on {checked} random queries",
            bad == 0,
            f"violations: {bad}",
        )
    )
    q = counting.make_query(-4, 0, 1, Fraction(1, 10))
    out.append(_check("cm_count(-4, i, 0.1) = 1", counting.cm_count(q) == 1))
    q3 = counting.make_query(-3, 0, 1, Fraction(1, 10))
    out.append(_check("cm_count(-3, i, 0.1) = 0", counting.cm_count(q3) == 0))
    mono_ok = True
    prev = -1
    for k in range(1, 12):
        qq = counting.make_query(-9240, Fraction(1, 7), Fraction(9, 8), Fraction(k, 50))
        c = counting.cm_count(qq)
        if c < prev:
            mono_ok = False
        prev = c
    out.append(_check("cm_count nondecreasing in eps", mono_ok))
    lemma_vs_cor = True
    for k in (3, 7, 11):  # all give -(1e14 + k) = 1 mod 4
        qq = counting.make_query(-(10**14 + k), Fraction(1, 3), 2, Fraction(1, 10000))
        lb = counting.lemma_bound(qq)
        cb, cert = counting.corollary_bound(qq.delta, qq.eps)
        if not (cert and lb <= cb):
            lemma_vs_cor = False
    out.append(_check("lemma_bound <= corollary_bound at |Delta| >= 1e14", lemma_vs_cor))
    return out


def suite_modular(seed: int = 2) -> list[Check]:
    rng = random.Random(seed)
    out = []
    with workprec(200):
        known = [
            (mpc(0, 1), mpf(1728)),
            (mpc(0, 2), mpf(287496)),
            ((1 + mp.sqrt(-7)) / 2, mpf(-3375)),
            (mp.sqrt(-2), mpf(8000)),
        ]
        ok = True
        for tau, val in known:
            r = jfun.j_eval(mpc(tau), 128)
            if abs(r.value - val) > mpf(10) ** (-20) * abs(val):
                ok = False
        out.append(_check("known singular values of j at 128 bits", ok))
        target = -2 * 3**4 * mp.gamma(mpf(1) / 4) ** 8 / mp.pi**4
        got = jfun.j_double_prime(mpc(0, 1), 128).value
        rel = abs((got.real - target) / target)
        out.append(
            _check(
                "j''(i) matches the Gamma(1/4) closed form",
                rel < mpf(10) ** (-10) and abs(got.imag) < mpf(10) ** (-20),
                f"rel error {mp.nstr(rel, 5)}",
            )
        )
        out.append(_check("|j''(i)|/4 >= 12413", abs(got) / 4 >= 12413))
    # monotone geodesics
    ok_mono = True
    prev = None
    for k in range(40):
        y = 0.8660254038 + (4 - 0.8660254038) * k / 39
        v = jfun.j_eval(mpc(0.5, y), 64).value.real
        if prev is not None and not v < prev:
            ok_mono = False
        prev = v
    out.append(_check("j(1/2 + iy) real decreasing on [sqrt3/2, 4]", ok_mono))
    prev = None
    ok_mono = True
    for k in range(40):
        th = math.pi / 3 + (math.pi / 6) * k / 39
        v = jfun.j_eval(mpc(math.cos(th), math.sin(th)), 64).value
        if abs(v.imag) > 1e-12:
            ok_mono = False
        if prev is not None and not v.real > prev:
            ok_mono = False
        prev = v.real
    out.append(_check("j(e^{i theta}) real increasing on [pi/3, pi/2]", ok_mono))
    prev = None
    ok_mono = True
    for k in range(40):
        y = 1 + 3 * k / 39
        v = jfun.j_eval(mpc(0, y), 64).value.real
        if prev is not None and not v > prev:
            ok_mono = False
        prev = v
    out.append(_check("j(iy) real increasing on [1, 4]", ok_mono))
    # growth gaps at suite scale
    bad = 0
    for _ in range(400):
        re = rng.uniform(-0.5, 0.5)
        im = rng.uniform(max(0.87, math.sqrt(max(0.0, 1 - re * re))), 6.0)
        if re * re + im * im < 1:
            continue
        if jfun.growth_gap(mpc(re, im), 64) > 2079:
            bad += 1
    out.append(_check("growth gap <= 2079 on the fundamental domain", bad == 0))
    bad = 0
    for _ in range(400):
        t = mpc(rng.uniform(-2, 2), rng.uniform(0.5, 5))
        if jfun.growth_gap(t, 64) > 287473:
            bad += 1
    out.append(_check("growth gap <= 287473 for Im >= 1/2", bad == 0))
    # SL2 invariance and conjugation symmetry
    ok = True
    for _ in range(25):
        t = mpc(rng.uniform(-0.45, 0.45), rng.uniform(1.0, 1.4))
        j1 = jfun.j_eval(t, 96)
        word = [rng.choice("ts") for _ in range(3)]
        u = t
        for w in word:
            cand = u + 1 if w == "t" else -1 / u
            if cand.imag < 0.5:
                continue
            u = cand
        j2 = jfun.j_eval(u, 96)
        if abs(j1.value - j2.value) > (j1.error_bound + j2.error_bound) * 4 + mpf(2) ** -80:
            ok = False
    out.append(_check("SL2 invariance on random short words", ok))
    ok = True
    for _ in range(25):
        t = mpc(rng.uniform(-0.5, 0.5), rng.uniform(0.9, 3))
        a = jfun.j_eval(mpc(-t.real, t.imag), 96).value
        b = jfun.j_eval(t, 96).value
        if abs(a - mp.conj(b)) > mpf(2) ** -80:
            ok = False
    out.append(_check("conjugation symmetry j(-conj tau) = conj j(tau)", ok))
    # inverse round-trip
    ok = True
    for _ in range(12):
        t = mpc(rng.uniform(-0.48, 0.48), rng.uniform(1.02, 3))
        z = jfun.j_eval(t, 96).value
        ti = jfun.j_inverse(z, 96)
        if abs(jfun.j_eval(ti, 96).value - z) > mpf(2) ** (-88) * max(1, abs(z)):
            ok = False
    out.append(_check("j_inverse . j_eval is the identity on F", ok))
    return out


def suite_heights(limit: int = 2000, workers: int = 1) -> list[Check]:
    out = []
    bad = []
    tight = {}
    for n in range(16, limit + 1):
        if (-n) % 4 not in (0, 1):
            continue
        h = heights.singular_modulus_height(-n, 64)
        cls = h.terms
        with workprec(96):
            lb1 = (mp.pi * mp.sqrt(n) - mpf("0.01")) / cls
            lb2 = 3 / mp.sqrt(5) * mp.log(n) - mpf("9.79")
            if not (h.value + h.error_bound >= lb1 and h.value + h.error_bound >= lb2):
                bad.append(-n)
            if n in (16, 163):
                tight[-n] = (float(h.value), float(lb1))
    out.append(
        _check(
            f"h(j_Delta) >= both lower bounds for 16 <= |Delta| <= {limit}",
            not bad,
            f"violations {bad[:4]}; witnesses {tight}",
        )
    )
    with workprec(96):
        gold = heights.unit_height_via_small_conjugates(
            [(1 + mp.sqrt(5)) / 2, (1 - mp.sqrt(5)) / 2]
        )
        expect = mp.log((1 + mp.sqrt(5)) / 2) / 2
        out.append(
            _check(
                "golden-ratio orbit height = (1/2) log phi from both formulas",
                abs(gold.value - expect) < 1e-10
                and abs(gold.from_max_formula - expect) < 1e-10,
            )
        )
    try:
        heights.unit_height_via_small_conjugates([mpf(2), mpf(1) / 2])
        out.append(_check("non-unit orbit {2, 1/2} rejected", False))
    except heights.NotUnitConsistent:
        out.append(_check("non-unit orbit {2, 1/2} rejected", True))
    for d in (-23, -163, -480):
        a = heights.singular_modulus_height(d, 64)
        b = heights.singular_modulus_height(d, 128)
        if abs(a.value - b.value) > a.error_bound + b.error_bound + mpf(2) ** -50:
            out.append(_check("height stable under precision raise", False, str(d)))
            break
    else:
        out.append(_check("height stable under precision raise", True))
    return out


def suite_section4() -> list[Check]:
    out = []
    r = effective.section4_functions(10**50, prec=128)
    out.append(_check("u0(1e50) < -1/10", r.u0 < mpf("-0.1"), mp.nstr(r.u0, 10)))
    out.append(
        _check(
            "u1(1e50) u2(1e50) <= 0.4896",
            r.u1 * r.u2 <= mpf("0.4896"),
            mp.nstr(r.u1 * r.u2, 10),
        )
    )
    r15 = effective.section4_functions(10**15, prec=128)
    out.append(_check("u3(1e15) < 0.0674", r15.u3 < mpf("0.0674"), mp.nstr(r15.u3, 10)))
    with workprec(128):
        le = arith.log_big_E(forms.validate_discriminant(-(10**50)), 128)
        ok = le - mp.log(10**50) / 2 < -mpf("0.1") * mp.log(10**50)
    out.append(_check("E |Delta|^-1/2 < |Delta|^-0.1 at 1e50 (log space)", ok))
    names = ("u0", "u1", "u2", "u3")
    grids = {k: [] for k in names}
    for i in range(20):
        x = 10 ** (10 + i * 50 / 19)
        rep = effective.section4_functions(int(x), prec=96)
        grids["u0"].append(rep.u0)
        grids["u1"].append(rep.u1)
        grids["u2"].append(rep.u2)
        if rep.u3 is not None:
            grids["u3"].append(rep.u3)
    ok = all(
        all(b < a + mpf(2) ** -40 for a, b in zip(vals, vals[1:]))
        for vals in grids.values()
    )
    out.append(_check("u0..u3 decreasing on a 20-point log grid", ok))
    return out


SUITES = {
    "forms": suite_forms,
    "counting": suite_counting,
    "modular": suite_modular,
    "heights": suite_heights,
    "section4": suite_section4,
}


def run_suite(name: str, workers: int = 1) -> list[Check]:
    if name == "all":
        checks = []
        for key in SUITES:
            checks.extend(run_suite(key, workers))
        return checks
    fn = SUITES.get(name)
    if fn is None:
        raise KeyError(f"unknown suite {name!r}; pick from {sorted(SUITES)} or 'all'")
    import inspect

    kwargs = {}
    if "workers" in inspect.signature(fn).parameters:
        kwargs["workers"] = workers
    return fn(**kwargs)
