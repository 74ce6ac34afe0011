"""Weil heights of singular moduli and the lower bounds for h(j - alpha).

The height of the singular modulus of discriminant Delta is computed
from its full Galois orbit: the conjugates are the j-values at the roots
of the reduced forms, and singular moduli are algebraic integers, so the
finite places contribute nothing and

    h(j_Delta) = (1 / C(Delta)) * sum_forms log max(1, |j(root)|).

Per-conjugate evaluation errors are accumulated into an explicit error
bound; conjugates with |j| within error of 1 contribute a bracketed
[0, log(1 + err)] ambiguity which is also folded into the bound.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf, mpc, workprec

from .errors import HypothesisUnmet, NotUnitConsistent
from .forms import (
    FactoredDiscriminant,
    a_bound,
    class_number,
    enumerate_reduced_forms,
    form_root,
    validate_discriminant,
)
from .jfun import j_eval
from .parallel import pmap_ordered, split_range
from .precision import resolve


@dataclass(frozen=True)
class HeightEstimate:
    value: mpf
    error_bound: mpf
    terms: int


def _orbit_chunk(args) -> tuple[str, str, int]:
    delta, lo, hi, prec = args
    d = validate_discriminant(delta)
    total = mpf(0)
    err = mpf(0)
    n = 0
    with workprec(prec + 20):
        for form in enumerate_reduced_forms(d, (lo, hi)):
            res = j_eval(form_root(form, prec + 10), prec)
            mag = abs(res.value)
            n += 1
            if mag <= 1 - res.error_bound:
                continue
            if mag >= 1 + res.error_bound:
                total += mp.log(mag)
                # d/dx log x = 1/x, x >= 1 here
                err += res.error_bound / (mag - res.error_bound)
            else:
                # |j| straddles 1: contribution in [0, log(1+err)]
                err += mp.log(1 + 2 * res.error_bound)
        return mp.nstr(total, 40), mp.nstr(err, 20), n


def singular_modulus_height(
    d: FactoredDiscriminant | int,
    prec: int | None = None,
    workers: int = 1,
) -> HeightEstimate:
    """h(j_Delta) over the full reduced-form orbit, with error bound."""
    prec = resolve(prec)
    dd = d if isinstance(d, FactoredDiscriminant) else validate_discriminant(d)
    amax = a_bound(dd.delta)
    chunks = split_range(1, amax, workers * 2 if workers > 1 else 1)
    parts = pmap_ordered(
        _orbit_chunk, [(dd.delta, lo, hi, prec) for lo, hi in chunks], workers
    )
    with workprec(prec + 20):
        total = mp.fsum(mpf(p[0]) for p in parts)
        err = mp.fsum(mpf(p[1]) for p in parts)
        n = sum(p[2] for p in parts)
        return HeightEstimate(+(total / n), +(err / n), n)


@dataclass(frozen=True)
class UnitHeightCheck:
    value: mpf
    from_small_conjugates: mpf
    from_max_formula: mpf


def unit_height_via_small_conjugates(
    values, prec: int | None = None, tol: float = 1e-8
) -> UnitHeightCheck:
    """Height of an algebraic unit from its full conjugate multiset.

    Checks that the multiset actually is a unit orbit: the monic
    polynomial with these roots must have (near-)integer coefficients
    and constant term +-1.  Returns -(1/n) sum_{|v|<1} log|v| and the
    max-formula value (1/n) sum log max(1, |v|); the two must agree.
    """
    prec = resolve(prec)
    vals = [mpc(v) for v in values]
    n = len(vals)
    if n == 0:
        raise NotUnitConsistent("empty conjugate multiset")
    with workprec(prec + 20):
        coeffs = [mpc(1)]
        for v in vals:
            nxt = [mpc(0)] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i] += c
                nxt[i + 1] -= c * v
            coeffs = nxt
        for c in coeffs:
            scale = max(1.0, abs(c))
            if abs(c.imag) > tol * scale or abs(c.real - mp.nint(c.real)) > tol * scale:
                raise NotUnitConsistent(
                    f"monic polynomial coefficient {c} is not an integer: "
                    "the multiset is not an algebraic-integer orbit"
                )
        const = int(mp.nint(coeffs[-1].real))
        if abs(const) != 1:
            raise NotUnitConsistent(
                f"constant term {const} is not a unit: norm must be +-1"
            )
        h_max = mp.fsum(mp.log(abs(v)) for v in vals if abs(v) > 1) / n
        h_small = -mp.fsum(mp.log(abs(v)) for v in vals if abs(v) < 1) / n
        if abs(h_max - h_small) > tol * max(1.0, float(h_max)):
            raise NotUnitConsistent(
                f"height formulas disagree: {h_max} vs {h_small}"
            )
        return UnitHeightCheck(+h_small, +h_small, +h_max)


def lower_bound_trivial(
    d: FactoredDiscriminant | int,
    h_alpha,
    prec: int | None = None,
    cls: int | None = None,
) -> mpf:
    """(pi sqrt|Delta| - 0.01) / C(Delta) - h(alpha) - log 2, |Delta| >= 16."""
    prec = resolve(prec)
    dd = d if isinstance(d, FactoredDiscriminant) else validate_discriminant(d)
    if dd.abs_delta < 16:
        raise HypothesisUnmet("lower_bound_trivial requires |Delta| >= 16")
    if cls is None:
        cls = class_number(dd)
    with workprec(prec):
        return +(
            (mp.pi * mp.sqrt(dd.abs_delta) - mpf("0.01")) / cls - mpf(h_alpha) - mp.log(2)
        )


def lower_bound_colmez(
    d: FactoredDiscriminant | int, h_alpha, prec: int | None = None
) -> mpf:
    """(3/sqrt 5) log|Delta| - 9.79 - h(alpha) - log 2."""
    prec = resolve(prec)
    dd = d if isinstance(d, FactoredDiscriminant) else validate_discriminant(d)
    with workprec(prec):
        return +(
            3 / mp.sqrt(5) * mp.log(dd.abs_delta)
            - mpf("9.79")
            - mpf(h_alpha)
            - mp.log(2)
        )


def integer_poly_height(coeffs: list[int], prec: int | None = None) -> mpf:
    """Absolute logarithmic height of a root of an integer polynomial
    (Mahler measure over the degree), coefficients leading-first."""
    prec = resolve(prec)
    with workprec(prec + 20):
        if len(coeffs) < 2:
            raise ValueError("polynomial must have degree >= 1")
        roots = mp.polyroots([mpf(c) for c in coeffs], maxsteps=200, extraprec=60)
        deg = len(coeffs) - 1
        total = mp.log(abs(coeffs[0]))
        for r in roots:
            total += mp.log(max(1, abs(r)))
        return +(total / deg)
