"""The effective-constant pipeline: separation data, penalty terms, the
linear-forms constant, the height upper bound, the closing auxiliary
functions, and the final discriminant bound in log representation.

Conventions and ambiguity handling:

* Separation constants at a base point xi in the closed fundamental
  domain (Re >= 0; the mirror symmetry j(-conj tau) = conj j(tau) covers
  Re < 0): A is |j''(i)| at i and |j'(xi)| otherwise, B = 4*10^5 *
  max(1, |j(xi)|), delta = min(A / (12A + 108B), half distance to the
  boundary geodesics not containing xi), and c(xi) follows the
  three-case table (boundary off i / the point i / interior).

* The final constant C is assembled along BOTH routes present in the
  source chain -- 4*deg*c2 + 5*Pen + 4*M and 2*deg*c2 + 6*Pen + 4*M,
  each plus h(alpha) + log 2 + 0.01 -- and the report keeps the
  conservative maximum, labeling both.  The same policy applies to the
  (2 pi) / (4 pi) denominator variants of the three-term maximum.

* Quantities at the 10^50+ scale are carried in log representation;
  e^(15 C) is never materialized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import iv, mp, mpf, mpc, workprec

from .errors import (
    AlphaIsSingularModulus,
    CornerPoint,
    DomainError,
    MissingEmbeddingData,
    PrecisionInconclusive,
    SingularCurve,
    ViolationFound,
)
from .forms import UHPoint, enumerate_reduced_forms, form_root, validate_discriminant
from .heights import integer_poly_height
from .jfun import j_double_prime, j_eval, j_prime, reduce_to_F
from .precision import iv_lower, iv_upper, resolve, to_mpf

C2_INTEGER_BASE = 2**50 * 3**43 * 5**18  # linear-forms constant, D = h = 1

# default for the undetermined constant c1 inside u1 (a Robin-type
# constant; any value <= ~2.51 keeps u1(1e50) u2(1e50) <= 0.4896)
DEFAULT_U1_C1 = 1.1714

PEN_MIN_EXPECTED = math.log(12.0)


# ----------------------------------------------------------------------
# separation constants
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class SeparationData:
    A: mpf
    B: mpf
    delta_sep: mpf
    c_xi: mpf
    case_tag: str  # boundary_nonI | point_i | interior
    j_xi: mpc
    mirrored: bool


def _geodesic_distances(x: mpf, y: mpf) -> tuple[mpf, mpf, mpf]:
    """Distances from (x, y), x in [0, 1/2], to the three geodesics of
    the right half boundary: ray Re=0 (from i up), ray Re=1/2 (from zeta
    up), and the unit-circle arc between them."""
    sqrt3_2 = mp.sqrt(3) / 2
    d0 = x if y >= 1 else mp.hypot(x, y - 1)
    dhalf = abs(x - mpf(1) / 2) if y >= sqrt3_2 else mp.hypot(x - mpf(1) / 2, y - sqrt3_2)
    # for points of the closed domain the radial projection hits the arc
    darc = abs(mp.hypot(x, y) - 1)
    return d0, dhalf, darc


def separation_constants(
    xi, j_xi=None, prec: int | None = None
) -> SeparationData:
    """A, B, delta and c(xi) for a base point xi in the closed domain.

    Raises CornerPoint when xi is (numerically) zeta or zeta^2, where no
    separation constant exists.
    """
    prec = resolve(prec)
    t = xi.mpc if isinstance(xi, UHPoint) else mpc(xi)
    with workprec(prec + 20):
        mirrored = t.real < 0
        if mirrored:
            t = mpc(-t.real, t.imag)  # j(-conj tau) = conj j(tau)
        tol = mpf(2) ** (-(prec // 2))
        zeta = mp.exp(1j * mp.pi / 3)
        if abs(t - zeta) <= tol:
            raise CornerPoint("separation constants undefined at zeta")
        x, y = t.real, t.imag
        on_re0 = x <= tol
        on_rehalf = abs(x - mpf(1) / 2) <= tol
        on_arc = abs(abs(t) - 1) <= tol
        at_i = abs(t - mpc(0, 1)) <= tol
        jv = j_eval(t, prec).value if j_xi is None else mpc(j_xi)
        if mirrored and j_xi is not None:
            jv = mp.conj(jv)
        B = 4 * mpf(10) ** 5 * max(mpf(1), abs(jv))
        if at_i:
            A = abs(j_double_prime(mpc(0, 1), prec).value)
        else:
            A = abs(j_prime(t, prec).value)
        d0, dhalf, darc = _geodesic_distances(x, y)
        halves = []
        if not on_re0:
            halves.append(d0 / 2)
        if not on_rehalf:
            halves.append(dhalf / 2)
        if not on_arc:
            halves.append(darc / 2)
        delta_sep = min([A / (12 * A + 108 * B)] + halves)
        if at_i:
            tag = "point_i"
            c = A * delta_sep**2 / 4
        elif on_re0 or on_rehalf or on_arc:
            tag = "boundary_nonI"
            c = A * delta_sep / 2
        else:
            tag = "interior"
            res = j_eval(t, prec)
            im_abs = abs(res.value.imag)
            if im_abs <= res.error_bound:
                raise PrecisionInconclusive(
                    "Im j(xi) below certified error for an interior point"
                )
            c = min(im_abs, A * delta_sep / 2)
        return SeparationData(+A, +B, +delta_sep, +c, tag, +jv, mirrored)


def t_orbit(xi, prec: int | None = None) -> list[UHPoint]:
    """Images of xi under {1, translation by +-1, inversion} that stay in
    the closed fundamental domain, deduplicated."""
    prec = resolve(prec)
    t = xi.mpc if isinstance(xi, UHPoint) else mpc(xi)
    with workprec(prec + 20):
        tol = mpf(2) ** (-(prec // 2))
        cands = [t, t + 1, t - 1, -1 / t]
        out: list[mpc] = []
        for c in cands:
            if not c.imag > 0:
                continue
            if abs(c.real) > mpf(1) / 2 + tol or abs(c) < 1 - tol:
                continue
            if any(abs(c - o) <= tol for o in out):
                continue
            out.append(c)
        return [UHPoint(+c.real, +c.imag, prec) for c in out]


# ----------------------------------------------------------------------
# the linear-forms constant
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class C2Constant:
    integer_part: int  # 2^50 * 3^43 * 5^18 * degree^6
    h_squared: mpf
    value: mpf
    log_value: mpf


def c2_constant(degree: int, h_model, prec: int | None = None) -> C2Constant:
    """c2 = 2^50 * 3^43 * 5^18 * degree^6 * h^2 (exact integer times h^2)."""
    if degree < 1:
        raise DomainError("degree must be >= 1")
    prec = resolve(prec)
    with workprec(prec):
        h = mpf(h_model)
        if h < 1:
            raise DomainError("the model height h is >= 1 by definition")
        integer_part = C2_INTEGER_BASE * degree**6
        value = integer_part * h**2
        return C2Constant(integer_part, +(h**2), +value, +mp.log(value))


# ----------------------------------------------------------------------
# alpha profiles
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    alpha_sigma: mpc
    xi_sigma: UHPoint
    omega1: mpc
    omega2: mpc
    separation: SeparationData


@dataclass(frozen=True)
class AlphaProfile:
    """The non-CM target alpha with per-embedding analytic data.

    degree is [Q(alpha):Q]; model_degree is the degree of the field the
    supplied curve model lives in (>= degree when the model needs an
    extension); the linear-forms constant uses the larger of the two.
    """

    min_poly: tuple[int, ...]  # leading coefficient first
    degree: int
    h_alpha: mpf
    h_model: mpf
    model_degree: int
    embeddings: tuple[Embedding, ...]
    model_height_assumed: bool = False


_SINGULAR_SCAN: dict[int, list[complex]] = {}


def _singular_values(bound: int) -> list[complex]:
    vals = _SINGULAR_SCAN.get(bound)
    if vals is None:
        vals = []
        for n in range(3, bound + 1):
            if (-n) % 4 not in (0, 1):
                continue
            d = validate_discriminant(-n)
            for form in enumerate_reduced_forms(d):
                vals.append(complex(j_eval(form_root(form, 64), 53).value))
        _SINGULAR_SCAN[bound] = vals
    return vals


def _reject_singular(alpha: mpc, scan_bound: int) -> None:
    for jv in _singular_values(scan_bound):
        if abs(complex(alpha) - jv) < 1e-6 * max(1.0, abs(jv)):
            raise AlphaIsSingularModulus(
                f"alpha = {alpha} matches a singular modulus with |Delta| <= {scan_bound}"
            )


def _canonical_rational_model(p: int, q: int) -> tuple[Fraction, Fraction, mpf]:
    """For rational alpha = p/q != 0, 1728: the model g2 = g3 =
    27 alpha / (alpha - 1728) over Q, and the exact h(1, g2, g3)."""
    num, den = 27 * p, p - 1728 * q
    c = Fraction(num, den)
    # projective height of (den : num : num) over Q
    gg = math.gcd(abs(num), abs(den))
    h = mp.log(max(abs(num), abs(den)) // gg)
    return c, c, +h


def build_alpha_profile(
    min_poly,
    curve=None,
    periods=None,
    h_curve=None,
    model_degree: int | None = None,
    prec: int | None = None,
    singular_scan_bound: int = 200,
) -> AlphaProfile:
    """Assemble an AlphaProfile from an integer minimal polynomial.

    curve: (g2, g3) pairs per embedding (numeric); periods: (omega1,
    omega2) pairs per embedding.  With neither, a rational alpha gets
    the canonical model g2 = g3 = 27 alpha/(alpha - 1728) over Q and AGM
    periods from it; non-rational alpha falls back to the normalized
    lattice Z + Z xi with h_curve required (or flagged as assumed).
    """
    prec = resolve(prec)
    coeffs = [int(c) for c in min_poly]
    while coeffs and coeffs[0] == 0:
        coeffs = coeffs[1:]
    if len(coeffs) < 2:
        raise DomainError("alpha needs a minimal polynomial of degree >= 1")
    degree = len(coeffs) - 1
    with workprec(prec + 30):
        if degree == 1:
            roots = [mpc(to_mpf(Fraction(-coeffs[1], coeffs[0])))]
        else:
            roots = mp.polyroots([mpf(c) for c in coeffs], maxsteps=300, extraprec=80)
        h_alpha = integer_poly_height(coeffs, prec)
        model_height_assumed = False
        curve_models = None
        if curve is not None:
            curve_models = [(mpc(to_mpf(g2)), mpc(to_mpf(g3))) for (g2, g3) in curve]
            if len(curve_models) != degree:
                raise MissingEmbeddingData("one (g2, g3) pair per embedding required")
            if h_curve is None:
                raise MissingEmbeddingData(
                    "h(1, g2, g3) must accompany an explicit curve model"
                )
        elif periods is None and degree == 1:
            p, q = -coeffs[1], coeffs[0]
            if Fraction(p, q) not in (0, 1728):
                g2, g3, h_curve = _canonical_rational_model(p, q)
                curve_models = [(mpc(to_mpf(g2)), mpc(to_mpf(g3)))]
        if periods is not None and len(periods) != degree:
            raise MissingEmbeddingData("one period pair per embedding required")
        embeddings = []
        for idx, alpha_s in enumerate(roots):
            alpha_s = mpc(alpha_s)
            _reject_singular(alpha_s, singular_scan_bound)
            if periods is not None:
                w1, w2 = mpc(periods[idx][0]), mpc(periods[idx][1])
                ratio = w2 / w1
                red, (a, b, c, d) = reduce_to_F(ratio, prec)
                w2, w1 = a * w2 + b * w1, c * w2 + d * w1
                xi = red
            elif curve_models is not None:
                w1, w2 = compute_periods(curve_models[idx][0], curve_models[idx][1], prec)
                xi = reduce_to_F(w2 / w1, prec)[0]
            else:
                xi = None
                w1 = w2 = None
            if xi is None:
                from .jfun import j_inverse

                xi = j_inverse(alpha_s, prec)
                w1, w2 = mpc(1), xi.mpc
                model_height_assumed = h_curve is None
            jv = j_eval(xi.mpc, prec)
            if abs(jv.value - alpha_s) > mpf(2) ** (-(prec // 2)) * max(
                mpf(1), abs(alpha_s)
            ):
                raise MissingEmbeddingData(
                    f"period/curve data inconsistent with alpha embedding {alpha_s}: "
                    f"j(xi) = {jv.value}"
                )
            sep = separation_constants(xi, jv.value, prec)
            embeddings.append(Embedding(+alpha_s, xi, +w1, +w2, sep))
        hc = mpf(h_curve) if h_curve is not None else mpf(0)
        h_model = max(mpf(1), hc, h_alpha)
        return AlphaProfile(
            min_poly=tuple(coeffs),
            degree=degree,
            h_alpha=+h_alpha,
            h_model=+h_model,
            model_degree=model_degree if model_degree is not None else degree,
            embeddings=tuple(embeddings),
            model_height_assumed=model_height_assumed,
        )


def pen_and_M(profile: AlphaProfile, prec: int | None = None) -> tuple[mpf, mpf, bool]:
    """(Pen, M, pen_at_least_log12) over the profile's embeddings.

    Pen = log max_sigma max{1, 1/c(xi_sigma)};
    M = log max_sigma max{1, |omega1|, |omega2|}.

    The source chain asserts Pen >= log 12; that can fail for targets
    whose preimages sit high in the domain (c(xi) > 1/12), so the
    condition is reported as a flag rather than enforced.
    """
    prec = resolve(prec)
    if not profile.embeddings:
        raise MissingEmbeddingData("profile has no embeddings")
    with workprec(prec + 10):
        pen_arg = mpf(1)
        m_arg = mpf(1)
        for emb in profile.embeddings:
            pen_arg = max(pen_arg, 1 / emb.separation.c_xi)
            m_arg = max(m_arg, abs(emb.omega1), abs(emb.omega2))
        pen = mp.log(pen_arg)
        m = mp.log(m_arg)
        return +pen, +m, bool(pen >= mpf(PEN_MIN_EXPECTED))


# ----------------------------------------------------------------------
# the height upper bound assembled from neighborhood counts
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class HeightUpperBound:
    value: mpf
    count_sum: int
    certified: bool
    hypothesis_notes: tuple[str, ...]


def height_upper_bound(
    delta,
    profile: AlphaProfile,
    eps,
    counts,
    cls: int | None = None,
    prec: int | None = None,
) -> HeightUpperBound:
    """c2 * (sum of counts) / (16 C(Delta)) * (log|Delta|)^4
       + 5 Pen + 4 M + |log eps|.

    counts: per-(embedding, orbit-center) neighborhood counts (exact
    counts or any certified upper bounds; the caller chooses).  cls is
    the class number C(Delta) (computed here when omitted and feasible).
    """
    prec = resolve(prec)
    dd = delta if isinstance(delta, FactoredDiscriminant) else validate_discriminant(delta)
    notes: list[str] = []
    if cls is None:
        from .forms import class_number

        cls = class_number(dd)
    pen, m, pen_ok = pen_and_M(profile, prec)
    if not pen_ok:
        notes.append("Pen below log 12: source-chain remark does not apply")
    with workprec(prec + 10):
        eps_m = mpf(str(eps)) if isinstance(eps, (float, str)) else mpf(eps)
        if not 0 < eps_m < mpf(1) / 4:
            notes.append("eps outside (0, 1/4): bound not certified")
        c2 = c2_constant(max(profile.degree, profile.model_degree), profile.h_model, prec)
        thresh = max(2 * profile.degree, mp.exp(12 * mp.pi * profile.h_model))
        if mpf(dd.abs_delta) < thresh:
            notes.append("|Delta| < max(2 deg, e^(12 pi h)): bound not certified")
        total = mp.fsum(mpf(c) for c in counts)
        value = (
            c2.value * total / (16 * cls) * mp.log(dd.abs_delta) ** 4
            + 5 * pen
            + 4 * m
            + abs(mp.log(eps_m))
        )
        return HeightUpperBound(+value, int(total), not notes, tuple(notes))


# ----------------------------------------------------------------------
# closing auxiliary functions (outward-rounded)
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Section4Report:
    x: float
    u0: mpf
    u1: mpf
    u2: mpf
    u3: mpf | None
    L: mpf
    c1: float
    rhs_smaller1: mpf | None


def _iv_log(x):
    return iv.log(x)


def section4_functions(
    x, c1: float = DEFAULT_U1_C1, prec: int | None = None
) -> Section4Report:
    """u0..u3 at x with upward directed rounding (they enter as upper
    bounds).  u0, u1, u2 need x >= 10^10; u3 needs x >= 10^15 (reported
    as None below that).  L is the computable lower branch
    (3/sqrt5) log x - 10 of the height comparison."""
    prec = resolve(prec)
    old = iv.prec
    iv.prec = prec
    try:
        xi = iv.mpf(int(x)) if isinstance(x, int) else iv.mpf(mpf(x))
        if not xi.a >= 10**10:
            raise DomainError("section4 functions need x >= 10^10")
        lg = iv.log(xi)
        llg = iv.log(lg)
        u0 = 1 / llg + 4 * llg / lg - iv.mpf(1) / 2
        u1 = iv.log(2) / (llg - iv.mpf(mpf(c1)) - iv.log(2)) + 4 * llg / lg
        u2 = 1 / (3 / iv.sqrt(5) - 10 / lg)
        u3 = None
        if xi.a >= 10**15:
            lineal = 3 / iv.sqrt(5) * lg - 10
            u3 = iv_upper(iv.log(lineal / iv.pi) / lineal)
        L = 3 / iv.sqrt(5) * lg - 10
        return Section4Report(
            x=float(iv_lower(xi)),
            u0=iv_upper(u0),
            u1=iv_upper(u1),
            u2=iv_upper(u2),
            u3=u3,
            L=iv_lower(L),
            c1=c1,
            rhs_smaller1=None,
        )
    finally:
        iv.prec = old


def log_E_upper(log_delta: mpf, prec: int | None = None) -> mpf:
    """Upper bound for log E(Delta) from log|Delta| alone, via the Robin
    route: log F <= 1.4 log 2 * log|Delta| / loglog|Delta|, then
    log E = log F + 4 loglog|Delta|."""
    prec = resolve(prec)
    with workprec(prec):
        ld = mpf(log_delta)
        lld = mp.log(ld)
        return +(mpf("1.4") * mp.log(2) * ld / lld + 4 * lld)


def smaller1_rhs(
    log_delta, C, deg_c2, prec: int | None = None
) -> tuple[mpf, tuple[mpf, mpf, mpf, mpf]]:
    """The four-term right-hand side of the closing comparison at
    |Delta| = e^(log_delta), each term an upper bound:

      deg*c2*E/(2 pi sqrt|Delta|) + logE/((3/sqrt5)log|Delta| - 10)
        + u3(|Delta|) + C/((3/sqrt5)log|Delta| - 10).

    log E uses the Robin-route upper bound (the exact F is out of reach
    at this scale).  A total < 1 certifies the contradiction."""
    prec = resolve(prec)
    with workprec(prec + 10):
        ld = mpf(log_delta)
        logE = log_E_upper(ld, prec)
        lin = 3 / mp.sqrt(5) * ld - 10
        log_term1 = mp.log(deg_c2) + logE - mp.log(2 * mp.pi) - ld / 2
        term1 = mp.exp(log_term1) if log_term1 < 64 else mp.inf
        term2 = logE / lin
        term3 = mp.log(lin / mp.pi) / lin
        term4 = mpf(C) / lin
        total = term1 + term2 + term3 + term4
        return +total, (+term1, +term2, +term3, +term4)


# ----------------------------------------------------------------------
# the final discriminant bound
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    c2: C2Constant
    pen: mpf
    m_periods: mpf
    pen_at_least_log12: bool
    C_route_const_then_Cprime: mpf  # 4 deg c2 + 5 Pen + 4 M + h + log2 + 0.01
    C_route_final_display: mpf      # 2 deg c2 + 6 Pen + 4 M + h + log2 + 0.01
    C_final: mpf
    log_bound_e15C: mpf
    max_terms_log: dict
    log_bound_three_term_max: mpf
    rhs_smaller1_at_bound: mpf
    contradiction_certified: bool
    dominates_1e50: bool
    model_height_assumed: bool


def final_delta_bound(profile: AlphaProfile, prec: int | None = None) -> BoundReport:
    """Assemble every constant of the closing argument and emit the
    discriminant bound e^(15 C) in log representation, together with the
    three-term maximum it dominates.  Both assemblies of C and both
    denominator variants are computed; the maxima are kept."""
    prec = resolve(prec)
    with workprec(prec + 10):
        pen, m, pen_ok = pen_and_M(profile, prec)
        deg = profile.degree
        c2 = c2_constant(max(deg, profile.model_degree), profile.h_model, prec)
        base = profile.h_alpha + mp.log(2) + mpf("0.01")
        c_route1 = 4 * deg * c2.value + 5 * pen + 4 * m + base
        c_route2 = 2 * deg * c2.value + 6 * pen + 4 * m + base
        c_final = max(c_route1, c_route2)
        log_bound = 15 * c_final
        t_1e50 = 50 * mp.log(10)
        t_exp = 10 * mp.sqrt(5) / 3 * (c_final + 1)
        t_pow_2pi = 10 * mp.log(10 * deg * c2.value / (2 * mp.pi))
        t_pow_4pi = 10 * mp.log(10 * deg * c2.value / (4 * mp.pi))
        three_term = max(t_1e50, t_exp, t_pow_2pi, t_pow_4pi)
        rhs, _terms = smaller1_rhs(log_bound, c_final, deg * c2.value, prec)
        return BoundReport(
            c2=c2,
            pen=pen,
            m_periods=m,
            pen_at_least_log12=pen_ok,
            C_route_const_then_Cprime=+c_route1,
            C_route_final_display=+c_route2,
            C_final=+c_final,
            log_bound_e15C=+log_bound,
            max_terms_log={
                "ten_to_50": +t_1e50,
                "exp_of_C_plus_1": +t_exp,
                "power_term_2pi": +t_pow_2pi,
                "power_term_4pi": +t_pow_4pi,
            },
            log_bound_three_term_max=+three_term,
            rhs_smaller1_at_bound=+rhs,
            contradiction_certified=bool(rhs < 1),
            dominates_1e50=bool(log_bound >= t_1e50),
            model_height_assumed=profile.model_height_assumed,
        )


# ----------------------------------------------------------------------
# period lattices via Carlson symmetric integrals
# ----------------------------------------------------------------------


def compute_periods(g2, g3, prec: int | None = None) -> tuple[mpc, mpc]:
    """A basis (omega1, omega2) of the period lattice of
    y^2 = 4x^3 - g2 x - g3, normalized so omega2/omega1 lies in the
    closed fundamental domain.  Certified by re-evaluating j at the
    ratio against 1728 g2^3 / (g2^3 - 27 g3^2)."""
    prec = resolve(prec)
    with workprec(prec + 30):
        g2 = mpc(g2)
        g3 = mpc(g3)
        disc = g2**3 - 27 * g3**2
        if abs(disc) == 0:
            raise SingularCurve("g2^3 - 27 g3^2 = 0")
        j_target = 1728 * g2**3 / disc
        e1, e2, e3 = mp.polyroots([mpf(4), mpf(0), -g2, -g3], maxsteps=200, extraprec=60)
        half = [
            2 * mp.elliprf(0, e1 - e2, e1 - e3),
            2 * mp.elliprf(0, e2 - e1, e2 - e3),
            2 * mp.elliprf(0, e3 - e1, e3 - e2),
        ]
        tol = mpf(2) ** (-(prec // 2)) * max(mpf(1), abs(j_target))
        best = None
        for i in range(3):
            for k in range(3):
                if i == k:
                    continue
                w1, w2 = half[i], half[k]
                if abs(w1) == 0:
                    continue
                ratio = w2 / w1
                if not ratio.imag > 1e-12:
                    continue
                red, (a, b, c, d) = reduce_to_F(ratio, prec)
                nw2, nw1 = a * w2 + b * w1, c * w2 + d * w1
                jv = j_eval(red.mpc, prec)
                err = abs(jv.value - j_target)
                if best is None or err < best[0]:
                    best = (err, +nw1, +nw2)
                if err + jv.error_bound < tol:
                    return +nw1, +nw2
        raise SingularCurve(
            f"no period pair reproduced the j-invariant {j_target}; best error {best[0]}"
        )


# ----------------------------------------------------------------------
# numeric validation of the local separation inequalities
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class LinLogReport:
    samples: int
    quadratic_min_margin: mpf
    linear_min_margin: mpf | None
    violations: int


def verify_lin_log(xi, samples: int = 1000, seed: int = 7, prec: int | None = None) -> LinLogReport:
    """Sample tau in the stated discs around xi and check

      |j(tau) - j(xi)| >= (A/4) |tau - xi|^2   for |tau - xi| <= A/(12A + 108B)
      |j(tau) - j(xi)| >= (A/2) |tau - xi|     for |tau - xi| <= A/(6A + 18B)
                                               (second one only for xi != i)

    Margins are (LHS - RHS) minima; a certified violation raises the
    count (evaluation errors are charged against the inequality)."""
    import random

    prec = resolve(prec)
    rng = random.Random(seed)
    t0 = xi.mpc if isinstance(xi, UHPoint) else mpc(xi)
    with workprec(prec + 20):
        sep = separation_constants(t0, None, prec)
        at_i = sep.case_tag == "point_i"
        j_xi = j_eval(t0, prec)
        r_quad = sep.A / (12 * sep.A + 108 * sep.B)
        r_lin = sep.A / (6 * sep.A + 18 * sep.B)
        viol = 0
        qmin = mp.inf
        lmin = mp.inf
        for _ in range(samples):
            u = mpf(rng.random())
            ang = 2 * mp.pi * mpf(rng.random())
            for radius, quadratic in ((r_quad, True), (None if at_i else r_lin, False)):
                if radius is None:
                    continue
                r = radius * mp.sqrt(u)
                t = t0 + r * mp.exp(1j * ang)
                if not t.imag >= mpf(1) / 2:
                    continue
                jt = j_eval(t, prec)
                lhs = abs(jt.value - j_xi.value)
                dist = abs(t - t0)
                rhs = sep.A / 4 * dist**2 if quadratic else sep.A / 2 * dist
                margin = lhs - rhs
                budget = jt.error_bound + j_xi.error_bound
                if margin < -budget:
                    viol += 1
                if quadratic:
                    qmin = min(qmin, margin)
                else:
                    lmin = min(lmin, margin)
        if viol:
            raise ViolationFound(f"{viol} certified lin-log violations near {t0}")
        return LinLogReport(samples, +qmin, None if at_i else +lmin, viol)


# ----------------------------------------------------------------------
# numeric re-derivation of the epsilon-instantiated upper-bound chain
# ----------------------------------------------------------------------


def upper_bound_chain_check(
    delta,
    cls: int,
    deg: int,
    c2_value,
    prec: int | None = None,
) -> list[tuple[str, bool]]:
    """Re-derive, numerically, each displayed over-estimate in the chain
    that instantiates eps = C(Delta)/(F(Delta) (log|Delta|)^4 |Delta|^(1/2))
    and collapses the count bound into

        h <= deg*c2*E/(2 C(Delta)) + log(E sqrt|Delta| / C(Delta)) + C'.

    Returns (step name, holds) pairs; every step must hold whenever
    |Delta| >= 10^14 and cls is a legal class number for it."""
    prec = resolve(prec)
    dd = delta if isinstance(delta, FactoredDiscriminant) else validate_discriminant(delta)
    from .arith import big_E, big_F

    with workprec(prec + 10):
        F = mpf(big_F(dd))
        E = big_E(dd, prec)
        sq = mp.sqrt(dd.abs_delta)
        lg = mp.log(dd.abs_delta)
        lg4 = lg**4
        llg = mp.log(mp.log(sq))
        c2v = mpf(c2_value)
        eps = cls / (F * lg4 * sq)
        out = [("eps_below_2e-3", bool(eps < mpf("2e-3")))]
        # 4*deg embeddings-times-orbit factor applied to the count bound
        count_bound = F * (32 * sq * eps**2 * llg + 11 * sq * eps + 2)
        h1 = deg * c2v * 4 * count_bound / (16 * cls) * lg4
        # displayed three-term expansion of h1
        t_a = deg * c2v * 8 * llg * cls / (F * lg4 * sq)
        t_b = deg * c2v * mpf(44) / 16
        t_c = deg * c2v * E / (2 * cls)
        out.append(
            ("three_term_expansion", bool(t_a + t_b + t_c >= h1 * (1 - mpf("1e-25"))))
        )
        # F >= 18 loglog sqrt|Delta| collapses t_a's 8 llg / F into 1/2
        out.append(("fbound_step", bool(8 * llg / F <= mpf(1) / 2)))
        t_a2 = deg * c2v / 2 * cls / (lg4 * sq)
        # class-number bound feeds the next substitution
        out.append(("cbound_applies", bool(cls <= sq * (2 + lg) / mp.pi)))
        t_a3 = deg * c2v / (2 * mp.pi) * (2 + lg) / lg4
        out.append(("after_cbound", bool(t_a3 >= t_a2 * (1 - mpf("1e-25")))))
        # (2 + log x)/(log x)^4 is decreasing, <= 35/32^4 from 10^14 on
        out.append(("tail_constant", bool((2 + lg) / lg4 <= mpf(35) / mpf(32) ** 4)))
        # 44/16 rounds up to 3; the eps-free remainder then folds into
        # C' = 4 deg c2 + 5 Pen + 4 M
        out.append(("middle_term_rounds_to_3c2", bool(t_b <= 3 * deg * c2v)))
        out.append(("folds_into_Cprime", bool(t_a3 + 3 * deg * c2v <= 4 * deg * c2v)))
        return out
