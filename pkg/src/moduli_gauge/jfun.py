"""Klein j-function numerics with certified truncation error.

The q-expansion coefficients are exact integers computed once from
E4(q)^3 / Delta(q) (pentagonal-number product for Delta, divisor sums for
E4) and cached.  Evaluation of j, j', j'' truncates the series at an
order N chosen so that the tail, bounded through c_n <= e^(4 pi sqrt(n))
and geometric domination for |q| <= e^(-pi), stays below the requested
error budget; working precision carries enough guard bits that rounding
is dominated by the same budget.  Also here: SL2(Z) reduction to the
fundamental domain, the inverse of j on the closed domain, the growth
gap | |j(tau)| - e^(2 pi Im tau) |, and the sign classifier for Im j.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

from mpmath import mp, mpf, mpc, workprec

from .errors import (
    DomainError,
    NoConvergence,
    PrecisionInconclusive,
    PrecisionUnreachable,
)
from .forms import UHPoint
from .precision import resolve

# ----------------------------------------------------------------------
# exact q-expansion coefficients
# ----------------------------------------------------------------------

_coeff_lock = threading.Lock()
_coeffs: list[int] = []  # c_0, c_1, ... with j = 1/q + sum c_n q^n


@dataclass(frozen=True)
class JSeries:
    """Truncated exact coefficient list c_0..c_N of j - q^(-1)."""

    coefficients: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1


def _poly_mul(A: list[int], B: list[int], M: int) -> list[int]:
    out = [0] * (M + 1)
    for i, ai in enumerate(A):
        if ai == 0 or i > M:
            continue
        lim = M - i
        for j, bj in enumerate(B):
            if j > lim:
                break
            out[i + j] += ai * bj
    return out


def _compute_coeffs(N: int) -> list[int]:
    M = N + 1
    sig3 = [0] * (M + 1)
    for d in range(1, M + 1):
        dd = d * d * d
        for m in range(d, M + 1, d):
            sig3[m] += dd
    E4 = [1] + [240 * sig3[n] for n in range(1, M + 1)]
    # eta-product Delta(q)/q = prod (1-q^n)^24 via pentagonal numbers
    P = [0] * (M + 1)
    P[0] = 1
    k = 1
    while k * (3 * k - 1) // 2 <= M:
        s = -1 if k % 2 else 1
        P[k * (3 * k - 1) // 2] += s
        g2 = k * (3 * k + 1) // 2
        if g2 <= M:
            P[g2] += s
        k += 1
    P2 = _poly_mul(P, P, M)
    P4 = _poly_mul(P2, P2, M)
    P8 = _poly_mul(P4, P4, M)
    P16 = _poly_mul(P8, P8, M)
    P24 = _poly_mul(P16, P8, M)
    inv = [0] * (M + 1)
    inv[0] = 1
    for n in range(1, M + 1):
        inv[n] = -sum(P24[k] * inv[n - k] for k in range(1, n + 1))
    E43 = _poly_mul(_poly_mul(E4, E4, M), E4, M)
    e = _poly_mul(E43, inv, M)
    assert e[0] == 1, "series normalization broke"
    return e[1 : M + 1]


def j_coefficients(N: int) -> JSeries:
    """Exact coefficients c_0..c_N (c_0 = 744, c_1 = 196884, ...)."""
    if N < 0:
        raise DomainError("coefficient order must be >= 0")
    global _coeffs
    if len(_coeffs) <= N:
        with _coeff_lock:
            if len(_coeffs) <= N:
                _coeffs = _compute_coeffs(max(N, 2 * len(_coeffs), 64))
    return JSeries(tuple(_coeffs[: N + 1]))


# ----------------------------------------------------------------------
# certified evaluation
# ----------------------------------------------------------------------

_MAX_ORDER = 200_000
_LOG2 = math.log(2.0)
_COEFF_SUM_AT_HALF = 287473.0  # sum c_n e^(-pi n) = 66^3 - e^pi, rounded up


@dataclass(frozen=True)
class EvalResult:
    """A certified value: |value - truth| <= error_bound."""

    value: mpc
    error_bound: mpf


def _tail_bound(N: int, y: float, weight: int) -> float:
    """Upper bound for sum_{n>N} n^weight c_n |q|^n at |q| = e^(-2 pi y).

    Uses c_n <= e^(4 pi sqrt n) and the decreasing term-ratio bound
    r = ((N+2)/(N+1))^w * e^(2 pi / sqrt(N+1)) * |q|.
    """
    log_q = -2.0 * math.pi * y
    n1 = N + 1
    log_t = weight * math.log(n1) + 4.0 * math.pi * math.sqrt(n1) + n1 * log_q
    log_r = (
        weight * math.log((N + 2) / n1) + 2.0 * math.pi / math.sqrt(n1) + log_q
    )
    if log_r >= -1e-3:
        return math.inf
    if log_t > 700.0:
        return math.inf
    t = math.exp(log_t)
    r = math.exp(log_r)
    return t / (1.0 - r) * (1.0 + 1e-9)


def _choose_order(y: float, prec: int, weight: int) -> int:
    target = 2.0 ** (-(prec + 8))
    N = 4
    while _tail_bound(N, y, weight) > target:
        N = N * 2 if N < 64 else N + max(8, N // 8)
        if N > _MAX_ORDER:
            raise PrecisionUnreachable(
                f"series order beyond {_MAX_ORDER} needed for prec={prec}, Im={y}"
            )
    # back off to the smallest adequate N
    lo, hi = N // 2, N
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if _tail_bound(mid, y, weight) <= target:
            hi = mid
        else:
            lo = mid
    return hi


def _weighted_sum(tau: mpc, prec: int, weight: int) -> tuple[mpc, mpc, mpf, int]:
    """(series sum S_w = sum n^w c_n q^n, q, certified error of S_w and of
    1/q combined, working precision used).

    weight 0: j = 1/q + S_0;  1: j' = 2 pi i (-1/q + S_1);
    2: j'' = -4 pi^2 (1/q + S_2);  3: j''' = -8 pi^3 i (-1/q + S_3).
    """
    y = float(tau.imag)
    if y < 0.5:
        raise DomainError(f"q-series evaluation requires Im(tau) >= 1/2, got {y}")
    N = _choose_order(y, prec, weight)
    series = j_coefficients(N).coefficients
    tail = _tail_bound(N, y, weight)
    # magnitude bound for rounding: |1/q| + sum n^w c_n |q|^n
    mag = math.exp(2.0 * math.pi * y) + (N**weight if weight else 1) * _COEFF_SUM_AT_HALF
    wp = prec + 10 + max(0, int(math.log(mag, 2))) + int(math.log(2 * N + 16, 2)) + 4
    with workprec(wp):
        q = mp.exp(2j * mp.pi * mpc(tau))
        s = mpc(0)
        if weight == 0:
            for n in range(N, 0, -1):
                s = (s + series[n]) * q
            s += series[0]
        else:
            for n in range(N, 0, -1):
                s = (s + n**weight * series[n]) * q
        rounding = mpf(2) ** (-(wp - 1)) * (2 * N + 16) * mpf(mag)
        err = mpf(tail) + rounding
        return +s, +q, +err, wp


def _eval_weighted(tau, prec: int, weight: int) -> EvalResult:
    t = tau.mpc if isinstance(tau, UHPoint) else mpc(tau)
    s, q, err, wp = _weighted_sum(t, prec, weight)
    with workprec(wp):
        if weight == 0:
            val = 1 / q + s
            factor = mpf(1)
        elif weight == 1:
            val = 2j * mp.pi * (-(1 / q) + s)
            factor = 2 * mp.pi
        elif weight == 2:
            val = -4 * mp.pi**2 * (1 / q + s)
            factor = 4 * mp.pi**2
        else:
            val = -8j * mp.pi**3 * (-(1 / q) + s)
            factor = 8 * mp.pi**3
        bound = +(err * factor * (1 + mpf(2) ** (-20)))
        if not bound < mpf(2) ** (-prec):
            raise PrecisionUnreachable(
                f"could not certify 2^-{prec} at Im(tau)={t.imag}"
            )
        return EvalResult(+val, bound)


def j_eval(tau, prec: int | None = None) -> EvalResult:
    """j(tau) for Im(tau) >= 1/2, with |error| < 2^-prec."""
    return _eval_weighted(tau, resolve(prec), 0)


def j_prime(tau, prec: int | None = None) -> EvalResult:
    return _eval_weighted(tau, resolve(prec), 1)


def j_double_prime(tau, prec: int | None = None) -> EvalResult:
    return _eval_weighted(tau, resolve(prec), 2)


def j_third(tau, prec: int | None = None) -> EvalResult:
    return _eval_weighted(tau, resolve(prec), 3)


def growth_gap(tau, prec: int | None = None) -> mpf:
    """| |j(tau)| - e^(2 pi Im tau) |, defined for Im(tau) >= 1/2."""
    prec = resolve(prec)
    t = tau.mpc if isinstance(tau, UHPoint) else mpc(tau)
    r = j_eval(t, prec)
    with workprec(prec + 20):
        return +abs(abs(r.value) - mp.exp(2 * mp.pi * t.imag))


# ----------------------------------------------------------------------
# fundamental domain
# ----------------------------------------------------------------------


def reduce_to_F(tau, prec: int | None = None) -> tuple[UHPoint, tuple[int, int, int, int]]:
    """SL2(Z)-reduce tau into the closed fundamental domain.

    Returns (tau', (p, q, r, s)) with tau' = (p tau + q) / (r tau + s),
    p*s - q*r = 1, |Re tau'| <= 1/2 and |tau'| >= 1 (within 2^-prec slack).
    """
    prec = resolve(prec)
    t0 = tau.mpc if isinstance(tau, UHPoint) else mpc(tau)
    if not t0.imag > 0:
        raise DomainError("reduce_to_F needs Im(tau) > 0")
    wp = prec + 24
    with workprec(wp):
        t = mpc(t0)
        p, q, r, s = 1, 0, 0, 1
        one_minus = 1 - mpf(2) ** (-(prec + 4))
        for _ in range(64 + 8 * prec):
            n = int(mp.nint(t.real))
            if n != 0:
                t -= n
                p, q = p - n * r, q - n * s
            if abs(t) ** 2 < one_minus:
                t = -1 / t
                p, q, r, s = -r, -s, p, q
            else:
                break
        else:
            raise NoConvergence("fundamental-domain reduction did not settle")
        # recompute from the tracked matrix to kill accumulated drift
        tt = (p * t0 + q) / (r * t0 + s)
        return UHPoint(+tt.real, +tt.imag, prec), (p, q, r, s)


# ----------------------------------------------------------------------
# inverse of j on the closed fundamental domain
# ----------------------------------------------------------------------

_GRID_STEP = 0.05
_GRID_IM_MAX = 4.0
_grid_cache: list[tuple[complex, complex]] | None = None
_grid_lock = threading.Lock()


def _zeta_point(prec: int) -> UHPoint:
    with workprec(prec + 10):
        return UHPoint(mpf(1) / 2, mp.sqrt(3) / 2, prec)


def _coarse_grid() -> list[tuple[complex, complex]]:
    """(tau, j(tau)) samples over F with Im <= 4, double precision."""
    global _grid_cache
    if _grid_cache is None:
        with _grid_lock:
            if _grid_cache is None:
                pts = []
                with workprec(64):
                    im = 0.87
                    while im <= _GRID_IM_MAX:
                        re = -0.5
                        while re <= 0.5:
                            if re * re + im * im >= 0.999:
                                t = mpc(re, im)
                                jt = j_eval(t, 48).value
                                pts.append((complex(t), complex(jt)))
                            re += _GRID_STEP
                        im += _GRID_STEP
                _grid_cache = pts
    return _grid_cache


def _bisect_geodesic(z: mpf, prec: int) -> mpc:
    """Solve j(tau) = z for real z by bisection on the geodesic where j
    is real and monotone; returns tau at working precision."""
    wp = prec + 30
    with workprec(wp):
        z = mpf(z)
        if z < 0:
            # Re = 1/2 line, j decreasing from 0 at zeta
            lo, hi = mp.sqrt(3) / 2, mp.log(-z + 2080) / (2 * mp.pi) + mpf(1) / 4
            path = lambda y: mpc(mpf(1) / 2, y)
            increasing = False
        elif z <= 1728:
            # unit-circle arc, j increasing from 0 at zeta to 1728 at i
            lo, hi = mp.pi / 3, mp.pi / 2
            path = lambda th: mp.exp(1j * th)
            increasing = True
        else:
            # imaginary axis, j increasing from 1728 at i
            lo, hi = mpf(1), mp.log(z + 2080) / (2 * mp.pi) + mpf(1) / 4
            path = lambda y: mpc(0, y)
            increasing = True
        # bisect with evaluation precision tracking the interval width
        evalprec = 48
        for _ in range(wp + 80):
            mid = (lo + hi) / 2
            val = j_eval(path(mid), evalprec).value.real
            if (val < z) == increasing:
                lo = mid
            else:
                hi = mid
            width = hi - lo
            if width < mpf(2) ** (-(wp + 8)):
                break
            if width < mpf(2) ** (-(evalprec - 16)):
                evalprec = min(wp + 16, evalprec * 2)
        return path((lo + hi) / 2)


def _critical_starts(z: mpc, prec: int) -> list[mpc]:
    """Local-model starting points near the critical values 0 and 1728."""
    out = []
    with workprec(prec + 20):
        if abs(z) < 900:
            zeta = mp.exp(1j * mp.pi / 3)
            k3 = j_third(zeta, 64).value / 6
            w = (z / k3) ** (mpf(1) / 3)
            for rot in range(3):
                cand = zeta + w * mp.exp(2j * mp.pi * rot / 3)
                if cand.imag > 0.6:
                    out.append(+cand)
        if abs(z - 1728) < 900:
            k2 = j_double_prime(mpc(0, 1), 64).value / 2
            w = mp.sqrt((z - 1728) / k2)
            for cand in (mpc(0, 1) + w, mpc(0, 1) - w):
                if cand.imag > 0.6:
                    out.append(+cand)
    return out


def j_inverse(z, prec: int | None = None) -> UHPoint:
    """tau in the closed fundamental domain with
    |j(tau) - z| < 2^-prec * max(1, |z|).

    Real z is solved by bisection on the geodesic carrying it (covers the
    critical values 0 and 1728 where Newton would stall); complex z uses
    Newton refinement from a coarse-grid or 1/z start.
    """
    prec = resolve(prec)
    wp = prec + 30
    with workprec(wp):
        z = mpc(z)
        tol = mpf(2) ** (-prec) * max(mpf(1), abs(z))
        if z.imag == 0:
            zr = z.real
            if zr == 0:
                return _zeta_point(prec)
            if zr == 1728:
                return UHPoint(mpf(0), mpf(1), prec)
            t = _bisect_geodesic(zr, prec)
            res = j_eval(t, prec + 10)
            if abs(res.value - z) + res.error_bound < tol:
                red, _ = reduce_to_F(t, prec)
                return red
            raise NoConvergence(f"geodesic bisection missed target {z}")
        starts: list[mpc] = []
        if abs(z) > 3000:
            # j ~ 1/q, so q0 = 1/z fixes Im and Re of tau directly
            q0 = 1 / z
            starts.append(mpc(mp.arg(q0) / (2 * mp.pi), -mp.log(abs(q0)) / (2 * mp.pi)))
        starts.extend(_critical_starts(z, prec))
        grid = sorted(_coarse_grid(), key=lambda tj: abs(tj[1] - complex(z)))
        starts.extend(mpc(t) for t, _ in grid[:3])
        for t0 in starts:
            t = mpc(t0)
            ok = False
            for _ in range(prec + 60):
                jr = j_eval(t, prec + 10)
                diff = jr.value - z
                if abs(diff) + jr.error_bound < tol:
                    ok = True
                    break
                dj = j_prime(t, prec + 10).value
                if dj == 0:
                    break
                step = diff / dj
                if abs(step) > mpf(1) / 2:
                    step *= mpf(1) / (2 * abs(step))
                t -= step
                if t.imag < mpf("0.55"):
                    break
                if abs(t.real) > mpf("0.75") or abs(t) < mpf("0.9"):
                    t = reduce_to_F(t, prec + 10)[0].mpc
            if ok:
                red, _ = reduce_to_F(t, prec)
                jr = j_eval(red.mpc, prec + 10)
                if abs(jr.value - z) + jr.error_bound < tol:
                    return red
        raise NoConvergence(f"j_inverse failed for {z} at prec {prec}")


# ----------------------------------------------------------------------
# sign classification of Im j on the fundamental domain
# ----------------------------------------------------------------------


def sign_of_im_j(tau, prec: int | None = None) -> str:
    """'zero' on the geodesics Re = 0, Re = +-1/2, |tau| = 1 (within
    2^(-prec/2) slack), else the certified sign of Im j(tau).

    Expects tau in the closed fundamental domain (reduce first).
    """
    prec = resolve(prec)
    t = tau.mpc if isinstance(tau, UHPoint) else mpc(tau)
    with workprec(prec + 20):
        tol = mpf(2) ** (-(prec // 2))
        x = t.real
        if abs(x) <= tol or abs(abs(x) - mpf(1) / 2) <= tol:
            return "zero"
        if abs(abs(t) - 1) <= tol:
            return "zero"
        res = j_eval(t, prec)
        if abs(res.value.imag) <= res.error_bound:
            raise PrecisionInconclusive(
                f"Im j({t}) = {res.value.imag} within error {res.error_bound}"
            )
        return "negative" if res.value.imag < 0 else "positive"
