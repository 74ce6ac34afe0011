"""Reduced binary quadratic forms of negative discriminant.

Discriminant decomposition Delta = D * f^2, exact enumeration of reduced
primitive positive-definite forms, class numbers, form roots on the upper
half-plane, and Weil heights of the quadratic irrational roots.

Enumeration solves b^2 = Delta (mod 4a) per a (see ntheory.FormRootSolver)
rather than scanning b, so it stays usable at |Delta| ~ 10^14 where the
form count reaches ~10^7.  It is range-splittable over a: concatenating
the outputs for any partition of [1, floor(sqrt(|Delta|/3))] reproduces
the single-range output.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from mpmath import mp, mpf, mpc, workprec

from .errors import NonDiscriminant
from .ntheory import FormRootSolver, squarefree_decompose
from .parallel import pmap_ordered, split_range
from .precision import resolve


@dataclass(frozen=True)
class UHPoint:
    """A point re + i*im on the upper half-plane with precision metadata."""

    re: mpf
    im: mpf
    precision_bits: int

    def __post_init__(self):
        if not self.im > 0:
            raise ValueError("UHPoint requires im > 0")

    @property
    def mpc(self) -> mpc:
        return mpc(self.re, self.im)

    def in_closed_fundamental_domain(self, slack: mpf | None = None) -> bool:
        """|re| <= 1/2 and re^2 + im^2 >= 1, up to 2^-precision_bits slack."""
        s = mpf(2) ** (-self.precision_bits) if slack is None else slack
        return abs(self.re) <= mpf(1) / 2 + s and self.re**2 + self.im**2 >= 1 - s


def uhpoint(re, im, prec: int | None = None) -> UHPoint:
    prec = resolve(prec)
    with workprec(prec):
        return UHPoint(mpf(re), mpf(im), prec)


@dataclass(frozen=True)
class FactoredDiscriminant:
    """Delta = D * f^2 with fundamental D and conductor f.

    The modified conductor is f when D = 1 (mod 4) and 2f when
    D = 0 (mod 4); in both cases Delta / modified_conductor^2 is a
    squarefree integer (D itself, respectively D/4).
    """

    delta: int
    fundamental: int
    conductor: int
    modified_conductor: int

    @property
    def abs_delta(self) -> int:
        return -self.delta

    def __str__(self) -> str:
        return f"{self.delta} = {self.fundamental}*{self.conductor}^2"


def is_fundamental(d: int) -> bool:
    """Fundamental negative discriminant: d = 1 mod 4 squarefree, or
    d = 4m with m = 2, 3 mod 4 squarefree."""
    if d >= 0:
        return False
    if d % 4 == 1:
        s, m = squarefree_decompose(-d)
        return m == 1
    if d % 4 == 0:
        m = d // 4
        if m % 4 in (2, 3):
            s, sq = squarefree_decompose(-m)
            return sq == 1
    return False


def validate_discriminant(n: int) -> FactoredDiscriminant:
    """Decompose n < 0 with n = 0, 1 (mod 4) as D * f^2."""
    if n >= 0 or n % 4 not in (0, 1):
        raise NonDiscriminant(f"{n} is not a negative discriminant")
    s, m = squarefree_decompose(-n)  # -n = s * m^2, s squarefree
    if (-s) % 4 == 1:
        d0, f = -s, m
    else:
        # valid discriminants with s != 3 mod 4 force m even
        d0, f = -4 * s, m // 2
    assert d0 * f * f == n
    ftilde = f if d0 % 4 == 1 else 2 * f
    return FactoredDiscriminant(n, d0, f, ftilde)


@dataclass(frozen=True, order=True)
class QuadraticForm:
    """Reduced primitive positive-definite (a, b, c), b^2 - 4ac < 0.

    Reduced means |b| <= a <= c with b >= 0 whenever |b| = a or a = c;
    field order makes the natural sort the (a, b, c) lexicographic one.
    """

    a: int
    b: int
    c: int

    def __post_init__(self):
        a, b, c = self.a, self.b, self.c
        if a <= 0 or b * b - 4 * a * c >= 0:
            raise ValueError(f"({a},{b},{c}) is not positive definite")
        if gcd(gcd(a, b), c) != 1:
            raise ValueError(f"({a},{b},{c}) is not primitive")
        if not (abs(b) <= a <= c) or (b < 0 and (abs(b) == a or a == c)):
            raise ValueError(f"({a},{b},{c}) is not reduced")

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)


def _emit_forms(delta: int, a_lo: int, a_hi: int, solver: FormRootSolver):
    """Reduced forms with a in [a_lo, a_hi], sorted by (a, b)."""
    out = []
    for a in range(max(1, a_lo), a_hi + 1):
        residues = solver.residues_mod_2a(a)
        if not residues:
            continue
        foura = 4 * a
        twoa = 2 * a
        row = []
        for r in residues:
            b = r if r <= a else r - twoa
            c, rem = divmod(b * b - delta, foura)
            if rem or c < a:
                continue
            if b < 0 and a == c:
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            row.append((a, b, c))
        row.sort()
        out.extend(row)
    return out


def a_bound(delta: int) -> int:
    """Largest possible a for a reduced form: floor(sqrt(|Delta|/3))."""
    return isqrt(-delta // 3)


def enumerate_reduced_forms(
    d: FactoredDiscriminant | int, a_range: tuple[int, int] | None = None
) -> list[QuadraticForm]:
    """All reduced primitive forms of the discriminant, sorted by (a, b).

    a_range restricts enumeration to a sub-interval of a (inclusive);
    concatenation over a partition equals the full run.
    """
    dd = d if isinstance(d, FactoredDiscriminant) else validate_discriminant(d)
    amax = a_bound(dd.delta)
    lo, hi = (1, amax) if a_range is None else a_range
    hi = min(hi, amax)
    if lo > hi:
        return []
    solver = FormRootSolver(dd.delta, amax)
    return [QuadraticForm(*t) for t in _emit_forms(dd.delta, lo, hi, solver)]


def _count_chunk(args: tuple[int, int, int, int]) -> int:
    delta, a_limit, lo, hi = args
    solver = FormRootSolver(delta, a_limit)
    return len(_emit_forms(delta, lo, hi, solver))


def class_number(d: FactoredDiscriminant | int, workers: int = 1) -> int:
    """Number of reduced forms (= length of enumerate_reduced_forms)."""
    dd = d if isinstance(d, FactoredDiscriminant) else validate_discriminant(d)
    amax = a_bound(dd.delta)
    chunks = split_range(1, amax, workers * 4 if workers > 1 else 1)
    counts = pmap_ordered(
        _count_chunk, [(dd.delta, amax, lo, hi) for lo, hi in chunks], workers
    )
    return sum(counts)


def form_root(q: QuadraticForm, prec: int | None = None) -> UHPoint:
    """tau = (-b + i*sqrt(|Delta|)) / (2a), in the closed fundamental
    domain for reduced q."""
    prec = resolve(prec)
    with workprec(prec + 10):
        root = mp.sqrt(mpf(-q.discriminant))
        re = mpf(-q.b) / (2 * q.a)
        im = root / (2 * q.a)
        return UHPoint(+re, +im, prec)


def quadratic_height(q: QuadraticForm, prec: int | None = None) -> mpf:
    """Absolute logarithmic Weil height of the root of a*x^2 + b*x + c.

    Mahler form: h = (1/2) log(a * max(1,|tau|) * max(1,|conj tau|)).
    Both conjugate roots have |tau|^2 = c/a, so this is exactly
    (1/2) log max(a, c).
    """
    prec = resolve(prec)
    with workprec(prec):
        return mp.log(max(q.a, q.c)) / 2
