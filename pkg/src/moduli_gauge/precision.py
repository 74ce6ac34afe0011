"""Precision policy.

All high-precision evaluation takes an explicit ``prec`` (mantissa bits).
The default is 128 bits and can be overridden globally through the
``MODULI_GAUGE_PRECISION`` environment variable.  Internally, computations
run with guard bits on top of the requested precision so the reported
error bounds stay below 2^-prec.
"""

from __future__ import annotations

import os

from mpmath import make_mpf

DEFAULT_PRECISION_BITS = 128

_ENV_VAR = "MODULI_GAUGE_PRECISION"


def default_precision() -> int:
    raw = os.environ.get(_ENV_VAR)
    if raw is None:
        return DEFAULT_PRECISION_BITS
    try:
        bits = int(raw)
    except ValueError as exc:
        raise ValueError(f"{_ENV_VAR} must be an integer, got {raw!r}") from exc
    if bits < 8:
        raise ValueError(f"{_ENV_VAR} must be at least 8 bits, got {bits}")
    return bits


def resolve(prec: int | None) -> int:
    return default_precision() if prec is None else int(prec)


def to_mpf(x):
    """mpf from int/float/str/mpf/Fraction (Fractions divide exactly at
    the current working precision)."""
    from fractions import Fraction

    from mpmath import mpf

    if isinstance(x, Fraction):
        return mpf(x.numerator) / mpf(x.denominator)
    return mpf(x)


def iv_upper(x):
    """Upper endpoint of an mpmath interval as a plain mpf."""
    return make_mpf(x._mpi_[1])


def iv_lower(x):
    """Lower endpoint of an mpmath interval as a plain mpf."""
    return make_mpf(x._mpi_[0])
