"""Deterministic JSON / CSV emission.

Rules: flat snake_case objects; integers with magnitude >= 2^53 become
decimal strings; high-precision reals become decimal strings (fixed
30 significant digits via mpmath.nstr, so identical configs produce
byte-identical output); quantities carried in log representation are
emitted as {"log_value": ...}; every numeric result field is paired
with an error_bound or an "exact" marker by its producer.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from mpmath import mp, mpf, mpc

_INT_CUTOFF = 2**53
_DPS = 30


def jsonable(x):
    """Recursively convert values to JSON-safe deterministic form."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return x if abs(x) < _INT_CUTOFF else str(x)
    if isinstance(x, float):
        return x
    if isinstance(x, mpf):
        return mp.nstr(x, _DPS, strip_zeros=True)
    if isinstance(x, mpc):
        return {"re": jsonable(x.real), "im": jsonable(x.imag)}
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "__dataclass_fields__"):
        return {k: jsonable(getattr(x, k)) for k in x.__dataclass_fields__}
    return str(x)


def log_value(x) -> dict:
    """Wrapper for quantities carried in log representation."""
    return {"log_value": jsonable(x)}


def dump_json(obj) -> str:
    return json.dumps(jsonable(obj), indent=2, sort_keys=True)


def dump_csv(rows, header: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(row)
    return buf.getvalue()
