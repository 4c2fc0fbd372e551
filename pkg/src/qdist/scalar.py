"""Exact rational scalars and low-level numeric helpers.

Everything in the package computes over arbitrary-precision rationals.
gmpy2 supplies the fast implementation; fractions.Fraction is an API
compatible fallback so the library stays importable without it.
"""

from __future__ import annotations

import sys

# exact coefficients routinely exceed the default str() guard for huge ints
try:
    sys.set_int_max_str_digits(2_000_000)
except AttributeError:  # pragma: no cover - older interpreters have no limit
    pass

try:
    import gmpy2 as _g
    from gmpy2 import mpq as QQ

    def _isqrt(n: int) -> int:
        return int(_g.isqrt(n))

except ImportError:  # pragma: no cover - exercised only without gmpy2
    import math as _math
    from fractions import Fraction as QQ

    def _isqrt(n: int) -> int:
        return _math.isqrt(n)

RAT_TYPE = type(QQ(0))

ZERO = QQ(0)
ONE = QQ(1)


def rational(value, den=None):
    """Coerce an int, "p/q" string or rational to an exact rational."""
    if den is not None:
        return QQ(value, den)
    if isinstance(value, RAT_TYPE):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, str):
        return QQ(value.strip().replace(" ", ""))
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def is_rational(value) -> bool:
    return isinstance(value, (int, RAT_TYPE))


def num(q) -> int:
    return int(q.numerator)


def den(q) -> int:
    return int(q.denominator)


def format_rational(q) -> str:
    """Serialize as "p" or "p/q" (never a float)."""
    q = rational(q)
    if den(q) == 1:
        return str(num(q))
    return f"{num(q)}/{den(q)}"


def sign(q) -> int:
    if q > 0:
        return 1
    if q < 0:
        return -1
    return 0


def ifloor(q) -> int:
    return num(q) // den(q)


def iceil(q) -> int:
    return -((-num(q)) // den(q))


def sqrt_lower(q, bits: int):
    """Largest k/(d*2^bits) whose square is <= q; error below 2^-bits."""
    q = rational(q)
    if q < 0:
        raise ValueError("negative radicand")
    p, d = num(q), den(q)
    k = _isqrt((p * d) << (2 * bits))
    return QQ(k, d << bits)


def sqrt_approx(q, bits: int):
    """Rational approximation of sqrt(q) with a proven error bound."""
    return sqrt_lower(q, bits), QQ(1, 1 << bits)


def tolerance(bits: int):
    """Residual acceptance threshold tied to a refinement width."""
    return QQ(1, 1 << (bits // 2))


def snap(value, bits: int):
    """Simplest rational within 2^-bits of the value.

    Recovery formulas are Lipschitz in their inputs, so working with the
    snapped value keeps residuals far below tolerance while keeping the
    intermediate integers small.
    """
    w = QQ(1, 1 << bits)
    return simplest_in_interval(value - w, value + w)


def simplest_in_interval(lo, hi):
    """Rational with the smallest denominator inside the closed interval."""
    lo, hi = rational(lo), rational(hi)
    if hi < lo:
        lo, hi = hi, lo
    if lo == hi:
        return lo
    if lo <= 0 <= hi:
        return QQ(0)
    if lo < 0:
        return -simplest_in_interval(-hi, -lo)
    c = iceil(lo)
    if c <= hi:
        return QQ(c)
    f = ifloor(lo)
    inner = simplest_in_interval(1 / (hi - f), 1 / (lo - f))
    return f + 1 / inner


def decimal_str(q, digits: int = 30) -> str:
    """Round-to-nearest positional decimal with ``digits`` significant digits."""
    q = rational(q)
    if q == 0:
        return "0"
    neg = q < 0
    q = -q if neg else q
    p, d = num(q), den(q)
    # exponent e such that 10^e <= q < 10^(e+1); bit_length avoids huge str()
    e = int((p.bit_length() - d.bit_length()) * 0.30103)
    while 10 ** max(e, 0) * d > p * 10 ** max(-e, 0):
        e -= 1
    while 10 ** max(e + 1, 0) * d <= p * 10 ** max(-(e + 1), 0):
        e += 1
    shift = digits - 1 - e
    if shift >= 0:
        m = (2 * p * 10**shift + d) // (2 * d)
    else:
        scale = d * 10**(-shift)
        m = (2 * p + scale) // (2 * scale)
    if len(str(m)) > digits:  # rounding carried into an extra digit
        m //= 10
        e += 1
    s = str(m)
    point = e + 1
    if 0 < point <= len(s):
        text = s[:point] + ("." + s[point:] if point < len(s) else "")
    elif point <= 0:
        text = "0." + "0" * (-point) + s
    else:
        text = s + "0" * (point - len(s))
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return ("-" if neg else "") + text
