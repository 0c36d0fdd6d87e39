"""Exact scalar arithmetic helpers.

Python's ``int`` is the arbitrary-precision integer and ``fractions.Fraction``
the canonical rational (reduced, positive denominator).  This module adds the
few predicates the geometry code needs on top of them.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Rational = Fraction
Number = Union[int, Fraction]

LT, EQ, GT = -1, 0, 1


def Q(x) -> Fraction:
    """Coerce ints, Fractions and "n/d" strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot build an exact rational from {type(x).__name__}")


def sign(x: Number) -> int:
    return (x > 0) - (x < 0)


def cmp_sqrt(a: Number, q: Number) -> int:
    """Order of ``a`` versus ``sqrt(q)``: LT, EQ or GT."""
    if q < 0:
        raise ValueError("cmp_sqrt: negative radicand")
    if a < 0:
        return LT
    a2 = a * a
    return (a2 > q) - (a2 < q)


def bit_size(x: Number) -> int:
    """Bit size ``1 + ceil(log2(|n|+1))``; numerator plus denominator for rationals."""
    if isinstance(x, Fraction):
        return bit_size(x.numerator) + bit_size(x.denominator)
    n = abs(int(x))
    # ceil(log2(n+1)) == bit_length(n) for n >= 0
    return 1 + n.bit_length()


def sqrt_bounds(q: Number, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Rationals ``lo <= sqrt(q) <= hi`` with ``hi - lo <= 2**-bits * max(1, sqrt(q))``."""
    q = Q(q)
    if q < 0:
        raise ValueError("sqrt_bounds: negative radicand")
    if q == 0:
        return Fraction(0), Fraction(0)
    n, d = q.numerator, q.denominator
    # scale so the integer square root carries enough relative precision
    shift = max(0, bits - (n.bit_length() - d.bit_length()) // 2 + 2)
    scale = 1 << shift
    num = n * scale * scale * d
    r = math.isqrt(num)
    lo = Fraction(r, scale * d)
    hi = lo if r * r == num else Fraction(r + 1, scale * d)
    return lo, hi


def sqrt_floor(q: Number, bits: int = 64) -> Fraction:
    return sqrt_bounds(q, bits)[0]


def sqrt_ceil(q: Number, bits: int = 64) -> Fraction:
    return sqrt_bounds(q, bits)[1]


def exact_sqrt(q: Number) -> Fraction | None:
    """``sqrt(q)`` when it is rational, else None."""
    q = Q(q)
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def fmt_rational(x: Number) -> str:
    x = Q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        den_i = int(den)
        if den_i == 0:
            raise ZeroDivisionError(f"zero denominator in {s!r}")
        return Fraction(int(num), den_i)
    return Fraction(int(s))


def approx(x: Number, digits: int = 12) -> str:
    """Decimal preview for humans; never fed back into predicates."""
    x = Q(x)
    if x == 0:
        return "0"
    # float() overflows for huge rationals, so format via exponent estimates
    neg = x < 0
    x = abs(x)
    e = x.numerator.bit_length() - x.denominator.bit_length()
    exp10 = math.floor(e * math.log10(2))
    scaled = x / (Fraction(10) ** exp10)
    while scaled >= 10:
        scaled /= 10
        exp10 += 1
    while scaled < 1:
        scaled *= 10
        exp10 -= 1
    mant = round(scaled * 10 ** (digits - 1))
    if mant >= 10 ** digits:
        mant //= 10
        exp10 += 1
    m = str(mant)
    body = f"{m[0]}.{m[1:]}".rstrip("0").rstrip(".")
    out = f"{body}e{exp10}" if exp10 else body
    return "-" + out if neg else out


def lcm_denominators(values) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, Q(v).denominator)
    return out


def pow2_floor(q: Number) -> Fraction:
    """Largest power of two not exceeding a positive rational."""
    q = Q(q)
    if q <= 0:
        raise ValueError("pow2_floor needs a positive argument")
    e = q.numerator.bit_length() - q.denominator.bit_length()
    p = Fraction(2) ** e
    while p > q:
        p /= 2
    while p * 2 <= q:
        p *= 2
    return p
