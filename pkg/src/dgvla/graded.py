"""Exact scalars, parities and binomials.

Scalars are :class:`fractions.Fraction` values: every structure constant we deal
with is rational, so the ground field is taken to be Q.

Koszul signs only ever look at parities. Mode degrees differ from generator
degrees by multiples of 2N (|a_n| = |a| - 2N(n+1), |D^k a| = |a| + 2Nk), and
the enveloping algebra uses the shift by 2N, so every sign in the theory is
determined by the parity of the underlying generator degrees.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

Scalar = Fraction
ScalarLike = Union[Fraction, int, str]

_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_scalar(value: ScalarLike) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (or an int) into a Fraction.

    Decimal literals and floats are refused; they cannot round-trip exactly.
    """
    if isinstance(value, bool):
        raise ValueError(f"not a rational literal: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise ValueError(f"not a rational literal: {value!r}")
    m = _RATIONAL.match(value)
    if m is None:
        raise ValueError(f"not a rational literal (use 'p' or 'p/q'): {value!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator: {value!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_scalar(q: Fraction) -> str:
    """Inverse of :func:`parse_scalar` (``"3"``, ``"-1/2"``)."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parity(degree: int) -> int:
    return degree & 1


def koszul_sign(deg_a: int, deg_b: int) -> int:
    """(-1)^(deg_a * deg_b)."""
    return -1 if (deg_a & 1) and (deg_b & 1) else 1


def binomial(n: int, i: int) -> int:
    """Generalised binomial coefficient n(n-1)...(n-i+1)/i!, valid for negative n."""
    if i < 0:
        raise ValueError("binomial: i must be non-negative")
    num = 1
    den = 1
    for j in range(i):
        num *= n - j
        den *= j + 1
    return num // den


def falling_factorial(n: int, k: int) -> int:
    """n(n-1)...(n-k+1); 1 when k == 0."""
    out = 1
    for j in range(k):
        out *= n - j
    return out


def sign_power(n: int) -> int:
    """(-1)^n for any integer n, as an int."""
    return -1 if n & 1 else 1
