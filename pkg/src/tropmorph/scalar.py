"""Exact extended rationals and the tropical semifield (max, +).

Finite values are :class:`fractions.Fraction`; the two infinities are the
float constants :data:`INF` and :data:`NEG_INF`.  Python orders mixed
``Fraction``/``float`` comparisons correctly, so ``max``/``min``/``sorted``
work directly on extended values.  Arithmetic that may meet an infinity goes
through the helpers here so no float ever leaks into a finite result.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

from .errors import IndeterminateSum, NonInvertibleZero, ParseError

INF = math.inf
NEG_INF = -math.inf

ExtRat = Union[Fraction, float]
TropVal = Union[Fraction, float]

ZERO = Fraction(0)

_RAT = re.compile(r"^[+-]?\d+(/\d+)?$")


def is_finite(a: ExtRat) -> bool:
    return not isinstance(a, float)


def ext(value) -> ExtRat:
    """Coerce ints, Fractions, numeric strings and +-inf to an ExtRat."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not extended rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if value == INF:
            return INF
        if value == NEG_INF:
            return NEG_INF
        raise TypeError(f"finite floats are not exact: {value!r}")
    if isinstance(value, str):
        return parse_ext(value)
    raise TypeError(f"cannot interpret {value!r} as an extended rational")


def parse_ext(text: str) -> ExtRat:
    s = text.strip()
    if s in ("inf", "+inf"):
        return INF
    if s == "-inf":
        return NEG_INF
    if not _RAT.match(s):
        raise ParseError(f"not an exact rational: {text!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator: {text!r}") from None


def format_ext(a: ExtRat) -> str:
    if a == INF:
        return "inf"
    if a == NEG_INF:
        return "-inf"
    return str(a)


def ext_add(a: ExtRat, b: ExtRat) -> ExtRat:
    if is_finite(a) and is_finite(b):
        return a + b
    if (a == INF and b == NEG_INF) or (a == NEG_INF and b == INF):
        raise IndeterminateSum(f"{format_ext(a)} + {format_ext(b)}")
    return a if not is_finite(a) else b


def ext_neg(a: ExtRat) -> ExtRat:
    return -a


def ext_scale(n: int, a: ExtRat) -> ExtRat:
    """n * a with 0 * (+-inf) = 0."""
    if is_finite(a):
        return n * a
    if n == 0:
        return ZERO
    return a if n > 0 else -a


def check_tropical(a: TropVal) -> TropVal:
    if a == INF:
        raise ValueError("+inf is not an element of T")
    return a


def trop_add(a: TropVal, b: TropVal) -> TropVal:
    return a if a >= b else b


def trop_mul(a: TropVal, b: TropVal) -> TropVal:
    if a == NEG_INF or b == NEG_INF:
        return NEG_INF
    return a + b


def trop_pow(a: TropVal, n: int) -> TropVal:
    if a == NEG_INF:
        if n < 0:
            raise NonInvertibleZero("-inf has no tropical inverse")
        return NEG_INF if n > 0 else ZERO
    return n * a


def to_boolean(a: TropVal) -> TropVal:
    """The semiring map T -> B collapsing every finite value to 0."""
    return NEG_INF if a == NEG_INF else ZERO
