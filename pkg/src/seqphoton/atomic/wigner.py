"""Wigner 3j/6j symbols and Clebsch-Gordan coefficients (Condon-Shortley).

Angular momenta are accepted as ints, floats, or Fractions that are
integer or half-integer, and are handled internally as doubled integers.
Racah sums are evaluated in exact rational arithmetic; only the final
square root is taken in floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial, sqrt


def doubled(x) -> int:
    """2*x as an int; raises ValueError unless x is a (half-)integer."""
    if isinstance(x, bool):
        raise ValueError(f"not an angular momentum: {x!r}")
    two_x = Fraction(x) * 2
    if two_x.denominator != 1:
        raise ValueError(f"{x!r} is not an integer or half-integer")
    return int(two_x)


def _half(two_x: int) -> int:
    # callers guarantee two_x is even
    return two_x // 2


def triangle_ok(tj1: int, tj2: int, tj3: int) -> bool:
    """Triangle rule on doubled momenta, including integer-sum parity."""
    if min(tj1, tj2, tj3) < 0:
        return False
    if (tj1 + tj2 + tj3) % 2:
        return False
    return abs(tj1 - tj2) <= tj3 <= tj1 + tj2


def _triangle_coeff(tj1: int, tj2: int, tj3: int) -> Fraction:
    a = _half(tj1 + tj2 - tj3)
    b = _half(tj1 - tj2 + tj3)
    c = _half(-tj1 + tj2 + tj3)
    d = _half(tj1 + tj2 + tj3) + 1
    return Fraction(factorial(a) * factorial(b) * factorial(c), factorial(d))


def _signed_sqrt(s: Fraction, radicand: Fraction) -> float:
    """s * sqrt(radicand) with s rational, exact until the last step."""
    if s == 0:
        return 0.0
    mag = sqrt(s * s * radicand)
    return mag if s > 0 else -mag


@lru_cache(maxsize=65536)
def _three_j_doubled(tj1, tj2, tj3, tm1, tm2, tm3) -> float:
    if tm1 + tm2 + tm3 != 0:
        return 0.0
    if not triangle_ok(tj1, tj2, tj3):
        return 0.0
    for tj, tm in ((tj1, tm1), (tj2, tm2), (tj3, tm3)):
        if abs(tm) > tj or (tj + tm) % 2:
            return 0.0
    j1p, j1m = _half(tj1 + tm1), _half(tj1 - tm1)
    j2p, j2m = _half(tj2 + tm2), _half(tj2 - tm2)
    j3p, j3m = _half(tj3 + tm3), _half(tj3 - tm3)
    # Racah: sum over k of (-1)^k / [k! (j3-j2+k+m1)! (j3-j1+k-m2)!
    #        (j1+j2-j3-k)! (j1-k-m1)! (j2-k+m2)!]
    a1 = _half(tj3 - tj2 + tm1)
    a2 = _half(tj3 - tj1 - tm2)
    b1 = _half(tj1 + tj2 - tj3)
    b2 = j1m
    b3 = j2p
    total = Fraction(0)
    for k in range(max(0, -a1, -a2), min(b1, b2, b3) + 1):
        den = (factorial(k) * factorial(a1 + k) * factorial(a2 + k)
               * factorial(b1 - k) * factorial(b2 - k) * factorial(b3 - k))
        total += Fraction((-1) ** k, den)
    phase = -1 if _half(tj1 - tj2 - tm3) % 2 else 1
    radicand = _triangle_coeff(tj1, tj2, tj3) * (
        factorial(j1p) * factorial(j1m) * factorial(j2p)
        * factorial(j2m) * factorial(j3p) * factorial(j3m)
    )
    return _signed_sqrt(phase * total, radicand)


def wigner_3j(j1, j2, j3, m1, m2, m3) -> float:
    return _three_j_doubled(doubled(j1), doubled(j2), doubled(j3),
                            doubled(m1), doubled(m2), doubled(m3))


@lru_cache(maxsize=65536)
def _six_j_doubled(tj1, tj2, tj3, tj4, tj5, tj6) -> float:
    triads = ((tj1, tj2, tj3), (tj1, tj5, tj6), (tj4, tj2, tj6), (tj4, tj5, tj3))
    if not all(triangle_ok(*t) for t in triads):
        return 0.0
    a = [_half(sum(t)) for t in triads]
    b = [_half(tj1 + tj2 + tj4 + tj5), _half(tj2 + tj3 + tj5 + tj6), _half(tj3 + tj1 + tj6 + tj4)]
    total = Fraction(0)
    for t in range(max(a), min(b) + 1):
        den = 1
        for ai in a:
            den *= factorial(t - ai)
        for bi in b:
            den *= factorial(bi - t)
        total += Fraction((-1) ** t * factorial(t + 1), den)
    radicand = Fraction(1)
    for tri in triads:
        radicand *= _triangle_coeff(*tri)
    return _signed_sqrt(total, radicand)


def wigner_6j(j1, j2, j3, j4, j5, j6) -> float:
    """{j1 j2 j3; j4 j5 j6}, zero when any triad violates the triangle rule."""
    return _six_j_doubled(*(doubled(j) for j in (j1, j2, j3, j4, j5, j6)))


def clebsch_gordan(j1, m1, j2, m2, j, m) -> float:
    """<j1 m1; j2 m2 | j m> = (-1)^(j1-j2+m) sqrt(2j+1) (j1 j2 j; m1 m2 -m)."""
    tj1, tm1, tj2, tm2, tj, tm = (doubled(x) for x in (j1, m1, j2, m2, j, m))
    if not triangle_ok(tj1, tj2, tj):
        return 0.0
    phase = -1 if _half(tj1 - tj2 + tm) % 2 else 1
    return phase * sqrt(tj + 1) * _three_j_doubled(tj1, tj2, tj, tm1, tm2, -tm)
