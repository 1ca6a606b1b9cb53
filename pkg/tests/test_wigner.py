"""Wigner symbols against sympy's exact implementation."""

from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Rational
from sympy.physics.wigner import clebsch_gordan as sp_cg
from sympy.physics.wigner import wigner_3j as sp_3j
from sympy.physics.wigner import wigner_6j as sp_6j

from seqphoton.atomic.wigner import clebsch_gordan, triangle_ok, wigner_3j, wigner_6j

HALVES = [Fraction(k, 2) for k in range(0, 6)]  # 0 .. 5/2


def _ms(j):
    return [j - k for k in range(int(2 * j) + 1)]


def _r(x):
    return Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else Rational(x)


def _all_3j(jmax2=5):
    for tj1, tj2, tj3 in product(range(jmax2 + 1), repeat=3):
        j1, j2, j3 = Fraction(tj1, 2), Fraction(tj2, 2), Fraction(tj3, 2)
        if not triangle_ok(tj1, tj2, tj3) or (tj1 + tj2 + tj3) % 2:
            continue
        for m1, m2 in product(_ms(j1), _ms(j2)):
            m3 = -m1 - m2
            if abs(m3) <= j3:
                yield j1, j2, j3, m1, m2, m3


def test_3j_matches_sympy_exhaustively():
    worst = 0.0
    count = 0
    for args in _all_3j(5):
        ours = wigner_3j(*args)
        ref = float(sp_3j(*map(_r, args)))
        worst = max(worst, abs(ours - ref))
        count += 1
    assert count == 681  # every admissible symbol with j <= 5/2
    assert worst < 1e-15


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 5), min_size=6, max_size=6))
def test_6j_matches_sympy(two_js):
    js = [Fraction(t, 2) for t in two_js]
    try:
        ref = float(sp_6j(*map(_r, js)))
    except ValueError:
        ref = 0.0  # sympy rejects non-integer triad sums; those 6j vanish
    assert wigner_6j(*js) == pytest.approx(ref, abs=1e-14)


@pytest.mark.parametrize("j1,j2", [(Fraction(1, 2), Fraction(1, 2)), (1, Fraction(1, 2)), (Fraction(3, 2), 1),
                                   (2, 1), (Fraction(5, 2), Fraction(3, 2))])
def test_cg_matches_sympy(j1, j2):
    j1, j2 = Fraction(j1), Fraction(j2)
    for j in np.arange(abs(j1 - j2), j1 + j2 + 1):
        j = Fraction(j).limit_denominator(2)
        for m1, m2 in product(_ms(j1), _ms(j2)):
            m = m1 + m2
            if abs(m) > j:
                continue
            ref = float(sp_cg(*map(_r, (j1, j2, j, m1, m2, m))))
            assert clebsch_gordan(j1, m1, j2, m2, j, m) == pytest.approx(ref, abs=1e-14)


@pytest.mark.parametrize("two_j1,two_j2", [(a, b) for a in range(6) for b in range(6)])
def test_3j_orthogonality(two_j1, two_j2):
    """sum_{m1 m2} (2 j3 + 1) 3j(j3 m3) 3j(j3' m3') = delta delta."""
    j1, j2 = Fraction(two_j1, 2), Fraction(two_j2, 2)
    j3s = [abs(j1 - j2) + k for k in range(int(j1 + j2 - abs(j1 - j2)) + 1)]
    for j3 in j3s:
        for m3 in _ms(j3):
            total = sum((2 * j3 + 1) * wigner_3j(j1, j2, j3, m1, m2, m3) ** 2
                        for m1, m2 in product(_ms(j1), _ms(j2)) if m1 + m2 + m3 == 0)
            assert abs(total - 1) < 1e-12


def test_selection_rules_and_symmetry():
    h = Fraction(1, 2)
    assert wigner_3j(1, 1, 3, 0, 0, 0) == 0.0  # triangle
    assert wigner_3j(1, 1, 1, 0, 0, 0) == 0.0  # odd sum with all m = 0
    assert wigner_3j(h, h, 1, h, h, -h) == 0.0  # m sum
    # odd column swap picks up (-1)^(j1+j2+j3)
    a = wigner_3j(Fraction(3, 2), 1, h, h, 0, -h)
    b = wigner_3j(1, Fraction(3, 2), h, 0, h, -h)
    assert a == pytest.approx(-b)


def test_rejects_non_half_integers():
    with pytest.raises(ValueError):
        wigner_3j(0.3, 1, 1, 0, 0, 0)
