import math
from fractions import Fraction

import pytest

from ietlab.algebraic import RealAlgebraic, is_pisot, real_roots, root_in
from ietlab.matrices import charpoly
from ietlab.polynomials import IntPoly


def P(*cs):
    return IntPoly(cs)


def test_from_rational():
    r = RealAlgebraic.from_rational(Fraction(3, 7))
    assert r.is_rational
    assert r.as_fraction() == Fraction(3, 7)
    assert float(r) == pytest.approx(3 / 7)


def test_real_roots_quadratic():
    roots = real_roots(P(-2, 0, 1))  # x^2 - 2
    assert len(roots) == 2
    assert float(roots[0]) == pytest.approx(-math.sqrt(2))
    assert float(roots[1]) == pytest.approx(math.sqrt(2))
    assert roots[0] < roots[1]


def test_real_roots_mixed_rational_and_irrational():
    p = P(-1, 2) * P(-2, 0, 1)  # (2x - 1)(x^2 - 2)
    roots = real_roots(p)
    assert len(roots) == 3
    vals = [float(r) for r in roots]
    assert vals == sorted(vals)
    assert roots[1].is_rational and roots[1].as_fraction() == Fraction(1, 2)


def test_real_roots_no_real():
    assert real_roots(P(1, 0, 1)) == []


def test_real_roots_multiple_roots_deduped():
    p = P(-1, 1) * P(-1, 1) * P(0, 1)
    roots = real_roots(p)
    assert [r.as_fraction() for r in roots] == [0, 1]


def test_refinement_narrows_and_preserves():
    r = real_roots(P(-2, 0, 1))[1]
    r.refine_to(Fraction(1, 10**9))
    assert r.hi - r.lo <= Fraction(1, 10**9)
    assert r.lo < r.hi
    assert float(r) == pytest.approx(math.sqrt(2), abs=1e-15)


def test_comparisons_with_rationals():
    r = real_roots(P(-2, 0, 1))[1]  # sqrt(2)
    assert r > 1
    assert r < 2
    assert r > Fraction(14142, 10001)
    assert r < Fraction(14143, 10000)
    assert not r == 1


def test_comparisons_between_algebraics():
    s2 = real_roots(P(-2, 0, 1))[1]
    s3 = real_roots(P(-3, 0, 1))[1]
    assert s2 < s3
    assert s3 > s2
    # equality of the same root reached via different isolating intervals
    a = root_in(P(-2, 0, 1), 1, 2)
    b = root_in(P(-2, 0, 1), Fraction(7, 5), Fraction(3, 2))
    assert a == b
    assert not a == s3


def test_root_in_validates():
    with pytest.raises(ValueError):
        root_in(P(-2, 0, 1), -2, 2)  # two roots
    with pytest.raises(ValueError):
        root_in(P(-2, 0, 1), 2, 3)  # no root
    with pytest.raises(ValueError):
        root_in(P(-4, 0, 1), 1, 2)  # endpoint is the root
    r = root_in(P(-1, -1, 1), 1, 2)
    assert float(r) == pytest.approx((1 + math.sqrt(5)) / 2)


def test_is_pisot_known_numbers():
    assert is_pisot(P(-1, -1, 1))  # golden ratio
    assert is_pisot(P(1, -3, 1))  # golden ratio squared
    assert is_pisot(P(-1, -1, 0, 1))  # plastic number
    assert is_pisot(P(-1, 0, 0, -1, 1))  # smallest quartic Pisot
    assert is_pisot(P(-2, 0, 1)) is False  # sqrt(2): conjugate modulus > 1
    assert not is_pisot(P(1, -1, -1, -1, 1))  # Salem: conjugates on the circle
    assert is_pisot(P(-3, 1))  # x - 3, the integer 3
    assert not is_pisot(P(-1, 1))  # 1 is not > 1... and not an algebraic unit anyway
    assert not is_pisot(P(1, 0, 1))  # no real roots


def test_is_pisot_rejects_nonmonic():
    assert not is_pisot(P(-1, 2))  # 1/2


def test_cycle_product_expansion_constant():
    # pinned loop matrix: self-reciprocal charpoly, expansion not Pisot
    M = [[1, 1, 1, 1], [0, 2, 1, 0], [1, 2, 2, 1], [1, 1, 1, 2]]
    cp = charpoly(M)
    assert cp == P(1, -7, 13, -7, 1)
    assert cp.is_self_reciprocal()
    assert not is_pisot(cp)
    beta = real_roots(cp)[-1]
    assert float(beta) == pytest.approx(1 / 0.22777710423438124, rel=1e-10)


def test_is_pisot_cubic_with_complex_pair():
    # the one real root ~9.37 dominates; pair modulus is 1/sqrt(beta)-small
    p = P(-1, 6, -10, 1)
    assert is_pisot(p)
    beta = real_roots(p)[-1]
    assert 1 / float(beta) == pytest.approx(0.106711, abs=1e-6)
