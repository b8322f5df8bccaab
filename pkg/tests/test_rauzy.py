from fractions import Fraction

import pytest

from ietlab.algebraic import root_in
from ietlab.iet import IET, Permutation, check_self_similar
from ietlab.matrices import mat_vec
from ietlab.numberfield import NumberField
from ietlab.polynomials import IntPoly
from ietlab.rauzy import (
    RauzyCycle,
    class_of,
    enumerate_cycles,
    rauzy_graph,
    rauzy_step,
    self_similar_from_cycle,
    survey,
    walk_from,
)

QUARTIC = IntPoly((1, -7, 13, -7, 1))


def quartic_iet():
    K = NumberField(root_in(QUARTIC, Fraction(1, 5), Fraction(1, 4)))
    r = K.generator_element()
    lengths = [
        r,
        1 - 4 * r + r * r,
        1 - 4 * r + 5 * r * r - r**3,
        -1 + 7 * r - 6 * r * r + r**3,
    ]
    return K, r, IET(Permutation([4, 2, 1, 3]), lengths)


def test_renormalization_loop_closes():
    K, r, E = quartic_iet()
    visited, P, end_pi, end_len = walk_from(E.perm, E.lengths, 8)
    assert [v.images for v, _ in visited] == [
        (4, 2, 1, 3),
        (4, 3, 2, 1),
        (2, 4, 3, 1),
        (3, 2, 4, 1),
        (3, 2, 4, 1),
        (4, 3, 2, 1),
        (4, 1, 3, 2),
        (4, 2, 1, 3),
    ]
    assert [t for _, t in visited] == [0, 1, 0, 0, 1, 0, 1, 1]
    assert P == [[1, 1, 1, 1], [0, 2, 1, 0], [1, 2, 2, 1], [1, 1, 1, 2]]
    for a, b in zip(end_len, E.lengths):
        assert a == r * b  # the loop contracts the lengths by rho exactly


def test_step_consistency():
    K, r, E = quartic_iet()
    pi, lengths = E.perm, E.lengths
    for _ in range(6):
        t, pi2, lengths2, A = rauzy_step(pi, lengths)
        back = mat_vec(A, list(lengths2))
        assert tuple(back) == tuple(lengths)
        pi, lengths = pi2, lengths2


def test_equal_intervals_rejected():
    K = NumberField(root_in(IntPoly((-1, -1, 1)), 1, 2))
    half = K.from_rational(Fraction(1, 2))
    with pytest.raises(ValueError):
        rauzy_step(Permutation([2, 1]), (half, half))


def test_rauzy_graph_small():
    cls3 = rauzy_graph(3)
    assert len(cls3) == 1 and len(cls3[0]) == 3
    cls4 = rauzy_graph(4)
    assert sorted(len(c) for c in cls4) == [6, 7]
    assert len(class_of((4, 2, 1, 3))) == 7
    with pytest.raises(ValueError):
        rauzy_graph(8)


def test_golden_cycle():
    cls2 = class_of((2, 1))
    assert cls2 == [(2, 1)]
    rows = survey(cls2, 2)
    assert rows[1] == (0, 0)  # single-step loops are not primitive
    assert rows[2] == (1, 1)
    cyc = next(c for c in enumerate_cycles(cls2, 2) if c.length == 2 and c.is_qualifying())
    assert cyc.charpoly() == IntPoly((1, -3, 1))
    E, rho = self_similar_from_cycle(cyc)
    assert E.perm == Permutation([2, 1])
    # rho = (3 - sqrt5)/2
    assert float(rho) == pytest.approx(0.3819660112501051, rel=1e-12)
    ok, sigma = check_self_similar(E, rho)
    assert ok


def test_no_cubic_candidates():
    cls3 = rauzy_graph(3)[0]
    rows = survey(cls3, 6)
    assert all(rows[L] == (0, 0) for L in range(3, 7))


def test_quartic_census_length_eight():
    cls = class_of((4, 2, 1, 3))
    rows = survey(cls, 8)
    assert rows[8] == (1, 1)
    hits = [c for c in enumerate_cycles(cls, 8) if c.length == 8 and c.is_qualifying()]
    assert len(hits) == 1
    assert hits[0].charpoly() == QUARTIC
    cyc = hits[0].with_base((4, 2, 1, 3))
    E, rho = self_similar_from_cycle(cyc)
    assert float(rho) == pytest.approx(0.22777710423438124, rel=1e-12)
    # lengths agree with the printed closed forms in rho = 1/beta
    rh = rho
    forms = [
        rh,
        1 - 4 * rh + rh * rh,
        1 - 4 * rh + 5 * rh * rh - rh**3,
        -1 + 7 * rh - 6 * rh * rh + rh**3,
    ]
    assert list(E.lengths) == forms
    ok, sigma = check_self_similar(E, rho)
    assert ok
    assert sigma.rules[1] == (1, 4, 3)


def test_self_reciprocal_filter_on_survey_hits():
    cls = class_of((4, 2, 1, 3))
    for cyc in enumerate_cycles(cls, 9):
        if cyc.is_qualifying():
            p = cyc.charpoly()
            assert p == p.reciprocal()


def test_seven_interval_class_sizes():
    classes = rauzy_graph(7)
    assert any(len(c) == 294 for c in classes)
    e2_class = class_of((5, 4, 6, 2, 7, 3, 1))
    assert len(e2_class) == 294
