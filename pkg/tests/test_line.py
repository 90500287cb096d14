import itertools
from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from valifs.errors import NotACoveringError
from valifs.line import (NEG_INF, POS_INF, WHOLE_LINE, IntervalUnion, LineCovering,
                         LipschitzShiftMap, RationalInterval, attractor_closure_check, g,
                         g_inverse, preimage, sc_star_constant, sc_star_line, sup_diam_at_depth,
                         word_image)
from valifs.config import line_sample_words

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=50)


def worked():
    return LineCovering(IntervalUnion.of_open([(NEG_INF, Q(1, 4)), (Q(7, 8), POS_INF)]), ((0, 1),))


def test_image_examples():
    assert LipschitzShiftMap(0).image(WHOLE_LINE) == RationalInterval.open(Q(-1, 2), Q(1, 2))
    assert LipschitzShiftMap(3).image(WHOLE_LINE) == RationalInterval.open(Q(5, 2), Q(7, 2))
    assert LipschitzShiftMap(0).image(RationalInterval.closed(0, 0)) == RationalInterval.closed(0, 0)


def test_sup_diam():
    assert sup_diam_at_depth(0) == POS_INF
    assert sup_diam_at_depth(1) == 1
    assert sup_diam_at_depth(5) == Q(1, 16)


def test_worked_instance():
    c = worked()
    assert sc_star_constant(c) == Q(1, 16)
    rep = sc_star_line(c, line_sample_words(6))
    assert rep.verdict == "holds-with-sound-bound" and rep.k == 6
    assert rep.details["c"] == "1/16"
    assert len(rep.certificate) == len(line_sample_words(6))


def test_whole_line_rest_gives_zero():
    c = LineCovering(IntervalUnion.of_open([(NEG_INF, POS_INF)]), ())
    assert sc_star_line(c).k == 0


def test_covering_validation():
    with pytest.raises(NotACoveringError):
        LineCovering(IntervalUnion.of_open([(NEG_INF, 0), (1, POS_INF)]), ((0, 1),))
    with pytest.raises(ValueError):
        LineCovering(IntervalUnion.of_open([(NEG_INF, POS_INF)]), ((1, 1),))
    with pytest.raises(ValueError):
        LineCovering(IntervalUnion((RationalInterval(NEG_INF, 0, False, True),
                                    RationalInterval.open(5, POS_INF))), ((-1, 6),))


def test_interval_union_merges():
    u = IntervalUnion.of_open([(0, 1), (1, 2)])
    assert len(u.pieces) == 2 and u.first_gap() == 0
    u = IntervalUnion((RationalInterval(0, 1, False, True), RationalInterval.open(1, 2)))
    assert u.pieces == (RationalInterval.open(0, 2),)


def test_closure_examples():
    n, x = preimage(Q(17, 5))
    assert n == 3 and x == 4
    assert preimage(0) == (0, 0)
    assert preimage(Q(1, 2)) is None
    ok, bad = attractor_closure_check(5)
    assert ok and bad == []


@given(rationals, rationals)
def test_lipschitz_half(x, y):
    assert abs(g(x) - g(y)) <= abs(x - y) / 2
    if x < y:
        assert g(x) < g(y)


@given(st.fractions(min_value=Q(-49, 100), max_value=Q(49, 100), max_denominator=100))
def test_g_inverse(r):
    assert g(g_inverse(r)) == r


def test_lipschitz_grid_strict():
    grid = [Q(n, d) for n in range(-12, 13) for d in (1, 2, 3, 7)]
    for x, y in itertools.combinations(set(grid), 2):
        assert abs(g(x) - g(y)) < abs(x - y) / 2


def test_sup_diam_is_sound():
    for k in range(1, 6):
        for word in itertools.product(range(-2, 3), repeat=k):
            assert word_image(word).diameter <= sup_diam_at_depth(k)


def test_images_shrink_along_words():
    for word in itertools.product(range(-2, 3), repeat=3):
        outer = word_image(word[:2])
        assert outer.contains_interval(word_image(word))
