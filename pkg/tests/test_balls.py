import itertools

import pytest
from hypothesis import given, strategies as st

from valifs.balls import (Ball, ClopenSet, ball_distance_ok, coset_decompose, difference,
                          format_ball, intersect, member, normalize, parse_ball,
                          refine_to_uniform_radius, subset_of, union, unit_ball)
from valifs.dvr import EQUAL, MIXED, DvrContext, shift
from valifs.errors import NotACoveringError, PrecisionError

E2 = DvrContext(2, EQUAL, 4)


def B(ctx, radius, *digits, offset=0):
    return Ball(ctx.element(digits, offset), radius)


def test_center_is_canonical():
    b = B(E2, 2, 1, 1, 1, 1)
    assert b.center == E2.element((1, 1))
    assert b == B(E2, 2, 1, 1, 0, 1)
    with pytest.raises(PrecisionError):
        B(E2, 5)


@pytest.mark.parametrize("mode", [EQUAL, MIXED])
def test_membership_matches_valuation(mode):
    ctx = DvrContext(3, mode, 3)
    for c in list(ctx.elements())[::4]:
        for r in range(4):
            b = Ball(c, r)
            for x in ctx.elements():
                assert (x in b) == ball_distance_ok(x, b)


def test_normalize_examples():
    assert normalize([B(E2, 1, 0), B(E2, 1, 1)]) == ClopenSet.of(B(E2, 0))
    assert normalize([B(E2, 2, 1), B(E2, 1, 1)]) == ClopenSet.of(B(E2, 1, 1))
    assert normalize([]) == ClopenSet()
    assert not normalize([])


def test_set_operation_examples():
    assert subset_of(ClopenSet.of(B(E2, 1, 1)), ClopenSet.of(B(E2, 0)))
    assert intersect(ClopenSet.of(B(E2, 1, 0)), ClopenSet.of(B(E2, 1, 1))) == ClopenSet()
    allr1 = ClopenSet(tuple(B(E2, 1, s) for s in range(2)))
    assert allr1 == ClopenSet.of(unit_ball(E2))
    p3 = DvrContext(3, EQUAL, 3)
    assert ClopenSet(tuple(B(p3, 1, s) for s in range(3))) == ClopenSet.of(unit_ball(p3))


def test_refine_examples():
    cover = [B(E2, 1, 0), B(E2, 2, 1), B(E2, 2, 1, 1)]
    got = refine_to_uniform_radius(cover, 2)
    assert got == (B(E2, 2, 0, 0), B(E2, 2, 0, 1), B(E2, 2, 1, 0), B(E2, 2, 1, 1))
    assert all(any(c.contains_ball(b) for c in cover) for b in got)
    assert refine_to_uniform_radius([unit_ball(E2)], 0) == (unit_ball(E2),)
    with pytest.raises(NotACoveringError) as info:
        refine_to_uniform_radius(cover[:2], 2)
    assert info.value.witness == B(E2, 2, 1, 1)
    with pytest.raises(ValueError):
        refine_to_uniform_radius(cover, 1)


def test_coset_decompose_examples():
    got = coset_decompose(unit_ball(E2), 2)
    assert set(got) == {B(E2, 2, 0), B(E2, 2, 1), B(E2, 2, 0, 1), B(E2, 2, 1, 1)}
    assert len(got) == 4
    assert coset_decompose(B(E2, 3, 1), 3) == (B(E2, 3, 1),)
    p3 = DvrContext(3, EQUAL, 2)
    parts = coset_decompose(Ball(p3.zero(), -1), 0)
    assert len(parts) == 3
    assert {b.center.digit(-1) for b in parts} == {0, 1, 2}
    assert normalize(parts) == ClopenSet.of(Ball(p3.zero(), -1))


def test_ball_text_round_trip():
    for b in [B(E2, 2, 1, 1), unit_ball(E2), B(E2, 0, 1, offset=-1), B(E2, -1, 1, offset=-2)]:
        assert parse_ball(E2, format_ball(b)) == b
    assert format_ball(B(E2, 2, 1, 1)) == "B(2)@digits=1,1"
    assert parse_ball(E2, "B(1)@digits=1,1,1") == B(E2, 1, 1)


def _ball_lists(p, N):
    def build(items):
        ctx = DvrContext(p, EQUAL, N)
        return [Ball(ctx.element(ds), r) for r, ds in items]
    item = st.tuples(st.integers(0, N), st.lists(st.integers(0, p - 1), min_size=N, max_size=N))
    return st.lists(item, max_size=8).map(build)


def _points(p, N):
    return list(DvrContext(p, EQUAL, N).elements())


def _brute(balls, points):
    return frozenset(x for x in points if any(x in b for b in balls))


@pytest.mark.parametrize("p,N", [(2, 3), (2, 5), (3, 3)])
def test_normalize_idempotent_and_faithful(p, N):
    points = _points(p, N)

    @given(_ball_lists(p, N))
    def check(balls):
        s = normalize(balls)
        assert normalize(s.balls) == s
        assert _brute(s.balls, points) == _brute(balls, points)
        for a, b in itertools.combinations(s.balls, 2):
            assert not a.meets(b)
        assert list(s.balls) == sorted(s.balls, key=Ball.sort_key)

    check()


@pytest.mark.parametrize("p,N", [(2, 4), (3, 3)])
def test_set_algebra_against_brute_force(p, N):
    points = _points(p, N)

    @given(_ball_lists(p, N), _ball_lists(p, N), _ball_lists(p, N))
    def check(xs, ys, zs):
        a, b, c = normalize(xs), normalize(ys), normalize(zs)
        A, Bs = _brute(a.balls, points), _brute(b.balls, points)
        assert _brute(union(a, b).balls, points) == A | Bs
        assert _brute(intersect(a, b).balls, points) == A & Bs
        assert _brute(difference(a, b).balls, points) == A - Bs
        assert subset_of(a, b) == (A <= Bs)
        assert all(member(x, a) == (x in A) for x in points[::3])
        # Boolean-algebra laws hold syntactically because the form is canonical.
        assert (a | b) | c == a | (b | c)
        assert (a & b) & c == a & (b & c)
        assert a & (b | c) == (a & b) | (a & c)
        assert a | (b & c) == (a | b) & (a | c)
        assert a | (a & b) == a
        assert a & (a | b) == a

    check()


@given(st.integers(0, 3), st.integers(0, 2), st.lists(st.integers(0, 2), min_size=4, max_size=4))
def test_coset_decompose_then_normalize(r, extra, ds):
    ctx = DvrContext(3, EQUAL, 4)
    b = Ball(ctx.element(ds), r)
    m = min(4, r + extra)
    parts = coset_decompose(b, m)
    assert len(parts) == 3 ** (m - r)
    assert normalize(parts) == ClopenSet.of(b)


def test_field_is_chain_of_scaled_rings():
    # t^-k R = B_{-k}(0): nested, and multiplying by t^k lands in R
    ctx = DvrContext(2, EQUAL, 3)
    for k in range(3):
        big = Ball(ctx.zero(), -k)
        assert big.contains_ball(Ball(ctx.zero(), -k + 1))
        assert ctx.element((1,), -k - 1) not in big
        for x in ctx.elements(-k):
            assert x in big and shift(x, k).in_ring()
