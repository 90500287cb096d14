import pytest

from valifs.balls import Ball, ClopenSet, unit_ball
from valifs.dvr import EQUAL, MIXED, DvrContext
from valifs.errors import BudgetExceededError, NotACoveringError, PrecisionError
from valifs.maps import DigitPrepend, Ifs, apply_word
from valifs.verify import (Covering, minimal_k, replay_sc, uniform_covering,
                           verify_local_fractality, verify_sc, verify_weak_contraction)


def B(ctx, r, *digits, offset=0):
    return Ball(ctx.element(digits, offset), r)


def brute_minimal_k(F, cov):
    """Elementwise oracle: least k where every word's point image lies in one set."""
    ctx = F.ctx
    pts = [x for x in ctx.elements() if x in cov.universe]
    k = 0
    while True:
        ok = True
        for word in F.words(k):
            image = {apply_word(F, word, x) for x in pts}
            if not any(all(any(y in b for b in s.balls) for y in image) for s in cov.sets):
                ok = False
                break
        if ok:
            return k
        k += 1


def test_sc_examples():
    ctx = DvrContext(2, EQUAL, 6)
    F = Ifs.digit_prepend(ctx)
    rep = verify_sc(F, uniform_covering(unit_ball(ctx), 2))
    assert rep.holds and rep.k == 2 and len(rep.certificate) == 4
    cov = Covering.of_balls([B(ctx, 1, 0), B(ctx, 2, 1), B(ctx, 2, 1, 1)])
    rep = verify_sc(F, cov)
    assert rep.holds and rep.k == 2
    assert minimal_k(F, cov) == 2 == brute_minimal_k(F, cov)
    assert replay_sc(rep, F, cov)
    W = Ifs.window(ctx, 1)
    rep = verify_sc(W, uniform_covering(unit_ball(ctx), 2))
    assert rep.holds and rep.k == 1 and len(rep.certificate) == 4


def test_minimal_k_can_undercut_depth():
    ctx = DvrContext(2, EQUAL, 6)
    F = Ifs.digit_prepend(ctx)
    # {B_1(0), B_3(1), B_3(1+t^2), B_2(1+t)}: images at depth 1 split B_1(1) but depth 3 fits
    cov = Covering.of_balls([B(ctx, 1, 0), B(ctx, 3, 1), B(ctx, 3, 1, 0, 1), B(ctx, 2, 1, 1)])
    assert verify_sc(F, cov).k == 3
    assert minimal_k(F, cov) == brute_minimal_k(F, cov) == 3
    whole = Covering.of_balls([unit_ball(ctx)])
    assert minimal_k(F, whole) == 0 == verify_sc(F, whole).k


def test_merged_sets_lower_minimal_k():
    ctx = DvrContext(2, EQUAL, 5)
    F = Ifs.digit_prepend(ctx)
    cov = Covering((ClopenSet((B(ctx, 2, 0, 0), B(ctx, 2, 1, 1))),
                    ClopenSet((B(ctx, 2, 1, 0), B(ctx, 2, 0, 1)))), unit_ball(ctx))
    assert verify_sc(F, cov).k == 2
    assert minimal_k(F, cov) == brute_minimal_k(F, cov) == 2


def test_sc_p3_uniform_oracle():
    ctx = DvrContext(3, EQUAL, 4)
    F = Ifs.digit_prepend(ctx)
    for r in range(3):
        cov = uniform_covering(unit_ball(ctx), r)
        rep = verify_sc(F, cov)
        assert rep.k == r == minimal_k(F, cov) == brute_minimal_k(F, cov)
        assert replay_sc(rep, F, cov)


def test_replay_rejects_tampering():
    ctx = DvrContext(2, EQUAL, 5)
    F = Ifs.digit_prepend(ctx)
    cov = uniform_covering(unit_ball(ctx), 2)
    rep = verify_sc(F, cov)
    bad = list(rep.certificate)
    w, i = bad[0]
    bad[0] = (w, (i + 1) % len(cov.sets))
    rep.certificate = bad
    assert not replay_sc(rep, F, cov)
    rep.certificate = bad[1:]
    assert not replay_sc(rep, F, cov)


def test_covering_errors():
    ctx = DvrContext(2, EQUAL, 4)
    with pytest.raises(NotACoveringError) as info:
        Covering.of_balls([B(ctx, 1, 0), B(ctx, 2, 1)])
    assert info.value.witness == B(ctx, 2, 1, 1)
    F = Ifs.digit_prepend(ctx)
    with pytest.raises(BudgetExceededError):
        verify_sc(F, uniform_covering(unit_ball(ctx), 3), budget=4)


def test_precision_error_when_depth_exceeds_precision():
    ctx = DvrContext(2, EQUAL, 3)
    F = Ifs.window(ctx, 1)
    cov = uniform_covering(unit_ball(ctx), 3)
    with pytest.raises(PrecisionError):
        verify_sc(F, cov)


def test_universe_must_be_invariant():
    ctx = DvrContext(2, EQUAL, 4)
    F = Ifs.digit_prepend(ctx)
    cov = Covering.of_balls([B(ctx, 1, 1)], universe=B(ctx, 1, 1))
    with pytest.raises(ValueError):
        verify_sc(F, cov)


@pytest.mark.parametrize("p,N,mode", [(2, 5, EQUAL), (2, 5, MIXED), (3, 3, MIXED)])
def test_weak_contraction_exhaustive(p, N, mode):
    ctx = DvrContext(p, mode, N)
    audit = verify_weak_contraction(Ifs.digit_prepend(ctx))
    n = p**N
    assert audit and audit.pairs_checked == n * (n - 1) // 2 * p


def test_weak_contraction_negative_control():
    class Identity(DigitPrepend):
        def apply(self, a):
            return a

    ctx = DvrContext(2, EQUAL, 3)
    audit = verify_weak_contraction(Ifs(ctx, (Identity(0),)))
    assert not audit and audit.witness is not None and audit.pairs_checked == 0


def test_weak_contraction_sampled_is_seeded():
    ctx = DvrContext(3, MIXED, 5)
    F = Ifs.digit_prepend(ctx)
    a = verify_weak_contraction(F, samples=500, seed=3)
    b = verify_weak_contraction(F, samples=500, seed=3)
    assert a.holds and a == b and a.pairs_checked == 1500


@pytest.mark.parametrize("p,N,center,m", [
    (2, 6, ((1,), -1), 3),
    (2, 6, ((1, 1), -2), 3),
    (3, 4, ((2, 1), -2), 2),
    (2, 5, ((), 0), 3),
])
def test_local_fractality(p, N, center, m):
    ctx = DvrContext(p, EQUAL, N)
    a = ctx.element(*center)
    rep = verify_local_fractality(a, m)
    assert rep.holds, rep.details["failures"]
    assert rep.k == m and len(rep.certificate) == p**m
    assert replay_sc(rep, Ifs.tail_fixing(ctx), uniform_covering(unit_ball(ctx, a), m))


def test_local_fractality_on_mixed():
    ctx = DvrContext(2, MIXED, 5)
    rep = verify_local_fractality(ctx.element((1,), -1), 2)
    assert rep.holds, rep.details["failures"]
