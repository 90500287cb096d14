"""Reproductions of the worked constructions at small parameters."""

from __future__ import annotations

from .balls import ClopenSet, format_set, unit_ball
from .dvr import EQUAL, MIXED, DvrContext, format_digit_text
from .maps import Ifs, TailFixing, system_image, tail_preservation, verify_composition_identity
from .verify import minimal_k, uniform_covering, verify_local_fractality, verify_sc, verify_weak_contraction


def _line(ok, text):
    return f"[{'ok' if ok else 'FAIL'}] {text}"


def _ring_checks(F: Ifs, max_depth: int, max_radius: int, lines):
    ctx = F.ctx
    R = ClopenSet((unit_ball(ctx),))
    image = system_image(F, R)
    ok = image == R
    lines.append(_line(ok, f"F(R) = {format_set(image)} equals R = {format_set(R)}"))
    for m in range(1, max_depth + 1):
        good, bad = verify_composition_identity(F, m)
        ok &= good
        lines.append(_line(good, f"depth {m}: all {len(F) ** m} composition images are the "
                                 f"predicted radius-{m * F.width} balls"
                                 + ("" if good else f" (first failure {bad})")))
    for r in range(max_radius + 1):
        c = uniform_covering(unit_ball(ctx), r)
        rep = verify_sc(F, c)
        mk = minimal_k(F, c)
        good = rep.holds and mk == rep.k
        ok &= good
        lines.append(_line(good, f"SC for the {len(c.sets)} radius-{r} balls: k = {rep.k} "
                                 f"(minimal {mk})"))
    return ok


def demo_digit_prepend(p=2, precision=8):
    ctx = DvrContext(p, EQUAL, precision)
    F = Ifs.digit_prepend(ctx)
    lines = [f"digit-prepend system f_s(a) = s + t a on F_{p}[[t]], precision {precision}"]
    ok = _ring_checks(F, min(6, precision), min(6, precision), lines)
    return ok, "\n".join(lines) + "\n"


def demo_window(p=2, mu=1, precision=8):
    ctx = DvrContext(p, EQUAL, precision)
    F = Ifs.window(ctx, mu)
    lines = [f"window system with blocks of length {mu + 1} ({len(F)} maps) on F_{p}[[t]], "
             f"precision {precision}"]
    depth = min(3, precision // (mu + 1))
    ok = _ring_checks(F, depth, min(4, precision), lines)
    return ok, "\n".join(lines) + "\n"


def demo_mixed(p=2, precision=8):
    ctx = DvrContext(p, MIXED, precision)
    F = Ifs.digit_prepend(ctx)
    lines = [f"digit-prepend system f_s(a) = s + {p} a on Z_{p} mod {p}^{precision}"]
    ok = _ring_checks(F, min(4, precision), min(4, precision), lines)
    samples = None if p**precision <= 2**10 else 10**4
    audit = verify_weak_contraction(F, samples=samples)
    ok &= audit.holds
    how = "all" if samples is None else f"{samples} sampled"
    lines.append(_line(audit.holds, f"weak contraction d(f a, f b) < d(a, b) on {how} pairs "
                                    f"({audit.pairs_checked} map evaluations)"))
    return ok, "\n".join(lines) + "\n"


def demo_local(center="offset=-1; digits=1", p=2, precision=8, depth=3):
    ctx = DvrContext(p, EQUAL, precision)
    a = ctx.parse(center)
    rep = verify_local_fractality(a, depth)
    checks = rep.details["checks"]
    lines = [f"tail-fixing system on B_0(a), a = {format_digit_text(a)}, precision {precision}",
             _line(checks["invariance"], f"F(B_0(a)) = B_0(a) = {rep.details['universe']}")]
    for m, good in checks["composition identity"].items():
        lines.append(_line(good, f"depth {m}: composition images are radius-{m} balls inside B_0(a)"))
    for r, good in checks["sc uniform radius"].items():
        lines.append(_line(good, f"SC for the uniform radius-{r} covering of B_0(a): k = {r}"))
    lines.append(_line(checks["conjugate to ring system"],
                       "translation by a^- conjugates the system to the digit-prepend system on R"))
    ok = rep.holds
    small = DvrContext(p, EQUAL, 3)
    tail_ok = all(tail_preservation(TailFixing(s), x, y)
                  for s in range(p) for x in small.elements(-2) for y in small.elements(-2))
    ok &= tail_ok
    lines.append(_line(tail_ok, "(f(x) - f(y))^- = (x - y)^- for all x, y with offset -2 at precision 3"))
    return ok, "\n".join(lines) + "\n"


DEMOS = {
    3: lambda **kw: demo_digit_prepend(),
    4: lambda mu=1, **kw: demo_window(mu=mu),
    5: lambda **kw: demo_mixed(),
    18: lambda center="offset=-1; digits=1", **kw: demo_local(center=center),
}
