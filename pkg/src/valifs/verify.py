"""Deciding the shrinking condition (SC) for ball coverings, plus contraction audits.

For the digit, window and tail-fixing systems every depth-``k`` composition
image of ``B_0(a)`` is a single ball of radius ``k * w`` (``w`` the block
width), so a covering whose balls have radius at most ``m`` is refined by the
depth ``ceil(m / w)`` images.  :func:`verify_sc` certifies that depth word by
word; :func:`minimal_k` scans upward for the least depth that works.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .balls import Ball, ClopenSet, check_covering, coset_decompose, format_ball, unit_ball
from .dvr import Element, distance, sub
from .errors import DEFAULT_BUDGET, PrecisionError, check_budget
from .maps import DigitPrepend, Ifs, compose_image, system_image, verify_composition_identity
from .report import FAILS, HOLDS, VerificationReport


@dataclass(frozen=True)
class Covering:
    """Finite covering of ``universe`` by clopen sets; checked on construction."""

    sets: tuple
    universe: Ball

    def __post_init__(self):
        sets = tuple(s if isinstance(s, ClopenSet) else ClopenSet((s,)) for s in self.sets)
        if not sets:
            raise ValueError("a covering needs at least one set")
        object.__setattr__(self, "sets", sets)
        check_covering(self.universe, sets)

    @classmethod
    def of_balls(cls, balls, universe=None):
        balls = list(balls)
        if universe is None:
            universe = unit_ball(balls[0].ctx)
        return cls(tuple(ClopenSet((b,)) for b in balls), universe)

    def max_radius(self) -> int:
        """Largest radius among balls meeting the universe, relative to it (at least 0)."""
        r0 = self.universe.radius
        radii = [b.radius for s in self.sets for b in s.balls if b.meets(self.universe)]
        return max([r0] + radii) - r0

    def first_container(self, image: ClopenSet):
        for i, s in enumerate(self.sets):
            if image <= s:
                return i
        return None


def _check_universe(F: Ifs, universe: Ball):
    start = ClopenSet((universe,))
    if not system_image(F, start) <= start:
        raise ValueError(f"universe {format_ball(universe)} is not mapped into itself")


def sc_depth(F: Ifs, c: Covering) -> int:
    """Refinement depth: the covering radius divided by the block width, rounded up."""
    m = c.max_radius()
    w = F.width
    return -(-m // w)


def verify_sc(F: Ifs, c: Covering, budget=DEFAULT_BUDGET) -> VerificationReport:
    _check_universe(F, c.universe)
    k = sc_depth(F, c)
    need = c.universe.radius + k * F.width
    if need > F.ctx.precision:
        raise PrecisionError(f"depth {k} needs radius {need} > precision {F.ctx.precision}")
    start = ClopenSet((c.universe,))
    certificate = []
    for word in F.words(k, budget):
        image = compose_image(F, word, start)
        idx = c.first_container(image)
        if idx is None:
            return VerificationReport(FAILS, k=k, certificate=certificate, witness=word,
                                      kind="ball-covering")
        certificate.append((word, idx))
    return VerificationReport(
        HOLDS, k=k, certificate=certificate, kind="ball-covering",
        details={"refinement radius": c.max_radius(), "block width": F.width,
                 "universe": format_ball(c.universe)},
    )


def holds_at_depth(F: Ifs, c: Covering, k: int, budget=DEFAULT_BUDGET) -> bool:
    start = ClopenSet((c.universe,))
    return all(c.first_container(compose_image(F, w, start)) is not None
               for w in F.words(k, budget))


def minimal_k(F: Ifs, c: Covering, budget=DEFAULT_BUDGET) -> int:
    """Least depth at which every composition image lies in one covering set.

    Scans upward; images only shrink as words extend, so the first depth that
    works is the answer.
    """
    _check_universe(F, c.universe)
    k = 0
    while c.universe.radius + k * F.width <= F.ctx.precision:
        if holds_at_depth(F, c, k, budget):
            return k
        k += 1
    raise PrecisionError(f"no depth up to precision {F.ctx.precision} satisfies the covering")


def replay_sc(report: VerificationReport, F: Ifs, c: Covering) -> bool:
    """Re-check a ball-covering certificate from scratch."""
    if not report.holds:
        return False
    start = ClopenSet((c.universe,))
    words = [tuple(w) for w, _ in report.certificate]
    if sorted(words) != list(F.words(report.k)):
        return False
    for w, i in report.certificate:
        if not 0 <= i < len(c.sets):
            return False
        if not compose_image(F, w, start) <= c.sets[i]:
            return False
    return True


@dataclass
class ContractionAudit:
    holds: bool
    pairs_checked: int
    witness: tuple | None = None

    def __bool__(self):
        return self.holds


def _index_pairs(size, samples, seed):
    if samples is None:
        for i in range(size):
            for j in range(i + 1, size):
                yield i, j
        return
    rng = random.Random(seed)
    for _ in range(samples):
        x = rng.randrange(size)
        y = rng.randrange(size - 1)
        yield x, (y + 1 if y >= x else y)


def verify_weak_contraction(F: Ifs, budget=DEFAULT_BUDGET, samples=None,
                            seed=0) -> ContractionAudit:
    """Check ``d(f a, f b) < d(a, b)`` for distinct ring elements and every map.

    Exhaustive over all pairs unless ``samples`` is given, in which case that
    many seeded random pairs are drawn.
    """
    ctx = F.ctx
    size = ctx.p**ctx.precision
    npairs = size * (size - 1) // 2 if samples is None else samples
    check_budget(npairs * len(F.maps), budget)
    cache = {}

    def images(n):
        if n not in cache:
            a = ctx.from_int(n)
            cache[n] = (a, [f.apply(a) for f in F.maps])
        return cache[n]

    checked = 0
    for x, y in _index_pairs(size, samples, seed):
        a, fa = images(x)
        b, fb = images(y)
        d0 = distance(a, b)
        for f, u, v in zip(F.maps, fa, fb):
            if not distance(u, v) < d0:
                return ContractionAudit(False, checked, (f, a, b))
            checked += 1
    return ContractionAudit(True, checked)


def uniform_covering(universe: Ball, r: int) -> Covering:
    return Covering(tuple(ClopenSet((b,)) for b in coset_decompose(universe, r)), universe)


def verify_local_fractality(a: Element, m: int, budget=DEFAULT_BUDGET) -> VerificationReport:
    """Certify that ``B_0(a)`` is an attractor of the tail-fixing system up to depth ``m``.

    Checks invariance ``F(B_0(a)) = B_0(a)``, the composition-to-ball identity
    for every depth up to ``m``, SC with ``k = r`` for every uniform radius-``r``
    covering with ``r <= m``, and that translation by ``a^-`` conjugates the
    restricted system to the digit-prepend system on the valuation ring.
    """
    ctx = a.ctx
    F = Ifs.tail_fixing(ctx)
    universe = unit_ball(ctx, a)
    start = ClopenSet((universe,))
    checks = {}
    failures = []

    checks["invariance"] = system_image(F, start) == start
    if not checks["invariance"]:
        failures.append("invariance")

    identity = {}
    for depth in range(1, m + 1):
        ok, bad = verify_composition_identity(F, depth, universe, budget)
        identity[depth] = ok
        if not ok:
            failures.append(f"identity depth {depth}: {bad}")
    checks["composition identity"] = identity

    sc = {}
    last = None
    for r in range(m + 1):
        c = uniform_covering(universe, r)
        rep = verify_sc(F, c, budget)
        ok = rep.holds and rep.k == r and minimal_k(F, c, budget) == r
        sc[r] = ok
        last = rep
        if not ok:
            failures.append(f"sc radius {r}")
    checks["sc uniform radius"] = sc

    check_budget(ctx.p**ctx.precision * len(F.maps), budget)
    shift_back = universe.center
    conj = True
    for x in ctx.elements():
        y = x + shift_back
        for f in F.maps:
            if sub(f.apply(y), shift_back) != DigitPrepend(f.s).apply(x):
                conj = False
                failures.append(f"conjugacy at {x}")
                break
        if not conj:
            break
    checks["conjugate to ring system"] = conj

    verdict = HOLDS if not failures else FAILS
    return VerificationReport(
        verdict, k=m, certificate=list(last.certificate) if last else [],
        kind="local-fractality",
        details={"universe": format_ball(universe), "checks": checks, "failures": failures},
    )
