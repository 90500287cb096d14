"""Ultrametric balls and the Boolean algebra of finite unions of balls.

``B_alpha(a)`` is the set of elements agreeing with ``a`` on every digit below
index ``alpha``, which is ``{b : v(a - b) >= alpha}`` in both characteristic
modes.  Any point of a ball is a center, so balls are stored with the
canonical center whose digits at indices ``>= alpha`` are zero.
"""

from __future__ import annotations

import itertools
import re
from collections import defaultdict
from dataclasses import dataclass

from .dvr import DvrContext, Element, first_difference, format_digit_text, parse_digit_text
from .errors import NotACoveringError, PrecisionError


def _set_digit(a: Element, j: int, d: int) -> Element:
    low = min(a.offset, j)
    ds = list(a.digits_from(low))
    ds[j - low] = d
    return Element._raw(a.ctx, low, ds)


@dataclass(frozen=True)
class Ball:
    center: Element
    radius: int

    def __post_init__(self):
        N = self.center.ctx.precision
        if self.radius > N:
            raise PrecisionError(f"ball radius {self.radius} exceeds precision {N}")
        object.__setattr__(self, "center", self.center.truncate(self.radius))

    @property
    def ctx(self) -> DvrContext:
        return self.center.ctx

    def sort_key(self):
        return (self.radius, self.center.offset, self.center.digits)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"Ball({format_ball(self)})"

    def __contains__(self, x: Element) -> bool:
        return x.truncate(self.radius) == self.center

    def contains_ball(self, other: "Ball") -> bool:
        return other.radius >= self.radius and other.center.truncate(self.radius) == self.center

    def meets(self, other: "Ball") -> bool:
        return self.contains_ball(other) or other.contains_ball(self)

    def parent(self) -> "Ball":
        return Ball(self.center, self.radius - 1)

    def children(self):
        r = self.radius
        if r + 1 > self.ctx.precision:
            raise PrecisionError(f"cannot split a radius-{r} ball at precision {self.ctx.precision}")
        return [Ball(_set_digit(self.center, r, d), r + 1) for d in range(self.ctx.p)]


def unit_ball(ctx: DvrContext, center: Element | None = None) -> Ball:
    """``B_0(center)``; the valuation ring itself when no center is given."""
    return Ball(center if center is not None else ctx.zero(), 0)


def ball_distance_ok(x: Element, b: Ball) -> bool:
    """Membership decided through the valuation of the difference (reference route)."""
    return first_difference(x, b.center) >= b.radius


def _normalize(balls, p):
    current = set(balls)
    while True:
        radii = sorted({b.radius for b in current})
        kept = set()
        for b in current:
            covered = False
            for r in radii:
                if r >= b.radius:
                    break
                if Ball(b.center, r) in current:
                    covered = True
                    break
            if not covered:
                kept.add(b)
        groups = defaultdict(list)
        for b in kept:
            groups[b.parent()].append(b)
        merged = False
        for parent, kids in groups.items():
            if len(kids) == p:
                for k in kids:
                    kept.discard(k)
                kept.add(parent)
                merged = True
        current = kept
        if not merged:
            return tuple(sorted(current, key=Ball.sort_key))


@dataclass(frozen=True)
class ClopenSet:
    """A finite union of balls kept in canonical form.

    Construction normalizes: contained balls are dropped and every complete
    family of ``p`` sibling balls is merged into its parent, repeatedly.  Two
    ClopenSets are equal as sets iff their ball tuples are equal.
    """

    balls: tuple = ()

    def __post_init__(self):
        balls = tuple(self.balls)
        if balls:
            ctx = balls[0].ctx
            for b in balls:
                if b.ctx != ctx:
                    raise ValueError("balls from different contexts")
            balls = _normalize(balls, ctx.p)
        object.__setattr__(self, "balls", balls)

    @classmethod
    def of(cls, *balls) -> "ClopenSet":
        return cls(balls)

    def __iter__(self):
        return iter(self.balls)

    def __len__(self):
        return len(self.balls)

    def __bool__(self):
        return bool(self.balls)

    def __contains__(self, x: Element) -> bool:
        return member(x, self)

    def __or__(self, other):
        return union(self, other)

    def __and__(self, other):
        return intersect(self, other)

    def __sub__(self, other):
        return difference(self, other)

    def __le__(self, other):
        return subset_of(self, other)

    def max_radius(self):
        return max((b.radius for b in self.balls), default=None)


def normalize(balls) -> ClopenSet:
    return ClopenSet(tuple(balls))


def member(x: Element, s: ClopenSet) -> bool:
    return any(x in b for b in s.balls)


def subset_of(a: ClopenSet, b: ClopenSet) -> bool:
    # A normalized set contains a ball iff one of its balls does.
    return all(any(big.contains_ball(small) for big in b.balls) for small in a.balls)


def union(a: ClopenSet, b: ClopenSet) -> ClopenSet:
    return ClopenSet(a.balls + b.balls)


def intersect(a: ClopenSet, b: ClopenSet) -> ClopenSet:
    out = []
    for x in a.balls:
        for y in b.balls:
            if x.contains_ball(y):
                out.append(y)
            elif y.contains_ball(x):
                out.append(x)
    return ClopenSet(tuple(out))


def _subtract_ball(ball, others):
    relevant = [o for o in others if ball.meets(o)]
    if not relevant:
        return [ball]
    if any(o.contains_ball(ball) for o in relevant):
        return []
    out = []
    for child in ball.children():
        out.extend(_subtract_ball(child, relevant))
    return out


def difference(a: ClopenSet, b: ClopenSet) -> ClopenSet:
    out = []
    for x in a.balls:
        out.extend(_subtract_ball(x, b.balls))
    return ClopenSet(tuple(out))


def uncovered_part(universe: Ball, sets) -> ClopenSet:
    """Part of ``universe`` outside the union of ``sets`` (each a Ball or ClopenSet)."""
    pieces = []
    for s in sets:
        pieces.extend([s] if isinstance(s, Ball) else s.balls)
    return difference(ClopenSet((universe,)), ClopenSet(tuple(pieces)))


def check_covering(universe: Ball, sets) -> None:
    rest = uncovered_part(universe, sets)
    if rest:
        raise NotACoveringError(rest.balls[0])


def coset_decompose(b: Ball, m: int) -> tuple:
    """The ``p^(m - radius)`` radius-``m`` balls partitioning ``b``, in sorted order.

    Returned as a plain tuple: normalizing would merge them back into ``b``.
    """
    r = b.radius
    if m < r:
        raise ValueError(f"finer radius {m} is below the ball radius {r}")
    if m > b.ctx.precision:
        raise PrecisionError(f"radius {m} exceeds precision {b.ctx.precision}")
    out = []
    for ds in itertools.product(range(b.ctx.p), repeat=m - r):
        c = b.center
        for j, d in enumerate(ds):
            if d:
                c = _set_digit(c, r + j, d)
        out.append(Ball(c, m))
    return tuple(sorted(out, key=Ball.sort_key))


def refine_to_uniform_radius(cover, m: int, universe: Ball | None = None) -> tuple:
    """Refine a ball covering of ``universe`` (default ``B_0(0)``) to all radius-``m`` balls.

    Raises NotACoveringError carrying the least uncovered ball when ``cover``
    leaves a gap.
    """
    cover = list(cover)
    if not cover and universe is None:
        raise ValueError("empty covering")
    ctx = (universe or cover[0]).ctx
    if universe is None:
        universe = unit_ball(ctx)
    check_covering(universe, cover)
    for b in cover:
        if b.radius > m:
            raise ValueError(f"refinement radius {m} is below covering radius {b.radius}")
    return coset_decompose(universe, m)


_BALL_RE = re.compile(r"^\s*B\((-?\d+)\)@(.*)$")


def parse_ball(ctx: DvrContext, text: str) -> Ball:
    """Parse ``"B(<radius>)@<digit-text>"``."""
    m = _BALL_RE.match(text)
    if not m:
        raise ValueError(f"bad ball text {text!r}")
    offset, digits = parse_digit_text(m.group(2))
    radius = int(m.group(1))
    # Digits at or above the radius do not matter; drop them before the precision check.
    if radius < offset + len(digits):
        digits = digits[: max(0, radius - offset)]
    return Ball(ctx.element(digits, offset), radius)


def format_ball(b: Ball) -> str:
    return f"B({b.radius})@{format_digit_text(b.center)}"


def format_set(s: ClopenSet) -> str:
    if not s.balls:
        return "{}"
    return "{" + ", ".join(format_ball(b) for b in s.balls) + "}"
