"""The three map families and exact images of elements, balls and clopen sets.

* ``DigitPrepend(s)``: ``a -> s + t*a`` on the valuation ring.
* ``WindowPrepend(block)``: ``a -> sum_j block[j] t^j + t^(mu+1) * a``.
* ``TailFixing(s)``: ``a -> a^- + s + t*(a - a^-)`` on the whole field; it
  keeps the negative-index digits and acts as ``DigitPrepend(s)`` on the rest.

Words are index sequences into an :class:`Ifs` read outermost-first: the word
``(i_1, ..., i_k)`` denotes ``f_{i_1} o ... o f_{i_k}``, so ``f_{i_k}`` is
applied first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .balls import Ball, ClopenSet, unit_ball
from .dvr import DvrContext, Element, add, minus_part, shift, sub, valuation, Unresolved
from .errors import DEFAULT_BUDGET, PrecisionError, check_budget


class IfsMap:
    """Base class; subclasses define ``block`` (prepended digits) and ``apply``."""

    block: tuple = ()

    @property
    def width(self) -> int:
        """How many digits one application prepends (the radius gain on balls)."""
        return len(self.block)

    def apply(self, a: Element) -> Element:
        raise NotImplementedError

    def image_ball(self, b: Ball) -> Ball:
        if b.radius < 0:
            raise ValueError(f"{type(self).__name__} images are balls only for radius >= 0")
        r = b.radius + self.width
        if r > b.ctx.precision:
            raise PrecisionError(f"image radius {r} exceeds precision {b.ctx.precision}")
        return Ball(self.apply(b.center), r)

    def check_digits(self, p: int):
        if not self.block:
            raise ValueError("block must be nonempty")
        for d in self.block:
            if not 0 <= d < p:
                raise ValueError(f"digit {d} outside [0, {p - 1}]")


def _block_element(ctx: DvrContext, block) -> Element:
    return ctx.element(block)


@dataclass(frozen=True)
class DigitPrepend(IfsMap):
    s: int

    @property
    def block(self):
        return (self.s,)

    def apply(self, a):
        return add(a.ctx.digit_const(self.s), shift(a, 1))


@dataclass(frozen=True)
class WindowPrepend(IfsMap):
    block: tuple

    def __post_init__(self):
        object.__setattr__(self, "block", tuple(self.block))

    @property
    def mu(self) -> int:
        return len(self.block) - 1

    def apply(self, a):
        return add(_block_element(a.ctx, self.block), shift(a, len(self.block)))


@dataclass(frozen=True)
class TailFixing(IfsMap):
    s: int

    @property
    def block(self):
        return (self.s,)

    def apply(self, a):
        N = a.ctx.precision
        if a.offset < -N:
            raise PrecisionError(f"tail-fixing map rejects offset {a.offset} < -{N}")
        m = minus_part(a)
        return add(add(m, a.ctx.digit_const(self.s)), shift(sub(a, m), 1))

    def image_ball(self, b):
        # Every point of a radius >= 0 ball shares the center's negative digits.
        return IfsMap.image_ball(self, b)


@dataclass(frozen=True)
class Ifs:
    """A finite list of maps over one context, acting on sets by union of images."""

    ctx: DvrContext
    maps: tuple

    def __post_init__(self):
        maps = tuple(self.maps)
        if not maps:
            raise ValueError("an IFS needs at least one map")
        kinds = {type(f) for f in maps}
        if len(kinds) != 1:
            raise ValueError("all maps of an IFS must belong to one family")
        if len({f.width for f in maps}) != 1:
            raise ValueError("window maps of one IFS must share the block length")
        for f in maps:
            f.check_digits(self.ctx.p)
        object.__setattr__(self, "maps", maps)

    @classmethod
    def digit_prepend(cls, ctx, digits=None):
        digits = range(ctx.p) if digits is None else digits
        return cls(ctx, tuple(DigitPrepend(s) for s in digits))

    @classmethod
    def window(cls, ctx, mu: int, blocks=None):
        if mu < 0:
            raise ValueError("mu must be >= 0")
        if blocks is None:
            blocks = itertools.product(range(ctx.p), repeat=mu + 1)
        return cls(ctx, tuple(WindowPrepend(tuple(b)) for b in blocks))

    @classmethod
    def tail_fixing(cls, ctx, digits=None):
        digits = range(ctx.p) if digits is None else digits
        return cls(ctx, tuple(TailFixing(s) for s in digits))

    @property
    def kind(self) -> str:
        f = self.maps[0]
        if isinstance(f, WindowPrepend):
            return "window"
        if isinstance(f, TailFixing):
            return "tail-fixing"
        if isinstance(f, DigitPrepend):
            return "digit-prepend"
        return type(f).__name__

    @property
    def width(self) -> int:
        return self.maps[0].width

    @property
    def is_full(self) -> bool:
        """True when the blocks are exactly all ``p^width`` digit blocks, so ``F`` is onto."""
        blocks = {f.block for f in self.maps}
        return len(self.maps) == len(blocks) == self.ctx.p**self.width

    def __len__(self):
        return len(self.maps)

    def words(self, k: int, budget=DEFAULT_BUDGET):
        check_budget(len(self.maps) ** k, budget)
        return itertools.product(range(len(self.maps)), repeat=k)


def apply_word(F: Ifs, word, a: Element) -> Element:
    for i in reversed(word):
        a = F.maps[i].apply(a)
    return a


def image_of_set(f: IfsMap, s: ClopenSet) -> ClopenSet:
    return ClopenSet(tuple(f.image_ball(b) for b in s.balls))


def system_image(F: Ifs, s: ClopenSet) -> ClopenSet:
    return ClopenSet(tuple(f.image_ball(b) for f in F.maps for b in s.balls))


def compose_image(F: Ifs, word, start: ClopenSet | Ball) -> ClopenSet:
    """Image of ``start`` under the word, outermost-first."""
    if isinstance(start, Ball):
        start = ClopenSet((start,))
    out = start
    for i in reversed(tuple(word)):
        out = image_of_set(F.maps[i], out)
    return out


def predicted_ball(F: Ifs, word, universe: Ball) -> Ball:
    """The ball the composition identity predicts, built directly from the blocks.

    For ``universe = B_0(a)`` the word ``(i_0, ..., i_{m-1})`` gives
    ``B_{m*w}(a^- + sum_k t^(k*w) block(i_k))`` where ``w`` is the block width.
    """
    ctx = F.ctx
    w = F.width
    center = universe.center
    digits = []
    for i in word:
        digits.extend(F.maps[i].block)
    radius = universe.radius + len(digits)
    if radius > ctx.precision:
        raise PrecisionError(f"predicted radius {radius} exceeds precision {ctx.precision}")
    if digits:
        center = add(center, shift(ctx.element(digits), universe.radius))
    return Ball(center, radius)


def verify_composition_identity(F: Ifs, m: int, universe: Ball | None = None,
                                budget=DEFAULT_BUDGET):
    """Check ``compose_image(word, universe) == predicted_ball(word)`` for every length-``m`` word.

    Returns ``(True, None)`` or ``(False, word)`` with the lexicographically
    least failing word.  ``universe`` defaults to the valuation ring; for
    tail-fixing systems pass ``B_0(a)``.
    """
    if universe is None:
        universe = unit_ball(F.ctx)
    start = ClopenSet((universe,))
    for word in F.words(m, budget):
        got = compose_image(F, word, start)
        want = ClopenSet((predicted_ball(F, word, universe),))
        if got != want or not got <= start:
            return False, word
    return True, None


class TailCheck(Enum):
    HOLDS = "holds"
    FAILS = "fails"
    NOT_APPLICABLE = "not-applicable"

    def __bool__(self):
        return self is not TailCheck.FAILS


def tail_preservation(f: TailFixing, a: Element, b: Element) -> TailCheck:
    """Compare ``(f(a) - f(b))^-`` with ``(a - b)^-``; vacuous when ``(a - b)^- = 0``."""
    lhs_target = minus_part(sub(a, b))
    if lhs_target.is_zero():
        return TailCheck.NOT_APPLICABLE
    got = minus_part(sub(f.apply(a), f.apply(b)))
    return TailCheck.HOLDS if got == lhs_target else TailCheck.FAILS


def contraction_gain(f: IfsMap, a: Element, b: Element):
    """``v(f(a) - f(b)) - v(a - b)``, or None when either side is below precision."""
    v0 = valuation(sub(a, b))
    v1 = valuation(sub(f.apply(a), f.apply(b)))
    if isinstance(v0, Unresolved) or isinstance(v1, Unresolved):
        return None
    return v1 - v0
