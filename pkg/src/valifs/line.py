"""Exact rational model of the real line with the Lipschitz-1/2 shifted family.

The base map is ``g(x) = x / (2 (1 + |x|))``, a strictly increasing bijection
of the line onto ``(-1/2, 1/2)`` with Lipschitz constant 1/2 that sends
rationals to rationals; ``f_n(x) = n + g(x)`` for integers ``n``.  Endpoints
are ``Fraction`` values or the float infinities ``NEG_INF`` / ``POS_INF``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotACoveringError
from .report import SOUND_BOUND, VerificationReport

NEG_INF = -math.inf
POS_INF = math.inf
HALF = Fraction(1, 2)


def parse_rational(x):
    if isinstance(x, str):
        s = x.strip().lower()
        if s in ("inf", "+inf", "infinity"):
            return POS_INF
        if s in ("-inf", "-infinity"):
            return NEG_INF
        return Fraction(s)
    if isinstance(x, float) and math.isinf(x):
        return x
    return Fraction(x)


def format_rational(x) -> str:
    if x == POS_INF:
        return "inf"
    if x == NEG_INF:
        return "-inf"
    return str(x)


@dataclass(frozen=True)
class RationalInterval:
    lo: object
    hi: object
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        lo, hi = parse_rational(self.lo), parse_rational(self.hi)
        lo_closed = self.lo_closed and lo != NEG_INF
        hi_closed = self.hi_closed and hi != POS_INF
        if lo > hi or (lo == hi and not (lo_closed and hi_closed)):
            raise ValueError(f"empty or inverted interval {lo}..{hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "lo_closed", lo_closed)
        object.__setattr__(self, "hi_closed", hi_closed)

    @classmethod
    def open(cls, lo, hi):
        return cls(lo, hi, False, False)

    @classmethod
    def closed(cls, lo, hi):
        return cls(lo, hi, True, True)

    @property
    def diameter(self):
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        above = x > self.lo or (self.lo_closed and x == self.lo)
        below = x < self.hi or (self.hi_closed and x == self.hi)
        return above and below

    def contains_interval(self, other: "RationalInterval") -> bool:
        lo_ok = other.lo > self.lo or (other.lo == self.lo and (self.lo_closed or not other.lo_closed))
        hi_ok = other.hi < self.hi or (other.hi == self.hi and (self.hi_closed or not other.hi_closed))
        return lo_ok and hi_ok

    def __str__(self):
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{format_rational(self.lo)}, {format_rational(self.hi)}{right}"


def _joinable(a: RationalInterval, b: RationalInterval) -> bool:
    # a starts no later than b
    if b.lo < a.hi:
        return True
    return b.lo == a.hi and (a.hi_closed or b.lo_closed)


@dataclass(frozen=True)
class IntervalUnion:
    """Sorted union of pairwise disjoint, non-touching intervals."""

    pieces: tuple = ()

    def __post_init__(self):
        items = sorted(self.pieces, key=lambda I: (I.lo, not I.lo_closed))
        out = []
        for I in items:
            if out and _joinable(out[-1], I):
                J = out[-1]
                if I.hi > J.hi or (I.hi == J.hi and I.hi_closed):
                    hi, hi_closed = I.hi, I.hi_closed or (I.hi == J.hi and J.hi_closed)
                else:
                    hi, hi_closed = J.hi, J.hi_closed
                out[-1] = RationalInterval(J.lo, hi, J.lo_closed, hi_closed)
            else:
                out.append(I)
        object.__setattr__(self, "pieces", tuple(out))

    @classmethod
    def of_open(cls, pairs):
        return cls(tuple(RationalInterval.open(a, b) for a, b in pairs))

    def union(self, other: "IntervalUnion") -> "IntervalUnion":
        return IntervalUnion(self.pieces + other.pieces)

    def is_whole_line(self) -> bool:
        return len(self.pieces) == 1 and self.pieces[0].lo == NEG_INF and self.pieces[0].hi == POS_INF

    def __contains__(self, x) -> bool:
        return any(x in I for I in self.pieces)

    def contains_interval(self, I: RationalInterval) -> bool:
        return any(J.contains_interval(I) for J in self.pieces)

    def first_gap(self):
        """A point of the line not in the union, or None."""
        if not self.pieces:
            return Fraction(0)
        first = self.pieces[0]
        if first.lo != NEG_INF:
            return first.lo if not first.lo_closed else first.lo - 1
        for a, b in zip(self.pieces, self.pieces[1:]):
            return a.hi if not a.hi_closed else (a.hi + b.lo) / 2
        last = self.pieces[-1]
        if last.hi != POS_INF:
            return last.hi if not last.hi_closed else last.hi + 1
        return None

    def __str__(self):
        return " u ".join(str(I) for I in self.pieces) or "{}"


def g(x):
    """Base map ``x / (2 (1 + |x|))``, extended by its limits at the infinities."""
    if x == POS_INF:
        return HALF
    if x == NEG_INF:
        return -HALF
    x = Fraction(x)
    return x / (2 * (1 + abs(x)))


def g_inverse(r: Fraction) -> Fraction:
    """Inverse of ``g`` on ``(-1/2, 1/2)``: ``2r / (1 - 2|r|)``."""
    r = Fraction(r)
    if not -HALF < r < HALF:
        raise ValueError(f"{r} is outside the image (-1/2, 1/2)")
    return 2 * r / (1 - 2 * abs(r))


@dataclass(frozen=True)
class LipschitzShiftMap:
    shift: int

    def __call__(self, x):
        return self.shift + g(x)

    def image(self, I: RationalInterval) -> RationalInterval:
        """``g`` is increasing, so the image is spanned by the images of the endpoints."""
        return RationalInterval(self.shift + g(I.lo), self.shift + g(I.hi),
                                I.lo_closed, I.hi_closed)


WHOLE_LINE = RationalInterval(NEG_INF, POS_INF)


def map_image_interval(f: LipschitzShiftMap, I: RationalInterval) -> RationalInterval:
    return f.image(I)


def word_image(word, start: RationalInterval = WHOLE_LINE) -> RationalInterval:
    """Image of ``start`` under ``f_{n_1} o ... o f_{n_k}`` (shifts listed outermost-first)."""
    I = start
    for n in reversed(tuple(word)):
        I = LipschitzShiftMap(n).image(I)
    return I


def sup_diam_at_depth(k: int):
    """Upper bound on the diameter of every depth-``k`` image: ``(1/2)^(k-1)``, infinite at 0."""
    if k < 0:
        raise ValueError("depth must be >= 0")
    if k == 0:
        return POS_INF
    return Fraction(1, 2 ** (k - 1))


@dataclass(frozen=True)
class LineCovering:
    """``{U, (a_1, b_1), ..., (a_n, b_n)}`` with ``U`` an open rational interval union.

    Set index 0 is ``U``; index ``i`` is the ``i``-th basic interval.
    """

    rest: IntervalUnion
    basics: tuple

    def __post_init__(self):
        basics = []
        for a, b in self.basics:
            a, b = parse_rational(a), parse_rational(b)
            if math.isinf(a) or math.isinf(b):
                raise ValueError("basic intervals must have finite endpoints")
            if a >= b:
                raise ValueError(f"degenerate basic interval ({a}, {b})")
            basics.append(RationalInterval.open(a, b))
        object.__setattr__(self, "basics", tuple(basics))
        for I in self.rest.pieces:
            if I.lo_closed or I.hi_closed:
                raise ValueError(f"U must be open, got piece {I}")
        total = self.rest.union(IntervalUnion(tuple(basics)))
        if not total.is_whole_line():
            raise NotACoveringError(total.first_gap())

    @property
    def sets(self):
        return (self.rest,) + tuple(IntervalUnion((I,)) for I in self.basics)

    def first_container(self, I: RationalInterval):
        for idx, s in enumerate(self.sets):
            if s.contains_interval(I):
                return idx
        return None


def _margin_in(e, s: IntervalUnion):
    for I in s.pieces:
        if I.lo < e < I.hi:
            return min(e - I.lo, I.hi - e)
    return 0


def endpoint_margin(e, c: LineCovering):
    """Largest ``r`` with ``(e - r, e + r)`` inside a single covering set."""
    return max(_margin_in(e, s) for s in c.sets)


def sc_star_constant(c: LineCovering):
    """``c = 1/2 min(c_1, ..., c_n, b_1 - a_1, ..., b_n - a_n)``; infinite without basics."""
    terms = []
    for I in c.basics:
        terms.append(min(endpoint_margin(I.lo, c), endpoint_margin(I.hi, c)))
        terms.append(I.hi - I.lo)
    if not terms:
        return POS_INF
    return HALF * min(terms)


def sc_star_line(c: LineCovering, sample_words=()) -> VerificationReport:
    """SC* depth for the shifted family: least ``k`` with ``(1/2)^(k-1) < c``.

    Minimality is not claimed.  Each word in ``sample_words`` of length at
    least ``k`` is certified with the first covering set containing its exact
    image; a miss downgrades the verdict to ``fails``.
    """
    const = sc_star_constant(c)
    if const == POS_INF:
        k = 0
    else:
        k = 1
        while not sup_diam_at_depth(k) < const:
            k += 1
    certificate = []
    for word in sample_words:
        word = tuple(word)
        if len(word) < k:
            continue
        idx = c.first_container(word_image(word))
        if idx is None:
            return VerificationReport("fails", k=k, certificate=certificate, witness=word,
                                      kind="line")
        certificate.append((word, idx))
    margins = [[format_rational(endpoint_margin(I.lo, c)), format_rational(endpoint_margin(I.hi, c))]
               for I in c.basics]
    return VerificationReport(SOUND_BOUND, k=k, certificate=certificate, kind="line",
                              details={"c": format_rational(const), "endpoint margins": margins,
                                       "U": str(c.rest)})


def certify_all_words(c: LineCovering, k: int, max_len: int, shifts=range(-5, 6)):
    """Certify every word of length ``k..max_len`` over ``shifts`` without listing them all.

    Extending a word shrinks its image, so once a prefix image lies in a
    covering set every extension is certified by that set.  Returns
    ``(certified_count, None)``, or ``(None, witness)`` with the first
    uncertified word of length at least ``k`` in depth-first order.
    """
    shifts = sorted(shifts)
    n = len(shifts)
    total = sum(n**L for L in range(k, max_len + 1))
    stack = [()]
    while stack:
        prefix = stack.pop()
        if c.first_container(word_image(prefix)) is not None:
            continue
        if len(prefix) >= k:
            return None, prefix
        stack.extend(prefix + (m,) for m in reversed(shifts))
    return total, None


def preimage(q):
    """``(n, x)`` with ``f_n(x) = q``, or None when ``q`` is a half-integer (not attained)."""
    q = Fraction(q)
    if (2 * q).denominator == 1 and (2 * q).numerator % 2 == 1:
        return None
    n = math.floor(q + HALF)
    return n, g_inverse(q - n)


def grid_rationals(max_term: int, bound):
    """Distinct rationals ``num/den`` with ``|num|, den <= max_term`` and ``|q| <= bound``."""
    bound = Fraction(bound)
    seen = set()
    for den in range(1, max_term + 1):
        for num in range(-max_term, max_term + 1):
            q = Fraction(num, den)
            if abs(q) <= bound and q not in seen:
                seen.add(q)
    return sorted(seen)


def attractor_closure_check(bound, samples=None, eps=Fraction(1, 10**6)):
    """Every sample in ``[-bound, bound]`` lies in the closure of ``union_n f_n(line)``.

    Non-half-integers get an exact preimage; a half-integer ``q`` is checked
    through the attained points ``q - eps`` and ``q + eps``.  Returns
    ``(ok, failures)``.
    """
    bound = Fraction(bound)
    if samples is None:
        samples = grid_rationals(50, bound)
    failures = []
    for q in samples:
        q = Fraction(q)
        if abs(q) > bound:
            continue
        targets = [q] if preimage(q) is not None else [q - eps, q + eps]
        for y in targets:
            pre = preimage(y)
            if pre is None or LipschitzShiftMap(pre[0])(pre[1]) != y:
                failures.append(q)
                break
    return not failures, failures
