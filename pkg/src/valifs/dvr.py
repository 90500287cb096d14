"""Finite-precision digit arithmetic in discretely valued rings and fields.

An element is a little-endian digit expansion ``sum d_j t^j`` over indices
``offset <= j < N``.  In equal characteristic the digits are coefficients of a
Laurent series over F_p and add without carries; in mixed characteristic
``t = p`` and the digits are base-p digits of a p-adic number, so addition
carries.  Only the operations the IFS maps need are provided: add, sub,
shift by the uniformizer and truncation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering

from .errors import PrecisionError

EQUAL = "equal-char"
MIXED = "mixed-char"
MODES = (EQUAL, MIXED)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@total_ordering
@dataclass(frozen=True)
class Unresolved:
    """Valuation of an element whose tracked digits all vanish: "at least ``bound``".

    Orders above every integer, so ``valuation(x) >= alpha`` is true for all
    radii the context can express.
    """

    bound: int

    def __eq__(self, other):
        return isinstance(other, Unresolved) and other.bound == self.bound

    def __hash__(self):
        return hash(("unresolved", self.bound))

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return not isinstance(other, Unresolved)

    def __str__(self):
        return f">= {self.bound}"


@total_ordering
@dataclass(frozen=True)
class BelowResolution:
    """Distance between elements that agree on every tracked digit.

    The true distance lies in ``[0, resolution]``; it orders below every
    positive number.
    """

    resolution: Fraction

    def __eq__(self, other):
        return isinstance(other, BelowResolution) and other.resolution == self.resolution

    def __hash__(self):
        return hash(("below", self.resolution))

    def __lt__(self, other):
        if isinstance(other, BelowResolution):
            return False
        return other > 0

    def __gt__(self, other):
        if isinstance(other, BelowResolution):
            return False
        return other < 0

    def __str__(self):
        return f"<= {self.resolution}"


@dataclass(frozen=True)
class DvrContext:
    """Ambient ring: residue characteristic ``p``, arithmetic mode, precision ``N``."""

    p: int
    mode: str = EQUAL
    precision: int = 8

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.precision < 1:
            raise ValueError("precision must be >= 1")

    @property
    def N(self) -> int:
        return self.precision

    def element(self, digits=(), offset: int = 0) -> "Element":
        """Build an element from little-endian digits starting at index ``offset``."""
        digits = tuple(int(d) for d in digits)
        for d in digits:
            if not 0 <= d < self.p:
                raise ValueError(f"digit {d} outside [0, {self.p - 1}]")
        if offset > self.precision:
            raise PrecisionError(f"offset {offset} exceeds precision {self.precision}")
        top = offset + len(digits)
        if top > self.precision:
            if any(digits[self.precision - offset:]):
                raise PrecisionError(
                    f"nonzero digit at index >= precision {self.precision}")
            digits = digits[: self.precision - offset]
        if offset > 0:
            digits = (0,) * offset + digits
            offset = 0
        digits = digits + (0,) * (self.precision - offset - len(digits))
        return Element._raw(self, offset, digits)

    def zero(self) -> "Element":
        return Element._raw(self, 0, (0,) * self.precision)

    def digit_const(self, s: int) -> "Element":
        if not 0 <= s < self.p:
            raise ValueError(f"digit {s} outside [0, {self.p - 1}]")
        return Element._raw(self, 0, (s,) + (0,) * (self.precision - 1))

    def t_power(self, k: int) -> "Element":
        """The element ``t^k`` (``p^k`` in mixed characteristic)."""
        if k >= self.precision:
            raise PrecisionError(f"t^{k} is not representable at precision {self.precision}")
        if k < 0:
            return self.element((1,), offset=k)
        return self.element((0,) * k + (1,))

    def from_int(self, n: int) -> "Element":
        """Base-p digits of ``n mod p^N``; in mixed characteristic this is the ring element n."""
        n %= self.p**self.precision
        return Element._raw(self, 0, _int_to_digits(n, self.p, self.precision))

    def elements(self, offset: int = 0):
        """Enumerate every element with digits at indices ``offset .. N-1``."""
        offset = min(offset, 0)
        for ds in itertools.product(range(self.p), repeat=self.precision - offset):
            yield Element._raw(self, offset, ds)

    def parse(self, text: str) -> "Element":
        offset, digits = parse_digit_text(text)
        return self.element(digits, offset)


def _int_to_digits(n: int, p: int, length: int) -> tuple:
    out = []
    for _ in range(length):
        n, d = divmod(n, p)
        out.append(d)
    return tuple(out)


@dataclass(frozen=True)
class Element:
    """Digit expansion ``d_offset t^offset + ... + d_{N-1} t^{N-1}``.

    ``offset`` is always <= 0 and leading zeros at negative indices are
    trimmed, so dataclass equality is equality of elements.
    """

    ctx: DvrContext
    offset: int
    digits: tuple = field(repr=False)

    @classmethod
    def _raw(cls, ctx, offset, digits):
        digits = tuple(digits)
        i = 0
        while offset + i < 0 and digits[i] == 0:
            i += 1
        if i:
            offset += i
            digits = digits[i:]
        obj = object.__new__(cls)
        object.__setattr__(obj, "ctx", ctx)
        object.__setattr__(obj, "offset", offset)
        object.__setattr__(obj, "digits", digits)
        return obj

    def __repr__(self):
        return f"Element({format_digit_text(self)})"

    def digit(self, j: int) -> int:
        if j < self.offset or j >= self.ctx.precision:
            return 0
        return self.digits[j - self.offset]

    def digits_from(self, low: int) -> tuple:
        """Digits at indices ``low .. N-1`` (``low <= offset`` pads with zeros)."""
        if low <= self.offset:
            return (0,) * (self.offset - low) + self.digits
        return self.digits[low - self.offset:]

    def is_zero(self) -> bool:
        return not any(self.digits)

    def in_ring(self) -> bool:
        return self.offset >= 0

    def truncate(self, alpha: int) -> "Element":
        """Zero every digit at index >= ``alpha`` (the canonical center of ``B_alpha``)."""
        N = self.ctx.precision
        if alpha >= N:
            return self
        if alpha <= self.offset:
            return self.ctx.zero()
        keep = alpha - self.offset
        return Element._raw(self.ctx, self.offset, self.digits[:keep] + (0,) * (N - alpha))

    def to_int(self) -> int:
        """Integer with the same base-p digits; requires a ring element."""
        if self.offset < 0:
            raise ValueError("to_int needs a ring element (offset 0)")
        n = 0
        for d in reversed(self.digits):
            n = n * self.ctx.p + d
        return n

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)


def _check_same(a: Element, b: Element):
    if a.ctx != b.ctx:
        raise ValueError(f"context mismatch: {a.ctx} vs {b.ctx}")


def _combine(a: Element, b: Element, sign: int) -> Element:
    _check_same(a, b)
    ctx = a.ctx
    p, N = ctx.p, ctx.precision
    low = min(a.offset, b.offset)
    da = a.digits_from(low)
    db = b.digits_from(low)
    if ctx.mode == EQUAL:
        if sign > 0:
            out = tuple((x + y) % p for x, y in zip(da, db))
        else:
            out = tuple((x - y) % p for x, y in zip(da, db))
        return Element._raw(ctx, low, out)
    width = N - low
    A = _digits_to_int(da, p)
    B = _digits_to_int(db, p)
    n = (A + sign * B) % p**width
    return Element._raw(ctx, low, _int_to_digits(n, p, width))


def _digits_to_int(ds, p):
    n = 0
    for d in reversed(ds):
        n = n * p + d
    return n


def add(a: Element, b: Element) -> Element:
    return _combine(a, b, 1)


def sub(a: Element, b: Element) -> Element:
    return _combine(a, b, -1)


def shift(a: Element, k: int) -> Element:
    """Multiply by ``t^k`` (k >= 0): digit j moves to index j + k, overflow is dropped."""
    if k < 0:
        raise ValueError("shift amount must be >= 0")
    if k == 0:
        return a
    N = a.ctx.precision
    new_off = a.offset + k
    keep = max(0, N - new_off)
    ds = a.digits[:keep]
    if new_off > 0:
        ds = (0,) * new_off + ds
        new_off = 0
    ds = ds + (0,) * (N - new_off - len(ds))
    return Element._raw(a.ctx, new_off, ds)


def valuation(a: Element):
    """Index of the first nonzero digit, or ``Unresolved(N)`` if none is tracked."""
    for i, d in enumerate(a.digits):
        if d:
            return a.offset + i
    return Unresolved(a.ctx.precision)


def first_difference(a: Element, b: Element):
    """``valuation(a - b)`` read off the digits: the first index where they differ.

    Agrees with the subtraction route in both modes because a borrow only
    starts at the first differing digit.
    """
    _check_same(a, b)
    low = min(a.offset, b.offset)
    for i, (x, y) in enumerate(zip(a.digits_from(low), b.digits_from(low))):
        if x != y:
            return low + i
    return Unresolved(a.ctx.precision)


def distance(a: Element, b: Element):
    """Ultrametric ``p^(-v(a-b))`` as an exact Fraction, or ``BelowResolution``."""
    v = first_difference(a, b)
    p = a.ctx.p
    if isinstance(v, Unresolved):
        return BelowResolution(Fraction(1, p**v.bound))
    return Fraction(1, p**v) if v >= 0 else Fraction(p**-v)


def minus_part(a: Element) -> Element:
    """The part of ``a`` at negative indices; ``a - minus_part(a)`` lies in the ring."""
    if a.offset >= 0:
        return a.ctx.zero()
    return a.truncate(0)


def parse_digit_text(text: str):
    """Parse ``"offset=<l>; digits=<d_l>,<d_l+1>,..."``; returns ``(offset, digits)``."""
    offset = 0
    digits = None
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        key, sep, value = part.partition("=")
        if not sep:
            raise ValueError(f"bad digit text {text!r}")
        key = key.strip()
        value = value.strip()
        if key == "offset":
            offset = int(value)
        elif key == "digits":
            digits = tuple(int(x) for x in value.split(",") if x.strip() != "")
        else:
            raise ValueError(f"unknown key {key!r} in digit text {text!r}")
    if digits is None:
        raise ValueError(f"digit text {text!r} has no digits")
    return offset, digits


def format_digit_text(a: Element) -> str:
    ds = list(a.digits)
    while len(ds) > 1 and ds[-1] == 0:
        ds.pop()
    body = "digits=" + ",".join(str(d) for d in ds)
    if a.offset:
        return f"offset={a.offset}; {body}"
    return body
