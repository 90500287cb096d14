"""Symbolic models for the non-metric examples.

* Sequence spaces ``kappa^omega`` (and Baire space) with the shift maps
  ``f_i(x) = (i, x(0), x(1), ...)``.  The image of the word ``w`` applied
  outermost-first is the cylinder ``A_w`` of sequences extending ``w``.
* The discrete space ``omega`` with ``f_0(n) = 0`` and ``f_1(n) = n + 1``.
* ``[0, 1]`` with the cofinite topology and ``x -> x/2``, ``x -> 1/2 + x/2``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import DEFAULT_BUDGET, check_budget
from .report import FAILS, HOLDS, SOUND_BOUND, VerificationReport


@dataclass(frozen=True)
class Word:
    """Finite word over ``{0, ..., kappa - 1}``; stands for the cylinder ``A_letters``."""

    letters: tuple
    kappa: int | None = None

    def __post_init__(self):
        letters = tuple(int(x) for x in self.letters)
        object.__setattr__(self, "letters", letters)
        if self.kappa is not None:
            if self.kappa < 1:
                raise ValueError("kappa must be positive")
            for x in letters:
                if not 0 <= x < self.kappa:
                    raise ValueError(f"letter {x} outside alphabet of size {self.kappa}")
        elif any(x < 0 for x in letters):
            raise ValueError("letters must be nonnegative")

    def __len__(self):
        return len(self.letters)

    def is_prefix_of(self, other: "Word") -> bool:
        """``self`` prefixes ``other`` iff ``A_other`` is inside ``A_self``."""
        return other.letters[: len(self.letters)] == self.letters


def shift_image(i: int, w: Word) -> Word:
    """Image of the cylinder ``A_w`` under ``f_i``: prepend ``i``."""
    return Word((i,) + w.letters, w.kappa)


def compose_cylinder(word, kappa=None) -> Word:
    """Cylinder of ``f_{i_1} o ... o f_{i_k}`` applied to the whole space."""
    out = Word((), kappa)
    for i in reversed(tuple(word)):
        out = shift_image(i, out)
    return out


def cylinders_disjoint(x: Word, y: Word) -> bool:
    return not (x.is_prefix_of(y) or y.is_prefix_of(x))


class Side(Enum):
    INSIDE = "inside"
    DISJOINT = "disjoint"
    SPLIT = "split"


def classify_against_u(w: Word) -> Side:
    """Locate ``A_w`` relative to ``U = union_n {x : x(0) = n, x(1) = ... = x(n) = 0}``."""
    letters = w.letters
    k = len(letters)
    if k == 0:
        return Side.SPLIT
    n = letters[0]
    if any(letters[j] != 0 for j in range(1, min(n, k - 1) + 1)):
        return Side.DISJOINT
    if n <= k - 1:
        return Side.INSIDE
    return Side.SPLIT


def in_u(x) -> bool:
    """Membership of a sequence in ``U``; ``x`` must have at least ``x[0] + 1`` entries."""
    n = x[0]
    return all(x[j] == 0 for j in range(1, n + 1))


def baire_sc_fails(max_k: int):
    """Witness words ``(k, 0, ..., 0)`` of length ``k`` whose cylinders split ``{U, X - U}``.

    Each one shows that depth ``k`` does not satisfy (SC) for that covering.
    """
    witnesses = []
    for k in range(1, max_k + 1):
        w = Word((k,) + (0,) * (k - 1))
        side = classify_against_u(w)
        if side is not Side.SPLIT:
            raise AssertionError(f"expected {w.letters} to split U, got {side}")
        witnesses.append(w)
    return witnesses


def baire_report(max_k: int) -> VerificationReport:
    ws = baire_sc_fails(max_k)
    return VerificationReport(
        FAILS, witness=ws[0].letters if ws else None, kind="baire",
        details={"witnesses": [w.letters for w in ws], "checked depths": max_k,
                 "covering": "{U, X - U}"},
    )


def _union_contains(words, y: Word, kappa: int) -> bool:
    """Whether ``A_y`` lies inside the union of the cylinders ``A_u``, ``u in words``."""
    if any(u.is_prefix_of(y) for u in words):
        return True
    longer = [u for u in words if y.is_prefix_of(u)]
    if not longer:
        return False
    return all(_union_contains(longer, Word(y.letters + (c,), kappa), kappa)
               for c in range(kappa))


def sc_star_cylinders(kappa: int, basics, rest=None, budget=DEFAULT_BUDGET) -> VerificationReport:
    """SC* on ``kappa^omega`` for the covering ``{U, A_{x_1}, ..., A_{x_n}}``.

    ``rest=None`` makes ``U`` the complement of the basic cylinders; otherwise
    ``rest`` is a list of words whose cylinders make up ``U``.  Covering sets
    are indexed with ``U`` first, then the basics in order.  ``k`` is the
    longest basic word; each length-``k`` cylinder either extends some basic
    word or is disjoint from all of them and so lies in ``U``.
    """
    basics = [Word(x, kappa) for x in basics]
    rest_words = None if rest is None else [Word(x, kappa) for x in rest]
    if rest_words is not None:
        depth = max([len(x) for x in basics + rest_words], default=0)
        check_budget(kappa**depth, budget)
        for y in itertools.product(range(kappa), repeat=depth):
            if not _union_contains(basics + rest_words, Word(y, kappa), kappa):
                raise ValueError(f"not a covering: cylinder {y} is uncovered")
    k = max((len(x) for x in basics), default=0)
    check_budget(kappa**k, budget)
    certificate = []
    for y in itertools.product(range(kappa), repeat=k):
        cyl = compose_cylinder(y, kappa)
        idx = next((i + 1 for i, x in enumerate(basics) if x.is_prefix_of(cyl)), None)
        if idx is None:
            assert all(cylinders_disjoint(cyl, x) for x in basics)
            if rest_words is not None and not _union_contains(rest_words, cyl, kappa):
                return VerificationReport(FAILS, k=k, certificate=certificate, witness=y,
                                          kind="kappa-omega")
            idx = 0
        certificate.append((y, idx))
    return VerificationReport(HOLDS, k=k, certificate=certificate, kind="kappa-omega",
                              details={"kappa": kappa,
                                       "basics": [x.letters for x in basics]})


def omega_image(word):
    """Image of ``omega`` under ``f_{i_1} o ... o f_{i_k}`` (0 = constant zero, 1 = successor).

    Returns ``("singleton", m)`` or ``("tail", m)`` for ``{m, m+1, ...}``.
    """
    kind, m = "tail", 0
    for i in reversed(tuple(word)):
        if i == 0:
            kind, m = "singleton", 0
        elif i == 1:
            m += 1
        else:
            raise ValueError(f"letter {i} is not a map index (0 or 1)")
    return kind, m


def sc_star_omega_discrete(singletons, budget=DEFAULT_BUDGET) -> VerificationReport:
    """SC* on discrete ``omega`` for ``{U, {n_1}, ..., {n_l}}`` with ``U`` the rest.

    ``k = max(n_j) + 1``.  Set index 0 is ``U``, index ``j`` is ``{n_j}``.
    """
    singletons = [int(n) for n in singletons]
    if any(n < 0 for n in singletons):
        raise ValueError("singletons must be natural numbers")
    k = max(singletons) + 1 if singletons else 0
    check_budget(2**k, budget)
    certificate = []
    for word in itertools.product((0, 1), repeat=k):
        idx = _omega_container(omega_image(word), singletons)
        if idx is None:
            return VerificationReport(FAILS, k=k, certificate=certificate, witness=word,
                                      kind="omega-discrete")
        certificate.append((word, idx))
    return VerificationReport(HOLDS, k=k, certificate=certificate, kind="omega-discrete",
                              details={"singletons": singletons})


def _omega_container(image, singletons):
    kind, m = image
    if kind == "singleton":
        if m in singletons:
            return singletons.index(m) + 1
        return 0
    if any(n >= m for n in singletons):
        return None
    return 0


def omega_minimal_k(singletons, max_k=64) -> int:
    """Brute force: least depth where every image lies in ``U`` or one singleton."""
    for k in range(max_k + 1):
        if all(_omega_container(omega_image(w), singletons) is not None
               for w in itertools.product((0, 1), repeat=k)):
            return k
    raise ValueError(f"no depth up to {max_k}")


@dataclass(frozen=True)
class CofiniteCovering:
    """Covering of ``[0, 1]`` by the cofinite sets ``[0, 1] - F_j``."""

    complements: tuple

    def __post_init__(self):
        comps = tuple(frozenset(Fraction(x) for x in F) for F in self.complements)
        if not comps:
            raise ValueError("a covering needs at least one set")
        for F in comps:
            for x in F:
                if not 0 <= x <= 1:
                    raise ValueError(f"point {x} outside [0, 1]")
        common = frozenset.intersection(*comps)
        if common:
            raise ValueError(f"not a covering: {min(common)} lies in every complement")
        object.__setattr__(self, "complements", comps)


def dyadic_interval(word):
    """Image of ``[0, 1]`` under the word (0 -> ``x/2``, 1 -> ``1/2 + x/2``), outermost-first."""
    lo, hi = Fraction(0), Fraction(1)
    for i in reversed(tuple(word)):
        if i not in (0, 1):
            raise ValueError(f"letter {i} is not a map index (0 or 1)")
        lo, hi = (i + lo) / 2, (i + hi) / 2
    return lo, hi


def _cofinite_container(lo, hi, comps):
    for j, F in enumerate(comps):
        if not any(lo <= x <= hi for x in F):
            return j
    return None


def cofinite_holds_at(c: CofiniteCovering, k: int) -> bool:
    step = Fraction(1, 2**k)
    return all(_cofinite_container(j * step, (j + 1) * step, c.complements) is not None
               for j in range(2**k))


def cofinite_gap_bound(c: CofiniteCovering) -> int:
    """Least ``k`` with ``2^-k`` below the smallest gap between points of ``union F_j``.

    A closed interval that short holds at most one such point, and some
    ``F_j`` misses that point, so the interval avoids ``F_j`` entirely.
    """
    pts = sorted(set().union(*c.complements))
    if len(pts) < 2:
        return 0
    gap = min(b - a for a, b in zip(pts, pts[1:]))
    k = 0
    while Fraction(1, 2**k) >= gap:
        k += 1
    return k


def cofinite_sc(c: CofiniteCovering, max_k: int, budget=DEFAULT_BUDGET) -> VerificationReport:
    """Minimal (SC) depth for the cofinite covering, searched up to ``max_k``.

    If the search stops before the sound gap bound, the gap bound is reported
    instead with verdict ``holds-with-sound-bound``.
    """
    k_gap = cofinite_gap_bound(c)
    limit = min(max_k, k_gap)
    check_budget(2 ** (limit + 1), budget)
    k_min = next((k for k in range(limit + 1) if cofinite_holds_at(c, k)), None)
    if k_min is None:
        verdict, k, minimal = SOUND_BOUND, k_gap, None
    else:
        verdict, k, minimal = HOLDS, k_min, True
    check_budget(2**k, budget)
    certificate = []
    for word in itertools.product((0, 1), repeat=k):
        lo, hi = dyadic_interval(word)
        idx = _cofinite_container(lo, hi, c.complements)
        if idx is None:
            return VerificationReport(FAILS, k=k, certificate=certificate, witness=word,
                                      kind="cofinite")
        certificate.append((word, idx))
    return VerificationReport(verdict, k=k, certificate=certificate, oracle_minimal=minimal,
                              kind="cofinite", details={"gap bound": k_gap})


def _cylinder_container(y: Word, basics, rest_words, kappa):
    for i, x in enumerate(basics):
        if x.is_prefix_of(y):
            return i + 1
    if rest_words is None:
        return 0 if all(cylinders_disjoint(y, x) for x in basics) else None
    return 0 if _union_contains(rest_words, y, kappa) else None


def cylinder_minimal_k(kappa: int, basics, rest=None, budget=DEFAULT_BUDGET) -> int:
    """Brute force: least depth whose cylinders each fit in a single covering set."""
    basics = [Word(x, kappa) for x in basics]
    rest_words = None if rest is None else [Word(x, kappa) for x in rest]
    top = max((len(x) for x in basics), default=0)
    for d in range(top + 1):
        check_budget(kappa**d, budget)
        if all(_cylinder_container(Word(y, kappa), basics, rest_words, kappa) is not None
               for y in itertools.product(range(kappa), repeat=d)):
            return d
    return top
