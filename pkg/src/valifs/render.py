"""Static SVG pictures of composition images through the Monna map.

The Monna map sends ``sum_{j >= 0} d_j t^j`` to the real number
``sum_j d_j p^(-j-1)``, so a ball of radius ``m`` inside the unit ball becomes
an interval of length ``p^-m`` in ``[0, 1]``.  Row ``d`` of the picture shows
one bar per distinct depth-``d`` composition image.
"""

from __future__ import annotations

from fractions import Fraction

from .balls import Ball, ClopenSet
from .errors import DEFAULT_BUDGET
from .maps import Ifs, compose_image

WIDTH = 800
MARGIN = 60
ROW_H = 28
BAR_H = 18


def monna(ball: Ball) -> tuple:
    """``(left, width)`` of the ball in ``[0, 1]``, reading only indices ``>= 0``."""
    p = ball.ctx.p
    left = Fraction(0)
    for j in range(0, ball.radius):
        left += Fraction(ball.center.digit(j), p ** (j + 1))
    return left, Fraction(1, p**ball.radius)


def depth_rows(F: Ifs, universe: Ball, depth: int, budget=DEFAULT_BUDGET):
    start = ClopenSet((universe,))
    rows = []
    for d in range(depth + 1):
        balls = set()
        for word in F.words(d, budget):
            balls.update(compose_image(F, word, start).balls)
        rows.append(sorted(balls, key=Ball.sort_key))
    return rows


def _num(x: Fraction) -> str:
    return f"{float(x):.4f}"


def render_svg(F: Ifs, universe: Ball, depth: int, budget=DEFAULT_BUDGET) -> str:
    rows = depth_rows(F, universe, depth, budget)
    span = WIDTH - 2 * MARGIN
    height = MARGIN + ROW_H * len(rows) + 20
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" '
        f'height="{height}" viewBox="0 0 {WIDTH} {height}">',
        f'<title>{F.kind} system, p={F.ctx.p}, depth {depth}</title>',
        '<rect x="0" y="0" width="100%" height="100%" fill="white"/>',
    ]
    for d, balls in enumerate(rows):
        y = MARGIN + d * ROW_H
        out.append(f'<text x="4" y="{y + BAR_H - 4}" font-family="monospace" '
                   f'font-size="12">d={d}</text>')
        for b in balls:
            left, w = monna(b)
            out.append(f'<rect x="{_num(MARGIN + span * left)}" y="{y}" '
                       f'width="{_num(span * w)}" height="{BAR_H}" '
                       f'fill="#3465a4" stroke="white" stroke-width="0.5"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
