"""Continuous piecewise-linear functions on one interval [0, L], L <= inf.

A :class:`Piece` stores breakpoints ``xs`` (``xs[0] == 0``) with values
``ys``.  On a bounded interval ``xs[-1] == L`` and ``tail`` is ``None``; on an
unbounded one ``xs[-1]`` is finite and ``tail`` is the slope towards infinity.
All coordinates are Fractions; slopes produced by the library are integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .scalar import INF, NEG_INF, ExtRat

ZERO = Fraction(0)


@dataclass(frozen=True, slots=True)
class Piece:
    xs: tuple[Fraction, ...]
    ys: tuple[Fraction, ...]
    tail: int | None = None

    @property
    def bounded(self) -> bool:
        return self.tail is None

    @property
    def length(self) -> ExtRat:
        return self.xs[-1] if self.tail is None else INF

    def start_value(self) -> Fraction:
        return self.ys[0]

    def end_value(self) -> ExtRat:
        if self.tail is None or self.tail == 0:
            return self.ys[-1]
        return INF if self.tail > 0 else NEG_INF

    def slopes(self) -> list[Fraction]:
        xs, ys = self.xs, self.ys
        return [(ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]) for i in range(len(xs) - 1)]

    def first_slope(self) -> Fraction:
        if len(self.xs) > 1:
            return (self.ys[1] - self.ys[0]) / (self.xs[1] - self.xs[0])
        return Fraction(self.tail)

    def last_slope(self) -> Fraction:
        if self.tail is not None:
            return Fraction(self.tail)
        return (self.ys[-1] - self.ys[-2]) / (self.xs[-1] - self.xs[-2])

    def __call__(self, t: ExtRat) -> ExtRat:
        return value(self, t)


def constant(length: ExtRat, c: Fraction) -> Piece:
    if length == INF:
        return Piece((ZERO,), (c,), 0)
    return Piece((ZERO, length), (c, c))


def affine(length: ExtRat, y0: Fraction, slope: int) -> Piece:
    if length == INF:
        return Piece((ZERO,), (y0,), slope)
    return Piece((ZERO, length), (y0, y0 + slope * length))


def canonical(xs: Sequence[Fraction], ys: Sequence[Fraction], tail: int | None) -> Piece:
    """Drop breakpoints where the left and right slopes agree."""
    n = len(xs)
    if n <= 2 and tail is None:
        return Piece(tuple(xs), tuple(ys), None)
    ox = [xs[0]]
    oy = [ys[0]]
    for i in range(1, n - 1):
        x0, y0 = ox[-1], oy[-1]
        x1, y1 = xs[i], ys[i]
        x2, y2 = xs[i + 1], ys[i + 1]
        if (y1 - y0) * (x2 - x1) != (y2 - y1) * (x1 - x0):
            ox.append(x1)
            oy.append(y1)
    if n > 1:
        ox.append(xs[-1])
        oy.append(ys[-1])
    if tail is not None and len(ox) > 1:
        if (oy[-1] - oy[-2]) == tail * (ox[-1] - ox[-2]):
            ox.pop()
            oy.pop()
    return Piece(tuple(ox), tuple(oy), tail)


def _index(xs: Sequence[Fraction], t) -> int:
    lo, hi = 0, len(xs)
    while lo < hi:
        mid = (lo + hi) // 2
        if t < xs[mid]:
            hi = mid
        else:
            lo = mid + 1
    return lo - 1


def value(p: Piece, t: ExtRat) -> ExtRat:
    xs, ys = p.xs, p.ys
    if t == INF:
        return p.end_value()
    i = _index(xs, t)
    if i >= len(xs) - 1:
        if p.tail is None:
            return ys[-1]
        return ys[-1] + p.tail * (t - xs[-1])
    x0 = xs[i]
    if t == x0:
        return ys[i]
    return ys[i] + (ys[i + 1] - ys[i]) * (t - x0) / (xs[i + 1] - x0)


def values_on(p: Piece, grid: Sequence[Fraction]) -> list[Fraction]:
    """Values at an increasing grid within the finite part of the domain."""
    xs, ys = p.xs, p.ys
    n = len(xs)
    out = []
    j = 0
    for t in grid:
        while j + 1 < n and xs[j + 1] <= t:
            j += 1
        if xs[j] == t:
            out.append(ys[j])
        elif j + 1 < n:
            out.append(ys[j] + (ys[j + 1] - ys[j]) * (t - xs[j]) / (xs[j + 1] - xs[j]))
        else:
            out.append(ys[j] + p.tail * (t - xs[j]))
    return out


def _grid(a: Piece, b: Piece) -> list[Fraction]:
    if a.xs == b.xs:
        return list(a.xs)
    return sorted(set(a.xs).union(b.xs))


def pmax(a: Piece, b: Piece) -> Piece:
    grid = _grid(a, b)
    va = values_on(a, grid)
    vb = values_on(b, grid)
    ox: list[Fraction] = []
    oy: list[Fraction] = []
    n = len(grid)
    for i in range(n):
        ox.append(grid[i])
        oy.append(va[i] if va[i] >= vb[i] else vb[i])
        if i + 1 < n:
            d0 = va[i] - vb[i]
            d1 = va[i + 1] - vb[i + 1]
            if (d0 < 0 < d1) or (d1 < 0 < d0):
                h = grid[i + 1] - grid[i]
                x = grid[i] + h * d0 / (d0 - d1)
                ox.append(x)
                oy.append(va[i] + (va[i + 1] - va[i]) * (x - grid[i]) / h)
    tail = None
    if a.tail is not None:
        ta, tb = a.tail, b.tail
        d = va[-1] - vb[-1]
        if d == 0:
            tail = max(ta, tb)
        elif d > 0 and ta >= tb:
            tail = ta
        elif d < 0 and tb >= ta:
            tail = tb
        else:
            x = grid[-1] + d / (tb - ta)
            ox.append(x)
            oy.append(va[-1] + ta * (x - grid[-1]))
            tail = max(ta, tb)
    return canonical(ox, oy, tail)


def padd(a: Piece, b: Piece) -> Piece:
    grid = _grid(a, b)
    va = values_on(a, grid)
    vb = values_on(b, grid)
    tail = None if a.tail is None else a.tail + b.tail
    return canonical(grid, [x + y for x, y in zip(va, vb)], tail)


def pscale(a: Piece, n: int) -> Piece:
    if n == 0:
        return constant(a.length, ZERO)
    return Piece(a.xs, tuple(n * y for y in a.ys), None if a.tail is None else n * a.tail)


def pshift(a: Piece, c: Fraction) -> Piece:
    return Piece(a.xs, tuple(y + c for y in a.ys), a.tail)


def compose_affine(p: Piece, d: int, reverse: bool) -> Piece:
    """t -> p(d t) (or p(L - d t)) on [0, L/d]."""
    if not reverse:
        return Piece(tuple(x / d for x in p.xs), p.ys, None if p.tail is None else p.tail * d)
    L = p.xs[-1]
    return Piece(tuple((L - x) / d for x in reversed(p.xs)), tuple(reversed(p.ys)), None)


def reverse(p: Piece) -> Piece:
    return compose_affine(p, 1, True)


def restrict(p: Piece, lo: Fraction, hi: ExtRat) -> Piece:
    """The restriction to [lo, hi], re-parametrised to start at 0."""
    xs, ys = p.xs, p.ys
    ox = [ZERO]
    oy = [value(p, lo)]
    for x, y in zip(xs, ys):
        if lo < x < hi:
            ox.append(x - lo)
            oy.append(y)
    if hi == INF:
        return canonical(ox, oy, p.tail)
    ox.append(hi - lo)
    oy.append(value(p, hi))
    return canonical(ox, oy, None)


def concat(parts: Sequence[Piece]) -> Piece:
    ox = list(parts[0].xs)
    oy = list(parts[0].ys)
    for part in parts[1:]:
        shift = ox[-1]
        ox.extend(shift + x for x in part.xs[1:])
        oy.extend(part.ys[1:])
    return canonical(ox, oy, parts[-1].tail)


def level_set(p: Piece, c: ExtRat) -> list[tuple[ExtRat, ExtRat]]:
    """Closed intervals (possibly degenerate) where the function equals ``c``."""
    if c == INF or c == NEG_INF:
        return [(INF, INF)] if (p.tail is not None and p.end_value() == c) else []
    xs, ys = p.xs, p.ys
    out: list[tuple[ExtRat, ExtRat]] = []

    def push(lo, hi):
        if out and out[-1][1] >= lo:
            out[-1] = (out[-1][0], max(out[-1][1], hi))
        else:
            out.append((lo, hi))

    for i in range(len(xs)):
        if ys[i] == c:
            push(xs[i], xs[i])
        if i + 1 < len(xs):
            y0, y1 = ys[i], ys[i + 1]
            if y0 == c and y1 == c:
                push(xs[i], xs[i + 1])
            elif (y0 - c) * (y1 - c) < 0:
                x = xs[i] + (xs[i + 1] - xs[i]) * (c - y0) / (y1 - y0)
                push(x, x)
    if p.tail is not None:
        y = ys[-1]
        if p.tail == 0:
            if y == c:
                push(xs[-1], INF)
        elif (c - y) * p.tail > 0:
            x = xs[-1] + (c - y) / p.tail
            push(x, x)
    return out


def extrema(p: Piece) -> tuple[ExtRat, ExtRat]:
    lo = min(p.ys)
    hi = max(p.ys)
    if p.tail is not None:
        ev = p.end_value()
        lo = min(lo, ev)
        hi = max(hi, ev)
    return lo, hi


def interior_jumps(p: Piece) -> list[tuple[Fraction, Fraction]]:
    """(offset, right slope - left slope) at every interior breakpoint."""
    s = p.slopes()
    if p.tail is not None:
        s.append(Fraction(p.tail))
    return [(p.xs[i], s[i] - s[i - 1]) for i in range(1, len(s)) if s[i] != s[i - 1]]


def issues(p: Piece, length: ExtRat) -> list[str]:
    out = []
    if not p.xs or p.xs[0] != 0:
        out.append("first breakpoint must sit at offset 0")
        return out
    if len(p.xs) != len(p.ys):
        out.append("breakpoint offsets and values differ in number")
        return out
    if any(p.xs[i + 1] <= p.xs[i] for i in range(len(p.xs) - 1)):
        out.append("breakpoint offsets must increase strictly")
        return out
    if length == INF:
        if p.tail is None:
            out.append("infinite edge needs a slope towards infinity")
        elif p.xs[-1] == INF:
            out.append("breakpoint at infinity must be implicit")
    else:
        if p.tail is not None:
            out.append("finite edge cannot carry a slope towards infinity")
        if p.xs[-1] != length or len(p.xs) < 2:
            out.append("last breakpoint must sit at the edge length")
    for s in p.slopes():
        if s.denominator != 1:
            out.append(f"non-integer slope {s}")
            break
    if p.tail is not None and int(p.tail) != p.tail:
        out.append("non-integer slope towards infinity")
    return out
