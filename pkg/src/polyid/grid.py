"""Lattice geometry: cells, polyominoes and shape predicates.

Coordinates follow the usual convention for polyomino ideals: a point
``(x, y)`` has ``x`` as the column and ``y`` as the row, and the cell with
anchor ``a`` is the unit square ``[a, a + (1, 1)]``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

from .errors import Disconnected, EmptyInput

__all__ = [
    "Point",
    "Cell",
    "Interval",
    "Polyomino",
    "Classification",
    "CornerReport",
    "LadderCertificate",
    "polyomino_from_cells",
    "normalize",
    "reflect",
    "classify",
    "corner_report",
    "ladder_certificate",
    "components",
]


class Point(NamedTuple):
    x: int
    y: int

    def precedes(self, other: Point, strict: bool = False) -> bool:
        """Componentwise order; ``strict`` requires both coordinates to grow."""
        if strict:
            return self.x < other.x and self.y < other.y
        return self.x <= other.x and self.y <= other.y

    def horizontal_to(self, other: Point) -> bool:
        return self.y == other.y

    def vertical_to(self, other: Point) -> bool:
        return self.x == other.x


class Cell(NamedTuple):
    """Unit square with lower-left corner ``(x, y)``."""

    x: int
    y: int

    @property
    def anchor(self) -> Point:
        return Point(self.x, self.y)

    def vertices(self) -> tuple[Point, Point, Point, Point]:
        x, y = self.x, self.y
        return (Point(x, y), Point(x + 1, y), Point(x, y + 1), Point(x + 1, y + 1))

    def edges(self):
        a, b, c, d = self.vertices()
        return ((a, b), (a, c), (b, d), (c, d))

    def neighbours(self):
        x, y = self.x, self.y
        return (Cell(x + 1, y), Cell(x - 1, y), Cell(x, y + 1), Cell(x, y - 1))


@dataclass(frozen=True)
class Interval:
    """The lattice box ``[lo, hi]``; degenerate boxes are edge intervals."""

    lo: Point
    hi: Point

    def __post_init__(self):
        object.__setattr__(self, "lo", Point(*self.lo))
        object.__setattr__(self, "hi", Point(*self.hi))
        if not self.lo.precedes(self.hi):
            raise ValueError(f"interval needs lo <= hi, got {self.lo}, {self.hi}")

    @property
    def is_horizontal(self) -> bool:
        return self.lo.y == self.hi.y

    @property
    def is_vertical(self) -> bool:
        return self.lo.x == self.hi.x

    @property
    def anti_diagonal(self) -> tuple[Point, Point]:
        """(lower right, upper left) corners."""
        return Point(self.hi.x, self.lo.y), Point(self.lo.x, self.hi.y)

    def __contains__(self, v) -> bool:
        return self.lo.x <= v[0] <= self.hi.x and self.lo.y <= v[1] <= self.hi.y

    def cells(self) -> list[Cell]:
        return [
            Cell(x, y)
            for y in range(self.lo.y, self.hi.y)
            for x in range(self.lo.x, self.hi.x)
        ]

    def points(self) -> list[Point]:
        return [
            Point(x, y)
            for y in range(self.lo.y, self.hi.y + 1)
            for x in range(self.lo.x, self.hi.x + 1)
        ]

    def __str__(self):
        return f"[({self.lo.x},{self.lo.y}),({self.hi.x},{self.hi.y})]"


@dataclass(frozen=True)
class Polyomino:
    cells: frozenset

    @cached_property
    def vertices(self) -> frozenset:
        return frozenset(v for c in self.cells for v in c.vertices())

    @cached_property
    def edges(self) -> frozenset:
        return frozenset(e for c in self.cells for e in c.edges())

    @cached_property
    def bounding_box(self) -> Interval:
        """Minimal vertex interval containing every cell."""
        xs = [c.x for c in self.cells]
        ys = [c.y for c in self.cells]
        return Interval(Point(min(xs), min(ys)), Point(max(xs) + 1, max(ys) + 1))

    def sorted_vertices(self) -> list[Point]:
        """Vertices ordered by (y, x); this is the canonical variable order."""
        return sorted(self.vertices, key=lambda v: (v.y, v.x))

    def sorted_cells(self) -> list[Cell]:
        return sorted(self.cells, key=lambda c: (c.y, c.x))

    def __len__(self):
        return len(self.cells)

    def __contains__(self, cell) -> bool:
        return cell in self.cells


def components(cells: Iterable) -> list[set]:
    """Edge-connected components of a set of cells, in deterministic order."""
    remaining = set(Cell(*c) for c in cells)
    out = []
    for start in sorted(remaining, key=lambda c: (c.y, c.x)):
        if start not in remaining:
            continue
        remaining.discard(start)
        comp = {start}
        queue = deque([start])
        while queue:
            for nb in queue.popleft().neighbours():
                if nb in remaining:
                    remaining.discard(nb)
                    comp.add(nb)
                    queue.append(nb)
        out.append(comp)
    return out


def polyomino_from_cells(cells: Iterable) -> Polyomino:
    cells = frozenset(Cell(*c) for c in cells)
    if not cells:
        raise EmptyInput("a polyomino needs at least one cell")
    for c in cells:
        if c.x < 1 or c.y < 1:
            raise ValueError(f"cell anchor {tuple(c)} is not in the positive quadrant")
    comps = components(cells)
    if len(comps) > 1:
        first = min(comps[0], key=lambda c: (c.y, c.x))
        second = min(comps[1], key=lambda c: (c.y, c.x))
        raise Disconnected(first, second)
    return Polyomino(cells)


def normalize(p: Polyomino) -> Polyomino:
    """Translate so the smallest anchor coordinates are (1, 1)."""
    dx = min(c.x for c in p.cells) - 1
    dy = min(c.y for c in p.cells) - 1
    if dx == 0 and dy == 0:
        return p
    return Polyomino(frozenset(Cell(c.x - dx, c.y - dy) for c in p.cells))


def reflect(p: Polyomino, flip_x: bool = False, flip_y: bool = False) -> Polyomino:
    """Mirror inside the bounding box; the box itself is preserved."""
    box = p.bounding_box
    sx = box.lo.x + box.hi.x - 1
    sy = box.lo.y + box.hi.y - 1
    return Polyomino(
        frozenset(
            Cell(sx - c.x if flip_x else c.x, sy - c.y if flip_y else c.y)
            for c in p.cells
        )
    )


def _lines_convex(groups: dict) -> bool:
    for values in groups.values():
        if max(values) - min(values) + 1 != len(values):
            return False
    return True


def is_row_convex(p: Polyomino) -> bool:
    rows: dict = {}
    for c in p.cells:
        rows.setdefault(c.y, set()).add(c.x)
    return _lines_convex(rows)


def is_column_convex(p: Polyomino) -> bool:
    cols: dict = {}
    for c in p.cells:
        cols.setdefault(c.x, set()).add(c.y)
    return _lines_convex(cols)


def complement_components(p: Polyomino) -> list[set]:
    """Components of the non-cells inside the bounding box grown by one cell."""
    box = p.bounding_box
    outside = [
        Cell(x, y)
        for y in range(box.lo.y - 1, box.hi.y + 1)
        for x in range(box.lo.x - 1, box.hi.x + 1)
        if Cell(x, y) not in p.cells
    ]
    return components(outside)


def is_simple(p: Polyomino) -> bool:
    return len(complement_components(p)) == 1


def is_rectangle(p: Polyomino) -> bool:
    return len(p.cells) == len(p.bounding_box.cells())


@dataclass(frozen=True)
class Classification:
    row_convex: bool
    column_convex: bool
    convex: bool
    simple: bool
    rectangle: bool
    one_sided_ladder: bool

    def as_dict(self) -> dict:
        return {
            "row_convex": self.row_convex,
            "column_convex": self.column_convex,
            "convex": self.convex,
            "simple": self.simple,
            "rectangle": self.rectangle,
            "one_sided_ladder": self.one_sided_ladder,
        }


def classify(p: Polyomino) -> Classification:
    row = is_row_convex(p)
    col = is_column_convex(p)
    return Classification(
        row_convex=row,
        column_convex=col,
        convex=row and col,
        simple=is_simple(p),
        rectangle=is_rectangle(p),
        one_sided_ladder=ladder_certificate(p) is not None,
    )


@dataclass(frozen=True)
class CornerReport:
    outside: frozenset
    inside: frozenset
    interior: frozenset
    boundary: frozenset
    boundary_cells: frozenset


def cell_counts(p: Polyomino) -> dict:
    """Number of cells of ``p`` containing each vertex."""
    counts: dict = {}
    for c in p.cells:
        for v in c.vertices():
            counts[v] = counts.get(v, 0) + 1
    return counts


def corner_report(p: Polyomino) -> CornerReport:
    counts = cell_counts(p)
    by_count: dict = {1: set(), 3: set(), 4: set()}
    for v, k in counts.items():
        if k in by_count:
            by_count[k].add(v)
    interior = frozenset(by_count[4])
    boundary_cells = frozenset(
        c for c in p.cells if any(v not in interior for v in c.vertices())
    )
    return CornerReport(
        outside=frozenset(by_count[1]),
        inside=frozenset(by_count[3]),
        interior=interior,
        boundary=frozenset(p.vertices - interior),
        boundary_cells=boundary_cells,
    )


@dataclass(frozen=True)
class LadderCertificate:
    """Staircase corner sequence of a one-sided ladder.

    ``corner`` is the vertex opposite the staircase; ``defining_sequence``
    lists the remaining corners of the boundary, each consecutive pair in
    horizontal or vertical position.
    """

    corner: Point
    defining_sequence: tuple

    def polygon(self) -> list[Point]:
        return [self.corner, *self.defining_sequence]

    def cells(self) -> frozenset:
        """Cells enclosed by the boundary polygon (even-odd rule on centres)."""
        poly = self.polygon()
        xs = [v.x for v in poly]
        ys = [v.y for v in poly]
        vertical = [
            (a.x, min(a.y, b.y), max(a.y, b.y))
            for a, b in zip(poly, poly[1:] + poly[:1])
            if a.x == b.x
        ]
        inside = set()
        for y in range(min(ys), max(ys)):
            cy = y + 0.5
            for x in range(min(xs), max(xs)):
                cx = x + 0.5
                crossings = sum(1 for ex, y0, y1 in vertical if ex > cx and y0 < cy < y1)
                if crossings % 2:
                    inside.add(Cell(x, y))
        return frozenset(inside)


def _staircase_heights(cells: frozenset, width: int, height: int):
    """Column heights if ``cells`` (anchored at (1, 1)) is a staircase."""
    heights = []
    for i in range(1, width + 1):
        h = 0
        while Cell(i, h + 1) in cells:
            h += 1
        heights.append(h)
    if heights[0] != height or any(h < 1 for h in heights):
        return None
    if any(a < b for a, b in zip(heights, heights[1:])):
        return None
    if sum(heights) != len(cells):
        return None
    return heights


def ladder_certificate(p: Polyomino):
    """Certificate for a one-sided ladder, or ``None`` if ``p`` is not one."""
    box = p.bounding_box
    ox, oy = box.lo.x - 1, box.lo.y - 1
    width = box.hi.x - box.lo.x
    height = box.hi.y - box.lo.y
    local = frozenset(Cell(c.x - ox, c.y - oy) for c in p.cells)
    for flip_x, flip_y in ((False, False), (True, False), (False, True), (True, True)):
        mirrored = frozenset(
            Cell(width + 1 - c.x if flip_x else c.x, height + 1 - c.y if flip_y else c.y)
            for c in local
        )
        heights = _staircase_heights(mirrored, width, height)
        if heights is None:
            continue
        seq = [Point(1, height + 1)]
        for i in range(width):
            last = i == width - 1
            if last or heights[i + 1] != heights[i]:
                seq.append(Point(i + 2, heights[i] + 1))
                seq.append(Point(i + 2, (1 if last else heights[i + 1] + 1)))

        def back(v, flip_x=flip_x, flip_y=flip_y):
            x = width + 2 - v.x if flip_x else v.x
            y = height + 2 - v.y if flip_y else v.y
            return Point(x + ox, y + oy)

        return LadderCertificate(
            corner=back(Point(1, 1)), defining_sequence=tuple(back(v) for v in seq)
        )
    return None
