"""Instance files and seeded instance generators.

An instance is an ASCII grid, first line the top row, ``#`` for a cell and
``.`` for a gap, optionally followed by a ``Q:`` section listing the removed
cells as ``i,j`` anchors::

    ###
    #.#
    ###
    Q:
    2,2

When ``Q:`` is present the grid is the ambient rectangle and the ``.``
cells must be exactly the listed ones.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .errors import EmptyInput, InconsistentQ, InfeasibleDims, PolyidError, RaggedGrid
from .grid import Cell, Interval, Point, Polyomino, classify, normalize, polyomino_from_cells

__all__ = ["Instance", "MalformedInstance", "parse_instance", "emit_instance", "random_instance"]


class MalformedInstance(PolyidError):
    pass


@dataclass(frozen=True)
class Instance:
    polyomino: Polyomino
    rect: Optional[Interval] = None
    q: Optional[Polyomino] = None
    name: str = "instance"

    @property
    def context(self):
        return (self.rect, self.q) if self.q is not None else None


def _parse_pairs(tokens, lineno):
    out = []
    for tok in tokens:
        try:
            i, j = (int(v) for v in tok.split(","))
        except ValueError:
            raise MalformedInstance(f"line {lineno}: expected 'i,j', got {tok!r}") from None
        out.append(Cell(i, j))
    return out


def parse_instance(text: str, name: str = "instance") -> Instance:
    rows: list[str] = []
    q_cells: list[Cell] = []
    in_q = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.upper().startswith("Q:"):
            in_q = True
            q_cells += _parse_pairs(line[2:].split(), lineno)
            continue
        if in_q:
            q_cells += _parse_pairs(line.split(), lineno)
            continue
        bad = set(line) - {"#", "."}
        if bad:
            raise MalformedInstance(f"line {lineno}: unexpected characters {sorted(bad)}")
        rows.append(line)
    if not rows:
        raise EmptyInput("instance has no grid")
    width = len(rows[0])
    for k, row in enumerate(rows):
        if len(row) != width:
            raise RaggedGrid(f"grid row {k + 1} has length {len(row)}, expected {width}")
    height = len(rows)
    cells = {
        Cell(c + 1, height - k)
        for k, row in enumerate(rows)
        for c, ch in enumerate(row)
        if ch == "#"
    }
    if not cells:
        raise EmptyInput("grid contains no cells")
    p = polyomino_from_cells(cells)
    if not q_cells:
        return Instance(normalize(p), name=name)
    rect = Interval(Point(1, 1), Point(width + 1, height + 1))
    q = polyomino_from_cells(q_cells)
    if not q.cells <= set(rect.cells()) or frozenset(rect.cells()) - q.cells != p.cells:
        raise InconsistentQ("grid cells are not the rectangle minus the listed Q cells")
    return Instance(p, rect, q, name=name)


def emit_instance(inst: Instance) -> str:
    """Canonical text for an instance."""
    box = inst.rect if inst.rect is not None else inst.polyomino.bounding_box
    lines = []
    for y in range(box.hi.y - 1, box.lo.y - 1, -1):
        lines.append(
            "".join(
                "#" if Cell(x, y) in inst.polyomino.cells else "."
                for x in range(box.lo.x, box.hi.x)
            )
        )
    if inst.q is not None:
        lines.append("Q:")
        lines += [f"{c.x},{c.y}" for c in inst.q.sorted_cells()]
    return "\n".join(lines) + "\n"


def _valley(rng: random.Random, values: list[int]) -> list[int]:
    """Arrange values non-increasing then non-decreasing."""
    cut = rng.randint(0, len(values))
    return sorted(values[:cut], reverse=True) + sorted(values[cut:])


def random_convex_cells(rng: random.Random, xlo: int, xhi: int, ylo: int, yhi: int) -> set:
    """Seeded convex polyomino inside the given anchor ranges.

    Every row run contains one fixed column, left ends form a valley and
    right ends a peak, which makes every row and every column contiguous.
    """
    y0, y1 = sorted((rng.randint(ylo, yhi), rng.randint(ylo, yhi)))
    col = rng.randint(xlo, xhi)
    k = y1 - y0 + 1
    left = _valley(rng, [rng.randint(xlo, col) for _ in range(k)])
    right = [-v for v in _valley(rng, [-rng.randint(col, xhi) for _ in range(k)])]
    return {
        Cell(x, y0 + i)
        for i in range(k)
        for x in range(left[i], right[i] + 1)
    }


def random_instance(width: int, height: int, seed: int) -> Instance:
    """Rectangle of ``width x height`` cells minus a random convex interior shape."""
    if width < 3 or height < 3:
        raise InfeasibleDims("need at least 3x3 cells for a boundary-disjoint removal")
    rng = random.Random(seed)
    q = polyomino_from_cells(random_convex_cells(rng, 2, width - 1, 2, height - 1))
    assert classify(q).convex
    rect = Interval(Point(1, 1), Point(width + 1, height + 1))
    p = polyomino_from_cells(set(rect.cells()) - q.cells)
    return Instance(p, rect, q, name=f"random-{width}x{height}-{seed}")
