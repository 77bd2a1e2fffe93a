"""Inner intervals, maximal edge intervals and the interval family indexing
the toric parametrisation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import BoundaryTouch, InconsistentQ, NotConvex
from .grid import (
    Cell,
    Interval,
    LadderCertificate,
    Point,
    Polyomino,
    classify,
    components,
    corner_report,
    ladder_certificate,
)

__all__ = [
    "InnerInterval",
    "LambdaFamily",
    "ComplementComponent",
    "ComplementDecomposition",
    "inner_intervals",
    "is_inner_interval",
    "maximal_edge_intervals",
    "special_interval",
    "lambda_family",
    "complement_decomposition",
]


@dataclass(frozen=True)
class InnerInterval:
    interval: Interval

    @property
    def p(self) -> Point:
        return self.interval.lo

    @property
    def q(self) -> Point:
        return self.interval.hi

    @property
    def r(self) -> Point:
        """Lower right corner."""
        return self.interval.anti_diagonal[0]

    @property
    def s(self) -> Point:
        """Upper left corner."""
        return self.interval.anti_diagonal[1]


class _CellCounter:
    """2D prefix sums over cell occupancy for O(1) box-containment tests."""

    def __init__(self, p: Polyomino):
        box = p.bounding_box
        self.x0, self.y0 = box.lo.x, box.lo.y
        w, h = box.hi.x - box.lo.x, box.hi.y - box.lo.y
        table = [[0] * (w + 1) for _ in range(h + 1)]
        for j in range(h):
            acc = 0
            for i in range(w):
                acc += Cell(self.x0 + i, self.y0 + j) in p.cells
                table[j + 1][i + 1] = table[j][i + 1] + acc
        self.table = table
        self.w, self.h = w, h

    def count(self, lo, hi) -> int:
        """Number of cells of P in the vertex box [lo, hi]."""
        i0 = min(max(lo[0] - self.x0, 0), self.w)
        i1 = min(max(hi[0] - self.x0, 0), self.w)
        j0 = min(max(lo[1] - self.y0, 0), self.h)
        j1 = min(max(hi[1] - self.y0, 0), self.h)
        t = self.table
        return t[j1][i1] - t[j0][i1] - t[j1][i0] + t[j0][i0]


def is_inner_interval(p: Polyomino, lo, hi) -> bool:
    if not (lo[0] < hi[0] and lo[1] < hi[1]):
        return False
    return all(
        Cell(x, y) in p.cells
        for x in range(lo[0], hi[0])
        for y in range(lo[1], hi[1])
    )


def inner_intervals(p: Polyomino) -> list[InnerInterval]:
    counter = _CellCounter(p)
    verts = sorted(p.vertices)
    out = []
    for a in verts:
        for b in verts:
            if a.x < b.x and a.y < b.y:
                if counter.count(a, b) == (b.x - a.x) * (b.y - a.y):
                    out.append(InnerInterval(Interval(a, b)))
    out.sort(key=lambda t: (t.p.y, t.p.x, t.q.y, t.q.x))
    return out


def _runs(keys: list[int]) -> list[tuple[int, int]]:
    """Maximal runs of consecutive unit steps ``k -> k + 1``."""
    runs = []
    for k in sorted(keys):
        if runs and runs[-1][1] == k:
            runs[-1][1] = k + 1
        else:
            runs.append([k, k + 1])
    return [tuple(r) for r in runs]


def maximal_edge_intervals(p: Polyomino) -> tuple[list[Interval], list[Interval]]:
    """Maximal horizontal and vertical edge intervals.

    Horizontal ones are sorted by (y, x), vertical ones by (x, y).
    """
    rows: dict = {}
    cols: dict = {}
    for a, b in p.edges:
        if a.y == b.y:
            rows.setdefault(a.y, []).append(min(a.x, b.x))
        else:
            cols.setdefault(a.x, []).append(min(a.y, b.y))
    horizontal = [
        Interval(Point(x0, y), Point(x1, y))
        for y in sorted(rows)
        for x0, x1 in _runs(rows[y])
    ]
    vertical = [
        Interval(Point(x, y0), Point(x, y1))
        for x in sorted(cols)
        for y0, y1 in _runs(cols[x])
    ]
    return horizontal, vertical


def special_interval(rect: Interval, q: Polyomino) -> Interval:
    """The interval from ``rect.lo`` to the lowest leftmost outside corner of ``q``."""
    if not classify(q).convex:
        raise NotConvex("the removed polyomino must be convex")
    rect_cells = set(rect.cells())
    if not q.cells <= rect_cells:
        raise ValueError("removed cells lie outside the ambient rectangle")
    rect_boundary = corner_report(Polyomino(frozenset(rect_cells))).boundary
    touching = rect_boundary & corner_report(q).boundary
    if touching:
        v = min(touching, key=lambda t: (t.y, t.x))
        raise BoundaryTouch(f"removed shape touches the rectangle boundary at {tuple(v)}")
    outside = corner_report(q).outside
    e = min(outside, key=lambda v: (v.x, v.y))
    return Interval(rect.lo, e)


@dataclass(frozen=True)
class LambdaFamily:
    """Intervals indexing the u-variables; ``members`` fixes the index order."""

    special: Optional[Interval]
    maximal_h: tuple
    maximal_v: tuple
    members: tuple = field(init=False)

    def __post_init__(self):
        head = (self.special,) if self.special is not None else ()
        object.__setattr__(self, "members", head + tuple(self.maximal_h) + tuple(self.maximal_v))

    def __len__(self):
        return len(self.members)

    def label(self, k: int) -> str:
        iv = self.members[k]
        if self.special is not None and k == 0:
            return f"I_e {iv}"
        kind = "H" if k < len(self.maximal_h) + (self.special is not None) else "V"
        return f"{kind} {iv}"

    def containing(self, v) -> list[int]:
        """Indices of the members containing vertex ``v``."""
        return [k for k, iv in enumerate(self.members) if v in iv]


def check_context(p: Polyomino, rect: Interval, q: Polyomino) -> None:
    expected = frozenset(rect.cells()) - q.cells
    if expected != p.cells:
        raise InconsistentQ("polyomino is not the rectangle with the given cells removed")


def lambda_family(p: Polyomino, context=None) -> LambdaFamily:
    """Interval family for ``p``.

    ``context`` is ``None`` for a simple polyomino, or a pair ``(rect, q)``
    when ``p`` is the rectangle ``rect`` with the convex polyomino ``q``
    removed; only then is the special interval included.
    """
    special = None
    if context is not None:
        rect, q = context
        check_context(p, rect, q)
        special = special_interval(rect, q)
    horizontal, vertical = maximal_edge_intervals(p)
    return LambdaFamily(special, tuple(horizontal), tuple(vertical))


@dataclass(frozen=True)
class ComplementComponent:
    cells: frozenset
    corners: tuple
    certificate: Optional[LadderCertificate]

    @property
    def corner(self) -> Optional[Point]:
        return self.corners[0] if len(self.corners) == 1 else None


@dataclass(frozen=True)
class ComplementDecomposition:
    ambient: Interval
    components: tuple

    def satisfies_structure_lemma(self) -> bool:
        """At most four pieces, one ambient corner each, every piece a ladder."""
        return len(self.components) <= 4 and all(
            len(c.corners) == 1 and c.certificate is not None for c in self.components
        )


def complement_decomposition(q: Polyomino) -> ComplementDecomposition:
    if not classify(q).convex:
        raise NotConvex("complement decomposition needs a convex polyomino")
    ambient = q.bounding_box
    corners = (
        ambient.lo,
        Point(ambient.hi.x, ambient.lo.y),
        Point(ambient.lo.x, ambient.hi.y),
        ambient.hi,
    )
    rest = set(ambient.cells()) - q.cells
    parts = []
    for comp in components(rest):
        piece = Polyomino(frozenset(comp))
        touched = tuple(c for c in corners if c in piece.vertices)
        parts.append(ComplementComponent(piece.cells, touched, ladder_certificate(piece)))
    return ComplementDecomposition(ambient, tuple(parts))
