import random

import pytest
from hypothesis import given, strategies as st

from polyid.errors import BoundaryTouch, InconsistentQ, NotConvex
from polyid.grid import Cell, Interval, Point, classify, polyomino_from_cells
from polyid.intervals import (
    complement_decomposition,
    inner_intervals,
    lambda_family,
    maximal_edge_intervals,
    special_interval,
)

from conftest import PLUS, grow_polyomino, random_convex


def brute_inner(p):
    """Every pair of lattice points in the box, tested by direct cell containment."""
    box = p.bounding_box
    pts = box.points()
    out = []
    for a in pts:
        for b in pts:
            if a.x < b.x and a.y < b.y:
                if all(Cell(x, y) in p.cells for x in range(a.x, b.x) for y in range(a.y, b.y)):
                    out.append((tuple(a), tuple(b)))
    return sorted(out)


def as_pairs(intervals):
    return sorted((tuple(t.p), tuple(t.q)) for t in intervals)


class TestInnerIntervals:
    def test_single_cell(self):
        assert len(inner_intervals(polyomino_from_cells([(1, 1)]))) == 1

    def test_domino(self):
        assert len(inner_intervals(polyomino_from_cells([(1, 1), (2, 1)]))) == 3

    def test_ring(self, ring3):
        p = ring3[0]
        found = as_pairs(inner_intervals(p))
        assert found == brute_inner(p)
        assert len(found) == 20
        assert ((1, 1), (4, 4)) not in found

    def test_corners(self):
        (iv,) = inner_intervals(polyomino_from_cells([(1, 1)]))
        assert (iv.p, iv.q, iv.r, iv.s) == (Point(1, 1), Point(2, 2), Point(2, 1), Point(1, 2))

    @given(st.integers(0, 10**6), st.integers(1, 30))
    def test_matches_oracle(self, seed, size):
        p = grow_polyomino(random.Random(seed), size, 7, 7)
        assert as_pairs(inner_intervals(p)) == brute_inner(p)


class TestEdgeIntervals:
    def test_single_cell(self):
        h, v = maximal_edge_intervals(polyomino_from_cells([(1, 1)]))
        assert [str(i) for i in h] == ["[(1,1),(2,1)]", "[(1,2),(2,2)]"]
        assert [str(i) for i in v] == ["[(1,1),(1,2)]", "[(2,1),(2,2)]"]

    def test_ring(self, ring3):
        h, v = maximal_edge_intervals(ring3[0])
        assert h == [Interval(Point(1, y), Point(4, y)) for y in range(1, 5)]
        assert v == [Interval(Point(x, 1), Point(x, 4)) for x in range(1, 5)]

    def test_vertical_domino(self):
        h, _ = maximal_edge_intervals(polyomino_from_cells([(1, 1), (1, 2)]))
        assert h == [Interval(Point(1, y), Point(2, y)) for y in (1, 2, 3)]

    def test_ring5_rows_split_at_the_hole(self, ring5):
        h, v = maximal_edge_intervals(ring5[0])
        assert len(h) == 8 and len(v) == 8
        assert Interval(Point(1, 3), Point(3, 3)) in h
        assert Interval(Point(4, 3), Point(6, 3)) in h

    @given(st.integers(0, 10**6), st.integers(1, 25))
    def test_each_vertex_in_exactly_one_of_each(self, seed, size):
        p = grow_polyomino(random.Random(seed), size, 6, 6)
        h, v = maximal_edge_intervals(p)
        for vert in p.vertices:
            assert sum(vert in iv for iv in h) == 1
            assert sum(vert in iv for iv in v) == 1


class TestSpecialInterval:
    def test_center_cell(self):
        rect = Interval(Point(1, 1), Point(4, 4))
        assert special_interval(rect, polyomino_from_cells([(2, 2)])) == Interval(Point(1, 1), Point(2, 2))

    def test_plus(self):
        rect = Interval(Point(1, 1), Point(6, 6))
        q = polyomino_from_cells(PLUS)
        assert special_interval(rect, q) == Interval(Point(1, 1), Point(2, 3))

    def test_touching(self):
        rect = Interval(Point(1, 1), Point(3, 3))
        with pytest.raises(BoundaryTouch):
            special_interval(rect, polyomino_from_cells([(1, 1)]))

    def test_not_convex(self):
        rect = Interval(Point(1, 1), Point(7, 7))
        q = polyomino_from_cells([(2, 2), (3, 2), (4, 2), (2, 3), (4, 3)])
        with pytest.raises(NotConvex):
            special_interval(rect, q)

    @given(st.integers(0, 10**6), st.integers(0, 4), st.integers(0, 4))
    def test_growing_top_right_keeps_e(self, seed, dw, dh):
        q = random_convex(random.Random(seed), 5)
        q = polyomino_from_cells([(c.x + 1, c.y + 1) for c in q.cells])
        hi = q.bounding_box.hi
        base = Interval(Point(1, 1), Point(hi.x + 1, hi.y + 1))
        grown = Interval(Point(1, 1), Point(hi.x + 1 + dw, hi.y + 1 + dh))
        assert special_interval(base, q) == special_interval(grown, q)


class TestLambda:
    def test_ring(self, ring3):
        lam = ring3[3]
        assert len(lam) == 9
        assert lam.members[0] == Interval(Point(1, 1), Point(2, 2))

    def test_simple_has_no_special(self):
        lam = lambda_family(polyomino_from_cells(PLUS))
        assert lam.special is None

    def test_ring5(self, ring5):
        assert len(ring5[3]) == 1 + 8 + 8

    def test_deterministic(self, ring5):
        p, rect, q, lam = ring5
        assert lambda_family(p, (rect, q)) == lam

    def test_index_order(self, ring5):
        lam = ring5[3]
        hs = list(lam.maximal_h)
        vs = list(lam.maximal_v)
        assert hs == sorted(hs, key=lambda i: (i.lo.y, i.lo.x))
        assert vs == sorted(vs, key=lambda i: (i.lo.x, i.lo.y))
        assert list(lam.members) == [lam.special] + hs + vs

    def test_inconsistent_context(self, ring3):
        p, rect, _, _ = ring3
        with pytest.raises(InconsistentQ):
            lambda_family(p, (rect, polyomino_from_cells([(2, 2), (2, 3)])))


class TestComplement:
    def test_full_rectangle(self):
        d = complement_decomposition(polyomino_from_cells([(1, 1), (2, 1)]))
        assert d.components == ()

    def test_l_tromino(self):
        d = complement_decomposition(polyomino_from_cells([(1, 1), (2, 1), (1, 2)]))
        (comp,) = d.components
        assert comp.cells == {Cell(2, 2)}
        assert comp.corner == Point(3, 3)
        assert comp.certificate is not None

    def test_plus(self):
        d = complement_decomposition(polyomino_from_cells(PLUS))
        assert len(d.components) == 4
        assert {c.corner for c in d.components} == {Point(2, 2), Point(5, 2), Point(2, 5), Point(5, 5)}
        assert all(len(c.cells) == 1 for c in d.components)

    def test_not_convex(self):
        with pytest.raises(NotConvex):
            complement_decomposition(polyomino_from_cells([(1, 1), (2, 1), (3, 1), (1, 2), (3, 2)]))

    @given(st.integers(0, 10**6))
    def test_structure_lemma(self, seed):
        q = random_convex(random.Random(seed), 8)
        assert classify(q).convex
        d = complement_decomposition(q)
        assert d.satisfies_structure_lemma()
        union = set().union(*(c.cells for c in d.components)) if d.components else set()
        assert union | set(q.cells) == set(d.ambient.cells())
