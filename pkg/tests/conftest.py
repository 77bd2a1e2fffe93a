import itertools
import random

import pytest
from hypothesis import settings

from polyid.algebra import Binomial, Monomial
from polyid.grid import Cell, Interval, Point, Polyomino, polyomino_from_cells
from polyid.intervals import inner_intervals, lambda_family

settings.register_profile("polyid", deadline=None, max_examples=60)
settings.load_profile("polyid")

PLUS = [(3, 3), (2, 3), (4, 3), (3, 2), (3, 4)]


def rect_minus(width, height, q_cells):
    rect = Interval(Point(1, 1), Point(width + 1, height + 1))
    q = polyomino_from_cells(q_cells)
    p = polyomino_from_cells(set(rect.cells()) - set(q.cells))
    return p, rect, q


def shift(cells, dx, dy):
    return [(x + dx, y + dy) for x, y in cells]


def grow_polyomino(rng: random.Random, size: int, width: int, height: int) -> Polyomino:
    """Random connected polyomino inside [1..width] x [1..height] by accretion."""
    start = Cell(rng.randint(1, width), rng.randint(1, height))
    cells = {start}
    while len(cells) < size:
        frontier = sorted(
            {
                nb
                for c in cells
                for nb in c.neighbours()
                if 1 <= nb.x <= width and 1 <= nb.y <= height and nb not in cells
            }
        )
        if not frontier:
            break
        cells.add(rng.choice(frontier))
    return polyomino_from_cells(cells)


def columns_contiguous(cells) -> bool:
    cols = {}
    for x, y in cells:
        cols.setdefault(x, []).append(y)
    return all(max(v) - min(v) + 1 == len(v) for v in cols.values())


def random_convex(rng: random.Random, box: int = 8) -> Polyomino:
    """Random convex polyomino in a box; rows overlap, columns checked by rejection."""
    while True:
        y0 = rng.randint(1, box)
        y1 = rng.randint(y0, min(box, y0 + rng.randint(0, box)))
        l = rng.randint(1, box)
        r = rng.randint(l, box)
        cells = []
        for y in range(y0, y1 + 1):
            cells += [(x, y) for x in range(l, r + 1)]
            nl = rng.randint(1, r)
            nr = rng.randint(max(nl, l), box)
            l, r = nl, nr
        if columns_contiguous(cells):
            return polyomino_from_cells(cells)


@pytest.fixture(scope="session")
def ring3():
    """3x3 rectangle with the centre cell removed."""
    p, rect, q = rect_minus(3, 3, [(2, 2)])
    return p, rect, q, lambda_family(p, (rect, q))


@pytest.fixture(scope="session")
def ring5():
    """5x5 rectangle with the centred plus pentomino removed."""
    p, rect, q = rect_minus(5, 5, PLUS)
    return p, rect, q, lambda_family(p, (rect, q))



def image_vector(lam, vertices, m):
    """Exponent vector of the toric image, computed from interval membership directly."""
    return tuple(sum(e for i, e in m.items if vertices[i] in iv) for iv in lam.members)


def oracle_fibers(t, degree):
    """Degree-d vertex monomials grouped by image, using image_vector."""
    groups = {}
    for combo in itertools.combinations_with_replacement(range(len(t.vertices)), degree):
        m = Monomial.product(combo)
        groups.setdefault(image_vector(t.lam, t.vertices, m), []).append(m)
    return [ms for ms in groups.values() if len(ms) > 1]


def lemma_choice(t, f, intervals):
    """First (p, q, r) with x_p x_q | f+ on a diagonal and x_r | f- on the other."""
    for iv in intervals:
        for diag, other in (((iv.p, iv.q), (iv.r, iv.s)), ((iv.r, iv.s), (iv.p, iv.q))):
            if t.monomial(diag).divides(f.plus):
                for r in other:
                    if t.monomial([r]).divides(f.minus):
                        return diag[0], diag[1], r
    return None


def lemma_cases(t, limit):
    """Degree-3 kernel binomials with coprime terms and a valid lemma choice."""
    ivs = inner_intervals(t.polyomino)
    out = []
    for ms in oracle_fibers(t, 3):
        for a, b in itertools.permutations(ms, 2):
            if a.gcd(b).degree:
                continue
            f = Binomial(a, b)
            choice = lemma_choice(t, f, ivs)
            if choice is not None:
                out.append((f, *choice))
                if len(out) >= limit:
                    return out
    return out
