"""Toric parametrisation of polyomino rings and certification of I_P = J_P.

A vertex ``v`` is sent to the product of the u-variables of the intervals of
the family containing it. The toric ideal is the kernel of the induced ring
map; it is computed from an integer kernel basis of the exponent matrix by
saturating the associated lattice-basis ideal one variable at a time.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import (
    Binomial,
    GroebnerBasis,
    Monomial,
    MonomialOrder,
    VariableUniverse,
    buchberger,
)
from .errors import (
    DegreeTooLow,
    NotAnInnerInterval,
    OutOfScope,
    VerticesNotInSupport,
)
from .grid import Cell, Interval, Point, Polyomino, is_simple
from .intervals import LambdaFamily, inner_intervals, is_inner_interval

__all__ = [
    "ToricMap",
    "LatticeBasis",
    "MarkovBasis",
    "ReductionStep",
    "Certificate",
    "vertex_universe",
    "canonical_order",
    "build_toric_map",
    "phi_eval",
    "in_kernel",
    "kernel_witness",
    "inner_minor_generators",
    "integer_kernel",
    "rational_rank",
    "lattice_binomials",
    "kernel_fibers",
    "fiber_binomials",
    "markov_basis",
    "saturate_by_product",
    "verify_theorem",
    "lemma_reduction_step",
    "avoiding_subpolyomino",
]


def vertex_universe(p: Polyomino) -> VariableUniverse:
    return VariableUniverse(tuple(f"x[{v.x},{v.y}]" for v in p.sorted_vertices()))


def canonical_order(p: Polyomino) -> MonomialOrder:
    return MonomialOrder.degrevlex(len(p.vertices))


@dataclass(frozen=True)
class ToricMap:
    polyomino: Polyomino
    lam: LambdaFamily
    vertices: tuple
    alpha: dict
    matrix: tuple

    @property
    def universe(self) -> VariableUniverse:
        return VariableUniverse(tuple(f"x[{v.x},{v.y}]" for v in self.vertices))

    @property
    def u_universe(self) -> VariableUniverse:
        return VariableUniverse(tuple(f"u[{k}]" for k in range(len(self.lam))))

    def index(self, v) -> int:
        return self._vindex[Point(*v)]

    def __post_init__(self):
        object.__setattr__(self, "_vindex", {v: i for i, v in enumerate(self.vertices)})

    def monomial(self, points) -> Monomial:
        """Vertex monomial with one factor per listed point (repeats allowed)."""
        return Monomial.product(self.index(v) for v in points)

    def binomial(self, plus_points, minus_points) -> Binomial:
        return Binomial(self.monomial(plus_points), self.monomial(minus_points))

    def points_of(self, m: Monomial) -> list[Point]:
        return [self.vertices[i] for i, e in m.items for _ in range(e)]


def build_toric_map(p: Polyomino, lam: LambdaFamily) -> ToricMap:
    vertices = tuple(p.sorted_vertices())
    alpha = {v: Monomial.product(lam.containing(v)) for v in vertices}
    matrix = tuple(
        tuple(1 if v in iv else 0 for v in vertices) for iv in lam.members
    )
    return ToricMap(p, lam, vertices, alpha, matrix)


def phi_eval(t: ToricMap, m: Monomial) -> Monomial:
    out: dict = {}
    for i, e in m.items:
        for k, a in t.alpha[t.vertices[i]].items:
            out[k] = out.get(k, 0) + a * e
    return Monomial(out)


def in_kernel(t: ToricMap, f: Binomial) -> bool:
    return phi_eval(t, f.plus) == phi_eval(t, f.minus)


def kernel_witness(t: ToricMap, f: Binomial) -> dict:
    """u-variables whose exponents differ in the images of the two terms.

    Maps a Λ index to ``(exponent in image of plus, exponent in image of minus)``;
    empty exactly when ``f`` lies in the kernel.
    """
    a = phi_eval(t, f.plus).as_dict()
    b = phi_eval(t, f.minus).as_dict()
    return {
        k: (a.get(k, 0), b.get(k, 0))
        for k in sorted(set(a) | set(b))
        if a.get(k, 0) != b.get(k, 0)
    }


def inner_minor_generators(p: Polyomino) -> list[Binomial]:
    """One binomial ``x_p x_q - x_r x_s`` per inner interval, normalised."""
    index = {v: i for i, v in enumerate(p.sorted_vertices())}
    order = canonical_order(p)
    gens = []
    for iv in inner_intervals(p):
        f = Binomial(
            Monomial.product((index[iv.p], index[iv.q])),
            Monomial.product((index[iv.r], index[iv.s])),
        )
        gens.append(f.normalized(order))
    gens.sort(key=lambda g: (order.key(g.plus), order.key(g.minus)), reverse=True)
    return gens


@dataclass(frozen=True)
class LatticeBasis:
    vectors: tuple
    rank_of_matrix: int


def _xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def integer_kernel(matrix) -> LatticeBasis:
    """Basis of the integer kernel of ``matrix`` (rows of equal length).

    Integer row reduction of ``[A^T | I]`` into echelon form; the identity
    part of the rows whose ``A^T`` part vanishes spans the kernel.
    """
    rows_a = [list(r) for r in matrix]
    m = len(rows_a)
    n = len(rows_a[0]) if rows_a else 0
    work = [[rows_a[i][j] for i in range(m)] + [int(j == k) for k in range(n)] for j in range(n)]
    rank = 0
    for col in range(m):
        pivot_rows = [r for r in range(rank, n) if work[r][col]]
        if not pivot_rows:
            continue
        # gcd-combine every candidate into the first
        top = pivot_rows[0]
        for r in pivot_rows[1:]:
            a, b = work[top][col], work[r][col]
            g, s, u = _xgcd(a, b)
            ra, rb = work[top], work[r]
            new_top = [s * x + u * y for x, y in zip(ra, rb)]
            new_r = [(b // g) * x - (a // g) * y for x, y in zip(ra, rb)]
            work[top], work[r] = new_top, new_r
        work[rank], work[top] = work[top], work[rank]
        rank += 1
    vectors = _size_reduce([tuple(work[r][m:]) for r in range(rank, n)])
    for vec in vectors:
        for row in rows_a:
            if sum(a * w for a, w in zip(row, vec)):
                raise AssertionError("kernel vector fails A.w = 0")
    return LatticeBasis(tuple(vectors), rank)


def _norm1(v) -> int:
    return sum(abs(x) for x in v)


def _size_reduce(vectors: list) -> list:
    """Greedy pairwise reduction shrinking the l1 norms of the basis.

    Each step replaces ``v`` by ``v - c*w`` which keeps the lattice fixed.
    """
    vecs = [list(v) for v in vectors]
    changed = True
    while changed:
        changed = False
        vecs.sort(key=lambda v: (_norm1(v), v))
        for i in range(len(vecs)):
            for j in range(len(vecs)):
                if i == j:
                    continue
                best = vecs[i]
                best_norm = _norm1(best)
                for c in (1, -1):
                    cand = [a - c * b for a, b in zip(vecs[i], vecs[j])]
                    cn = _norm1(cand)
                    if cn < best_norm:
                        best, best_norm = cand, cn
                if best is not vecs[i]:
                    vecs[i] = best
                    changed = True
    for v in vecs:
        # sign convention: first nonzero entry positive
        for x in v:
            if x:
                if x < 0:
                    v[:] = [-y for y in v]
                break
    vecs.sort(key=lambda v: (_norm1(v), [-x for x in v]))
    return [tuple(v) for v in vecs]


def rational_rank(matrix) -> int:
    """Rank over the rationals by fraction-exact Gaussian elimination."""
    rows = [[Fraction(x) for x in r] for r in matrix]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col] / rows[rank][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def lattice_binomials(basis: LatticeBasis) -> list[Binomial]:
    out = []
    for w in basis.vectors:
        plus = Monomial({i: x for i, x in enumerate(w) if x > 0})
        minus = Monomial({i: -x for i, x in enumerate(w) if x < 0})
        out.append(Binomial(plus, minus))
    return out


@dataclass
class MarkovBasis:
    binomials: list
    lattice: LatticeBasis
    stats: dict = field(default_factory=dict)


def _saturate_variables(gens, nvars, budget, stats):
    current = list(gens)
    for i in range(nvars):
        order = MonomialOrder.degrevlex(nvars, cheapest=i)
        gb = buchberger(current, order, budget)
        stats["pairs"] = stats.get("pairs", 0) + gb.stats["pairs"]
        stripped = [g.strip_variable(i) for g in gb.elements]
        stats["stripped"] = stats.get("stripped", 0) + sum(
            s is not g for s, g in zip(stripped, gb.elements)
        )
        current = stripped
    return current


def kernel_fibers(t: ToricMap, degree: int) -> list[list[Monomial]]:
    """Vertex monomials of one degree grouped by their image under the toric map.

    Fibers with a single monomial are dropped.
    """
    n = len(t.vertices)
    groups: dict = {}
    for combo in itertools.combinations_with_replacement(range(n), degree):
        m = Monomial.product(combo)
        groups.setdefault(phi_eval(t, m), []).append(m)
    return [ms for ms in groups.values() if len(ms) > 1]


def fiber_binomials(t: ToricMap, degree: int) -> list[Binomial]:
    """Generators of the span of all kernel binomials of the given degree."""
    return [Binomial(ms[0], m) for ms in kernel_fibers(t, degree) for m in ms[1:]]


def markov_basis(t: ToricMap, budget: Optional[int] = None, seed_quadrics: bool = True) -> MarkovBasis:
    """Binomial generators of the kernel of the toric ring map.

    The lattice-basis binomials generate an ideal whose saturation by the
    product of all variables is the toric ideal. That saturation is reached
    one variable at a time: a degrevlex Groebner basis with the variable
    cheapest, divided by the largest power of the variable, is a Groebner
    basis of the saturation by it (the ideals are homogeneous, since every
    vertex lies in exactly one maximal horizontal interval). Saturating by
    each variable in turn gives the saturation by their product, so one
    pass over the variables is enough.

    With ``seed_quadrics`` the start ideal also contains every degree-2
    binomial of the kernel, found by grouping quadratic monomials by their
    image. Those lie in the toric ideal, so the saturation is unchanged, but
    the start ideal is far closer to saturated than a bare lattice-basis
    ideal, whose Groebner bases blow up beyond a few dozen variables.
    """
    lattice = integer_kernel(t.matrix)
    gens = lattice_binomials(lattice)
    stats: dict = {"lattice_rank": len(lattice.vectors)}
    if seed_quadrics:
        seeds = fiber_binomials(t, 2)
        stats["seeds"] = len(seeds)
        gens = seeds + gens
    result = _saturate_variables(gens, len(t.vertices), budget, stats)
    order = canonical_order(t.polyomino)
    result = [g.normalized(order) for g in result if not g.is_zero]
    for g in result:
        if not in_kernel(t, g):
            raise AssertionError(f"Markov element outside the kernel: {g}")
    return MarkovBasis(result, lattice, stats)


def saturate_by_product(gens, nvars: int, budget: Optional[int] = None) -> list[Binomial]:
    """Saturation by ``x_0 * ... * x_{n-1}`` through one auxiliary variable.

    Eliminates ``t`` from ``gens + (t * x_0 ... x_{n-1} - 1)``. Used as an
    independent check of the per-variable route at small sizes.
    """
    t = nvars
    aux = Binomial(Monomial.product(range(nvars + 1)), Monomial())
    order = MonomialOrder.elimination(nvars + 1, [t])
    gb = buchberger(list(gens) + [aux], order, budget)
    return [g for g in gb.elements if t not in g.plus.support and t not in g.minus.support]


@dataclass
class Certificate:
    equal: bool
    gb_I: GroebnerBasis
    gb_J: GroebnerBasis
    max_degree_J: int
    lambda_size: int
    rank: int
    n_vertices: int
    n_minors: int
    n_markov: int
    max_degree_markov: int
    seconds: float = 0.0

    def report(self) -> str:
        lines = [
            f"vertices: {self.n_vertices}",
            f"lambda: {self.lambda_size}",
            f"rank(A): {self.rank}",
            f"inner_minors: {self.n_minors}",
            f"markov_generators: {self.n_markov}",
            f"max_deg(markov): {self.max_degree_markov}",
            f"gb(I_P): {len(self.gb_I)}",
            f"gb(J_P): {len(self.gb_J)}",
            f"max_deg(J): {self.max_degree_J}",
            f"EQUAL: {'yes' if self.equal else 'no'}, max_deg(J)={self.max_degree_J}",
        ]
        return "\n".join(lines) + "\n"


def verify_theorem(p: Polyomino, lam: LambdaFamily, budget: Optional[int] = None) -> Certificate:
    """Compare the reduced Groebner bases of I_P and of the computed toric ideal."""
    if lam.special is None and not is_simple(p):
        raise OutOfScope("a nonsimple polyomino needs the rectangle-minus-convex context")
    start = time.perf_counter()
    t = build_toric_map(p, lam)
    order = canonical_order(p)
    minors = inner_minor_generators(p)
    for g in minors:
        if not in_kernel(t, g):
            raise AssertionError(f"inner minor outside the kernel: {g}")
    mb = markov_basis(t, budget)
    gb_i = buchberger(minors, order, budget)
    gb_j = buchberger(mb.binomials, order, budget)
    return Certificate(
        equal=gb_i == gb_j,
        gb_I=gb_i,
        gb_J=gb_j,
        max_degree_J=gb_j.max_degree,
        lambda_size=len(lam),
        rank=mb.lattice.rank_of_matrix,
        n_vertices=len(t.vertices),
        n_minors=len(minors),
        n_markov=len(mb.binomials),
        max_degree_markov=max((g.degree for g in mb.binomials), default=0),
        seconds=time.perf_counter() - start,
    )


@dataclass(frozen=True)
class ReductionStep:
    quadric: Binomial
    cofactor: Monomial
    multiplier_vertex: Point
    residual: Binomial


def lemma_reduction_step(t: ToricMap, f: Binomial, p, q, r) -> ReductionStep:
    """Split ``f`` as ``quadric * cofactor + x_r * residual``.

    ``p, q`` must be opposite corners of an inner interval with ``x_p x_q``
    dividing ``f.plus``, and ``r`` one of the two remaining corners with
    ``x_r`` dividing ``f.minus``.
    """
    p, q, r = Point(*p), Point(*q), Point(*r)
    if f.degree < 3:
        raise DegreeTooLow(f"degree {f.degree} < 3")
    if not in_kernel(t, f):
        raise ValueError("binomial is not in the toric ideal")
    if p.x == q.x or p.y == q.y:
        raise NotAnInnerInterval("p and q are not opposite corners of an interval")
    lo = Point(min(p.x, q.x), min(p.y, q.y))
    hi = Point(max(p.x, q.x), max(p.y, q.y))
    if not is_inner_interval(t.polyomino, lo, hi):
        raise NotAnInnerInterval(f"{Interval(lo, hi)} is not an inner interval")
    others = {Point(p.x, q.y), Point(q.x, p.y)}
    if r not in others:
        raise NotAnInnerInterval("r is not a corner opposite to the pair p, q")
    (s,) = others - {r}
    for v in (p, q, r, s):
        if v not in t.polyomino.vertices:
            raise VerticesNotInSupport(f"{tuple(v)} is not a vertex")
    pq = t.monomial([p, q])
    xr = t.monomial([r])
    if not pq.divides(f.plus):
        raise VerticesNotInSupport("x_p x_q does not divide the positive term")
    if not xr.divides(f.minus):
        raise VerticesNotInSupport("x_r does not divide the negative term")
    cofactor = f.plus.divide(pq)
    quadric = Binomial(pq, t.monomial([r, s]))
    residual = Binomial(t.monomial([s]) * cofactor, f.minus.divide(xr))
    return ReductionStep(quadric, cofactor, r, residual)


def avoiding_subpolyomino(p: Polyomino, special: Interval) -> frozenset:
    """Cells of ``p`` having no vertex in ``special``."""
    return frozenset(c for c in p.cells if not any(v in special for v in Cell(*c).vertices()))
