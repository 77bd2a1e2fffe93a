"""Monomials, pure-difference binomials and a Buchberger engine for binomial ideals.

Every ideal handled here is generated by binomials ``x^a - x^b``. S-binomials
and reductions of such binomials are again of that form (or zero), so the
engine stores a binomial as an ordered pair of monomials and never carries
coefficients.

Inside the engine a monomial is packed into one Python integer: every
variable gets a 16 bit field whose top bit is a guard, and each block of the
order carries an extra field holding its total degree. Fields are laid out so
that XOR-ing the variable fields with all ones yields an integer whose natural
order is the monomial order, and divisibility is one subtraction.
"""

from __future__ import annotations

import heapq
from array import array
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import ExponentOverflow, NotDivisible, ResourceLimit

__all__ = [
    "VariableUniverse",
    "Monomial",
    "Binomial",
    "MonomialOrder",
    "GroebnerBasis",
    "reduce",
    "normal_form",
    "buchberger",
    "ideal_equal",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 5_000_000


@dataclass(frozen=True)
class VariableUniverse:
    names: tuple

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be distinct")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(self.names)})

    def __len__(self):
        return len(self.names)

    def index(self, name) -> int:
        return self._index[name]

    def name(self, i: int) -> str:
        return self.names[i]


class Monomial:
    """Sparse exponent vector; ``items`` is a sorted tuple of (index, exponent)."""

    __slots__ = ("items", "_hash")

    def __init__(self, exponents=None):
        if exponents is None:
            items = ()
        elif isinstance(exponents, dict):
            items = tuple(sorted((i, e) for i, e in exponents.items() if e))
        else:
            items = tuple(sorted((i, e) for i, e in exponents if e))
        for i, e in items:
            if e < 0:
                raise ValueError(f"negative exponent {e} for variable {i}")
        self.items = items
        self._hash = hash(items)

    @classmethod
    def var(cls, i: int, e: int = 1) -> Monomial:
        return cls({i: e})

    @classmethod
    def from_dense(cls, exps: Sequence[int]) -> Monomial:
        return cls({i: e for i, e in enumerate(exps) if e})

    @classmethod
    def product(cls, indices: Iterable[int]) -> Monomial:
        d: dict = {}
        for i in indices:
            d[i] = d.get(i, 0) + 1
        return cls(d)

    def as_dict(self) -> dict:
        return dict(self.items)

    def exponent(self, i: int) -> int:
        for j, e in self.items:
            if j == i:
                return e
        return 0

    def to_dense(self, n: int) -> list[int]:
        out = [0] * n
        for i, e in self.items:
            out[i] = e
        return out

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.items)

    @property
    def support(self) -> frozenset:
        return frozenset(i for i, _ in self.items)

    def __mul__(self, other: Monomial) -> Monomial:
        d = dict(self.items)
        for i, e in other.items:
            d[i] = d.get(i, 0) + e
        return Monomial(d)

    def divides(self, other: Monomial) -> bool:
        od = dict(other.items)
        return all(od.get(i, 0) >= e for i, e in self.items)

    def divide(self, other: Monomial) -> Monomial:
        """``self / other``; raises NotDivisible if that is not a monomial."""
        d = dict(self.items)
        for i, e in other.items:
            left = d.get(i, 0) - e
            if left < 0:
                raise NotDivisible(f"variable {i} has exponent {d.get(i, 0)} < {e}")
            d[i] = left
        return Monomial(d)

    def lcm(self, other: Monomial) -> Monomial:
        d = dict(self.items)
        for i, e in other.items:
            d[i] = max(d.get(i, 0), e)
        return Monomial(d)

    def gcd(self, other: Monomial) -> Monomial:
        od = dict(other.items)
        return Monomial({i: min(e, od.get(i, 0)) for i, e in self.items})

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.items == other.items

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Monomial({dict(self.items)!r})"

    def render(self, universe: Optional[VariableUniverse] = None) -> str:
        if not self.items:
            return "1"
        parts = []
        for i, e in self.items:
            name = universe.name(i) if universe is not None else f"v{i}"
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)


ONE = Monomial()


@dataclass(frozen=True)
class Binomial:
    """The pure difference ``plus - minus``."""

    plus: Monomial
    minus: Monomial

    @property
    def degree(self) -> int:
        return max(self.plus.degree, self.minus.degree)

    @property
    def is_zero(self) -> bool:
        return self.plus == self.minus

    @property
    def support_plus(self) -> frozenset:
        return self.plus.support

    @property
    def support_minus(self) -> frozenset:
        return self.minus.support

    def __neg__(self) -> Binomial:
        return Binomial(self.minus, self.plus)

    def normalized(self, order: MonomialOrder) -> Binomial:
        """Same binomial up to sign, with the larger term first."""
        if order.key(self.plus) < order.key(self.minus):
            return Binomial(self.minus, self.plus)
        return self

    def strip_common(self) -> Binomial:
        """Remove the gcd of both terms (this changes the ideal in general)."""
        g = self.plus.gcd(self.minus)
        return Binomial(self.plus.divide(g), self.minus.divide(g))

    def strip_variable(self, i: int) -> Binomial:
        k = min(self.plus.exponent(i), self.minus.exponent(i))
        if not k:
            return self
        m = Monomial.var(i, k)
        return Binomial(self.plus.divide(m), self.minus.divide(m))

    def render(self, universe: Optional[VariableUniverse] = None) -> str:
        return f"{self.plus.render(universe)} - {self.minus.render(universe)}"


@dataclass(frozen=True)
class MonomialOrder:
    """Block graded reverse lexicographic order.

    ``priority`` lists variable indices from most to least expensive and
    ``blocks`` splits it into consecutive blocks, each compared by degree
    and then reverse lexicographically before the next block is consulted.
    A single block is plain degrevlex.
    """

    nvars: int
    priority: tuple
    blocks: tuple

    def __post_init__(self):
        if sorted(self.priority) != list(range(self.nvars)):
            raise ValueError("priority must be a permutation of the variables")
        if sum(self.blocks) != self.nvars or any(b <= 0 for b in self.blocks):
            raise ValueError("block sizes must be positive and sum to nvars")

    @classmethod
    def degrevlex(cls, nvars: int, priority=None, cheapest: Optional[int] = None):
        prio = list(range(nvars)) if priority is None else list(priority)
        if cheapest is not None:
            prio.remove(cheapest)
            prio.append(cheapest)
        return cls(nvars, tuple(prio), (nvars,) if nvars else ())

    @classmethod
    def elimination(cls, nvars: int, eliminate: Sequence[int]):
        """Degrevlex on ``eliminate`` first, then degrevlex on the rest."""
        first = list(eliminate)
        rest = [i for i in range(nvars) if i not in set(first)]
        blocks = tuple(b for b in (len(first), len(rest)) if b)
        return cls(nvars, tuple(first + rest), blocks)

    @property
    def kind(self) -> str:
        return "degrevlex" if len(self.blocks) <= 1 else "elimination"

    def key(self, m: Monomial) -> tuple:
        """Sort key; a larger key means a larger monomial."""
        d = m.as_dict()
        out = []
        start = 0
        for size in self.blocks:
            block = self.priority[start:start + size]
            start += size
            out.append(sum(d.get(i, 0) for i in block))
            out.extend(-d.get(i, 0) for i in reversed(block))
        return tuple(out)


class _Packer:
    WIDTH = 16

    def __init__(self, order: MonomialOrder):
        w = self.WIDTH
        self.order = order
        self.n = order.nvars
        self.var_field = [0] * self.n
        self.deg_fields = []  # (field, variable fields of the block)
        field_no = 0
        start = len(order.priority)
        flip = 0
        for size in reversed(order.blocks):
            block = order.priority[start - size:start]
            start -= size
            first = field_no
            for v in block:
                self.var_field[v] = field_no
                flip |= ((1 << w) - 1) << (field_no * w)
                field_no += 1
            self.deg_fields.append((field_no, first, field_no))
            field_no += 1
        self.nfields = field_no
        self.flip = flip
        self.guard = sum(1 << (f * w + w - 1) for f in range(field_no))
        self.fmask = (1 << w) - 1
        self.nbytes = field_no * w // 8
        self.single = len(order.blocks) == 1

    def encode(self, m: Monomial) -> int:
        w = self.WIDTH
        fields = [0] * self.nfields
        for i, e in m.items:
            if e >= 1 << (w - 1):
                raise ExponentOverflow(f"exponent {e} does not fit the packed field")
            fields[self.var_field[i]] = e
        for f, a, b in self.deg_fields:
            fields[f] = sum(fields[a:b])
            if fields[f] >= 1 << (w - 1):
                raise ExponentOverflow("degree does not fit the packed field")
        return int.from_bytes(array("H", fields).tobytes(), "little")

    def fields(self, x: int) -> array:
        a = array("H")
        a.frombytes(x.to_bytes(self.nbytes, "little"))
        return a

    def decode(self, x: int) -> Monomial:
        a = self.fields(x)
        return Monomial({i: a[self.var_field[i]] for i in range(self.n) if a[self.var_field[i]]})

    def fix_degrees(self, x: int) -> int:
        a = self.fields(x)
        for f, lo, hi in self.deg_fields:
            d = sum(a[lo:hi])
            if d >> (self.WIDTH - 1):
                raise ExponentOverflow("degree does not fit the packed field")
            a[f] = d
        return int.from_bytes(a.tobytes(), "little")

    def lcm(self, x: int, y: int) -> int:
        g = self.guard
        sel = (((x | g) - y) & g) >> (self.WIDTH - 1)
        mask = sel * self.fmask
        return self.fix_degrees((x & mask) | (y & ~mask))


class GroebnerBasis:
    def __init__(self, order: MonomialOrder, elements, reduced: bool = True, stats=None):
        self.order = order
        self.elements = list(elements)
        self.reduced = reduced
        self.stats = stats or {}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return self.order == other.order and set(self.elements) == set(other.elements)

    @property
    def max_degree(self) -> int:
        return max((b.degree for b in self.elements), default=0)

    def contains(self, f: Binomial) -> bool:
        return reduce(f, self.elements, self.order) is None

    def render(self, universe=None) -> list[str]:
        return [b.render(universe) for b in self.elements]


def _normal_pair(a: int, b: int, flip: int):
    if a == b:
        return None
    return (a, b) if (a ^ flip) > (b ^ flip) else (b, a)


def _reduce_packed(a: int, b: int, basis, guard: int, flip: int):
    """Top-reduce ``a - b``; returns a normalised pair or None for zero."""
    while True:
        ag = a | guard
        for lead, trail in basis:
            if (ag - lead) & guard == guard:
                break
        else:
            return a, b
        a = a - lead + trail
        if a & guard:
            raise ExponentOverflow("exponent overflow during reduction")
        if a == b:
            return None
        if (a ^ flip) < (b ^ flip):
            a, b = b, a


def _nf_monomial(m: int, basis, guard: int) -> int:
    while True:
        mg = m | guard
        for lead, trail in basis:
            if (mg - lead) & guard == guard:
                m = m - lead + trail
                break
        else:
            return m


def _tail_reduce(pairs, guard):
    return [(lead, _nf_monomial(trail, pairs, guard)) for lead, trail in pairs]


def reduce(f: Binomial, basis: Sequence[Binomial], order: MonomialOrder):
    """Full normal form of ``f`` modulo ``basis``; ``None`` means zero."""
    pk = _Packer(order)
    packed = [(pk.encode(g.plus), pk.encode(g.minus)) for g in basis]
    packed = [p for p in (_normal_pair(a, b, pk.flip) for a, b in packed) if p]
    pair = _normal_pair(pk.encode(f.plus), pk.encode(f.minus), pk.flip)
    if pair is None:
        return None
    pair = _reduce_packed(pair[0], pair[1], packed, pk.guard, pk.flip)
    if pair is None:
        return None
    a, b = pair
    b = _nf_monomial(b, packed, pk.guard)
    if a == b:
        return None
    return Binomial(pk.decode(a), pk.decode(b))


def normal_form(m: Monomial, basis: GroebnerBasis) -> Monomial:
    pk = _Packer(basis.order)
    packed = [(pk.encode(g.plus), pk.encode(g.minus)) for g in basis]
    return pk.decode(_nf_monomial(pk.encode(m), packed, pk.guard))


class _Engine:
    def __init__(self, packer: _Packer, budget: Optional[int]):
        self.pk = packer
        self.budget = DEFAULT_BUDGET if budget is None else budget
        self.polys: list = []  # every element ever added
        self.current: list[int] = []  # indices of the minimal basis
        self.pairs: list = []  # heap of (lcm key, i, j, lcm)
        self.alive: dict = {}  # (i, j) -> lcm
        self.steps = 0
        self.zero_reductions = 0

    def reducers(self):
        return [self.polys[i] for i in self.current]

    def add_generator(self, a: int, b: int):
        pair = _normal_pair(a, b, self.pk.flip)
        if pair is None:
            return
        pair = _reduce_packed(pair[0], pair[1], self.reducers(), self.pk.guard, self.pk.flip)
        if pair is not None:
            self.insert(pair)

    def insert(self, h):
        pk = self.pk
        guard, flip = pk.guard, pk.flip
        polys = self.polys
        hi = len(polys)
        polys.append(h)
        hl = h[0]

        def divides(x, y):
            return ((y | guard) - x) & guard == guard

        cands = []
        for g in self.current:
            gl = polys[g][0]
            lcm = pk.lcm(hl, gl)
            cands.append((g, lcm, lcm == hl + gl))
        keep = []
        for k, (g, lcm, coprime) in enumerate(cands):
            if coprime:
                keep.append((g, lcm, True))
                continue
            if any(divides(l2, lcm) for _, l2, _ in cands[k + 1:]):
                continue
            if any(divides(l2, lcm) for _, l2, _ in keep):
                continue
            keep.append((g, lcm, False))

        alive = self.alive
        dead = []
        for (i, j), lcm in alive.items():
            if divides(hl, lcm):
                li = pk.lcm(polys[i][0], hl)
                lj = pk.lcm(polys[j][0], hl)
                if li != lcm and lj != lcm:
                    dead.append((i, j))
        for key in dead:
            del alive[key]

        for g, lcm, coprime in keep:
            if coprime:
                continue
            key = (g, hi)
            alive[key] = lcm
            heapq.heappush(self.pairs, (lcm ^ flip, g, hi, lcm))

        self.current = [g for g in self.current if not divides(hl, polys[g][0])]
        self.current.append(hi)

    def run(self):
        pk = self.pk
        guard, flip = pk.guard, pk.flip
        polys = self.polys
        while self.pairs:
            _, i, j, lcm = heapq.heappop(self.pairs)
            if self.alive.pop((i, j), None) is None:
                continue
            self.steps += 1
            if self.steps > self.budget:
                raise ResourceLimit(f"Groebner budget of {self.budget} S-pairs exceeded")
            a, b = polys[i]
            c, d = polys[j]
            t1 = lcm - a + b
            t2 = lcm - c + d
            if (t1 | t2) & guard:
                raise ExponentOverflow("exponent overflow while forming an S-binomial")
            pair = _normal_pair(t1, t2, flip)
            if pair is not None:
                pair = _reduce_packed(pair[0], pair[1], self.reducers(), guard, flip)
            if pair is None:
                self.zero_reductions += 1
                continue
            self.insert(pair)

    def reduced_basis(self):
        basis = self.reducers()
        reduced = []
        for lead, trail in _tail_reduce(basis, self.pk.guard):
            reduced.append((lead, trail))
        reduced.sort(key=lambda t: t[0] ^ self.pk.flip)
        return reduced


def buchberger(gens: Iterable[Binomial], order: MonomialOrder, budget: Optional[int] = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs are processed by the normal strategy (smallest lcm first, ties by
    insertion index) with the Gebauer-Moeller criteria. ``budget`` bounds the
    number of S-pairs treated.
    """
    pk = _Packer(order)
    eng = _Engine(pk, budget)
    for f in gens:
        eng.add_generator(pk.encode(f.plus), pk.encode(f.minus))
    eng.run()
    elements = [Binomial(pk.decode(a), pk.decode(b)) for a, b in eng.reduced_basis()]
    stats = {"pairs": eng.steps, "zero_reductions": eng.zero_reductions, "added": len(eng.polys)}
    return GroebnerBasis(order, elements, reduced=True, stats=stats)


def ideal_equal(g1, g2, order: MonomialOrder, budget: Optional[int] = None) -> bool:
    """True iff both generator lists give the same reduced Groebner basis."""
    return buchberger(g1, order, budget) == buchberger(g2, order, budget)
