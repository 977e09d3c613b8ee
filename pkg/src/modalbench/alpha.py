"""Symbolic subsets of and relations on the one-point compactification of N.

Points are natural numbers plus the point ``INF``. Open sets are arbitrary
subsets of N together with sets containing INF whose natural part is
cofinite, so clopen sets are the finite subsets of N and the cofinite sets
containing INF.

Relations are finite unions of four piece shapes:

    pairs{(x,y),...}        explicit finite pairs (INF allowed)
    diag<A>                 {(x, x) : x in A}
    prod<A><B>              A x B
    tail(a,b,c,d,k)         {(a*n + b, c*n + d) : n >= k}, a >= 1, c >= 0

Every slice, image and preimage of such a relation is again an eventually
periodic set, and the class is closed under union, intersection and converse.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, total_ordering
from itertools import combinations
from math import gcd
from typing import Iterable, Union

from .evperiodic import EvPeriodicSet, lcm


@total_ordering
class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __hash__(self):
        return hash("alpha-inf")

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
Point = Union[int, _Infinity]


def _is_nat(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool) and x >= 0


def _check_point(x) -> None:
    if not (x is INF or _is_nat(x)):
        raise ValueError(f"not a point of the compactification: {x!r}")


def parse_point(text: str) -> Point:
    text = text.strip()
    if text in ("inf", "∞"):
        return INF
    x = int(text)
    _check_point(x)
    return x


# ====================================================================== sets


@dataclass(frozen=True)
class AlphaSet:
    fin_part: EvPeriodicSet = field(default_factory=EvPeriodicSet.empty)
    has_inf: bool = False

    @classmethod
    def empty(cls) -> "AlphaSet":
        return cls(EvPeriodicSet.empty(), False)

    @classmethod
    def full(cls) -> "AlphaSet":
        return cls(EvPeriodicSet.naturals(), True)

    @classmethod
    def of(cls, points: Iterable[Point]) -> "AlphaSet":
        pts = list(points)
        for p in pts:
            _check_point(p)
        return cls(EvPeriodicSet.finite(p for p in pts if p is not INF), INF in pts)

    @classmethod
    def naturals(cls, s: EvPeriodicSet, with_inf: bool = False) -> "AlphaSet":
        return cls(s, with_inf)

    @classmethod
    def evens(cls, with_inf: bool = False) -> "AlphaSet":
        return cls(EvPeriodicSet.residues(2, [0]), with_inf)

    @classmethod
    def odds(cls, with_inf: bool = False) -> "AlphaSet":
        return cls(EvPeriodicSet.residues(2, [1]), with_inf)

    @classmethod
    def tail_from(cls, k: int) -> "AlphaSet":
        """{n >= k} together with INF (a clopen neighbourhood of INF)."""
        return cls(EvPeriodicSet.at_least(k), True)

    def __contains__(self, x) -> bool:
        if x is INF:
            return self.has_inf
        return x in self.fin_part

    def __or__(self, other: "AlphaSet") -> "AlphaSet":
        return AlphaSet(self.fin_part | other.fin_part, self.has_inf or other.has_inf)

    def __and__(self, other: "AlphaSet") -> "AlphaSet":
        return AlphaSet(self.fin_part & other.fin_part, self.has_inf and other.has_inf)

    def __sub__(self, other: "AlphaSet") -> "AlphaSet":
        return AlphaSet(self.fin_part - other.fin_part, self.has_inf and not other.has_inf)

    def complement(self) -> "AlphaSet":
        return AlphaSet(self.fin_part.complement(), not self.has_inf)

    def __invert__(self) -> "AlphaSet":
        return self.complement()

    def __le__(self, other: "AlphaSet") -> bool:
        return self.fin_part <= other.fin_part and (other.has_inf or not self.has_inf)

    def is_empty(self) -> bool:
        return not self.has_inf and self.fin_part.is_empty()

    def is_finite(self) -> bool:
        return self.fin_part.is_finite()

    def is_closed(self) -> bool:
        return self.has_inf or self.fin_part.is_finite()

    def is_open(self) -> bool:
        return not self.has_inf or self.fin_part.is_cofinite()

    def is_clopen(self) -> bool:
        if self.has_inf:
            return self.fin_part.is_cofinite()
        return self.fin_part.is_finite()

    def interior(self) -> "AlphaSet":
        return AlphaSet(self.fin_part, self.has_inf and self.fin_part.is_cofinite())

    def closure(self) -> "AlphaSet":
        return AlphaSet(self.fin_part, self.has_inf or not self.fin_part.is_finite())

    def points_below(self, bound: int) -> set:
        """Members that are naturals < bound, plus INF if present."""
        out = set(self.fin_part.members_below(bound))
        if self.has_inf:
            out.add(INF)
        return out

    def render(self) -> str:
        return f"{self.fin_part.render()};{1 if self.has_inf else 0}"

    @classmethod
    def parse(cls, text: str) -> "AlphaSet":
        text = text.strip()
        head, sep, flag = text.rpartition(";")
        if not sep or flag not in ("0", "1"):
            raise ValueError(f"bad set {text!r}; expected 'bits;p:bits;0|1'")
        return cls(EvPeriodicSet.parse(head), flag == "1")

    def __repr__(self):
        return f"AlphaSet({self.render()!r})"


def set_union(a: AlphaSet, b: AlphaSet) -> AlphaSet:
    return a | b


def set_intersection(a: AlphaSet, b: AlphaSet) -> AlphaSet:
    return a & b


def set_complement(a: AlphaSet) -> AlphaSet:
    return a.complement()


def set_difference(a: AlphaSet, b: AlphaSet) -> AlphaSet:
    return a - b


def is_clopen(a: AlphaSet) -> bool:
    return a.is_clopen()


def is_closed(a: AlphaSet) -> bool:
    return a.is_closed()


def interior(a: AlphaSet) -> AlphaSet:
    return a.interior()


def closure(a: AlphaSet) -> AlphaSet:
    return a.closure()


# ====================================================================== pieces


@dataclass(frozen=True)
class FinitePairs:
    pairs: frozenset = frozenset()

    def __post_init__(self):
        ps = frozenset(self.pairs)
        for x, y in ps:
            _check_point(x)
            _check_point(y)
        object.__setattr__(self, "pairs", ps)

    def render(self) -> str:
        key = lambda p: tuple((1, 0) if v is INF else (0, v) for v in p)
        return "pairs{" + ",".join(f"({x},{y})" for x, y in sorted(self.pairs, key=key)) + "}"


@dataclass(frozen=True)
class Diagonal:
    A: AlphaSet

    def render(self) -> str:
        return f"diag<{self.A.render()}>"


@dataclass(frozen=True)
class Product:
    A: AlphaSet
    B: AlphaSet

    def render(self) -> str:
        return f"prod<{self.A.render()}><{self.B.render()}>"


@dataclass(frozen=True)
class AffineTail:
    """{(a*n + b, c*n + d) : n >= k}."""

    a: int
    b: int
    c: int
    d: int
    k: int = 0

    def __post_init__(self):
        if self.a < 1 or self.c < 0 or self.k < 0:
            raise ValueError("tail needs a >= 1, c >= 0, k >= 0")
        if self.a * self.k + self.b < 0 or self.c * self.k + self.d < 0:
            raise ValueError("tail must start inside the naturals")

    def at(self, n: int) -> tuple[int, int]:
        return self.a * n + self.b, self.c * n + self.d

    def index_of_source(self, x) -> int | None:
        if not _is_nat(x):
            return None
        q, r = divmod(x - self.b, self.a)
        return q if r == 0 and q >= self.k else None

    def render(self) -> str:
        return f"tail({self.a},{self.b},{self.c},{self.d},{self.k})"


Piece = Union[FinitePairs, Diagonal, Product, AffineTail]


def _piece_is_empty(p: Piece) -> bool:
    if isinstance(p, FinitePairs):
        return not p.pairs
    if isinstance(p, Diagonal):
        return p.A.is_empty()
    if isinstance(p, Product):
        return p.A.is_empty() or p.B.is_empty()
    return False


def _piece_member(p: Piece, x, y) -> bool:
    if isinstance(p, FinitePairs):
        return (x, y) in p.pairs
    if isinstance(p, Diagonal):
        return x == y and x in p.A
    if isinstance(p, Product):
        return x in p.A and y in p.B
    n = p.index_of_source(x)
    return n is not None and _is_nat(y) and y == p.c * n + p.d


def _piece_row(p: Piece, x) -> AlphaSet:
    if isinstance(p, FinitePairs):
        return AlphaSet.of(y for (u, y) in p.pairs if u == x)
    if isinstance(p, Diagonal):
        return AlphaSet.of([x]) if x in p.A else AlphaSet.empty()
    if isinstance(p, Product):
        return p.B if x in p.A else AlphaSet.empty()
    n = p.index_of_source(x)
    return AlphaSet.of([p.c * n + p.d]) if n is not None else AlphaSet.empty()


def _tail_sources(p: AffineTail) -> EvPeriodicSet:
    return EvPeriodicSet.progression(p.a, p.b, p.k)


def _converse_piece(p: Piece) -> Piece:
    if isinstance(p, FinitePairs):
        return FinitePairs(frozenset((y, x) for x, y in p.pairs))
    if isinstance(p, Diagonal):
        return p
    if isinstance(p, Product):
        return Product(p.B, p.A)
    if p.c >= 1:
        return AffineTail(p.c, p.d, p.a, p.b, p.k)
    return Product(AlphaSet.of([p.d]), AlphaSet(_tail_sources(p)))


def _piece_preimage(p: Piece, u: AlphaSet) -> AlphaSet:
    if isinstance(p, FinitePairs):
        return AlphaSet.of(x for x, y in p.pairs if y in u)
    if isinstance(p, Diagonal):
        return p.A & u
    if isinstance(p, Product):
        return p.A if not (p.B & u).is_empty() else AlphaSet.empty()
    idx = u.fin_part.affine_preimage(p.c, p.d, start=p.k)
    return AlphaSet(idx.affine_image(p.a, p.b))


def _restrict_tail(t: AffineTail, idx: EvPeriodicSet) -> list[Piece]:
    """The sub-tail of t indexed by the n in idx (only n >= t.k count)."""
    idx = idx & EvPeriodicSet.at_least(t.k)
    if idx == EvPeriodicSet.at_least(t.k):
        return [t]
    if idx.is_empty():
        return []
    start = max(idx.threshold, t.k)
    pieces: list[Piece] = []
    head = [n for n in range(start) if n in idx]
    if head:
        pieces.append(FinitePairs(frozenset(t.at(n) for n in head)))
    if not idx.is_finite():
        p = idx.period
        for n0 in range(start, start + p):
            if n0 in idx:
                pieces.append(AffineTail(t.a * p, t.a * n0 + t.b, t.c * p, t.c * n0 + t.d, 0))
    return pieces


def _ceil_div(x: int, y: int) -> int:
    return -((-x) // y)


def _meet_tails(s: AffineTail, t: AffineTail) -> list[Piece]:
    # a n + b = a' m + b', then c n + d = c' m + d'
    a, b, c, d, k = s.a, s.b, s.c, s.d, s.k
    a2, b2, c2, d2, k2 = t.a, t.b, t.c, t.d, t.k
    g = gcd(a, a2)
    if (b2 - b) % g:
        return []
    sa, sa2 = a // g, a2 // g  # step of m per t, step of n per t
    n0 = 0 if sa2 == 1 else ((b2 - b) // g) * pow(sa, -1, sa2) % sa2
    m0, rem = divmod(a * n0 + b - b2, a2)
    assert rem == 0
    coef = c * sa2 - c2 * sa
    rhs = c2 * m0 + d2 - c * n0 - d
    t_min = max(_ceil_div(k - n0, sa2), _ceil_div(k2 - m0, sa))
    if coef == 0:
        if rhs != 0:
            return []
        n_start = n0 + sa2 * t_min
        return [AffineTail(a * sa2, a * n_start + b, c * sa2, c * n_start + d, 0)]
    if rhs % coef:
        return []
    tt = rhs // coef
    if tt < t_min:
        return []
    n = n0 + sa2 * tt
    return [FinitePairs(frozenset([(a * n + b, c * n + d)]))]


def _meet_pieces(p: Piece, q: Piece) -> list[Piece]:
    if isinstance(q, FinitePairs) and not isinstance(p, FinitePairs):
        p, q = q, p
    if isinstance(p, FinitePairs):
        return [FinitePairs(frozenset(xy for xy in p.pairs if _piece_member(q, *xy)))]
    if isinstance(q, Diagonal) and not isinstance(p, Diagonal):
        p, q = q, p
    if isinstance(p, Diagonal):
        if isinstance(q, Diagonal):
            return [Diagonal(p.A & q.A)]
        if isinstance(q, Product):
            return [Diagonal(p.A & q.A & q.B)]
        t = q
        if t.a == t.c and t.b == t.d:
            return _restrict_tail(t, p.A.fin_part.affine_preimage(t.a, t.b, start=t.k))
        if t.a != t.c and (t.d - t.b) % (t.a - t.c) == 0:
            n = (t.d - t.b) // (t.a - t.c)
            if n >= t.k and t.a * n + t.b in p.A:
                return [FinitePairs(frozenset([t.at(n)]))]
        return []
    if isinstance(q, Product) and not isinstance(p, Product):
        p, q = q, p
    if isinstance(p, Product):
        if isinstance(q, Product):
            return [Product(p.A & q.A, p.B & q.B)]
        t = q
        idx = p.A.fin_part.affine_preimage(t.a, t.b, t.k) & p.B.fin_part.affine_preimage(t.c, t.d, t.k)
        return _restrict_tail(t, idx)
    return _meet_tails(p, q)


# ====================================================================== relations


def _pieces_bound(pieces) -> tuple[int, int]:
    """(critical bound, period) beyond which slices repeat with the period."""
    bound, period = 1, 1

    def see_set(s: AlphaSet):
        nonlocal bound, period
        bound = max(bound, s.fin_part.threshold + 1)
        period = lcm(period, s.fin_part.period)

    for p in pieces:
        if isinstance(p, FinitePairs):
            for x, y in p.pairs:
                for v in (x, y):
                    if v is not INF:
                        bound = max(bound, v + 1)
        elif isinstance(p, Diagonal):
            see_set(p.A)
        elif isinstance(p, Product):
            see_set(p.A)
            see_set(p.B)
        else:
            x0, y0 = p.at(p.k)
            bound = max(bound, x0 + 1, y0 + 1, abs(p.b) + 1, abs(p.d) + 1)
            period = lcm(period, p.a, max(p.c, 1))
    return bound, period


@dataclass(frozen=True)
class AlphaRelation:
    pieces: tuple = ()

    def __post_init__(self):
        merged: set = set()
        rest = []
        for p in self.pieces:
            if _piece_is_empty(p):
                continue
            if isinstance(p, FinitePairs):
                merged |= p.pairs
            elif p not in rest:
                rest.append(p)
        if merged:
            rest.insert(0, FinitePairs(frozenset(merged)))
        object.__setattr__(self, "pieces", tuple(rest))

    # ---------------------------------------------------------- construction

    @classmethod
    def of(cls, *pieces: Piece) -> "AlphaRelation":
        return cls(tuple(pieces))

    @classmethod
    def empty(cls) -> "AlphaRelation":
        return cls(())

    @classmethod
    def diagonal(cls, a: AlphaSet | None = None) -> "AlphaRelation":
        return cls((Diagonal(a if a is not None else AlphaSet.full()),))

    @classmethod
    def pairs(cls, pairs) -> "AlphaRelation":
        return cls((FinitePairs(frozenset(pairs)),))

    # ---------------------------------------------------------- queries

    def contains(self, x, y) -> bool:
        return any(_piece_member(p, x, y) for p in self.pieces)

    def row(self, x) -> AlphaSet:
        _check_point(x)
        out = AlphaSet.empty()
        for p in self.pieces:
            part = _piece_row(p, x)
            if not part.is_empty():
                out = part if out.is_empty() else out | part
        return out

    def column(self, y) -> AlphaSet:
        return self.converse().row(y)

    def converse(self) -> "AlphaRelation":
        return self._converse

    @cached_property
    def _converse(self) -> "AlphaRelation":
        return AlphaRelation(tuple(_converse_piece(p) for p in self.pieces))

    def preimage(self, u: AlphaSet) -> AlphaSet:
        out = AlphaSet.empty()
        for p in self.pieces:
            out = out | _piece_preimage(p, u)
        return out

    def image(self, u: AlphaSet) -> AlphaSet:
        return self.converse().preimage(u)

    def domain(self) -> AlphaSet:
        return self.preimage(AlphaSet.full())

    def union(self, other: "AlphaRelation") -> "AlphaRelation":
        return AlphaRelation(self.pieces + other.pieces)

    def intersect(self, other: "AlphaRelation") -> "AlphaRelation":
        out: list = []
        for p in self.pieces:
            for q in other.pieces:
                out.extend(_meet_pieces(p, q))
        return AlphaRelation(tuple(out))

    __or__ = union
    __and__ = intersect

    def is_empty(self) -> bool:
        return not self.pieces

    def critical_bound(self) -> tuple[int, int]:
        return _pieces_bound(self.pieces)

    def is_symmetric(self) -> bool:
        return rel_equal(self, self.converse())

    def pairs_within(self, n: int) -> set:
        """Every pair with both coordinates in {0..n} or INF."""
        out = set()
        for x in list(range(n + 1)) + [INF]:
            for y in self.row(x).points_below(n + 1):
                out.add((x, y))
        return out

    # ---------------------------------------------------------- text

    def render(self) -> str:
        return " + ".join(p.render() for p in self.pieces) if self.pieces else "empty"

    @classmethod
    def parse(cls, text: str) -> "AlphaRelation":
        text = text.strip()
        if text == "empty":
            return cls.empty()
        pieces = []
        for chunk in text.split("+"):
            pieces.append(_parse_piece(chunk.strip()))
        return cls(tuple(pieces))

    def __repr__(self):
        return f"AlphaRelation({self.render()!r})"


_SET = r"([01]*;\d+:[01]+;[01])"
_PAIR_RE = re.compile(r"\(\s*(inf|\d+)\s*,\s*(inf|\d+)\s*\)")


def _parse_piece(text: str) -> Piece:
    m = re.fullmatch(r"pairs\{(.*)\}", text)
    if m:
        body = m.group(1).strip()
        found = _PAIR_RE.findall(body)
        if _PAIR_RE.sub("", body).replace(",", "").strip():
            raise ValueError(f"bad pair list {text!r}")
        return FinitePairs(frozenset((parse_point(x), parse_point(y)) for x, y in found))
    m = re.fullmatch(rf"diag<{_SET}>", text)
    if m:
        return Diagonal(AlphaSet.parse(m.group(1)))
    m = re.fullmatch(rf"prod<{_SET}><{_SET}>", text)
    if m:
        return Product(AlphaSet.parse(m.group(1)), AlphaSet.parse(m.group(2)))
    m = re.fullmatch(r"tail\((-?\d+),(-?\d+),(-?\d+),(-?\d+),(-?\d+)\)", text.replace(" ", ""))
    if m:
        return AffineTail(*map(int, m.groups()))
    raise ValueError(f"unrecognised relation piece {text!r}")


def rel_member(r: AlphaRelation, x, y) -> bool:
    return r.contains(x, y)


def row(r: AlphaRelation, x) -> AlphaSet:
    return r.row(x)


def column(r: AlphaRelation, y) -> AlphaSet:
    return r.column(y)


def rel_union(r: AlphaRelation, s: AlphaRelation) -> AlphaRelation:
    return r.union(s)


def rel_intersect(r: AlphaRelation, s: AlphaRelation) -> AlphaRelation:
    return r.intersect(s)


def preimage(r: AlphaRelation, u: AlphaSet) -> AlphaSet:
    return r.preimage(u)


def image(r: AlphaRelation, u: AlphaSet) -> AlphaSet:
    return r.image(u)


def _product_covers(s: AlphaRelation, x) -> AlphaSet:
    """Union of the B of every product of s with x in A, and every constant tail target of x."""
    out = AlphaSet.empty()
    for p in s.pieces:
        if isinstance(p, Product) and x in p.A:
            out = out | p.B
        elif isinstance(p, AffineTail) and p.c == 0 and p.index_of_source(x) is not None:
            out = out | AlphaSet.of([p.d])
    return out


def rel_subset(r: AlphaRelation, s: AlphaRelation) -> bool:
    """Exact inclusion test r <= s."""
    for p in r.pieces:
        if isinstance(p, FinitePairs):
            if not all(s.contains(x, y) for x, y in p.pairs):
                return False
        elif isinstance(p, (Diagonal, AffineTail)):
            # functional pieces: every source keeps its pair
            single = AlphaRelation((p,))
            if not single.domain() <= single.intersect(s).domain():
                return False
        else:
            if not _product_subset(p, s):
                return False
    return True


def _product_subset(p: Product, s: AlphaRelation) -> bool:
    if INF in p.A and not p.B <= s.row(INF):
        return False
    bound, period = _pieces_bound(s.pieces + (p,))
    for x in p.A.fin_part.members_below(bound):
        if not p.B <= s.row(x):
            return False
    if p.A.fin_part.is_finite():
        return True
    for x in range(bound, bound + period):
        if x in p.A and not p.B <= _product_covers(s, x):
            return False
    return True


def rel_equal(r: AlphaRelation, s: AlphaRelation) -> bool:
    return rel_subset(r, s) and rel_subset(s, r)


# ====================================================================== topology of relations


@dataclass
class Verdict:
    status: str  # "yes" | "no" | "unknown"
    certificate: dict = field(default_factory=dict)
    witness: dict | None = None
    bound: int = 0

    @property
    def yes(self) -> bool:
        return self.status == "yes"

    @property
    def no(self) -> bool:
        return self.status == "no"

    def to_dict(self) -> dict:
        return {"status": self.status, "certificate": self.certificate,
                "witness": self.witness, "bound": self.bound}


# 2**K_CAP cofinite clopen families are examined at most.
K_CAP = 16


def is_guarded(r: AlphaRelation) -> bool:
    """Diagonal and product factors are all clopen."""
    for p in r.pieces:
        if isinstance(p, Diagonal) and not p.A.is_clopen():
            return False
        if isinstance(p, Product) and not (p.A.is_clopen() and p.B.is_clopen()):
            return False
    return True


def _critical_targets(r: AlphaRelation) -> set[int]:
    """Naturals that can matter when a row must fit inside a finite set."""
    ks: set[int] = set()
    for p in r.pieces:
        if isinstance(p, AffineTail) and p.c == 0:
            ks.add(p.d)
        elif isinstance(p, Product) and p.B.is_finite() and not p.B.has_inf:
            ks.update(p.B.fin_part.finite_members())
    r_inf = r.row(INF)
    if r_inf.is_finite() and not r_inf.has_inf:
        ks.update(r_inf.fin_part.finite_members())
    return ks


def _preimage_condition(r: AlphaRelation, bound: int, period: int, cert: dict):
    """Check r^{-1}[U] clopen for every clopen U; returns a witness dict or None."""
    for y in range(bound + period):
        col = r.column(y)
        if not col.is_clopen():
            return {"kind": "preimage-not-clopen", "clopen": AlphaSet.of([y]).render(),
                    "preimage": col.render()}
    cert["columns_checked"] = bound + period
    ks = sorted(_critical_targets(r))
    cert["critical_targets"] = ks
    if len(ks) > K_CAP:
        return "unknown"
    for size in range(len(ks) + 1):
        for g in combinations(ks, size):
            u = AlphaSet.of(g).complement()
            pre = r.preimage(u)
            if not pre.is_clopen():
                return {"kind": "preimage-not-clopen", "clopen": u.render(), "preimage": pre.render()}
    cert["cofinite_families_checked"] = 1 << len(ks)
    return None


def is_continuous(r: AlphaRelation) -> Verdict:
    """Decide whether every row is closed and every preimage of a clopen is clopen.

    Rows and columns of naturals beyond the critical bound repeat with the
    computed period up to finitely many points, which never changes
    closedness or clopenness, so one representative per residue class
    suffices. A preimage of a cofinite clopen only depends on how the clopen
    meets the finite set of critical targets.
    """
    bound, period = r.critical_bound()
    cert: dict = {"guarded": is_guarded(r), "bound": bound, "period": period}
    for x in [INF] + list(range(bound + period)):
        rw = r.row(x)
        if not rw.is_closed():
            return Verdict("no", cert, {"kind": "row-not-closed", "point": repr(x), "row": rw.render()}, bound)
    cert["rows_checked"] = bound + period + 1
    bad = _preimage_condition(r, bound, period, cert)
    if bad == "unknown":
        return Verdict("unknown", cert, None, bound)
    if bad:
        return Verdict("no", cert, bad, bound)
    return Verdict("yes", cert, None, bound)


class PreconditionError(ValueError):
    pass


def is_interior(r: AlphaRelation) -> Verdict:
    """Continuous, and the image of every clopen is clopen."""
    cont = is_continuous(r)
    if not cont.yes:
        raise PreconditionError(f"is_interior needs a continuous relation (got {cont.status})")
    conv = r.converse()
    bound, period = conv.critical_bound()
    cert: dict = {"guarded": is_guarded(r), "bound": bound, "period": period}
    bad = _preimage_condition(conv, bound, period, cert)
    if bad == "unknown":
        return Verdict("unknown", cert, None, bound)
    if bad:
        bad = dict(bad, kind="image-not-clopen", image=bad.pop("preimage"))
        return Verdict("no", cert, bad, bound)
    return Verdict("yes", cert, None, bound)


def bounded_clopens(size: int):
    """Every clopen whose description only involves naturals below ``size``."""
    for mask in range(1 << size):
        f = AlphaSet.of(i for i in range(size) if mask >> i & 1)
        yield f
        yield f.complement()


def falsify_continuity(r: AlphaRelation, size: int) -> Verdict:
    """Search continuity counterexamples among clopens of description size <= size."""
    for x in [INF] + list(range(size)):
        if not r.row(x).is_closed():
            return Verdict("no", {}, {"kind": "row-not-closed", "point": repr(x),
                                      "row": r.row(x).render()}, size)
    for u in bounded_clopens(size):
        pre = r.preimage(u)
        if not pre.is_clopen():
            return Verdict("no", {}, {"kind": "preimage-not-clopen", "clopen": u.render(),
                                      "preimage": pre.render()}, size)
    return Verdict("unknown", {}, None, size)


# ====================================================================== subdiagonal relations


@dataclass(frozen=True)
class SubdiagonalReport:
    support: AlphaSet
    greatest_clopen_subset: AlphaSet | None
    all_clopen_subsets_finite: bool

    @property
    def greatest_exists(self) -> bool:
        return self.greatest_clopen_subset is not None

    def to_dict(self) -> dict:
        return {
            "support": self.support.render(),
            "greatest_clopen_subset": None if self.greatest_clopen_subset is None
            else self.greatest_clopen_subset.render(),
            "all_clopen_subsets_finite": self.all_clopen_subsets_finite,
        }


class NotSubdiagonal(ValueError):
    pass


def subdiagonal_analysis(r: AlphaRelation) -> SubdiagonalReport:
    """Continuous relations below r are the diagonals over clopen subsets of its support."""
    if not rel_subset(r, AlphaRelation.diagonal()):
        raise NotSubdiagonal("relation is not contained in the diagonal")
    a = r.domain()
    inner = a.interior()
    greatest = inner if inner.is_clopen() else None
    finite_only = not (a.has_inf and a.fin_part.is_cofinite())
    return SubdiagonalReport(a, greatest, finite_only)


# ====================================================================== the three injections


def relation_D() -> AlphaRelation:
    return AlphaRelation.diagonal()


def relation_R() -> AlphaRelation:
    """(2n, 2n), (2n+1, 2n+3), (inf, inf)."""
    return AlphaRelation.of(FinitePairs(frozenset([(INF, INF)])), AffineTail(2, 0, 2, 0), AffineTail(2, 1, 2, 3))


def relation_S() -> AlphaRelation:
    """(2n, 2n+2), (2n+1, 2n+1), (inf, inf)."""
    return AlphaRelation.of(FinitePairs(frozenset([(INF, INF)])), AffineTail(2, 0, 2, 2), AffineTail(2, 1, 2, 1))


def esakia_limit(r: AlphaRelation) -> AlphaSet:
    """Points whose row meets every {n >= k} + INF, computed without a limit."""
    bound, period = r.critical_bound()
    hits = AlphaSet.empty()
    # a row of a natural point is infinite or holds INF only through products or explicit pairs
    for p in r.pieces:
        if isinstance(p, Product) and (p.B.has_inf or not p.B.fin_part.is_finite()):
            hits = hits | AlphaSet(p.A.fin_part)
        elif isinstance(p, FinitePairs):
            hits = hits | AlphaSet.of(x for x, y in p.pairs if y is INF and x is not INF)
    r_inf = r.row(INF)
    if r_inf.has_inf or not r_inf.is_finite():
        hits = hits | AlphaSet.of([INF])
    return hits


# ====================================================================== certificate


def _verdict_value(v: Verdict) -> dict:
    return {"status": v.status, "witness": v.witness}


def certify_counterexamples(truncation: int = 1000):
    """Check that continuous (and interior) relations on the compactification fail to form a lattice."""
    from .certificate import Certificate, check
    from . import truncation as tr

    d, r, s = relation_D(), relation_R(), relation_S()
    names = {"D": d, "R": r, "S": s}
    steps = []

    cont = {k: is_continuous(v) for k, v in names.items()}
    steps.append(check("D, R, S are continuous", "rows closed and preimages of clopens clopen",
                       all(v.yes for v in cont.values()),
                       {k: v.render() for k, v in names.items()},
                       {k: v.status for k, v in cont.items()}))
    inter = {k: is_interior(v) for k, v in names.items()}
    steps.append(check("D, R, S are interior", "images of clopens clopen",
                       all(v.yes for v in inter.values()), {},
                       {k: v.status for k, v in inter.items()}))

    inf_pair = FinitePairs(frozenset([(INF, INF)]))
    dr, ds, rs = d & r, d & s, r & s
    expected = {
        "D&R": (dr, AlphaRelation.of(inf_pair, AffineTail(2, 0, 2, 0)), AlphaSet.evens(True)),
        "D&S": (ds, AlphaRelation.of(inf_pair, AffineTail(2, 1, 2, 1)), AlphaSet.odds(True)),
    }
    reports = {}
    for label, (got, want, support) in expected.items():
        rep = subdiagonal_analysis(got)
        reports[label] = rep
        cv = is_continuous(got)
        ok = rel_equal(got, want) and rep.support == support and not rep.greatest_exists and cv.no
        steps.append(check(
            f"meet {label.replace('&', ' and ')} does not exist",
            "continuous relations below a subdiagonal relation are diagonals over clopen subsets "
            "of its support; a meet would be the diagonal over a greatest clopen subset",
            ok, {"intersection": got.render()},
            dict(rep.to_dict(), intersection_continuity=_verdict_value(cv))))

    covered = rel_subset(d, r | s)
    finite_parts = reports["D&R"].all_clopen_subsets_finite and reports["D&S"].all_clopen_subsets_finite
    d_infinite = not d.domain().is_finite()
    steps.append(check(
        "D admits no decomposition R' + S' = D",
        "R' and S' would lie below D&R and D&S, so both are diagonals over finite sets, "
        "and a finite union cannot be all of D",
        covered and finite_parts and d_infinite,
        {"R|S": (r | s).render()},
        {"D_below_R_union_S": covered, "parts_finite": finite_parts, "D_support_infinite": d_infinite}))

    # interior case: below D every continuous relation is a symmetric diagonal, hence interior
    samples = [AlphaSet.empty(), AlphaSet.of([0]), AlphaSet.of([0, 2, 4, 8]), AlphaSet.of([1, 3])]
    sym = []
    for u in samples:
        rel = AlphaRelation.diagonal(u)
        sym.append((u.render(), is_continuous(rel).status, is_interior(rel).status))
    cof = AlphaRelation.diagonal(AlphaSet.tail_from(7))
    sym.append((AlphaSet.tail_from(7).render(), is_continuous(cof).status, is_interior(cof).status))
    steps.append(check(
        "the same failures hold for interior relations",
        "diagonals over clopens are symmetric, so interior exactly when continuous; D, R, S are interior",
        all(c == i == "yes" for _, c, i in sym) and all(v.yes for v in inter.values()),
        {}, {"diagonal_samples": [list(t) for t in sym]}))

    rs_verdict = is_continuous(rs)
    steps.append(check(
        "R and S intersect in the single pair (inf, inf), which is not continuous",
        "a preimage of a clopen neighbourhood of inf is {inf}, which is not clopen",
        rel_equal(rs, AlphaRelation.of(inf_pair)) and rs_verdict.no,
        {"R&S": rs.render()}, _verdict_value(rs_verdict)))

    dd, dr_, ds_ = tr.dense_diagonal(truncation), tr.dense_r(truncation), tr.dense_s(truncation)
    dense = {
        "D": (d, dd), "R": (r, dr_), "S": (s, ds_), "D&R": (dr, dd & dr_), "D&S": (ds, dd & ds_),
        "R&S": (rs, dr_ & ds_), "R|S": (r | s, dr_ | ds_),
    }
    agreements = [tr.compare(k, sym_rel, den, truncation) for k, (sym_rel, den) in dense.items()]
    steps.append(check(
        f"symbolic computations agree with the dense truncation at N={truncation}",
        "membership, rows, columns, images and preimages of bounded sets coincide",
        all(a.ok for a in agreements), {"N": truncation},
        [a.to_dict() for a in agreements]))

    cert = Certificate("alpha-counterexamples", tuple(steps))
    conclusions = {
        "CR_not_a_lattice": cert.valid,
        "CR_not_distributive": cert.valid,
        "IR_not_a_lattice": cert.valid,
        "IR_not_distributive": cert.valid,
        "R_meet_S_not_intersection": cert.valid,
    }
    return Certificate(cert.name, cert.steps, conclusions)
