"""Operators versus relations on a finite discrete Stone space.

For the powerset algebra on m atoms the Stone space is the m-point discrete
space, clopens are all subsets, and every relation is continuous and
interior. A relation is stored as a frozenset of (x, y) atom pairs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .algebra import (
    NotAnOperator,
    RELATION_PATH_MAX_M,
    UnaryOpTable,
    box_table_of_rows,
    is_necessity,
)


@dataclass(frozen=True)
class FiniteRelation:
    atom_count: int
    pairs: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset((int(x), int(y)) for x, y in self.pairs))
        m = self.atom_count
        for x, y in self.pairs:
            if not (0 <= x < m and 0 <= y < m):
                raise ValueError(f"pair {(x, y)} outside {m} atoms")

    @classmethod
    def from_code(cls, m: int, code: int) -> "FiniteRelation":
        """Bit x*m + y of ``code`` encodes the pair (x, y)."""
        return cls(m, frozenset((x, y) for x in range(m) for y in range(m) if code >> (x * m + y) & 1))

    @classmethod
    def full(cls, m: int) -> "FiniteRelation":
        return cls(m, frozenset(product(range(m), repeat=2)))

    @classmethod
    def identity(cls, m: int) -> "FiniteRelation":
        return cls(m, frozenset((x, x) for x in range(m)))

    @property
    def code(self) -> int:
        return sum(1 << (x * self.atom_count + y) for x, y in self.pairs)

    def rows(self) -> list[int]:
        out = [0] * self.atom_count
        for x, y in self.pairs:
            out[x] |= 1 << y
        return out

    def image(self, u: int) -> int:
        return _mask(y for x, y in self.pairs if u >> x & 1)

    def preimage(self, u: int) -> int:
        return _mask(x for x, y in self.pairs if u >> y & 1)

    def converse(self) -> "FiniteRelation":
        return FiniteRelation(self.atom_count, frozenset((y, x) for x, y in self.pairs))

    def complement(self) -> "FiniteRelation":
        m = self.atom_count
        return FiniteRelation(m, frozenset(product(range(m), repeat=2)) - self.pairs)

    def __or__(self, other: "FiniteRelation") -> "FiniteRelation":
        return FiniteRelation(self.atom_count, self.pairs | other.pairs)

    def __and__(self, other: "FiniteRelation") -> "FiniteRelation":
        return FiniteRelation(self.atom_count, self.pairs & other.pairs)

    def __le__(self, other: "FiniteRelation") -> bool:
        return self.pairs <= other.pairs

    def render(self) -> str:
        return "{" + ",".join(f"({x},{y})" for x, y in sorted(self.pairs)) + "}"


def _mask(indices) -> int:
    v = 0
    for i in indices:
        v |= 1 << i
    return v


def all_relations(m: int) -> Iterator[FiniteRelation]:
    if not 0 <= m <= RELATION_PATH_MAX_M:
        raise ValueError("m out of range")
    for code in range(1 << (m * m)):
        yield FiniteRelation.from_code(m, code)


def relation_to_box(r: FiniteRelation) -> UnaryOpTable:
    """Box_r(U) = {x : r[x] is a subset of U}."""
    return UnaryOpTable(r.atom_count, box_table_of_rows(r.atom_count, r.rows()))


def relation_to_diamond(r: FiniteRelation) -> UnaryOpTable:
    """Diamond_r(U) = r^{-1}[U]."""
    return UnaryOpTable(r.atom_count, tuple(r.preimage(u) for u in range(1 << r.atom_count)))


def box_to_relation(f: UnaryOpTable) -> FiniteRelation:
    """x r y iff every a with x in f(a) also contains y."""
    if not is_necessity(f):
        raise NotAnOperator("box_to_relation expects a necessity operator")
    m = f.atom_count
    pairs = set()
    n = 1 << m
    for x in range(m):
        # the smallest a with x in f(a) is the meet of all of them
        least = n - 1
        for a in range(n):
            if f.table[a] >> x & 1:
                least &= a
        for y in range(m):
            if least >> y & 1:
                pairs.add((x, y))
    return FiniteRelation(m, frozenset(pairs))


def box_to_relation_literal(f: UnaryOpTable) -> FiniteRelation:
    """Same relation, by testing the defining condition for every a."""
    m = f.atom_count
    return FiniteRelation(
        m,
        frozenset(
            (x, y)
            for x in range(m)
            for y in range(m)
            if all(a >> y & 1 for a in range(1 << m) if f.table[a] >> x & 1)
        ),
    )


def jt_antitone_check(m: int, samples: int = 2000, seed: int = 0) -> bool:
    """r subset s implies Box_s <= Box_r; exhaustive for m <= 2, sampled at m = 3."""
    if not 0 <= m <= 3:
        raise ValueError("jt_antitone_check supports m <= 3")
    if m <= 2:
        rels = list(all_relations(m))
        boxes = {r.code: relation_to_box(r) for r in rels}
        for r in rels:
            for s in rels:
                if r.code & ~s.code == 0 and not boxes[s.code] <= boxes[r.code]:
                    return False
        return True
    rng = random.Random(seed)
    nbits = m * m
    for _ in range(samples):
        s = rng.getrandbits(nbits)
        r = s & rng.getrandbits(nbits)
        if not relation_to_box(FiniteRelation.from_code(m, s)) <= relation_to_box(FiniteRelation.from_code(m, r)):
            return False
    return True


@dataclass(frozen=True)
class VietorisSpace:
    """Closed subsets of the finite discrete space on ``base_atoms`` points."""

    base_atoms: int

    @property
    def points(self) -> range:
        return range(1 << self.base_atoms)

    def complement_points(self, family: frozenset) -> frozenset:
        return frozenset(self.points) - family

    def subbasis(self, u: int) -> tuple[frozenset, frozenset]:
        """(Box_u, Diamond_u): points F with F subset of u, and with F meeting u."""
        box = frozenset(f for f in self.points if f & ~u == 0)
        diamond = frozenset(f for f in self.points if f & u)
        return box, diamond


def vietoris_subbasis(u: int, m: int) -> tuple[frozenset, frozenset]:
    return VietorisSpace(m).subbasis(u)


def vietoris_rho(r: FiniteRelation) -> tuple[int, ...]:
    """x -> r[x] as a point of the Vietoris space (a subset mask)."""
    return tuple(r.rows())


def membership_compose(rho: tuple[int, ...], m: int) -> FiniteRelation:
    """The relation obtained by following rho and then the membership relation."""
    return FiniteRelation(m, frozenset((x, y) for x in range(m) for y in range(m) if rho[x] >> y & 1))


def rho_is_unique(r: FiniteRelation) -> bool:
    """Every single-point change of rho breaks the counit law."""
    m = r.atom_count
    rho = vietoris_rho(r)
    for x in range(m):
        for alt in range(1 << m):
            if alt == rho[x]:
                continue
            bent = rho[:x] + (alt,) + rho[x + 1:]
            if membership_compose(bent, m) == r:
                return False
    return True
