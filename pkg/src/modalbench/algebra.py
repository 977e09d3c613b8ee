"""Finite powerset boolean algebras and unary operators on them.

Elements of the algebra with ``m`` atoms are encoded as integers in
``range(2**m)``: bit ``i`` set means atom ``i`` belongs to the element.
The numeric order of these codes is the canonical element order, so an
operator is just a tuple of ``2**m`` image codes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_ATOMS = 24
BRUTE_FORCE_MAX_M = 3
RELATION_PATH_MAX_M = 12


class AlgebraMismatch(ValueError):
    """Two values from different algebras were combined."""


class NotAnOperator(ValueError):
    """A table failed a required operator law."""


@dataclass(frozen=True)
class FinBoolAlg:
    atom_count: int

    def __post_init__(self):
        if not 0 <= self.atom_count <= MAX_ATOMS:
            raise ValueError(f"atom_count must be in [0, {MAX_ATOMS}], got {self.atom_count}")

    @property
    def size(self) -> int:
        return 1 << self.atom_count

    @property
    def top_code(self) -> int:
        return self.size - 1

    def element(self, members: Iterable[int] = ()) -> "AlgElement":
        return AlgElement.of(self.atom_count, members)

    def from_code(self, code: int) -> "AlgElement":
        return AlgElement(self.atom_count, code)

    def top(self) -> "AlgElement":
        return AlgElement(self.atom_count, self.top_code)

    def bottom(self) -> "AlgElement":
        return AlgElement(self.atom_count, 0)

    def atom(self, i: int) -> "AlgElement":
        return self.element([i])

    def elements(self) -> Iterator["AlgElement"]:
        for code in range(self.size):
            yield AlgElement(self.atom_count, code)


@dataclass(frozen=True)
class AlgElement:
    atom_count: int
    code: int

    def __post_init__(self):
        if not 0 <= self.code < (1 << self.atom_count):
            raise ValueError(f"code {self.code} outside algebra with {self.atom_count} atoms")

    @classmethod
    def of(cls, atom_count: int, members: Iterable[int]) -> "AlgElement":
        code = 0
        for i in members:
            if not 0 <= i < atom_count:
                raise ValueError(f"atom index {i} out of range for {atom_count} atoms")
            code |= 1 << i
        return cls(atom_count, code)

    @property
    def member_set(self) -> frozenset[int]:
        return frozenset(i for i in range(self.atom_count) if self.code >> i & 1)

    def __le__(self, other: "AlgElement") -> bool:  # type: ignore[override]
        _check_same(self, other)
        return self.code & ~other.code == 0

    def __repr__(self):
        return "{" + ",".join(map(str, sorted(self.member_set))) + "}"


def _check_same(a: AlgElement, b: AlgElement) -> None:
    if a.atom_count != b.atom_count:
        raise AlgebraMismatch(f"elements from algebras with {a.atom_count} and {b.atom_count} atoms")


def meet(a: AlgElement, b: AlgElement) -> AlgElement:
    _check_same(a, b)
    return AlgElement(a.atom_count, a.code & b.code)


def join(a: AlgElement, b: AlgElement) -> AlgElement:
    _check_same(a, b)
    return AlgElement(a.atom_count, a.code | b.code)


def complement(a: AlgElement) -> AlgElement:
    return AlgElement(a.atom_count, ((1 << a.atom_count) - 1) & ~a.code)


@dataclass(frozen=True)
class UnaryOpTable:
    """A total unary operation on the algebra with ``atom_count`` atoms."""

    atom_count: int
    table: tuple[int, ...]

    def __post_init__(self):
        size = 1 << self.atom_count
        if len(self.table) != size:
            raise ValueError(f"table must have {size} entries, got {len(self.table)}")
        if any(not 0 <= v < size for v in self.table):
            raise ValueError("table images must lie in the algebra")

    @classmethod
    def from_function(cls, atom_count: int, fn) -> "UnaryOpTable":
        return cls(atom_count, tuple(int(fn(a)) for a in range(1 << atom_count)))

    @property
    def algebra(self) -> FinBoolAlg:
        return FinBoolAlg(self.atom_count)

    @property
    def top_code(self) -> int:
        return (1 << self.atom_count) - 1

    def __call__(self, a):
        if isinstance(a, AlgElement):
            if a.atom_count != self.atom_count:
                raise AlgebraMismatch("element and operator live in different algebras")
            return AlgElement(self.atom_count, self.table[a.code])
        return self.table[a]

    def __le__(self, other: "UnaryOpTable") -> bool:  # type: ignore[override]
        """Pointwise order."""
        _check_ops(self, other)
        return all(x & ~y == 0 for x, y in zip(self.table, other.table))

    def render(self) -> str:
        return f"op[m={self.atom_count}]:" + ",".join(map(str, self.table))


def _check_ops(f: UnaryOpTable, g: UnaryOpTable) -> None:
    if f.atom_count != g.atom_count:
        raise AlgebraMismatch("operators on different algebras")


def identity_op(m: int) -> UnaryOpTable:
    return UnaryOpTable(m, tuple(range(1 << m)))


def constant_op(m: int, value: int) -> UnaryOpTable:
    return UnaryOpTable(m, (value,) * (1 << m))


def constant_top(m: int) -> UnaryOpTable:
    return constant_op(m, (1 << m) - 1)


def constant_bottom(m: int) -> UnaryOpTable:
    return constant_op(m, 0)


def bottom_necessity(m: int) -> UnaryOpTable:
    """1 goes to 1, everything else to 0."""
    top = (1 << m) - 1
    return UnaryOpTable(m, tuple(top if a == top else 0 for a in range(1 << m)))


def is_necessity(f: UnaryOpTable) -> bool:
    top = f.top_code
    t = f.table
    if t[top] != top:
        return False
    n = len(t)
    for a in range(n):
        ta = t[a]
        for b in range(a + 1, n):
            if t[a & b] != ta & t[b]:
                return False
    return True


def is_possibility(f: UnaryOpTable) -> bool:
    t = f.table
    if t[0] != 0:
        return False
    n = len(t)
    for a in range(n):
        ta = t[a]
        for b in range(a + 1, n):
            if t[a | b] != ta | t[b]:
                return False
    return True


def is_monotone(f: UnaryOpTable) -> bool:
    t = f.table
    n = len(t)
    return all(t[a] & ~t[b] == 0 for a in range(n) for b in range(n) if a & ~b == 0)


def dual_op(f: UnaryOpTable) -> UnaryOpTable:
    """a -> not f(not a)."""
    top = f.top_code
    return UnaryOpTable(f.atom_count, tuple(top & ~f.table[top & ~a] for a in range(len(f.table))))


def pointwise_meet(f: UnaryOpTable, g: UnaryOpTable) -> UnaryOpTable:
    _check_ops(f, g)
    if not (is_necessity(f) and is_necessity(g)):
        raise NotAnOperator("pointwise_meet expects two necessity operators")
    return UnaryOpTable(f.atom_count, tuple(x & y for x, y in zip(f.table, g.table)))


def pointwise_join(f: UnaryOpTable, g: UnaryOpTable) -> UnaryOpTable:
    _check_ops(f, g)
    if not (is_possibility(f) and is_possibility(g)):
        raise NotAnOperator("pointwise_join expects two possibility operators")
    return UnaryOpTable(f.atom_count, tuple(x | y for x, y in zip(f.table, g.table)))


def box_table_of_rows(m: int, rows: Sequence[int]) -> tuple[int, ...]:
    """Necessity table {x : rows[x] <= U} for every U, rows given as bitmasks."""
    out = []
    for u in range(1 << m):
        v = 0
        for x, row in enumerate(rows):
            if row & ~u == 0:
                v |= 1 << x
        out.append(v)
    return tuple(out)


def relation_rows(m: int, code: int) -> list[int]:
    """Split a relation code (bit x*m+y) into per-point successor masks."""
    mask = (1 << m) - 1
    return [(code >> (x * m)) & mask for x in range(m)]


def iter_necessity_ops(m: int) -> Iterator[UnaryOpTable]:
    """Necessity operators generated from every relation on m points.

    Relations are visited in increasing code order; distinct relations give
    distinct operators.
    """
    if not 0 <= m <= RELATION_PATH_MAX_M:
        raise ValueError(f"relation-generated path supports 0 <= m <= {RELATION_PATH_MAX_M}")
    for code in range(1 << (m * m)):
        yield UnaryOpTable(m, box_table_of_rows(m, relation_rows(m, code)))


def _brute_force_tables(m: int) -> np.ndarray:
    """All unary maps with the necessity laws, found by scanning every map."""
    n = 1 << m
    top = n - 1
    if m == 0:
        return np.zeros((1, 1), dtype=np.uint8)
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    found = []
    # Outer loop fixes f(0); the remaining n-1 entries are scanned in one block.
    inner = n ** (n - 1)
    chunk = min(inner, 1 << 21)
    powers = n ** np.arange(n - 2, -1, -1, dtype=np.int64)
    for f0 in range(n):
        for start in range(0, inner, chunk):
            idx = np.arange(start, min(start + chunk, inner), dtype=np.int64)
            cols = [np.full(idx.shape, f0, dtype=np.uint8)]
            for p in powers:
                cols.append(((idx // p) % n).astype(np.uint8))
            tab = np.stack(cols, axis=1)
            ok = tab[:, top] == top
            tab = tab[ok]
            if tab.size == 0:
                continue
            keep = np.ones(len(tab), dtype=bool)
            for a, b in pairs:
                keep &= (tab[:, a] & tab[:, b]) == tab[:, a & b]
            found.append(tab[keep])
    return np.concatenate(found) if found else np.zeros((0, n), dtype=np.uint8)


def enumerate_necessity_ops(m: int, method: str = "relations") -> list[UnaryOpTable]:
    """Every necessity operator on the powerset algebra of m atoms, sorted by table.

    ``method="brute"`` scans all (2**m)**(2**m) unary maps (m <= 3);
    ``method="relations"`` generates the operators from relations.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    if method == "brute":
        if m > BRUTE_FORCE_MAX_M:
            raise ValueError(f"brute-force enumeration supports m <= {BRUTE_FORCE_MAX_M}")
        tabs = _brute_force_tables(m)
        ops = [UnaryOpTable(m, tuple(int(v) for v in row)) for row in tabs]
    elif method == "relations":
        ops = list(iter_necessity_ops(m))
    else:
        raise ValueError(f"unknown method {method!r}")
    return sorted(ops, key=lambda f: f.table)


def enumerate_possibility_ops(m: int) -> list[UnaryOpTable]:
    return sorted((dual_op(f) for f in iter_necessity_ops(m)), key=lambda f: f.table)


def all_unary_ops(m: int) -> Iterator[UnaryOpTable]:
    """Every unary map, in lexicographic table order (only sensible for m <= 2)."""
    n = 1 << m
    total = n ** n
    for code in range(total):
        digits = []
        c = code
        for _ in range(n):
            digits.append(c % n)
            c //= n
        yield UnaryOpTable(m, tuple(reversed(digits)))
