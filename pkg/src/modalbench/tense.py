"""Tense operators on finite powerset algebras.

Covers conjugate possibility operators, left adjoints of necessity
operators, the equivalent characterisations of tense necessity, relations
on B compatible with arbitrary meets in both coordinates (Weaver relations),
and the identification of tense necessity operators on a powerset with
relations on its atoms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np

from .algebra import (
    NotAnOperator,
    UnaryOpTable,
    dual_op,
    enumerate_necessity_ops,
    enumerate_possibility_ops,
    is_necessity,
    is_possibility,
)
from .duality import FiniteRelation, box_to_relation, relation_to_box, relation_to_diamond

SUBSET_CAP = 16  # largest |B| for which all subsets of B are enumerated


def meet_all(codes, top: int) -> int:
    out = top
    for c in codes:
        out &= c
    return out


def join_all(codes) -> int:
    out = 0
    for c in codes:
        out |= c
    return out


def _require_necessity(box: UnaryOpTable) -> None:
    if not is_necessity(box):
        raise NotAnOperator("expected a necessity operator")


# ---------------------------------------------------------------- conjugates and adjoints


class NotConjugate(ValueError):
    pass


def is_conjugate(f: UnaryOpTable, p: UnaryOpTable) -> bool:
    """f(a) & b == 0 exactly when p(b) & a == 0, for all a, b."""
    n = len(f.table)
    return all((f.table[a] & b == 0) == (p.table[b] & a == 0) for a in range(n) for b in range(n))


@dataclass(frozen=True)
class ConjugatePair:
    diamond_f: UnaryOpTable
    diamond_p: UnaryOpTable

    def __post_init__(self):
        if not (is_possibility(self.diamond_f) and is_possibility(self.diamond_p)):
            raise NotConjugate("both members must be possibility operators")
        if not is_conjugate(self.diamond_f, self.diamond_p):
            raise NotConjugate("operators are not conjugate")

    def swapped(self) -> "ConjugatePair":
        return ConjugatePair(self.diamond_p, self.diamond_f)


def left_adjoint(box: UnaryOpTable) -> UnaryOpTable:
    """a -> meet of every x with a <= box(x)."""
    _require_necessity(box)
    t, top = box.table, box.top_code
    n = len(t)
    return UnaryOpTable(box.atom_count, tuple(meet_all((x for x in range(n) if a & ~t[x] == 0), top) for a in range(n)))


def satisfies_adjunction(p: UnaryOpTable, box: UnaryOpTable) -> bool:
    n = len(box.table)
    return all((p.table[a] & ~b == 0) == (a & ~box.table[b] == 0) for a in range(n) for b in range(n))


# ---------------------------------------------------------------- the equivalence battery


@lru_cache(maxsize=None)
def _possibility_array(m: int) -> np.ndarray:
    return np.array([f.table for f in enumerate_possibility_ops(m)], dtype=np.int64).reshape(-1, 1 << m)


def _search(m: int, ok_fn) -> int | None:
    """Index of the first possibility operator accepted by the vectorised predicate."""
    cands = _possibility_array(m)
    hits = np.flatnonzero(ok_fn(cands))
    return int(hits[0]) if hits.size else None


@dataclass
class BatteryReport:
    conditions: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return len(set(self.conditions.values())) == 1

    @property
    def all_true(self) -> bool:
        return all(self.conditions.values())

    def to_dict(self) -> dict:
        return {"conditions": self.conditions, "witnesses": self.witnesses, "agree": self.agree}


def equivalence_battery(box: UnaryOpTable) -> BatteryReport:
    """Evaluate the five characterisations of tense necessity independently."""
    _require_necessity(box)
    m = box.atom_count
    n = 1 << m
    top = n - 1
    bt = np.array(box.table, dtype=np.int64)
    dia_f = np.array(dual_op(box).table, dtype=np.int64)
    a = np.arange(n, dtype=np.int64)
    A, B = np.meshgrid(a, a, indexing="ij")  # A[i, j] = i, B[i, j] = j

    def conjugate(c):  # dia_f(a) & b == 0  <=>  c(b) & a == 0
        lhs = (dia_f[A] & B) == 0
        rhs = (c[:, B] & A) == 0
        return (lhs == rhs).all(axis=(1, 2))

    def adjunction(c):  # c(a) <= b  <=>  a <= box(b)
        lhs = (c[:, A] & ~B) == 0
        rhs = (A & ~bt[B]) == 0
        return (lhs == rhs).all(axis=(1, 2))

    def unit_counit(c):  # a <= box(c(a)) and c(box(a)) <= a
        unit = (a & ~bt[c]) == 0
        counit = (c[:, bt] & ~a) == 0
        return (unit & counit).all(axis=1)

    def two_units(c):  # a <= box(c(a)) and a <= box_p(dia_f(a)) with box_p = not c not
        box_p = top & ~c[:, top & ~dia_f]
        unit = (a & ~bt[c]) == 0
        other = (a & ~box_p) == 0
        return (unit & other).all(axis=1)

    report = BatteryReport()
    for name, fn in (("conjugate", conjugate), ("adjoint", adjunction),
                     ("unit_counit", unit_counit), ("two_units", two_units)):
        idx = _search(m, fn)
        report.conditions[name] = idx is not None
        report.witnesses[name] = None if idx is None else [int(v) for v in _possibility_array(m)[idx]]

    # meets of {x : a <= box x} exist (finite algebra) and box preserves them
    pres = True
    for ai in range(n):
        s = [x for x in range(n) if ai & ~box.table[x] == 0]
        if box.table[meet_all(s, top)] != meet_all((box.table[x] for x in s), top):
            pres = False
            report.witnesses["meet_preservation"] = ai
            break
    report.conditions["meet_preservation"] = pres
    return report


def is_completely_meet_preserving(box: UnaryOpTable) -> bool:
    """box of the meet of S equals the meet of box over S, for every subset S of B."""
    _require_necessity(box)
    n = len(box.table)
    if n > SUBSET_CAP:
        raise ValueError(f"subset enumeration is capped at |B| <= {SUBSET_CAP}")
    top = n - 1
    t = np.array(box.table, dtype=np.int64)
    meets = np.array([top], dtype=np.int64)
    box_meets = np.array([top], dtype=np.int64)
    for el in range(n):  # subsets built by doubling: without el, then with el
        meets = np.concatenate([meets, meets & el])
        box_meets = np.concatenate([box_meets, box_meets & t[el]])
    return bool((t[meets] == box_meets).all())


def tense_necessity_ops(m: int) -> list[UnaryOpTable]:
    """Necessity operators that have a left adjoint (all of them on a finite powerset)."""
    return [f for f in enumerate_necessity_ops(m) if satisfies_adjunction(left_adjoint(f), f)]


# ---------------------------------------------------------------- Weaver relations


@dataclass(frozen=True)
class WeaverRelation:
    atom_count: int
    pairs: frozenset = frozenset()

    def __post_init__(self):
        n = 1 << self.atom_count
        ps = frozenset((int(a), int(b)) for a, b in self.pairs)
        if any(not (0 <= a < n and 0 <= b < n) for a, b in ps):
            raise ValueError("pair outside the algebra")
        object.__setattr__(self, "pairs", ps)

    @property
    def size(self) -> int:
        return 1 << self.atom_count

    @property
    def code(self) -> int:
        """Bit a*|B| + b encodes the pair (a, b)."""
        return sum(1 << (a * self.size + b) for a, b in self.pairs)

    @classmethod
    def from_code(cls, m: int, code: int) -> "WeaverRelation":
        n = 1 << m
        return cls(m, frozenset((a, b) for a in range(n) for b in range(n) if code >> (a * n + b) & 1))

    def row(self, a: int) -> list[int]:
        return sorted(b for x, b in self.pairs if x == a)

    def __le__(self, other: "WeaverRelation") -> bool:
        return self.pairs <= other.pairs


def _subset_meets(n: int) -> list[tuple[int, int]]:
    """(mask of members, meet) for every subset of B = range(n)."""
    top = n - 1
    out = []
    for s in range(1 << n):
        out.append((s, meet_all((x for x in range(n) if s >> x & 1), top)))
    return out


def satisfies_dagger(r: WeaverRelation) -> bool:
    """Literal test: (meet S, meet T) in r iff (a, b) in r for all a in S, b in T."""
    n = r.size
    if n > 8:
        return _dagger_structural(r)
    subsets = _subset_meets(n)
    pairs = r.pairs
    for s, ms in subsets:
        sa = [x for x in range(n) if s >> x & 1]
        for t, mt in subsets:
            tb = [y for y in range(n) if t >> y & 1]
            if ((ms, mt) in pairs) != all((x, y) in pairs for x in sa for y in tb):
                return False
    return True


def _dagger_structural(r: WeaverRelation) -> bool:
    """Equivalent finite form: rows are principal up-sets whose generators turn meets into joins."""
    n = r.size
    top = n - 1
    gen = []
    for a in range(n):
        row = set(r.row(a))
        c = meet_all(row, top)
        if row != {b for b in range(n) if c & ~b == 0}:
            return False
        gen.append(c)
    return gen[top] == 0 and all(gen[a & b] == gen[a] | gen[b] for a in range(n) for b in range(n))


def weaver_structural_facts(r: WeaverRelation) -> dict:
    """The three consequences of the meet condition used to build the inverse map."""
    n = r.size
    top = n - 1
    rows = {a: set(r.row(a)) for a in range(n)}
    gens = {a: meet_all(rows[a], top) for a in range(n)}
    return {
        "meet_of_row_in_row": all(gens[a] in rows[a] for a in range(n)),
        "row_is_principal_upset": all(rows[a] == {b for b in range(n) if gens[a] & ~b == 0} for a in range(n)),
        "rows_monotone": all(rows[a1] <= rows[a2] for a1 in range(n) for a2 in range(n) if a1 & ~a2 == 0),
    }


def weaver_i(box: UnaryOpTable) -> WeaverRelation:
    """{(a, b) : box(a) or b is the top}."""
    if not satisfies_adjunction(left_adjoint(box), box):
        raise NotAnOperator("weaver_i expects a tense necessity operator")
    n = len(box.table)
    top = n - 1
    return WeaverRelation(box.atom_count, frozenset((a, b) for a in range(n) for b in range(n) if box.table[a] | b == top))


def weaver_j(r: WeaverRelation) -> UnaryOpTable:
    """a -> complement of the meet of the row of a."""
    if not satisfies_dagger(r):
        raise ValueError("relation does not satisfy the meet condition")
    n = r.size
    top = n - 1
    return UnaryOpTable(r.atom_count, tuple(top & ~meet_all(r.row(a), top) for a in range(n)))


def _dagger_masks(n: int) -> list[tuple[int, int]]:
    """For each (S, T): bit index of (meet S, meet T) and the mask of S x T."""
    out = []
    for s, ms in _subset_meets(n):
        for t, mt in _subset_meets(n):
            mask = 0
            for x in range(n):
                if s >> x & 1:
                    for y in range(n):
                        if t >> y & 1:
                            mask |= 1 << (x * n + y)
            out.append((ms * n + mt, mask))
    return out


def enumerate_weaver_relations(m: int) -> list[WeaverRelation]:
    """Brute force over every subset of B x B, filtered by the literal meet condition (m <= 2)."""
    if not 0 <= m <= 2:
        raise ValueError("literal enumeration of Weaver relations supports m <= 2")
    n = 1 << m
    codes = np.arange(1 << (n * n), dtype=np.int64)
    keep = np.ones(codes.shape, dtype=bool)
    for bit, mask in _dagger_masks(n):
        keep &= ((codes >> bit) & 1).astype(bool) == ((codes & mask) == mask)
    return [WeaverRelation.from_code(m, int(c)) for c in codes[keep]]


def count_weaver_relations(m: int) -> int:
    """Number of Weaver relations on the powerset of m atoms.

    For m <= 2 by literal enumeration. For m = 3 every Weaver relation is
    determined by its row generators c, which obey c(top) = 0 and
    c(a & b) = c(a) | c(b); those maps are counted by scanning all 8**8 maps.
    """
    if m <= 2:
        return len(enumerate_weaver_relations(m))
    if m != 3:
        raise ValueError("counting supports m <= 3")
    n = 1 << m
    top = n - 1
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    total = 0
    inner = n ** (n - 1)
    chunk = 1 << 21
    powers = n ** np.arange(n - 2, -1, -1, dtype=np.int64)
    # the generator of the top row must be 0; the other entries are scanned
    for start in range(0, inner, chunk):
        idx = np.arange(start, min(start + chunk, inner), dtype=np.int64)
        cols = [((idx // p) % n).astype(np.uint8) for p in powers]
        tab = np.stack(cols + [np.zeros(idx.shape, dtype=np.uint8)], axis=1)
        keep = np.ones(len(tab), dtype=bool)
        for a, b in pairs:
            keep &= (tab[:, a] | tab[:, b]) == tab[:, a & b]
        total += int(keep.sum())
    return total


# ---------------------------------------------------------------- powerset identification


def tno_powerset_map(box: UnaryOpTable, swapped: bool = False) -> FiniteRelation:
    """{(x, y) : y in box(M - {x})}; with ``swapped``, {(x, y) : x in box(M - {y})}."""
    _require_necessity(box)
    m = box.atom_count
    if m > 3:
        raise ValueError("tno_powerset_map supports m <= 3")
    top = (1 << m) - 1
    pairs = set()
    for x, y in product(range(m), repeat=2):
        src, tgt = (y, x) if swapped else (x, y)
        if box.table[top & ~(1 << src)] >> tgt & 1:
            pairs.add((x, y))
    return FiniteRelation(m, frozenset(pairs))


@dataclass
class PowersetMapReport:
    m: int
    variant: str
    bijective: bool
    order_isomorphism: bool
    matches_complemented_relation: bool
    matches_complemented_converse: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def powerset_map_report(m: int) -> list[PowersetMapReport]:
    """Check both readings of the explicit map against the relational dual."""
    ops = tense_necessity_ops(m)
    out = []
    for swapped in (False, True):
        imgs = [tno_powerset_map(f, swapped) for f in ops]
        bij = len({r.code for r in imgs}) == len(ops) == 1 << (m * m)
        iso = all((f <= g) == (ri <= rj) for f, ri in zip(ops, imgs) for g, rj in zip(ops, imgs))
        comp = all(r == box_to_relation(f).complement() for f, r in zip(ops, imgs))
        comp_conv = all(r == box_to_relation(f).converse().complement() for f, r in zip(ops, imgs))
        out.append(PowersetMapReport(m, "swapped" if swapped else "as-written", bij, iso, comp, comp_conv))
    return out


# ---------------------------------------------------------------- finite Esakia lemma


def finite_esakia_check(m: int) -> bool:
    """Both clauses of Esakia's lemma, for every relation and every down-directed family (m <= 2)."""
    if not 0 <= m <= 2:
        raise ValueError("finite_esakia_check supports m <= 2")
    n = 1 << m
    top = n - 1
    fams = np.arange(1, 1 << n, dtype=np.int64)  # nonempty families of subsets, as bitmasks over subsets
    meet_f = np.full(fams.shape, top, dtype=np.int64)
    for u in range(n):
        member = ((fams >> u) & 1).astype(bool)
        meet_f = np.where(member, meet_f & u, meet_f)
    # a finite family is down-directed exactly when it contains its own meet
    directed = fams[((fams >> meet_f) & 1).astype(bool)]
    dmeet = meet_f[((fams >> meet_f) & 1).astype(bool)]
    for code in range(1 << (m * m)):
        r = FiniteRelation.from_code(m, code)
        for fn in (r.preimage, r.image):
            table = np.array([fn(u) for u in range(n)], dtype=np.int64)
            inter = np.full(directed.shape, top, dtype=np.int64)
            for u in range(n):
                member = ((directed >> u) & 1).astype(bool)
                inter = np.where(member, inter & table[u], inter)
            if not (inter == table[dmeet]).all():
                return False
    return True


# ---------------------------------------------------------------- bridge to interior relations


def interior_bridge_check(max_m: int = 2, truncation: int = 1000):
    """Tense necessity operators versus interior relations, finitely and on the compactification."""
    from .alpha import (AlphaRelation, AlphaSet, certify_counterexamples, is_continuous,
                        is_interior)
    from .certificate import Certificate, check

    steps = []
    for m in range(max_m + 1):
        ops = enumerate_necessity_ops(m)
        tno = [f for f in ops if equivalence_battery(f).all_true]
        adjoint_is_image = all(
            left_adjoint(relation_to_box(FiniteRelation.from_code(m, c)))
            == relation_to_diamond(FiniteRelation.from_code(m, c).converse())
            for c in range(1 << (m * m)))
        steps.append(check(f"finite powerset with {m} atoms: every necessity operator is tense",
                           "on a discrete space every relation is interior, with left adjoint U -> R[U]",
                           len(tno) == len(ops) == 1 << (m * m) and adjoint_is_image,
                           {"m": m}, {"NO": len(ops), "TNO": len(tno), "adjoint_is_image": adjoint_is_image}))

    alpha = certify_counterexamples(truncation)
    steps.append(check("interior relations on the compactification are neither a lattice nor distributive",
                       "D, R, S are interior and the meet and decomposition failures persist",
                       alpha.valid and alpha.conclusions.get("IR_not_a_lattice", False),
                       {}, {"steps_passed": sum(s.ok for s in alpha.steps), "steps": len(alpha.steps)}))

    sym = []
    for u in (AlphaSet.of([1, 2]), AlphaSet.tail_from(3), AlphaSet.evens(True)):
        rel = AlphaRelation.diagonal(u)
        c = is_continuous(rel)
        i = is_interior(rel).status if c.yes else "no"
        sym.append((u.render(), c.status, i))
    steps.append(check("symmetric relations: interior exactly when continuous",
                       "for symmetric relations images are preimages",
                       all(c == i for _, c, i in sym), {}, [list(t) for t in sym]))
    return Certificate("interior-bridge", tuple(steps))
