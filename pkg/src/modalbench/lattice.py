"""Finite posets: lattice-law verdicts with counterexample witnesses.

All laws are decided by exhaustive search over the order matrix. Witnesses
are the first counterexample in lexicographic index order.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import Any, Callable, Mapping, Sequence

import numpy as np

MAX_POSET_SIZE = 1 << 16
MAX_DISTRIBUTIVITY_SIZE = 4096
# Arbitrary-subset frame/coframe laws are enumerated over every subset up to this size.
MAX_SUBSET_LAW_SIZE = 16


class PosetError(ValueError):
    """Order matrix is not a partial order, or exceeds a size cap."""


class NotALattice(ValueError):
    pass


class PosetParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True, eq=False)
class FinPoset:
    leq: np.ndarray
    labels: tuple = ()

    def __post_init__(self):
        leq = np.array(self.leq, dtype=bool)
        if leq.ndim != 2 or leq.shape[0] != leq.shape[1]:
            raise PosetError("order matrix must be square")
        n = leq.shape[0]
        if n == 0:
            raise PosetError("poset must be nonempty")
        if n > MAX_POSET_SIZE:
            raise PosetError(f"poset size {n} exceeds cap {MAX_POSET_SIZE}")
        if not leq.diagonal().all():
            i = int(np.flatnonzero(~leq.diagonal())[0])
            raise PosetError(f"not reflexive at {i}")
        both = leq & leq.T
        np.fill_diagonal(both, False)
        if both.any():
            i, j = map(int, np.argwhere(both)[0])
            raise PosetError(f"not antisymmetric: {i} <= {j} <= {i}")
        li = leq.astype(np.int32)
        if ((li @ li > 0) & ~leq).any():
            i, j = map(int, np.argwhere((li @ li > 0) & ~leq)[0])
            raise PosetError(f"not transitive: {i} <= ... <= {j} but not {i} <= {j}")
        leq.setflags(write=False)
        object.__setattr__(self, "leq", leq)
        labels = tuple(self.labels) if self.labels else tuple(range(n))
        if len(labels) != n:
            raise PosetError("labels must match poset size")
        object.__setattr__(self, "labels", labels)

    @property
    def size(self) -> int:
        return self.leq.shape[0]

    def __eq__(self, other):
        return isinstance(other, FinPoset) and np.array_equal(self.leq, other.leq)

    def __hash__(self):
        return hash(self.leq.tobytes())

    @classmethod
    def from_leq(cls, elements: Sequence, leq: Callable[[Any, Any], bool], labels=None) -> "FinPoset":
        mat = [[bool(leq(a, b)) for b in elements] for a in elements]
        return cls(np.array(mat, dtype=bool), tuple(labels) if labels is not None else tuple(elements))

    @classmethod
    def from_pairs(cls, n: int, pairs, labels=()) -> "FinPoset":
        """Reflexive-transitive closure of the given i <= j pairs."""
        mat = np.eye(n, dtype=bool)
        for i, j in pairs:
            mat[i, j] = True
        return cls(transitive_closure(mat), labels)

    def dual(self) -> "FinPoset":
        return FinPoset(self.leq.T.copy(), self.labels)

    def covers(self) -> list[tuple[int, int]]:
        strict = self.leq.copy()
        np.fill_diagonal(strict, False)
        si = strict.astype(np.int32)
        two_step = (si @ si) > 0
        return [tuple(map(int, ij)) for ij in np.argwhere(strict & ~two_step)]


def transitive_closure(mat: np.ndarray) -> np.ndarray:
    reach = np.array(mat, dtype=bool)
    n = reach.shape[0]
    np.fill_diagonal(reach, True)
    for k in range(n):
        reach |= reach[:, k : k + 1] & reach[k : k + 1, :]
    return reach


def parse_edge_list(text: str) -> FinPoset:
    """Lines of the form ``i <= j`` (0-based); ``#`` starts a comment."""
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split("<=")
        if len(parts) != 2:
            raise PosetParseError(lineno, f"expected 'i <= j', got {raw.strip()!r}")
        try:
            i, j = (int(s.strip()) for s in parts)
        except ValueError:
            raise PosetParseError(lineno, f"non-integer index in {raw.strip()!r}") from None
        if i < 0 or j < 0:
            raise PosetParseError(lineno, "indices must be non-negative")
        pairs.append((lineno, i, j))
    if not pairs:
        raise PosetParseError(0, "poset must be nonempty")
    n = max(max(i, j) for _, i, j in pairs) + 1
    if n > MAX_POSET_SIZE:
        raise PosetParseError(pairs[-1][0], f"index exceeds cap {MAX_POSET_SIZE}")
    mat = np.eye(n, dtype=bool)
    for _, i, j in pairs:
        mat[i, j] = True
    try:
        return FinPoset(transitive_closure(mat))
    except PosetError as exc:
        raise PosetParseError(pairs[-1][0], str(exc)) from None


def to_edge_list(p: FinPoset) -> str:
    lines = [f"{i} <= {j}" for i, j in p.covers()]
    # isolated points still need a line to be counted
    mentioned = {k for ij in p.covers() for k in ij}
    lines += [f"{i} <= {i}" for i in range(p.size) if i not in mentioned]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- bounds


def _bound_table(leq: np.ndarray) -> np.ndarray:
    """Greatest lower bound of every pair, -1 where it does not exist."""
    n = leq.shape[0]
    downsize = leq.sum(axis=0)  # number of elements below each c
    out = np.full((n, n), -1, dtype=np.int64)
    for a in range(n):
        lower = leq[:, a][:, None] & leq  # [c, b]: c <= a and c <= b
        score = np.where(lower, downsize[:, None], -1)
        cand = score.argmax(axis=0)
        has_any = lower.any(axis=0)
        # cand must sit above every lower bound
        ok = ~(lower & ~leq[:, cand]).any(axis=0) & has_any
        out[a] = np.where(ok, cand, -1)
    return out


@dataclass
class _Tables:
    p: FinPoset
    meet: np.ndarray
    join: np.ndarray

    @classmethod
    def of(cls, p: FinPoset) -> "_Tables":
        return cls(p, _bound_table(p.leq), _bound_table(p.leq.T))


def meet_table(p: FinPoset) -> np.ndarray:
    return _bound_table(p.leq)


def join_table(p: FinPoset) -> np.ndarray:
    return _bound_table(p.leq.T)


def bottom_of(p: FinPoset) -> int | None:
    idx = np.flatnonzero(p.leq.all(axis=1))
    return int(idx[0]) if len(idx) else None


def top_of(p: FinPoset) -> int | None:
    idx = np.flatnonzero(p.leq.all(axis=0))
    return int(idx[0]) if len(idx) else None


def _first_missing(table: np.ndarray):
    bad = np.argwhere(table < 0)
    return tuple(map(int, bad[0])) if len(bad) else None


# ---------------------------------------------------------------- verdict


FLAG_NAMES = (
    "bounded",
    "meet_semilattice",
    "join_semilattice",
    "lattice",
    "distributive_semilattice",
    "distributive_meet_semilattice",
    "distributive_lattice",
    "frame_law",
    "coframe_law",
    "boolean",
    "atomic",
    "zero_dimensional",
    "spatial",
)


@dataclass
class LatticeVerdict:
    size: int
    bounded: bool = False
    meet_semilattice: bool = False
    join_semilattice: bool = False
    lattice: bool = False
    distributive_semilattice: bool = False
    distributive_meet_semilattice: bool = False
    distributive_lattice: bool = False
    frame_law: bool = False
    coframe_law: bool = False
    boolean: bool = False
    atomic: bool = False
    zero_dimensional: bool = False
    spatial: bool = False
    witnesses: dict = field(default_factory=dict)
    law_equivalence: bool = True
    subset_law_method: str = "all-subsets"

    def flags(self) -> dict[str, bool]:
        return {name: getattr(self, name) for name in FLAG_NAMES}

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            **self.flags(),
            "law_equivalence": self.law_equivalence,
            "subset_law_method": self.subset_law_method,
            "witnesses": self.witnesses,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "LatticeVerdict":
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in d.items() if k in names})


def _pair_witness(kind, a, b, labels):
    return {"kind": kind, "elements": [int(a), int(b)], "labels": [repr(labels[a]), repr(labels[b])]}


def _check_join_distributive(leq: np.ndarray, join: np.ndarray):
    """a <= b v c implies a = b' v c' for some b' <= b, c' <= c. First failure or None."""
    n = leq.shape[0]
    down = leq.T.astype(np.float32)  # down[b, b'] = b' <= b
    for a in range(n):
        need = leq[a][join]  # a <= b v c
        if not need.any():
            continue
        exact = (join == a).astype(np.float32)
        reach = down @ exact @ down.T > 0
        bad = need & ~reach
        if bad.any():
            b, c = map(int, np.argwhere(bad)[0])
            return a, b, c
    return None


def _check_distributive_lattice(meet: np.ndarray, join: np.ndarray):
    n = meet.shape[0]
    for a in range(n):
        ma = meet[a]
        lhs = ma[join]
        rhs = join[ma[:, None], ma[None, :]]
        bad = lhs != rhs
        if bad.any():
            b, c = map(int, np.argwhere(bad)[0])
            return a, b, c
    return None


def _subset_indices(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def _check_subset_law(outer: np.ndarray, inner: np.ndarray, unit: int):
    """outer(a, inner-fold S) == inner-fold {outer(a, s)} for every a and every subset S.

    For the frame law ``outer`` is the meet table, ``inner`` the join table and
    ``unit`` the bottom (the join of the empty family).
    """
    n = outer.shape[0]
    folded = np.empty(1 << n, dtype=np.int64)
    folded[0] = unit
    for k in range(n):
        lo = 1 << k
        folded[lo : 2 * lo] = inner[folded[:lo], k]
    for a in range(n):
        lhs = outer[a][folded]
        rhs = np.empty(1 << n, dtype=np.int64)
        rhs[0] = unit
        for k in range(n):
            lo = 1 << k
            rhs[lo : 2 * lo] = inner[rhs[:lo], outer[a, k]]
        bad = np.flatnonzero(lhs != rhs)
        if len(bad):
            return a, _subset_indices(int(bad[0]))
    return None


def _check_small_subset_law(outer: np.ndarray, inner: np.ndarray, unit: int):
    """Empty family plus every pair; larger families follow by folding."""
    n = outer.shape[0]
    for a in range(n):
        if outer[a, unit] != unit:
            return a, []
        lhs = outer[a][inner]
        oa = outer[a]
        rhs = inner[oa[:, None], oa[None, :]]
        bad = lhs != rhs
        if bad.any():
            b, c = map(int, np.argwhere(bad)[0])
            return a, [b, c]
    return None


def _complemented(meet, join, bot, top) -> np.ndarray:
    return ((meet == bot) & (join == top)).any(axis=1)


def _fold(table: np.ndarray, items, unit: int) -> int:
    acc = unit
    for i in items:
        acc = int(table[acc, i])
    return acc


def meet_primes(p: FinPoset, t: _Tables | None = None) -> list[int]:
    t = t or _Tables.of(p)
    if (t.meet < 0).any() or (t.join < 0).any():
        raise NotALattice("meet-primes need a lattice")
    top = top_of(p)
    out = []
    for m in range(p.size):
        if m == top:
            continue
        below = p.leq[:, m]
        bad = below[t.meet] & ~below[:, None] & ~below[None, :]
        if not bad.any():
            out.append(m)
    return out


def join_primes(p: FinPoset, t: _Tables | None = None) -> list[int]:
    t = t or _Tables.of(p)
    d = _Tables(p.dual(), t.join, t.meet)
    return meet_primes(p.dual(), d)


def primes(p: FinPoset) -> tuple[frozenset, frozenset]:
    t = _Tables.of(p)
    return frozenset(meet_primes(p, t)), frozenset(join_primes(p, t))


def analyze(p: FinPoset) -> LatticeVerdict:
    n = p.size
    labels = p.labels
    t = _Tables.of(p)
    meet, join = t.meet, t.join
    v = LatticeVerdict(size=n)
    w = v.witnesses

    bot, top = bottom_of(p), top_of(p)
    v.bounded = bot is not None and top is not None
    if not v.bounded:
        w["bounded"] = {"kind": "missing-bound", "bottom": bot, "top": top,
                        "minimal": [int(i) for i in np.flatnonzero(p.leq.sum(axis=0) == 1)][:2],
                        "maximal": [int(i) for i in np.flatnonzero(p.leq.sum(axis=1) == 1)][:2]}

    miss = _first_missing(meet)
    v.meet_semilattice = miss is None
    if miss:
        w["meet_semilattice"] = _pair_witness("no-meet", *miss, labels)
    miss_j = _first_missing(join)
    v.join_semilattice = miss_j is None
    if miss_j:
        w["join_semilattice"] = _pair_witness("no-join", *miss_j, labels)
    v.lattice = v.meet_semilattice and v.join_semilattice
    not_lattice = w.get("meet_semilattice") or w.get("join_semilattice")

    capped = n > MAX_DISTRIBUTIVITY_SIZE
    if v.join_semilattice and not capped:
        bad = _check_join_distributive(p.leq, join)
        v.distributive_semilattice = bad is None
        if bad:
            w["distributive_semilattice"] = {"kind": "no-decomposition", "elements": list(bad)}
    else:
        w["distributive_semilattice"] = w.get("join_semilattice") or {"kind": "size-cap", "size": n}
    if v.meet_semilattice and not capped:
        bad = _check_join_distributive(p.leq.T, meet)
        v.distributive_meet_semilattice = bad is None
        if bad:
            w["distributive_meet_semilattice"] = {"kind": "no-decomposition", "elements": list(bad)}
    else:
        w["distributive_meet_semilattice"] = w.get("meet_semilattice") or {"kind": "size-cap", "size": n}

    if not v.lattice:
        for name in ("distributive_lattice", "frame_law", "coframe_law", "boolean",
                     "zero_dimensional", "spatial"):
            w[name] = not_lattice
        v.atomic = _atomic(p, bot, w)
        return v

    bad = None if capped else _check_distributive_lattice(meet, join)
    v.distributive_lattice = not capped and bad is None
    if bad:
        w["distributive_lattice"] = {"kind": "distributivity", "elements": list(bad)}
    elif capped:
        w["distributive_lattice"] = {"kind": "size-cap", "size": n}

    if n <= MAX_SUBSET_LAW_SIZE:
        frame_bad = _check_subset_law(meet, join, bot)
        coframe_bad = _check_subset_law(join, meet, top)
    else:
        v.subset_law_method = "empty-and-binary-families"
        frame_bad = _check_small_subset_law(meet, join, bot)
        coframe_bad = _check_small_subset_law(join, meet, top)
    v.frame_law = frame_bad is None
    v.coframe_law = coframe_bad is None
    if frame_bad:
        w["frame_law"] = {"kind": "frame-law", "element": frame_bad[0], "family": frame_bad[1]}
    if coframe_bad:
        w["coframe_law"] = {"kind": "coframe-law", "element": coframe_bad[0], "family": coframe_bad[1]}
    v.law_equivalence = v.frame_law == v.coframe_law == v.distributive_lattice

    comp = _complemented(meet, join, bot, top)
    if not comp.all():
        w["boolean"] = {"kind": "uncomplemented", "elements": [int(np.flatnonzero(~comp)[0])]}
    elif not v.distributive_lattice:
        w["boolean"] = w["distributive_lattice"]
    v.boolean = bool(comp.all()) and v.distributive_lattice

    v.atomic = _atomic(p, bot, w)

    comp_idx = np.flatnonzero(comp)
    v.zero_dimensional = True
    for a in range(n):
        below = [int(c) for c in comp_idx if p.leq[c, a]]
        if _fold(join, below, bot) != a:
            v.zero_dimensional = False
            w["zero_dimensional"] = {"kind": "not-join-of-complemented", "elements": [a]}
            break

    mp = meet_primes(p, t)
    v.spatial = True
    for a in range(n):
        above = [m for m in mp if p.leq[a, m]]
        if _fold(meet, above, top) != a:
            v.spatial = False
            w["spatial"] = {"kind": "not-meet-of-meet-primes", "elements": [a]}
            break
    return v


def _atomic(p: FinPoset, bot, w) -> bool:
    if bot is None:
        w["atomic"] = w.get("bounded")
        return False
    downsize = p.leq.sum(axis=0)
    atoms = np.flatnonzero(downsize == 2)
    covered = p.leq[atoms].any(axis=0) if len(atoms) else np.zeros(p.size, dtype=bool)
    covered[bot] = True
    if not covered.all():
        w["atomic"] = {"kind": "no-atom-below", "elements": [int(np.flatnonzero(~covered)[0])]}
        return False
    return True


def witness_refutes(p: FinPoset, flag: str, witness: dict) -> bool:
    """Re-check a reported witness directly against the law's definition."""
    leq = p.leq
    n = p.size
    kind = witness.get("kind")
    if kind == "no-meet" or kind == "no-join":
        a, b = witness["elements"]
        mat = leq if kind == "no-meet" else leq.T
        lower = [c for c in range(n) if mat[c, a] and mat[c, b]]
        return not any(all(mat[d, c] for d in lower) for c in lower)
    if kind == "missing-bound":
        has_bot = any(leq[i].all() for i in range(n))
        has_top = any(leq[:, i].all() for i in range(n))
        return not (has_bot and has_top)
    t = _Tables.of(p)
    if kind == "no-decomposition":
        a, b, c = witness["elements"]
        mat, tab = (leq, t.join) if flag == "distributive_semilattice" else (leq.T, t.meet)
        if not mat[a, tab[b, c]]:
            return False
        return not any(tab[b2, c2] == a for b2 in range(n) if mat[b2, b] for c2 in range(n) if mat[c2, c])
    if kind == "distributivity":
        a, b, c = witness["elements"]
        return t.meet[a, t.join[b, c]] != t.join[t.meet[a, b], t.meet[a, c]]
    if kind in ("frame-law", "coframe-law"):
        a, fam = witness["element"], witness["family"]
        outer, inner = (t.meet, t.join) if kind == "frame-law" else (t.join, t.meet)
        unit = bottom_of(p) if kind == "frame-law" else top_of(p)
        return outer[a, _fold(inner, fam, unit)] != _fold(inner, [outer[a, s] for s in fam], unit)
    if kind == "uncomplemented":
        (a,) = witness["elements"]
        bot, top = bottom_of(p), top_of(p)
        return not any(t.meet[a, b] == bot and t.join[a, b] == top for b in range(n))
    if kind == "no-atom-below":
        (a,) = witness["elements"]
        bot = bottom_of(p)
        return not any(leq[x, a] and x != bot and all(not leq[y, x] or y in (x, bot) for y in range(n))
                       for x in range(n))
    if kind == "not-join-of-complemented":
        (a,) = witness["elements"]
        bot, top = bottom_of(p), top_of(p)
        comp = [c for c in range(n) if any(t.meet[c, d] == bot and t.join[c, d] == top for d in range(n))]
        return _fold(t.join, [c for c in comp if leq[c, a]], bot) != a
    if kind == "not-meet-of-meet-primes":
        (a,) = witness["elements"]
        mp = meet_primes(p, t)
        return _fold(t.meet, [m for m in mp if leq[a, m]], top_of(p)) != a
    return False


# ---------------------------------------------------------------- builders


def chain(n: int) -> FinPoset:
    return FinPoset(np.triu(np.ones((n, n), dtype=bool)))


def powerset_lattice(k: int) -> FinPoset:
    n = 1 << k
    codes = np.arange(n)
    leq = (codes[:, None] & ~codes[None, :]) == 0
    return FinPoset(leq)


def diamond_m3() -> FinPoset:
    return FinPoset.from_pairs(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
                               labels=("0", "a", "b", "c", "1"))


def pentagon_n5() -> FinPoset:
    return FinPoset.from_pairs(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)],
                               labels=("0", "a", "b", "c", "1"))


def _table_leq(tables: np.ndarray) -> np.ndarray:
    """Pointwise order between rows of tables (subset order on every entry)."""
    k = tables.shape[0]
    out = np.ones((k, k), dtype=bool)
    for col in range(tables.shape[1]):
        c = tables[:, col]
        out &= (c[:, None] & ~c[None, :]) == 0
    return out


def operator_poset(ops) -> FinPoset:
    ops = list(ops)
    tables = np.array([op.table for op in ops], dtype=np.int64).reshape(len(ops), -1)
    return FinPoset(_table_leq(tables), tuple(ops))


def build_no_poset(m: int) -> FinPoset:
    from .algebra import enumerate_necessity_ops

    if not 0 <= m <= 3:
        raise ValueError("build_no_poset supports m <= 3")
    return operator_poset(enumerate_necessity_ops(m))


def build_po_poset(m: int) -> FinPoset:
    from .algebra import enumerate_possibility_ops

    if not 0 <= m <= 3:
        raise ValueError("build_po_poset supports m <= 3")
    return operator_poset(enumerate_possibility_ops(m))


def build_relation_poset(m: int) -> FinPoset:
    """All relations on m points ordered by inclusion (labels are FiniteRelation)."""
    from .duality import all_relations

    if not 0 <= m <= 3:
        raise ValueError("build_relation_poset supports m <= 3")
    rels = list(all_relations(m))
    codes = np.array([r.code for r in rels], dtype=np.int64)
    return FinPoset((codes[:, None] & ~codes[None, :]) == 0, tuple(rels))


def build_tno_poset(m: int) -> FinPoset:
    from .tense import tense_necessity_ops

    if not 0 <= m <= 3:
        raise ValueError("build_tno_poset supports m <= 3")
    return operator_poset(tense_necessity_ops(m))


def build_tnr_poset(m: int) -> FinPoset:
    from .tense import enumerate_weaver_relations

    if not 0 <= m <= 2:
        raise ValueError("build_tnr_poset supports m <= 2")
    rels = enumerate_weaver_relations(m)
    codes = np.array([r.code for r in rels], dtype=object)
    n = len(rels)
    leq = np.array([[codes[i] & ~codes[j] == 0 for j in range(n)] for i in range(n)], dtype=bool)
    return FinPoset(leq, tuple(rels))


def order_iso_check(p: FinPoset, q: FinPoset, f) -> bool:
    """f (sequence or mapping of indices p -> q) is a bijection with x <= y iff f(x) <= f(y)."""
    n = p.size
    try:
        img = [int(f[i]) for i in range(n)]
    except (KeyError, IndexError, TypeError):
        return False
    if q.size != n or sorted(img) != list(range(n)):
        return False
    idx = np.array(img)
    return bool(np.array_equal(p.leq, q.leq[np.ix_(idx, idx)]))


def label_index(p: FinPoset) -> dict:
    return {lab: i for i, lab in enumerate(p.labels)}
