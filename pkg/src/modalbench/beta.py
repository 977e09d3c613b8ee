"""A symbolic fragment of the Stone-Cech compactification of N.

Clopens of the compactification are exactly the closures cl(A) of subsets
A of N. Remainder points (free ultrafilters) are never represented
individually; the symbol ``STAR`` stands for an arbitrary one of them, and
every rule below treats all of them alike.

Sets come in three forms over an eventually periodic A:

    PLAIN(A)          A itself
    CLOSURE(A)        cl(A): A plus every free ultrafilter containing A
    PLUS_ALL_FREE(A)  A plus the whole remainder
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .evperiodic import EvPeriodicSet


class Form(str, Enum):
    PLAIN = "plain"
    CLOSURE = "closure"
    PLUS_ALL_FREE = "plus_all_free"


STAR = "STAR"


class UnsupportedCombination(ValueError):
    pass


@dataclass(frozen=True)
class BetaSet:
    base: EvPeriodicSet
    form: Form = Form.CLOSURE

    def __post_init__(self):
        form = Form(self.form)
        # PLAIN(A) = cl(A) for finite A; A + remainder = cl(A) for cofinite A
        if form is Form.PLAIN and self.base.is_finite():
            form = Form.CLOSURE
        if form is Form.PLUS_ALL_FREE and self.base.is_cofinite():
            form = Form.CLOSURE
        object.__setattr__(self, "form", form)

    @classmethod
    def plain(cls, a: EvPeriodicSet) -> "BetaSet":
        return cls(a, Form.PLAIN)

    @classmethod
    def closure_of(cls, a: EvPeriodicSet) -> "BetaSet":
        return cls(a, Form.CLOSURE)

    @classmethod
    def plus_all_free(cls, a: EvPeriodicSet) -> "BetaSet":
        return cls(a, Form.PLUS_ALL_FREE)

    @classmethod
    def remainder(cls) -> "BetaSet":
        return cls(EvPeriodicSet.empty(), Form.PLUS_ALL_FREE)

    @classmethod
    def whole(cls) -> "BetaSet":
        return cls(EvPeriodicSet.naturals(), Form.CLOSURE)

    # free ultrafilters in the set: none, those containing base, or all of them
    def _free_kind(self) -> str:
        if self.form is Form.PLAIN or (self.form is Form.CLOSURE and self.base.is_finite()):
            return "none"
        if self.form is Form.PLUS_ALL_FREE or self.base.is_cofinite():
            return "all"
        return "over-base"

    def is_clopen(self) -> bool:
        if self.form is Form.CLOSURE:
            return True
        if self.form is Form.PLAIN:
            return self.base.is_finite()
        return self.base.is_cofinite()

    def is_closed(self) -> bool:
        # the complement of A + remainder is a set of isolated points
        return self.form is not Form.PLAIN or self.base.is_finite()

    def contains_natural(self, n: int) -> bool:
        return n in self.base

    def contains_remainder(self) -> bool:
        """Every free ultrafilter lies in the set."""
        return self._free_kind() == "all"

    def meets_remainder(self) -> bool:
        return self._free_kind() != "none"

    def __le__(self, other: "BetaSet") -> bool:
        if not self.base <= other.base:
            return False
        mine, theirs = self._free_kind(), other._free_kind()
        if mine == "none" or theirs == "all":
            return True
        if theirs == "none":
            return False
        if mine == "all":
            return other.base.is_cofinite()
        # U* <= V* iff U - V is finite
        return (self.base - other.base).is_finite()

    def render(self) -> str:
        return f"{self.form.value}({self.base.render()})"

    def __repr__(self):
        return f"BetaSet({self.render()})"


def beta_is_clopen(s: BetaSet) -> bool:
    return s.is_clopen()


class BetaRelation(str, Enum):
    LEQ_STAR = "leq_star"                        # n <= m on N, plus everything into the remainder
    CONVERSE_LEQ_STAR = "converse_leq_star"
    DIAG_MEET_CANDIDATE = "diag_meet_candidate"  # the intersection of the two above

    def converse(self) -> "BetaRelation":
        if self is BetaRelation.LEQ_STAR:
            return BetaRelation.CONVERSE_LEQ_STAR
        if self is BetaRelation.CONVERSE_LEQ_STAR:
            return BetaRelation.LEQ_STAR
        return self


def _upto(n: int) -> EvPeriodicSet:
    return EvPeriodicSet.finite(range(n + 1))


def beta_row(r: BetaRelation, x) -> BetaSet:
    r = BetaRelation(r)
    if x == STAR:
        if r is BetaRelation.CONVERSE_LEQ_STAR:
            return BetaSet.whole()
        return BetaSet.remainder()
    if not isinstance(x, int) or x < 0:
        raise ValueError(f"row point must be a natural or STAR, got {x!r}")
    if r is BetaRelation.LEQ_STAR:
        return BetaSet.plus_all_free(EvPeriodicSet.at_least(x))
    if r is BetaRelation.CONVERSE_LEQ_STAR:
        return BetaSet.plain(_upto(x))
    return BetaSet.plain(EvPeriodicSet.finite([x]))


def beta_column(r: BetaRelation, y) -> BetaSet:
    return beta_row(BetaRelation(r).converse(), y)


def _supported_base(s: BetaSet) -> EvPeriodicSet:
    if s.form is not Form.CLOSURE:
        raise UnsupportedCombination(f"rules are catalogued for closures of subsets of N only, got {s.render()}")
    return s.base


def beta_preimage(r: BetaRelation, s: BetaSet) -> BetaSet:
    r = BetaRelation(r)
    a = _supported_base(s)
    if r is BetaRelation.CONVERSE_LEQ_STAR:
        return beta_image(BetaRelation.LEQ_STAR, s)
    if a.is_empty():
        return BetaSet.plain(EvPeriodicSet.empty())
    if r is BetaRelation.LEQ_STAR:
        if a.is_finite():
            return BetaSet.plain(_upto(a.max()))
        return BetaSet.whole()
    # the diagonal part picks up A itself, the remainder square picks up everything free
    if a.is_finite():
        return BetaSet.plain(a)
    return BetaSet.plus_all_free(a)


def beta_image(r: BetaRelation, s: BetaSet) -> BetaSet:
    r = BetaRelation(r)
    a = _supported_base(s)
    if r is BetaRelation.CONVERSE_LEQ_STAR:
        return beta_preimage(BetaRelation.LEQ_STAR, s)
    if r is BetaRelation.DIAG_MEET_CANDIDATE:
        return beta_preimage(r, s)  # symmetric
    if a.is_empty():
        return BetaSet.plain(EvPeriodicSet.empty())
    return BetaSet.closure_of(EvPeriodicSet.at_least(a.min()))


def direct_preimage_member(r: BetaRelation, a: EvPeriodicSet, n: int) -> bool:
    """Whether the natural n relates to some point of cl(A), by looking at A directly."""
    r = BetaRelation(r)
    horizon = max(n, a.threshold) + a.period + 1
    if r is BetaRelation.LEQ_STAR:
        return any(m in a for m in range(n, horizon)) or not a.is_finite()
    if r is BetaRelation.CONVERSE_LEQ_STAR:
        # remainder points are related only to remainder points here
        return any(m in a for m in range(n + 1))
    return n in a


def sample_bases() -> list[EvPeriodicSet]:
    """A spread of subsets of N covering empty, finite and infinite cases."""
    ep = EvPeriodicSet
    return [
        ep.empty(), ep.finite([0]), ep.finite([1, 3]), ep.finite([4, 9, 17]),
        ep.residues(2, [0]), ep.residues(2, [1]), ep.progression(3, 2), ep.at_least(5),
        ep.naturals(), ep.cofinite([0, 2]), ep.residues(5, [1, 4], start=3),
    ]


def certify_meet_defect():
    """The intersection of LEQ_STAR and its converse is not continuous."""
    from .certificate import Certificate, check

    steps = []
    rels = (BetaRelation.LEQ_STAR, BetaRelation.CONVERSE_LEQ_STAR)
    for r in rels:
        rows = {str(x): beta_row(r, x) for x in list(range(12)) + [STAR]}
        steps.append(check(f"rows of {r.value} are closed",
                           "natural rows are a finite set or a tail plus the remainder; the remainder row is closed",
                           all(v.is_closed() for v in rows.values()), {},
                           {k: v.render() for k, v in rows.items()}))
        branches = {"empty": [], "finite": [], "infinite": []}
        for a in sample_bases():
            key = "empty" if a.is_empty() else "finite" if a.is_finite() else "infinite"
            pre = beta_preimage(r, BetaSet.closure_of(a))
            branches[key].append((a.render(), pre.render(), pre.is_clopen()))
        ok = all(clopen for b in branches.values() for *_, clopen in b) and all(branches.values())
        steps.append(check(f"{r.value} is continuous",
                           "every clopen is cl(A); the preimage is clopen whether A is empty, finite or infinite",
                           ok, {}, {k: [list(t) for t in v] for k, v in branches.items()}))

    evens = EvPeriodicSet.residues(2, [0])
    witness = beta_preimage(BetaRelation.DIAG_MEET_CANDIDATE, BetaSet.closure_of(evens))
    expected = BetaSet.plus_all_free(evens)
    steps.append(check("the intersection has a non-clopen preimage",
                       "the preimage of cl(evens) is evens plus the remainder, whose complement is the odd numbers",
                       witness == expected and not witness.is_clopen(),
                       {"clopen": BetaSet.closure_of(evens).render()},
                       {"preimage": witness.render(), "clopen": witness.is_clopen()}))
    cert = Certificate("beta-meet-defect", tuple(steps))
    steps.append(check("meet differs from intersection",
                       "both relations are continuous and their intersection is not, so it is not their meet",
                       cert.valid, {}, {"meet_differs_from_intersection": cert.valid}))
    cert = Certificate("beta-meet-defect", tuple(steps))
    return Certificate(cert.name, cert.steps, {
        "meet_differs_from_intersection": cert.valid,
        "vietoris_intersection_not_continuous": cert.valid,
    })
