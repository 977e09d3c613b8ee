"""Seeded randomized invariant suites.

Each case is generated from its own integer seed and a size parameter, so a
failure can be replayed exactly and shrunk by regenerating the same seed at
smaller sizes. Seeds listed in the bundled regression corpus are replayed
before the random cases.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable

from .alpha import (
    INF,
    AffineTail,
    AlphaRelation,
    AlphaSet,
    Diagonal,
    FinitePairs,
    Product,
    bounded_clopens,
    esakia_limit,
    is_continuous,
)
from .beta import BetaRelation, BetaSet, beta_preimage, direct_preimage_member
from .evperiodic import EvPeriodicSet

DEFAULT_SIZE = 8


# ---------------------------------------------------------------- generators


def random_ep(rng: random.Random, size: int) -> EvPeriodicSet:
    t = rng.randint(0, size)
    p = rng.randint(1, max(1, size // 2))
    mode = rng.random()
    if mode < 0.15:
        return EvPeriodicSet.finite(x for x in range(t + p) if rng.random() < 0.5)
    if mode < 0.3:
        return EvPeriodicSet.finite(x for x in range(t + p) if rng.random() < 0.5).complement()
    return EvPeriodicSet(tuple(rng.random() < 0.5 for _ in range(t)), tuple(rng.random() < 0.5 for _ in range(p)))


def random_alpha_set(rng: random.Random, size: int) -> AlphaSet:
    return AlphaSet(random_ep(rng, size), rng.random() < 0.5)


def random_clopen(rng: random.Random, size: int) -> AlphaSet:
    f = AlphaSet.of(x for x in range(size + 1) if rng.random() < 0.4)
    return f.complement() if rng.random() < 0.5 else f


def _random_point(rng: random.Random, size: int):
    return INF if rng.random() < 0.15 else rng.randint(0, 2 * size + 2)


def random_piece(rng: random.Random, size: int):
    kind = rng.random()
    if kind < 0.25:
        return FinitePairs(frozenset((_random_point(rng, size), _random_point(rng, size))
                                     for _ in range(rng.randint(0, max(1, size // 2)))))
    if kind < 0.45:
        return Diagonal(random_clopen(rng, size))
    if kind < 0.6:
        return Product(random_clopen(rng, size), random_clopen(rng, size))
    a = rng.randint(1, 3)
    c = rng.randint(0, 3)
    return AffineTail(a, rng.randint(0, size), c, rng.randint(0, size), rng.randint(0, 3))


def random_relation(rng: random.Random, size: int) -> AlphaRelation:
    """A relation whose diagonal and product factors are clopen."""
    return AlphaRelation(tuple(random_piece(rng, size) for _ in range(rng.randint(1, max(1, size // 2)))))


# ---------------------------------------------------------------- properties
# Each property takes (rng, size) and returns None on success or a dict describing the failure.


def prop_alpha_boolean_laws(rng, size):
    a, b, c = (random_alpha_set(rng, size) for _ in range(3))
    full, empty = AlphaSet.full(), AlphaSet.empty()
    laws = {
        "union associative": (a | b) | c == a | (b | c),
        "intersection associative": (a & b) & c == a & (b & c),
        "union commutative": a | b == b | a,
        "distributive": a & (b | c) == (a & b) | (a & c),
        "de morgan union": ~(a | b) == ~a & ~b,
        "de morgan intersection": ~(a & b) == ~a | ~b,
        "double complement": ~~a == a,
        "complement laws": a | ~a == full and a & ~a == empty,
        "difference": a - b == a & ~b,
        "absorption": a | (a & b) == a,
    }
    probe = list(range(a.fin_part.threshold + b.fin_part.threshold + 12)) + [INF]
    laws["pointwise union"] = all(((x in a) or (x in b)) == (x in (a | b)) for x in probe)
    laws["pointwise complement"] = all((x in a) != (x in ~a) for x in probe)
    bad = [k for k, ok in laws.items() if not ok]
    return None if not bad else {"laws": bad, "a": a.render(), "b": b.render(), "c": c.render()}


def prop_clopen_duality(rng, size):
    a = random_alpha_set(rng, size)
    checks = {
        "clopen iff closed both ways": a.is_clopen() == (a.is_closed() and a.complement().is_closed()),
        "interior below set": a.interior() <= a,
        "set below closure": a <= a.closure(),
        "interior open": a.interior().is_open(),
        "closure closed": a.closure().is_closed(),
        "closure dual to interior": a.closure() == a.complement().interior().complement(),
        "clopen fixed": not a.is_clopen() or (a.interior() == a == a.closure()),
    }
    bad = [k for k, ok in checks.items() if not ok]
    return None if not bad else {"laws": bad, "a": a.render()}


def prop_preimage_monotone(rng, size):
    r = random_relation(rng, size)
    u = random_alpha_set(rng, size)
    v = u | random_alpha_set(rng, size)
    bad = []
    if not r.preimage(u) <= r.preimage(v):
        bad.append("alpha preimage")
    if not r.image(u) <= r.image(v):
        bad.append("alpha image")
    probe = list(range(3 * size + 8)) + [INF]
    limit = probe[-2]
    pre = r.preimage(u)
    for x in [INF] + list(range(size)):
        hit = any(y in u and r.contains(x, y) for y in probe)
        row = r.row(x)
        bounded = row.fin_part.is_finite() and (row.fin_part.max() or 0) <= limit
        if (hit and x not in pre) or (bounded and not hit and x in pre):
            bad.append(f"alpha preimage at {x!r}")
            break
    base = random_ep(rng, size)
    bigger = base | random_ep(rng, size)
    for rel in BetaRelation:
        small, large = (beta_preimage(rel, BetaSet.closure_of(s)) for s in (base, bigger))
        if not small <= large:
            bad.append(f"beta {rel.value}")
        if any((n in small.base) != direct_preimage_member(rel, base, n) for n in range(2 * size + 4)):
            bad.append(f"beta {rel.value} pointwise")
    return None if not bad else {"laws": bad, "r": r.render(), "u": u.render(), "v": v.render(),
                                 "beta_base": base.render()}


CHAIN_DEPTH = 64


def prop_esakia_chain(rng, size):
    """Preimages of the clopen chain {n >= k} + inf decrease to the preimage of {inf}."""
    r = random_relation(rng, size)
    closed_rows = all(r.row(x).is_closed() for x in [INF] + list(range(sum(r.critical_bound()))))
    if not closed_rows:
        r = AlphaRelation(tuple(p for p in r.pieces if not isinstance(p, Product)))
    limit = r.preimage(AlphaSet.of([INF]))
    prev = None
    bad = []
    for k in range(CHAIN_DEPTH + 1):
        pk = r.preimage(AlphaSet.tail_from(k))
        if prev is not None and not pk <= prev:
            bad.append(f"chain not decreasing at {k}")
            break
        if not limit <= pk:
            bad.append(f"limit not below stage {k}")
            break
        prev = pk
    if esakia_limit(r) != limit:
        bad.append("symbolic limit differs from preimage of {inf}")
    # points outside the limit leave the chain once k passes their largest successor
    for x in range(2 * size):
        row = r.row(x)
        if x not in limit and row.fin_part.is_finite() and not row.is_empty():
            top = row.fin_part.max()
            if top < CHAIN_DEPTH and x in r.preimage(AlphaSet.tail_from(top + 1)):
                bad.append(f"point {x} stays in the chain")
    return None if not bad else {"laws": bad, "r": r.render()}


def prop_continuity_sound(rng, size):
    """Yes verdicts survive the bounded falsifier, and unions of Yes relations are Yes."""
    r = random_relation(rng, size)
    s = random_relation(rng, size)
    vr, vs = is_continuous(r), is_continuous(s)
    bad = []
    if vr.yes:
        for u in bounded_clopens(min(size, 6)):
            if not r.preimage(u).is_clopen():
                bad.append(f"preimage of {u.render()} not clopen")
                break
    if vr.no and vr.witness and vr.witness.get("kind") == "preimage-not-clopen":
        u = AlphaSet.parse(vr.witness["clopen"])
        if not u.is_clopen() or r.preimage(u).is_clopen():
            bad.append("witness does not refute")
    if vr.yes and vs.yes and not is_continuous(r | s).yes:
        bad.append("union of continuous relations not continuous")
    return None if not bad else {"laws": bad, "r": r.render(), "s": s.render()}


@dataclass(frozen=True)
class Suite:
    name: str
    prop: Callable
    weight: float = 1.0  # fraction of requested cases actually run


SUITES = (
    Suite("alpha_boolean_laws", prop_alpha_boolean_laws),
    Suite("clopen_closed_duality", prop_clopen_duality),
    Suite("preimage_monotonicity", prop_preimage_monotone),
    Suite("esakia_chains", prop_esakia_chain),
    Suite("continuity_soundness", prop_continuity_sound, weight=0.02),
)


# ---------------------------------------------------------------- runner


@dataclass
class SuiteResult:
    name: str
    cases: int
    passed: int
    failure: dict | None = None
    replayed: int = 0

    @property
    def ok(self) -> bool:
        return self.failure is None

    def to_dict(self) -> dict:
        return {"name": self.name, "cases": self.cases, "passed": self.passed,
                "replayed": self.replayed, "failure": self.failure}


def case_seed(seed: int, suite: str, index: int) -> int:
    return random.Random(f"{seed}:{suite}:{index}").getrandbits(63)


def run_case(prop: Callable, cseed: int, size: int = DEFAULT_SIZE):
    return prop(random.Random(cseed), size)


def shrink(prop: Callable, cseed: int, size: int) -> tuple[int, dict]:
    """Smallest size at which the same case seed still fails."""
    for s in range(0, size + 1):
        out = run_case(prop, cseed, s)
        if out is not None:
            return s, out
    return size, run_case(prop, cseed, size)


def load_regression_seeds() -> dict:
    text = resources.files("modalbench").joinpath("data/regression_seeds.json").read_text()
    return json.loads(text)


def record_failure(path: str, suite: str, cseed: int) -> None:
    """Append a failing case seed to a corpus file."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except FileNotFoundError:
        data = {}
    seeds = data.setdefault(suite, [])
    if cseed not in seeds:
        seeds.append(cseed)
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)


def run_suite(suite: Suite, seed: int, cases: int, corpus: dict | None = None) -> SuiteResult:
    n = 0 if cases <= 0 else max(1, round(cases * suite.weight))
    regression = list((corpus or {}).get(suite.name, []))
    result = SuiteResult(suite.name, n, 0, replayed=len(regression))
    plan = [(s, True) for s in regression] + [(case_seed(seed, suite.name, i), False) for i in range(n)]
    for cseed, is_regression in plan:
        out = run_case(suite.prop, cseed)
        if out is not None:
            size, detail = shrink(suite.prop, cseed, DEFAULT_SIZE)
            result.failure = {"case_seed": cseed, "regression": is_regression, "size": size, "detail": detail}
            return result
        if not is_regression:
            result.passed += 1
    return result


def run_all(seed: int = 0, cases: int = 1000, corpus: dict | None = None) -> list[SuiteResult]:
    if corpus is None:
        corpus = load_regression_seeds()
    return [run_suite(s, seed, cases, corpus) for s in SUITES]
