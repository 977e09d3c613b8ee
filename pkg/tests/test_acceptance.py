"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""

import time

import pytest

from modalbench.algebra import all_unary_ops, enumerate_necessity_ops, is_necessity
from modalbench.alpha import (
    INF,
    AlphaRelation,
    certify_counterexamples,
    is_continuous,
    rel_equal,
    relation_D,
    relation_R,
    relation_S,
    subdiagonal_analysis,
)
from modalbench.beta import BetaRelation, BetaSet, beta_preimage, certify_meet_defect
from modalbench.duality import all_relations, box_to_relation, jt_antitone_check, relation_to_box
from modalbench.evperiodic import EvPeriodicSet
from modalbench.lattice import analyze, build_no_poset
from modalbench.properties import SUITES, load_regression_seeds, run_suite
from modalbench.tense import (
    enumerate_weaver_relations,
    equivalence_battery,
    left_adjoint,
    satisfies_adjunction,
    tense_necessity_ops,
    weaver_i,
    weaver_j,
    weaver_structural_facts,
)


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, elapsed, limit=None):
        budget = "" if limit is None else f" (limit {limit:g}s)"
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} in {elapsed:.2f}s{budget}")
        assert ok
        if limit is not None:
            assert elapsed < limit
    return emit


def test_criterion_1_enumeration_identity(report):
    t0 = time.perf_counter()
    small = {}
    for m in (0, 1, 2):
        literal = sorted(f.table for f in all_unary_ops(m) if is_necessity(f))
        fast = [f.table for f in enumerate_necessity_ops(m, "relations")]
        small[m] = literal == fast and len(literal) == 2 ** (m * m)
    t_small = time.perf_counter() - t0
    t1 = time.perf_counter()
    brute3 = [f.table for f in enumerate_necessity_ops(3, "brute")]
    fast3 = [f.table for f in enumerate_necessity_ops(3, "relations")]
    t_big = time.perf_counter() - t1
    ok = all(small.values()) and brute3 == fast3 and len(brute3) == 512
    report(1, "necessity operators number 2^(m*m), m <= 3", ok and t_small < 1, t_small + t_big, 600)
    assert t_small < 1


def test_criterion_2_round_trip(report):
    t0 = time.perf_counter()
    rels = list(all_relations(2))
    ops = enumerate_necessity_ops(2)
    ok = (len(rels) == len(ops) == 16
          and all(box_to_relation(relation_to_box(r)) == r for r in rels)
          and all(relation_to_box(box_to_relation(f)) == f for f in ops)
          and all(jt_antitone_check(m) for m in (0, 1, 2)))
    report(2, "relation/operator round trip and antitonicity", ok, time.perf_counter() - t0, 1)


def test_criterion_3_lattice_verdicts(report):
    t0 = time.perf_counter()
    v = analyze(build_no_poset(2))
    want = ("bounded", "lattice", "distributive_lattice", "frame_law", "coframe_law", "boolean",
            "atomic", "spatial", "zero_dimensional")
    ok = v.size == 16 and all(getattr(v, f) for f in want)
    report(3, "necessity operators at m=2 form a complete atomic boolean algebra", ok,
           time.perf_counter() - t0, 1)


def test_criterion_4_alpha_bundle(report):
    t0 = time.perf_counter()
    cert = certify_counterexamples(1000)
    d, r, s = relation_D(), relation_R(), relation_S()
    meet = r & s
    checks = {
        "bundle valid": cert.valid and all(cert.conclusions.values()),
        "R & S is {(inf, inf)}": rel_equal(meet, AlphaRelation.pairs([(INF, INF)]))
        and meet.pairs_within(1000) == {(INF, INF)},
        "R & S not continuous": is_continuous(meet).no,
        "no greatest continuous part of D & R": not subdiagonal_analysis(d & r).greatest_exists,
        "no greatest continuous part of D & S": not subdiagonal_analysis(d & s).greatest_exists,
        "dense agreement": any("dense truncation" in st.step and st.ok for st in cert.steps),
    }
    report(4, "continuity lattice counterexamples, truncation N=1000", all(checks.values()),
           time.perf_counter() - t0, 5)


def test_criterion_5_beta_defect(report):
    t0 = time.perf_counter()
    cert = certify_meet_defect()
    evens = EvPeriodicSet.residues(2, [0])
    pre = beta_preimage(BetaRelation.DIAG_MEET_CANDIDATE, BetaSet.closure_of(evens))
    continuity = [st for st in cert.steps if st.step.endswith("is continuous")]
    branches_covered = all(all(st.value[k] for k in ("empty", "finite", "infinite")) for st in continuity)
    ok = (cert.valid and len(continuity) == 2 and branches_covered
          and pre == BetaSet.plus_all_free(evens) and not pre.is_clopen()
          and cert.conclusions == {"meet_differs_from_intersection": True,
                                   "vietoris_intersection_not_continuous": True})
    report(5, "meet of continuous relations differs from intersection", ok, time.perf_counter() - t0, 1)


def test_criterion_6_tense_battery(report):
    t0 = time.perf_counter()
    ok = True
    for m in (0, 1, 2):
        for f in enumerate_necessity_ops(m):
            rep = equivalence_battery(f)
            ok &= rep.agree and rep.all_true and len(rep.conditions) == 5
            ok &= satisfies_adjunction(left_adjoint(f), f)
    report(6, "five characterisations agree and left adjoints exist, m <= 2", ok, time.perf_counter() - t0, 5)


def test_criterion_7_weaver(report):
    t0 = time.perf_counter()
    rels = enumerate_weaver_relations(2)
    ops = tense_necessity_ops(2)
    images = [weaver_i(f) for f in ops]
    ok = (len(rels) == 16 and sorted(r.code for r in images) == sorted(r.code for r in rels)
          and all(weaver_j(r) == f for f, r in zip(ops, images))
          and all(weaver_i(weaver_j(r)) == r for r in rels)
          and all((f <= g) == (a <= b) for f, a in zip(ops, images) for g, b in zip(ops, images))
          and all(all(weaver_structural_facts(r).values()) for r in rels))
    report(7, "16 meet-compatible relations at m=2, inverse monotone maps", ok, time.perf_counter() - t0, 30)


@pytest.mark.parametrize("suite", [s for s in SUITES if s.name != "continuity_soundness"], ids=lambda s: s.name)
def test_criterion_8_property_suites(report, suite):
    t0 = time.perf_counter()
    res = run_suite(suite, seed=0, cases=10_000, corpus=load_regression_seeds())
    ok = res.ok and res.passed == 10_000
    report(8, f"{suite.name}: 10000 cases, zero failures", ok, time.perf_counter() - t0)
    assert res.failure is None, res.failure
