import random

import pytest

from modalbench.alpha import (
    INF,
    AffineTail,
    AlphaRelation,
    AlphaSet,
    Diagonal,
    FinitePairs,
    NotSubdiagonal,
    PreconditionError,
    Product,
    certify_counterexamples,
    esakia_limit,
    falsify_continuity,
    is_continuous,
    is_interior,
    parse_point,
    rel_equal,
    rel_subset,
    relation_D,
    relation_R,
    relation_S,
    subdiagonal_analysis,
)
from modalbench.evperiodic import EvPeriodicSet as EP
from modalbench.properties import random_alpha_set, random_relation

N = 40


def pts(s, n=N):
    return {x for x in list(range(n)) + [INF] if x in s}


def dense(r, n):
    return {(x, y) for x in list(range(n)) + [INF] for y in list(range(n)) + [INF] if r.contains(x, y)}


# ---------------------------------------------------------------- sets


def test_topology_of_sets():
    evens = AlphaSet.evens()
    assert evens.is_open() and not evens.is_closed() and not evens.is_clopen()
    assert AlphaSet.evens(with_inf=True).is_closed()
    assert not AlphaSet.evens(with_inf=True).is_open()
    assert AlphaSet.of([1, 2]).is_clopen()
    assert AlphaSet.tail_from(5).is_clopen()
    assert AlphaSet.of([INF]).is_closed() and not AlphaSet.of([INF]).is_open()
    assert AlphaSet.full().is_clopen() and AlphaSet.empty().is_clopen()


def test_interior_and_closure():
    s = AlphaSet.evens(with_inf=True)
    assert s.interior() == AlphaSet.evens()
    assert AlphaSet.evens().closure() == s
    assert AlphaSet.of([INF]).interior().is_empty()


def test_set_ops_pointwise():
    rng = random.Random(3)
    for _ in range(200):
        a, b = random_alpha_set(rng, 6), random_alpha_set(rng, 6)
        assert pts(a | b) == pts(a) | pts(b)
        assert pts(a & b) == pts(a) & pts(b)
        assert pts(a - b) == pts(a) - pts(b)
        assert AlphaSet.parse(a.render()) == a


def test_parse_point():
    assert parse_point("inf") is INF and parse_point("7") == 7
    with pytest.raises(ValueError):
        parse_point("-1")


def test_points_are_validated():
    with pytest.raises(ValueError):
        AlphaSet.of([-2])


# ---------------------------------------------------------------- relations


def test_counterexample_relations():
    r, s = relation_R(), relation_S()
    assert r.contains(4, 4) and r.contains(5, 7) and not r.contains(5, 5)
    assert s.contains(4, 6) and s.contains(5, 5)
    assert r.row(INF) == AlphaSet.of([INF])
    meet = r & s
    assert rel_equal(meet, AlphaRelation.pairs([(INF, INF)]))
    assert dense(meet, 60) == {(INF, INF)}


def test_intersection_matches_dense_oracle():
    rng = random.Random(5)
    for _ in range(150):
        r, s = random_relation(rng, 6), random_relation(rng, 6)
        assert dense(r & s, 30) == dense(r, 30) & dense(s, 30)
        assert dense(r | s, 30) == dense(r, 30) | dense(s, 30)
        assert dense(r.converse(), 30) == {(y, x) for x, y in dense(r, 30)}


def test_oracle_detects_a_wrong_intersection():
    # sanity check on the oracle itself: a deliberately wrong answer is caught
    r, s = relation_R(), relation_S()
    wrong = AlphaRelation.diagonal()
    assert dense(wrong, 30) != dense(r, 30) & dense(s, 30)


def test_preimage_matches_dense_oracle():
    rng = random.Random(6)
    for _ in range(150):
        r = random_relation(rng, 5)
        u = AlphaSet.of(x for x in range(8) if rng.random() < 0.5)
        pre = r.preimage(u)
        for x in list(range(25)) + [INF]:
            hit = any(r.contains(x, y) for y in pts(u, 8))
            assert (x in pre) == hit


def test_relation_parse_round_trip():
    rng = random.Random(7)
    for _ in range(100):
        r = random_relation(rng, 6)
        assert rel_equal(AlphaRelation.parse(r.render()), r)
    assert AlphaRelation.empty().render() == "empty"
    with pytest.raises(ValueError):
        AlphaRelation.parse("tail(1,2)")


def test_subset_exact():
    d = relation_D()
    assert rel_subset(AlphaRelation.diagonal(AlphaSet.evens()), d)
    assert not rel_subset(relation_R(), d)
    assert rel_subset(relation_R() & relation_S(), relation_R())
    # a product over two naturals is covered by the diagonal only on a single point
    assert rel_subset(AlphaRelation.of(Product(AlphaSet.of([3]), AlphaSet.of([3]))), d)
    assert not rel_subset(AlphaRelation.of(Product(AlphaSet.of([3]), AlphaSet.of([3, 4]))), d)


def test_tail_validation():
    with pytest.raises(ValueError):
        AffineTail(0, 0, 1, 0)


# ---------------------------------------------------------------- decisions


def test_continuity_of_standard_relations():
    for r in (relation_D(), relation_R(), relation_S()):
        assert is_continuous(r).yes
        assert is_interior(r).yes


def test_intersection_not_continuous():
    v = is_continuous(relation_R() & relation_S())
    assert v.no and v.witness["kind"] == "preimage-not-clopen"
    u = AlphaSet.parse(v.witness["clopen"])
    assert u.is_clopen()
    assert not (relation_R() & relation_S()).preimage(u).is_clopen()


def test_open_row_is_not_continuous():
    r = AlphaRelation.of(Product(AlphaSet.of([0]), AlphaSet.evens()))
    v = is_continuous(r)
    assert v.no and v.witness["kind"] == "row-not-closed"
    assert falsify_continuity(r, 3).no


def test_every_natural_to_inf_is_continuous():
    # preimage of {inf}-neighbourhoods is everything; of finite sets is empty
    r = AlphaRelation.of(Product(AlphaSet.full(), AlphaSet.of([INF])))
    assert is_continuous(r).yes


def test_continuous_but_not_interior():
    # 0 -> inf only: preimages are clopen, but the image of {0} is {inf}
    r = AlphaRelation.of(Product(AlphaSet.of([0]), AlphaSet.of([INF])))
    assert is_continuous(r).yes
    v = is_interior(r)
    assert v.no and v.witness["kind"] == "image-not-clopen"


def test_interior_requires_continuity():
    with pytest.raises(PreconditionError):
        is_interior(relation_R() & relation_S())


def test_verdict_serialises():
    d = is_continuous(relation_D()).to_dict()
    assert d["status"] == "yes"


def test_subdiagonal_analysis():
    rep = subdiagonal_analysis(relation_D() & relation_R())
    assert not rep.greatest_exists and rep.all_clopen_subsets_finite is True
    assert rep.support == AlphaSet.evens(with_inf=True)
    full = subdiagonal_analysis(relation_D())
    assert full.greatest_exists and full.greatest_clopen_subset == AlphaSet.full()
    with pytest.raises(NotSubdiagonal):
        subdiagonal_analysis(relation_R())


def test_esakia_limit_examples():
    assert esakia_limit(relation_R()) == AlphaSet.of([INF])
    r = AlphaRelation.of(Product(AlphaSet.of([1, 2]), AlphaSet.evens()))
    assert esakia_limit(r) == AlphaSet.of([1, 2])


def test_counterexample_certificate():
    cert = certify_counterexamples(200)
    assert cert.valid
    assert all(cert.conclusions.values())
    assert set(cert.conclusions) == {"CR_not_a_lattice", "CR_not_distributive", "IR_not_a_lattice",
                                     "IR_not_distributive", "R_meet_S_not_intersection"}
