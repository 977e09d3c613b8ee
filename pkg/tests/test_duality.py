import pytest

from modalbench.algebra import (
    NotAnOperator,
    UnaryOpTable,
    bottom_necessity,
    constant_top,
    dual_op,
    enumerate_necessity_ops,
    identity_op,
)
from modalbench.duality import (
    FiniteRelation,
    VietorisSpace,
    all_relations,
    box_to_relation,
    box_to_relation_literal,
    jt_antitone_check,
    membership_compose,
    relation_to_box,
    relation_to_diamond,
    rho_is_unique,
    vietoris_rho,
    vietoris_subbasis,
)


def test_relation_codes_round_trip():
    for r in all_relations(2):
        assert FiniteRelation.from_code(2, r.code) == r
    assert len(list(all_relations(2))) == 16


def test_pair_bounds():
    with pytest.raises(ValueError):
        FiniteRelation(2, {(0, 2)})


def test_box_of_simple_relations():
    assert relation_to_box(FiniteRelation(2)) == constant_top(2)
    assert relation_to_box(FiniteRelation.full(2)) == bottom_necessity(2)
    assert relation_to_box(FiniteRelation.identity(3)) == identity_op(3)


def test_box_formula_by_hand():
    # 0 -> 1 only; point 1 has no successors
    r = FiniteRelation(2, {(0, 1)})
    box = relation_to_box(r)
    # U = {0}: point 0 needs {1} inside U, fails; point 1 is vacuous
    assert box(0b01) == 0b10
    assert box(0b10) == 0b11
    assert relation_to_diamond(r)(0b10) == 0b01


def test_diamond_is_dual_of_box():
    for r in all_relations(2):
        assert relation_to_diamond(r) == dual_op(relation_to_box(r))


@pytest.mark.parametrize("m", [0, 1, 2])
def test_round_trips(m):
    for r in all_relations(m):
        assert box_to_relation(relation_to_box(r)) == r
    for f in enumerate_necessity_ops(m):
        assert relation_to_box(box_to_relation(f)) == f
        assert box_to_relation(f) == box_to_relation_literal(f)


def test_round_trip_m3_relations():
    for code in range(0, 1 << 9, 37):
        r = FiniteRelation.from_code(3, code)
        assert box_to_relation(relation_to_box(r)) == r


def test_box_to_relation_rejects_non_operator():
    with pytest.raises(NotAnOperator):
        box_to_relation(UnaryOpTable(1, (1, 0)))


def test_antitone():
    assert jt_antitone_check(0)
    assert jt_antitone_check(1)
    assert jt_antitone_check(2)
    assert jt_antitone_check(3, samples=300)
    with pytest.raises(ValueError):
        jt_antitone_check(4)


def test_vietoris_subbasis():
    box, diamond = vietoris_subbasis(0b01, 2)
    assert box == frozenset({0, 1})
    assert diamond == frozenset({1, 3})
    assert VietorisSpace(2).complement_points(box) == frozenset({2, 3})


def test_vietoris_rho_recovers_relation():
    for r in all_relations(2):
        rho = vietoris_rho(r)
        assert membership_compose(rho, 2) == r
        assert rho_is_unique(r)


def test_relation_algebra_ops():
    r = FiniteRelation(2, {(0, 1)})
    s = FiniteRelation(2, {(1, 1)})
    assert (r | s).pairs == {(0, 1), (1, 1)}
    assert (r & s).pairs == frozenset()
    assert r.converse().pairs == {(1, 0)}
    assert r.complement().complement() == r
    assert r <= r | s
    assert r.render() == "{(0,1)}"
