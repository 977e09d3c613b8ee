import pytest

from modalbench.algebra import (
    AlgebraMismatch,
    AlgElement,
    FinBoolAlg,
    NotAnOperator,
    UnaryOpTable,
    all_unary_ops,
    bottom_necessity,
    complement,
    constant_bottom,
    constant_top,
    dual_op,
    enumerate_necessity_ops,
    enumerate_possibility_ops,
    identity_op,
    is_monotone,
    is_necessity,
    is_possibility,
    join,
    meet,
    pointwise_join,
    pointwise_meet,
)


def literal_is_necessity(t, m):
    """Definition straight from the laws: top fixed, binary meets preserved."""
    n = 1 << m
    top = n - 1
    return t[top] == top and all(t[a & b] == t[a] & t[b] for a in range(n) for b in range(n))


def test_algebra_basics():
    b = FinBoolAlg(2)
    assert b.size == 4
    assert b.top().code == 3 and b.bottom().code == 0
    assert b.atom(1).member_set == frozenset({1})
    assert [e.code for e in b.elements()] == [0, 1, 2, 3]


def test_atom_count_bounds():
    with pytest.raises(ValueError):
        FinBoolAlg(-1)
    with pytest.raises(ValueError):
        FinBoolAlg(25)
    with pytest.raises(ValueError):
        AlgElement.of(2, [2])


def test_element_operations():
    a = AlgElement.of(3, [0, 1])
    b = AlgElement.of(3, [1, 2])
    assert meet(a, b).member_set == {1}
    assert join(a, b).member_set == {0, 1, 2}
    assert complement(a).member_set == {2}
    assert meet(a, b) <= a and not a <= b


def test_mixed_algebras_rejected():
    with pytest.raises(AlgebraMismatch):
        meet(AlgElement(2, 1), AlgElement(3, 1))


def test_table_validation():
    with pytest.raises(ValueError):
        UnaryOpTable(1, (0, 1, 1))
    with pytest.raises(ValueError):
        UnaryOpTable(1, (0, 2))


def test_operator_application():
    f = identity_op(2)
    assert f(2) == 2
    assert f(AlgElement(2, 3)) == AlgElement(2, 3)
    with pytest.raises(AlgebraMismatch):
        f(AlgElement(3, 1))


def test_standard_necessity_operators():
    for m in range(4):
        assert is_necessity(identity_op(m))
        assert is_necessity(constant_top(m))
        assert is_necessity(bottom_necessity(m))
    assert not is_necessity(constant_bottom(1))  # top must be fixed
    assert is_possibility(constant_bottom(2))


def test_dual_swaps_laws():
    for f in enumerate_necessity_ops(2):
        assert is_possibility(dual_op(f))
        assert dual_op(dual_op(f)) == f


def test_non_monotone_map_is_not_necessity():
    f = UnaryOpTable(1, (1, 0))
    assert not is_monotone(f)
    assert not is_necessity(f)


@pytest.mark.parametrize("m", [0, 1, 2])
def test_enumeration_matches_literal_scan(m):
    literal = sorted(f.table for f in all_unary_ops(m) if literal_is_necessity(f.table, m))
    assert [f.table for f in enumerate_necessity_ops(m, "brute")] == literal
    assert [f.table for f in enumerate_necessity_ops(m, "relations")] == literal
    assert len(literal) == 2 ** (m * m)


def test_relation_path_counts_larger_m():
    assert len(enumerate_necessity_ops(3, "relations")) == 512
    assert len(enumerate_possibility_ops(2)) == 16


def test_enumeration_guards():
    with pytest.raises(ValueError):
        enumerate_necessity_ops(4, "brute")
    with pytest.raises(ValueError):
        enumerate_necessity_ops(2, "sideways")


def test_pointwise_meet_of_necessities():
    ops = enumerate_necessity_ops(2)
    for f in ops[:6]:
        for g in ops[-6:]:
            h = pointwise_meet(f, g)
            assert is_necessity(h) and h <= f and h <= g
    with pytest.raises(NotAnOperator):
        pointwise_meet(constant_bottom(1), identity_op(1))
    with pytest.raises(NotAnOperator):
        pointwise_join(identity_op(1), constant_top(1))


def test_render():
    assert identity_op(1).render() == "op[m=1]:0,1"
