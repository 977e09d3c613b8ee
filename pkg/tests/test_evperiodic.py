import random

import pytest

from modalbench.evperiodic import EvPeriodicSet as EP

HORIZON = 200


def members(s, n=HORIZON):
    return {x for x in range(n) if x in s}


def rand_set(rng):
    t, p = rng.randint(0, 6), rng.randint(1, 5)
    return EP(tuple(rng.random() < 0.5 for _ in range(t)), tuple(rng.random() < 0.5 for _ in range(p)))


def test_constructors():
    assert members(EP.finite([3, 1]), 10) == {1, 3}
    assert members(EP.at_least(4), 8) == {4, 5, 6, 7}
    assert members(EP.residues(3, [1]), 10) == {1, 4, 7}
    assert members(EP.cofinite([0, 2]), 5) == {1, 3, 4}
    assert members(EP.progression(3, 2), 12) == {2, 5, 8, 11}
    assert EP.empty().is_empty() and EP.naturals().is_full()


def test_canonical_form_is_semantic():
    a = EP((True, False), (True, False))
    b = EP((), (True, False, True, False))
    assert a == b and hash(a) == hash(b)
    assert a.period == 2


def test_min_max_finite():
    s = EP.finite([2, 9])
    assert s.min() == 2 and s.max() == 9 and s.is_finite()
    with pytest.raises(ValueError):
        EP.at_least(3).max()
    assert EP.empty().min() is None
    assert EP.at_least(3).is_cofinite()


def test_negative_not_member():
    assert -1 not in EP.naturals()
    assert "x" not in EP.naturals()


def test_boolean_ops_match_pointwise():
    rng = random.Random(11)
    for _ in range(300):
        a, b = rand_set(rng), rand_set(rng)
        ma, mb = members(a), members(b)
        assert members(a | b) == ma | mb
        assert members(a & b) == ma & mb
        assert members(a - b) == ma - mb
        assert members(a ^ b) == ma ^ mb
        assert members(~a) == set(range(HORIZON)) - ma
        assert (a <= b) == (members(a, 400) <= members(b, 400))


def test_affine_maps_match_pointwise():
    rng = random.Random(12)
    for _ in range(200):
        s = rand_set(rng)
        a, b, start = rng.randint(0, 3), rng.randint(0, 4), rng.randint(0, 3)
        pre = s.affine_preimage(a, b, start)
        assert members(pre, 60) == {n for n in range(60) if n >= start and a * n + b in s}
        c, d = rng.randint(1, 3), rng.randint(0, 4)
        img = s.affine_image(c, d)
        assert members(img, 150) == {c * n + d for n in range(150) if n in s and c * n + d < 150}


def test_render_round_trip():
    rng = random.Random(13)
    for _ in range(100):
        s = rand_set(rng)
        assert EP.parse(s.render()) == s
    assert EP.residues(2, [0]).render() == ";2:10"


@pytest.mark.parametrize("text", ["", "10", "1;2:1", "1;1:2", "a;1:1"])
def test_parse_errors(text):
    with pytest.raises(ValueError):
        EP.parse(text)
