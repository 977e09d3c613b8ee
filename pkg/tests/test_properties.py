import json
import random

from modalbench.properties import (
    SUITES,
    Suite,
    case_seed,
    load_regression_seeds,
    record_failure,
    run_all,
    run_case,
    run_suite,
    shrink,
)


def broken(rng, size):
    """Fails on every case with size >= 3, so shrinking must stop at 3."""
    rng.random()
    return {"size": size} if size >= 3 else None


def test_case_seeds_are_stable():
    assert case_seed(0, "x", 1) == case_seed(0, "x", 1)
    assert case_seed(0, "x", 1) != case_seed(0, "x", 2)
    assert case_seed(0, "x", 1) != case_seed(1, "x", 1)


def test_suites_pass_small_run():
    for res in run_all(seed=7, cases=60):
        assert res.ok, res.to_dict()


def test_replay_is_deterministic():
    s = SUITES[0]
    cs = case_seed(3, s.name, 0)
    assert run_case(s.prop, cs) == run_case(s.prop, cs)


def test_failure_is_reported_and_shrunk():
    res = run_suite(Suite("broken", broken), seed=0, cases=5)
    assert not res.ok
    assert res.failure["size"] == 3 and res.passed == 0
    assert shrink(broken, 1, 8)[0] == 3


def test_regression_corpus_replayed_first():
    corpus = load_regression_seeds()
    assert set(corpus) == {s.name for s in SUITES}
    res = run_suite(SUITES[1], seed=0, cases=10, corpus=corpus)
    assert res.replayed == len(corpus[SUITES[1].name]) and res.passed == 10


def test_record_failure(tmp_path):
    path = tmp_path / "seeds.json"
    record_failure(str(path), "s", 5)
    record_failure(str(path), "s", 5)
    record_failure(str(path), "t", 9)
    assert json.loads(path.read_text()) == {"s": [5], "t": [9]}


def test_mutated_property_is_caught():
    # a property that silently swaps union for intersection must fail quickly
    from modalbench.properties import random_alpha_set

    def wrong(rng, size):
        a, b = random_alpha_set(rng, size), random_alpha_set(rng, size)
        return None if (a | b) == (a & b) or a == b else {"a": a.render()}

    res = run_suite(Suite("wrong", wrong), seed=0, cases=50)
    assert not res.ok
