from modalbench.alpha import INF, relation_D, relation_R, relation_S
from modalbench.certificate import Certificate, check
from modalbench.truncation import compare, dense_diagonal, dense_r, dense_s


def test_certificate_validity_and_round_trip():
    steps = (check("a", "law a", True, {"x": 1}, 2), check("b", "law b", False, {}, None))
    cert = Certificate("demo", steps, {"c": False})
    assert not cert.valid
    assert [s.step for s in cert.failed_steps()] == ["b"]
    again = Certificate.from_dict(cert.to_dict())
    assert again == cert
    assert '"demo"' in cert.to_json()


def test_dense_relations_from_formulas():
    r = dense_r(10)
    assert (4, 4) in r and (5, 7) in r and (INF, INF) in r and (5, 5) not in r
    assert len(dense_diagonal(10)) == 12  # 0..10 and inf
    assert dense_r(50) & dense_s(50) == {(INF, INF)}


def test_symbolic_agrees_with_dense():
    for name, sym, den in (("D", relation_D(), dense_diagonal), ("R", relation_R(), dense_r),
                           ("S", relation_S(), dense_s)):
        agreement = compare(name, sym, den(120), 120)
        assert agreement.ok and agreement.checks > 0


def test_compare_detects_disagreement():
    agreement = compare("R-vs-S", relation_R(), dense_s(60), 60)
    assert not agreement.ok
