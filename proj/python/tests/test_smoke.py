import pytest

import padicdyn as pd


def test_parse_and_format():
    assert pd.parse_polynomial("1+4*x+4*x^3+2*x^5") == [1, 4, 0, 4, 0, 2]
    big = 10**40 + 1
    assert pd.parse_polynomial(f"{big}*x") == [0, big]
    with pytest.raises(pd.ParseError):
        pd.parse_polynomial("x+")
    assert "x" in repr(pd.Polynomial(2, "x+1"))


def test_expansions():
    f = pd.Polynomial(2, "x+1")
    assert f.vdp(count=4)["terms"] == ["1", "2", "2", "2"]
    g = pd.Polynomial(2, "2*x^2+3*x+1")
    assert g.mahler(count=4)["terms"] == ["1", "5", "4", "0"]
    assert pd.Polynomial(3, "0").mahler(count=3)["terms"] == ["0", "0", "0"]


def test_round_trip():
    f = pd.Polynomial(3, "1+4*x+4*x^3+2*x^5", depth=3)
    m = f.mahler()
    v = pd.mahler_to_vdp(m, 27)
    assert v == f.vdp()
    assert pd.vdp_to_mahler(v, 27)["terms"] == m["terms"]
    assert pd.series_values(m, 3) == f.values()


def test_counterexamples():
    f = pd.Polynomial(3, "1+4*x+4*x^3+2*x^5")
    c9 = f.transitive_mod(2)
    assert c9["transitive"]
    assert c9["cycles"][0] == ["0", "1", "2", "6", "7", "5", "3", "4", "8"]
    assert not f.transitive_mod(3)["transitive"]
    assert not f.ergodic()["ergodic"]
    assert f.ergodic(mu_override=2)["ergodic"]
    assert not pd.Polynomial(5, "x^5+1").oracle(2)["ergodic"]


def test_listed_cubics():
    for text in ["x+1", "5*x+3", "2*x^2+3*x+5", "2*x^2+7*x+7"]:
        f = pd.Polynomial(2, text)
        assert f.ud1()["pass"]
        assert f.ergodic()["ergodic"], text
    assert pd.larin_transitive_mod8(0, 0, 1, 1)["pass"]
    assert not pd.larin_transitive_mod8(0, 0, 1, 0)["pass"]


def test_mcri_and_predicate():
    m = pd.Polynomial(5, "x+1").mcri()
    assert m["redundancy_held"]
    assert len(set(m["product_per_s"])) == 1
    s = pd.Polynomial(3, "x^3+x+1", depth=3).mahler()
    assert pd.mahler_ud1_predicate(s)["pass"]
    assert pd.deg8_minimal_p3([1, 1, 0, 0, 0, 0, 0, 0, 0])["pass"]


def test_identities():
    (r,) = pd.verify_identity_suite("abc", p_max=23)
    assert r["identity"] == "abc"
    assert r["counterexamples"] == []
    assert int(r["params_checked"]) > 0
    with pytest.raises(pd.DomainError):
        pd.verify_identity_suite("nope")


def test_domain_errors():
    with pytest.raises(pd.DomainError):
        pd.Polynomial(4, "x").values()
    assert pd.mu_for_prime(3) == 3 and pd.mu_for_prime(7) == 2
