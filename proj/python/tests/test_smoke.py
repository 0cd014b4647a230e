import pytest

import octic


def test_census_generic_and_t0():
    c = octic.census("5")
    assert c["lines"] == {2: 25, 3: 1}
    assert c["points"][(4, False)] == 6
    assert c["points"][(4, True)] == 5
    assert octic.census("0")["fivefold_points"] == [("(0:0:0:1)", [1, 2, 3, 4, 5])]


def test_degenerate_parameters():
    d = octic.degenerate_parameters()
    assert d["values"] == ["0", "1", "2"]
    assert d["infinity"]


def test_j_and_pipeline():
    assert octic.j_from_lambda("2") == "1728"
    r = octic.pipeline(7, "7")
    assert r["ok"]
    assert r["singular_line_charts"] == ["T=1"]
    assert r["pinch_form_degree"] == 4
    assert r["j"] == str(1728 % 7)
    with pytest.raises(octic.OcticError):
        octic.pipeline(5, "5")


def test_counts_match_oracle():
    for t in ("0", "5", "7"):
        assert octic.count_octic(7, 1, t) == octic.count_octic(7, 1, t, oracle=True)
    assert octic.count_legendre("2", 7) == 8


def test_zeta_roundtrip():
    n1 = octic.count_legendre("2", 11)
    num, den = octic.zeta_elliptic(n1, 11)
    assert num == [1, 0, 11]
    assert octic.predict_count(num, den, 11, 2) == octic.count_legendre("2", 11, 2)
    assert octic.weight_buckets(num, den, 11) == {1: 2}
    assert octic.obstructed([1, 0, 686, 0, 117649], [1, 0, 343], 7)


def test_specseq_h3():
    assert octic.h3_values(0) == {4}


def test_run_report():
    rep = octic.run("specseq")
    assert rep["overall"] == "pass"
    with pytest.raises(octic.UsageError):
        octic.run("verify-all", prime=5)
