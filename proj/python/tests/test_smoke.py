import pytest

import adelix


def test_tame_symbol_reference_value():
    F5 = adelix.prime_field(5)
    assert str(adelix.tame(F5, "t", "t")) == "4"


def test_boundary_inverts_tame():
    F7 = adelix.prime_field(7)
    for a, b in [("3+t", "t"), ("t^2+2*t^3", "5/t"), ("1+t", "2+t^2")]:
        assert (adelix.boundary(F7, a, b) * adelix.tame(F7, a, b)).is_one()


def test_kato_and_padic_boundary():
    Q5 = adelix.padic(5, 5)
    k = adelix.kato(Q5, "3+5*t", "t", 4)
    d = adelix.boundary_padic(Q5, "3+5*t", "t", 4)
    prod = k * d
    assert prod.valuation() == 0
    assert prod.unit_part(4).is_one()


def test_bundle_cohomology():
    c = adelix.bundle_cohomology(adelix.rationals(), [["t^-2"]])
    assert (c["h0"]["rank"], c["h1"]["rank"], c["euler"]) == (3, 0, 3)
    assert adelix.splitting_type(adelix.prime_field(5), [["t^2", "0"], ["0", "t^-1"]]) == [2, -1]


def test_reciprocity_laws():
    assert adelix.reciprocity_vertical("(t^2+2)/(3*t-1)", "5*t^3+t+7", 5)["passed"]
    assert adelix.reciprocity_point("t+1", "5*t+2", "(5, t)")["passed"]
    w = adelix.weil_reciprocity("t^2+1", "t-3", 5)
    assert w["passed"] and w["product"] == "1"


def test_deligne_and_rr():
    r = adelix.deligne_compare("H0", "H5")
    assert r["passed"]
    assert set(r["pairing_side"]) == {"5"}
    rr = adelix.rr_check("2*H0")
    assert rr["passed"] and rr["lhs_trivial"] and rr["rhs_trivial"]


def test_group_algebras():
    assert adelix.wedderburn("S3")["dimensions"] == [1, 1, 4]
    assert adelix.group_det("C2", [[["2", "1"]]]) == ["3", "1"]
    with pytest.raises(adelix.DoesNotSplit):
        adelix.wedderburn("Q8")


def test_errors_share_a_base_class():
    with pytest.raises(adelix.Error):
        adelix.tame(adelix.prime_field(5), "t+", "t")
    with pytest.raises(adelix.ParseError):
        adelix.wedderburn("nonsense")
