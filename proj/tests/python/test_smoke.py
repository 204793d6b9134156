import grasspan as gp


def test_parse_and_arithmetic():
    f = gp.parse("x1*x2 - x2*x1", p=3)
    assert f == gp.commutator(gp.parse("x1", p=3), gp.parse("x2", p=3))
    assert str(gp.parse("4*x1", p=3)) == "x1"
    assert (f - f).is_zero()


def test_roundtrip():
    f = gp.parse("x2*x1 + 2*x1 + 1", p=5)
    assert gp.parse(str(f), p=5) == f


def test_nf():
    out = gp.nf(gp.parse("x1^3", p=3), modulus="tg0")
    assert out["terms"] == []
    t3 = gp.nf(gp.parse("x2*x1", p=3))
    assert len(t3["terms"]) == 2


def test_member_flagship():
    w1 = gp.w(3, 1)
    rep = gp.member(w1, "S2+TG0")
    assert rep["verdict"] == "not-member"
    assert rep["exact"] is True

    inside = gp.member(gp.parse("[x1,x2]*x1", p=3), "S2+T3")
    assert inside["verdict"] == "member"
    assert inside["certificate"]


def test_grassmann_witness():
    w1 = gp.w(3, 1)
    out = gp.evaluate(w1, {1: "e1+e2*e3+e4*e5", 2: "e6+e7*e8+e9*e10"}, rank=10)
    assert out["central"] is True
    assert out["zero"] is False
    assert out["value"] == "2*e1*e2*e3*e4*e5*e6*e7*e8*e9*e10"


def test_check_identity():
    cube = gp.parse("x1^3", p=3, mode="nonunitary")
    rep = gp.check_identity(cube, rank=8, trials=50, seed=7)
    assert rep["holds"] is True


def test_verify_suite():
    rep = gp.verify("lemma2.4", p=3)
    assert rep["pass"] is True
    assert rep["lemma"] == "lemma2.4"
    assert gp.verify("lemma2.5", p=5)["pass"] is True


def test_families():
    assert len(gp.enumerate_W(3, 2, 4)) == 7
    assert str(gp.phi_prime(3, 1, "as_printed")) == "x1^2*x2*x1*x2^2"
    assert gp.w(3, 0).is_zero() is False
