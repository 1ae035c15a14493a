import pytest
from hypothesis import given, strategies as st

from surfkit import ellbundle as eb
from surfkit.errors import RuleInconsistencyError

G = eb.SHIPPED_GROUP
Z = G.zero()


def line(d, lab="0"):
    return eb.Line(eb.LineBundleClass(d, G.parse(lab)))


@pytest.mark.parametrize(
    "summand, expected",
    [
        (line(3), (3, 3)),
        (line(-1), (0, 0)),
        (line(0), (1, 1)),
        (line(0, "t1"), (0, 0)),
        (line(0, "t1 + t2"), (0, 0)),
        (line(0, "g0"), (0, 1)),
        (eb.Indec(2, 1, Z), (1, 1)),
        (eb.Indec(2, 0, Z), (0, 1)),
        (eb.Indec(3, -2, Z), (0, 0)),
    ],
)
def test_summand_h0(summand, expected):
    assert summand.h0() == expected


def test_group_arithmetic():
    t1 = G.parse("t1")
    assert (t1 + t1).is_zero()
    assert str(G.parse("2*g0 - t1")) == "2*g0 + t1"
    assert str(-G.parse("g0")) == "-g0"
    with pytest.raises(KeyError):
        G.parse("t3")
    with pytest.raises(ValueError):
        G.parse("t1 ? t2")
    assert len(G.small_elements(0)) == 4
    assert len(G.small_elements(1)) == 12


def test_additivity():
    a = eb.EllBundle([line(2), eb.Indec(2, 0, Z)])
    b = eb.EllBundle([line(0, "t2")])
    assert eb.h0_interval(a + b) == (2, 3)
    assert (a + b).rank == 4 and (a + b).degree == 2


def test_twist_and_dual_inverse():
    V = eb.EllBundle([line(2, "t1"), eb.Indec(2, 3, G.parse("g0"))])
    L = eb.LineBundleClass(-2, G.parse("g0 + t2"))
    assert eb.twist(eb.twist(V, L), L.dual()) == V
    assert eb.dual(eb.dual(V)) == V
    assert eb.twist(V, L).degree == V.degree + V.rank * L.degree


@given(st.integers(-4, 4), st.sampled_from(G.small_elements(1)), st.integers(2, 3))
def test_riemann_roch_consistency(d, lab, r):
    V = eb.EllBundle([eb.Line(eb.LineBundleClass(d, lab)), eb.Indec(r, d, lab)])
    lo, hi = eb.riemann_roch_defect(V)
    assert hi >= 0
    # on a genus-one curve h0 - h1 = deg and h1(V) = h0(V^dual)
    dlo, dhi = eb.h0_interval(eb.dual(V))
    assert lo <= dhi and dlo <= hi


def test_inconsistent_rule_detected():
    class Broken(eb.Line):
        def h0(self):
            return (0, 0)

    with pytest.raises(RuleInconsistencyError):
        eb.riemann_roch_defect(eb.EllBundle([Broken(eb.LineBundleClass(3, Z))]))


def test_enumeration_threshold_three():
    cands = eb.enumerate_splittings()
    survivors = eb.surviving_splittings(cands)
    assert [str(c.bundle) for c in survivors] == ["Line(2, 0) + Line(2, 0) + Line(2, 0)"]
    assert {c.case for c in cands} == {"i", "ii", "iii"}
    assert all(c.twisted.degree == 0 for c in cands)


def test_enumeration_threshold_four():
    assert eb.surviving_splittings(eb.enumerate_splittings(threshold=4)) == []


def test_free_labels_are_undecided():
    cands = eb.enumerate_splittings(pic0_choices=[Z, G.parse("g0")])
    und = [c for c in cands if c.verdict == eb.UNDECIDED]
    assert und and all(any(getattr(s, "cls", None) and s.cls.pic0.involves_free() for s in c.bundle.summands) for c in und)
    assert len(eb.surviving_splittings(cands)) == 1


def test_enumeration_preconditions():
    with pytest.raises(NotImplementedError):
        eb.enumerate_splittings(rank=2)
    with pytest.raises(ValueError):
        eb.enumerate_splittings(degree=7)


def test_parse_summand():
    assert eb.parse_summand("line deg=2 pic0=t1") == line(2, "t1")
    assert eb.parse_summand("indec rank=2 deg=4") == eb.Indec(2, 4, Z)
    for bad in ("", "plane deg=1", "line pic0=t1", "line deg=1 rank=2", "line deg"):
        with pytest.raises(ValueError):
            eb.parse_summand(bad)
    with pytest.raises(ValueError):
        eb.Indec(1, 0, Z)
