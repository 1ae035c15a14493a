import itertools

import pytest

from surfkit import delpezzo as dp
from surfkit.errors import (
    NotRationalError,
    OracleInapplicableError,
    UnsupportedSurfaceError,
)
from surfkit.lattice import DivisorClass, SurfaceLattice, adjunction_genus, canonical_class, cremona_quadratic, intersect

C = DivisorClass.parse
X = SurfaceLattice(4)
K = canonical_class(X)


def test_negative_curves():
    curves = dp.negative_curves(X)
    assert len(curves) == 10
    assert C("(0;0,0,0,-1)") in curves and C("(1;1,1,0,0)") in curves
    for c in curves:
        assert intersect(c, c) == -1 and adjunction_genus(c) == 0 and intersect(-K, c) == 1


def test_negative_curves_match_brute_force():
    assert list(dp.negative_curves(X)) == dp.brute_force_negative_classes(X)


@pytest.mark.parametrize("n", [0, 3, 5])
def test_negative_curves_unsupported(n):
    with pytest.raises(UnsupportedSurfaceError):
        dp.negative_curves(SurfaceLattice(n))


def test_negative_curves_cremona_stable():
    curves = set(dp.negative_curves(X))
    assert {cremona_quadratic(c, (1, 2, 3)) for c in curves} == curves


def test_printed_class_is_not_effective():
    ok, trace = dp.is_effective(C("(3;3,3,3,-3)"))
    assert not ok
    assert trace.peeled == [(C("(0;0,0,0,-1)"), 3)]
    assert trace.residual == C("(3;3,3,3,0)")
    assert intersect(-K, trace.residual) == 0


def test_effectivity_examples():
    assert dp.is_effective(C("(0;0,0,0,-1)"))[0]
    assert not dp.is_effective(C("(1;1,1,1,0)"))[0]


def test_h0_examples():
    assert dp.h0(C("(5;3,3,3,-1)")) == 3
    assert dp.h0(X.zero()) == 1
    assert dp.h0(-K) == 6


def test_d2_trace_fixed_part():
    trace = dp.peel(C("(5;3,3,3,-1)"))
    names = dp.curve_names()
    assert sorted(names[c] for c, _ in trace.peeled) == ["E4", "L12", "L13", "L23"]
    assert trace.residual == C("(2;1,1,1,0)")
    assert "E4" in trace.render()


def test_h0_pencil_residual():
    # R^2 = 0 residuals are multiples of a conic class
    assert dp.h0(C("(1;1,0,0,0)")) == 2
    assert dp.h0(C("(3;3,0,0,0)")) == 4
    assert dp.h0(C("(4;2,2,2,2)")) == 3


def test_oracle_examples():
    assert dp.h0_interpolation_oracle(C("(1;1,1,0,0)"), 0) == 1
    assert dp.h0_interpolation_oracle(C("(3;1,1,1,0)"), 0) == 7
    assert dp.h0_interpolation_oracle(C("(2;1,1,1,1)"), 0) == 2
    assert dp.h0_interpolation_oracle(C("(-1;0,0,0,0)"), 0) == 0


def test_oracle_rejects_negative_multiplicity():
    with pytest.raises(OracleInapplicableError):
        dp.h0_interpolation_oracle(C("(5;3,3,3,-1)"), 0)


@pytest.mark.parametrize("seed", range(5))
def test_general_position_points(seed):
    pts = dp.general_position_points(seed)
    assert len(set(pts)) == 4
    for a, b, c in itertools.combinations(pts, 3):
        assert (b[0] - a[0]) * (c[1] - a[1]) != (b[1] - a[1]) * (c[0] - a[0])


OR_BOX = [DivisorClass(d, m) for d in range(-6, 7) for m in itertools.product(range(0, 5), repeat=4)]


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_oracle_matches_peel_on_full_box(seed):
    bad = [D for D in OR_BOX if dp.h0(D) != dp.h0_interpolation_oracle(D, seed)]
    assert bad == []


def test_effectivity_monotone_and_reconstruction():
    curves = list(dp.negative_curves(X))
    box = [DivisorClass(d, m) for d in range(-2, 5) for m in itertools.product(range(-2, 3), repeat=4)]
    for D in box:
        ok, trace = dp.is_effective(D)
        assert trace.residual + trace.fixed_part == D
        R = D
        for c, pairing in trace.steps:
            assert intersect(R, c) == pairing < 0
            R = R - c
        if ok:
            for c in curves:
                assert dp.is_effective(D + c)[0]


def test_restriction_examples():
    assert dp.restriction_degree(C("(5;3,3,3,-1)"), C("(2;1,1,1,0)")) == 1
    assert dp.restriction_degree(C("(1;-1,-1,-1,1)"), C("(1;0,0,0,1)")) == 0
    assert dp.restriction_degree(C("(3;1,1,1,3)"), C("(1;1,0,0,1)")) == -1
    assert dp.h0_on_rational_curve(-1) == 0 and dp.h0_on_rational_curve(1) == 2
    with pytest.raises(NotRationalError):
        dp.restriction_degree(K, -K)
