import itertools
import warnings

import pytest

from surfkit import bidouble as bd
from surfkit import delpezzo as dp
from surfkit.errors import InvalidBranchError, NotBidoubleError
from surfkit.lattice import DivisorClass, SurfaceLattice, canonical_class, cremona_quadratic, intersect

C = DivisorClass.parse
K = canonical_class(SurfaceLattice(4))


def test_case_i_building_data():
    data = bd.case_i()
    assert data.building == (C("(3;1,1,1,0)"), C("(2;0,0,0,2)"), C("(4;2,2,2,1)"))


def test_case_ii_building_data():
    assert bd.case_ii().L2 == C("(2;0,0,0,1)")


def test_zero_data():
    z = SurfaceLattice(4).zero()
    data = bd.derive_building_data(z, z, z)
    assert data.building == (z, z, z)
    with pytest.warns(UserWarning, match="q = -3"):
        inv = bd.invariants(data)
    assert inv.as_tuple() == (20, 4, 0, -3)
    assert inv.warnings


def test_parity_failure():
    with pytest.raises(NotBidoubleError):
        bd.derive_building_data(C("(1;0,0,0,0)"), C("(0;0,0,0,0)"), C("(0;0,0,0,0)"))


@pytest.mark.parametrize("data", [bd.case_i(), bd.case_ii()], ids=["I", "II"])
def test_invariants(data):
    inv = bd.invariants(data)
    assert inv.as_tuple() == (5, 1, 1, 1)
    assert inv.q == inv.pg - inv.chi + 1
    assert bd.canonical_image_class(data) == -K


def test_building_identities():
    for data in (bd.case_i(), bd.case_ii()):
        D, L = data.branch, data.building
        for i, j, k in itertools.permutations(range(3)):
            assert 2 * L[i] == D[j] + D[k]
            assert D[k] + L[k] == L[i] + L[j]


def test_cremona_equivariance():
    image = [cremona_quadratic(D, (1, 2, 3)) for D in bd.CASE_I_BRANCH]
    D1p, D2p, D3p = bd.CASE_II_BRANCH
    assert image == [D1p, D3p, D2p]
    assert bd.invariants(bd.derive_building_data(*image)).as_tuple() == bd.invariants(bd.case_i()).as_tuple()


@pytest.mark.parametrize("perm", list(itertools.permutations(range(3))))
def test_relabeling(perm):
    data = bd.case_i()
    re = data.relabel(perm)
    assert re.building == tuple(data.building[p] for p in perm)
    a, b = bd.invariants(data), bd.invariants(re)
    assert (a.K2, a.chi, a.pg) == (b.K2, b.chi, b.pg)


def test_fiber_genus():
    assert bd.fiber_genus_by_hurwitz(C("(1;0,0,0,1)"), C("(5;3,3,3,-1)")) == 2
    assert intersect(C("(1;0,0,0,1)"), C("(5;3,3,3,-1)")) == 6
    assert bd.genus_from_branch_degree(2) == 0
    assert bd.genus_from_branch_degree(4) == 1
    inv = bd.invariants(bd.case_i(), bd.ALBANESE_FIBER)
    assert inv.fiber_genus == 2


@pytest.mark.parametrize("b", [3, -2, 0])
def test_fiber_genus_invalid(b):
    with pytest.raises(InvalidBranchError):
        bd.genus_from_branch_degree(b)


def test_fiber_must_be_rational():
    with pytest.raises(InvalidBranchError):
        bd.fiber_genus_by_hurwitz(-K, C("(5;3,3,3,-1)"))


def test_family_dimension():
    assert bd.family_dimension_count(bd.CASE_I_PARAMETERS) == 3
    assert bd.family_dimension_count([]) == 0
    assert bd.family_dimension_count([("conic", 2), ("line", 1), ("extra", 4)]) == 7
    with pytest.raises(ValueError):
        bd.family_dimension_count([("bad", -1)])


def test_restriction_table_case_i():
    rows = dp.restriction_table(bd.case_i_restriction_branches())
    sums = {}
    for r in rows:
        sums[r.branch] = sums.get(r.branch, 0) + r.h0
        assert r.degree_D_minus_L < 0
    assert sums == {"D1": 0, "D2": 2, "D3": 1}
    by_name = {(r.branch, r.component): r.degree_D for r in rows}
    assert by_name[("D2", "Q")] == 1 and by_name[("D3", "C")] == 0 and by_name[("D1", "L14")] == -1
