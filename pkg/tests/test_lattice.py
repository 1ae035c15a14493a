import itertools
import random

import pytest
from hypothesis import given, strategies as st

from surfkit.errors import DimensionError, LatticeIndexError, ParityError
from surfkit.lattice import (
    DivisorClass,
    SurfaceLattice,
    adjunction_genus,
    canonical_class,
    cremona_quadratic,
    halve,
    intersect,
    leading_minors,
)

C = DivisorClass.parse
X = SurfaceLattice(4)
K = canonical_class(X)


def test_intersect_examples():
    assert intersect(K, K) == 5
    L34, E4 = C("(1;0,0,1,1)"), C("(0;0,0,0,-1)")
    assert intersect(K + 2 * L34 + E4, L34) == -2
    assert intersect(C("(1;)"), C("(1;)")) == 1


def test_intersect_rank_mismatch():
    with pytest.raises(DimensionError):
        intersect(C("(1;0,0)"), C("(1;0,0,0)"))


def test_canonical_class():
    assert canonical_class(X) == C("(-3;-1,-1,-1,-1)")
    assert canonical_class(SurfaceLattice(0)) == DivisorClass(-3, ())


def test_lattice_basics():
    assert X.rank == 5
    assert X.gram_matrix()[0][0] == 1 and X.gram_matrix()[3][3] == -1
    assert X.exceptional(4) == C("(0;0,0,0,-1)")
    with pytest.raises(LatticeIndexError):
        X.exceptional(5)


def test_parse_and_print_roundtrip():
    D = C("(5;3,3,3,-1)")
    assert str(D) == "(5;3,3,3,-1)"
    assert C("5; 3 3 3 -1") == D
    with pytest.raises(ValueError):
        C("five")


def test_adjunction_examples():
    assert adjunction_genus(C("(0;0,0,0,-1)")) == 0
    assert adjunction_genus(C("(2;1,1,1,0)")) == 0
    D2 = C("(5;3,3,3,-1)")
    assert intersect(D2, D2) == -3 and intersect(K, D2) == -7
    assert adjunction_genus(D2) == -4


def test_halve():
    assert halve(C("(6;2,2,2,0)")) == C("(3;1,1,1,0)")
    assert halve(X.zero()) == X.zero()
    with pytest.raises(ParityError):
        halve(C("(3;1,1,1,3)"))


def test_cremona_examples():
    b = (1, 2, 3)
    assert cremona_quadratic(C("(5;3,3,3,-1)"), b) == C("(1;-1,-1,-1,-1)")
    assert cremona_quadratic(C("(1;1,1,0,0)"), b) == C("(0;0,0,-1,0)")
    assert cremona_quadratic(C("(3;1,1,1,3)"), b) == C("(3;1,1,1,3)")


@pytest.mark.parametrize("base", [(1, 2), (1, 1, 2), (0, 1, 2), (2, 3, 5)])
def test_cremona_bad_base(base):
    with pytest.raises(LatticeIndexError):
        cremona_quadratic(K, base)


def _rand_class(rng, n=4, r=6):
    return DivisorClass(rng.randint(-r, r), tuple(rng.randint(-r, r) for _ in range(n)))


def test_bilinear_symmetric_1000_triples():
    rng = random.Random(20240611)
    for _ in range(1000):
        a, b, c = (_rand_class(rng) for _ in range(3))
        s, t = rng.randint(-5, 5), rng.randint(-5, 5)
        assert intersect(a, b) == intersect(b, a)
        assert intersect(s * a + t * b, c) == s * intersect(a, c) + t * intersect(b, c)


@pytest.mark.parametrize("n", range(0, 9))
def test_signature_from_leading_minors(n):
    # Sylvester: sign changes in 1, m1, m2, ... count negative eigenvalues
    minors = [1] + leading_minors(SurfaceLattice(n).gram_matrix())
    changes = sum(1 for a, b in zip(minors, minors[1:]) if a * b < 0)
    assert changes == n
    assert (n + 1) - changes == 1


BOX = [
    DivisorClass(d, m)
    for d in range(-6, 7)
    for m in itertools.product(range(-4, 5), repeat=4)
]


def test_parity_over_box():
    assert all(intersect(D, D + K) % 2 == 0 for D in BOX)


def test_cremona_involution_isometry_fixes_K_over_box():
    b = (1, 2, 3)
    assert cremona_quadratic(K, b) == K
    images = {}
    for D in BOX:
        img = cremona_quadratic(D, b)
        assert cremona_quadratic(img, b) == D
        images[D] = img
    rng = random.Random(7)
    for _ in range(2000):
        a, c = rng.choice(BOX), rng.choice(BOX)
        assert intersect(images[a], images[c]) == intersect(a, c)


@given(
    st.integers(-50, 50),
    st.lists(st.integers(-50, 50), min_size=0, max_size=8),
)
def test_halve_of_double(d, m):
    D = DivisorClass(d, tuple(m))
    assert halve(2 * D) == D


@given(st.permutations([1, 2, 3, 4]))
def test_cremona_any_base_is_isometry(perm):
    base = tuple(perm[:3])
    rng = random.Random(sum(base))
    for _ in range(50):
        a, c = _rand_class(rng), _rand_class(rng)
        assert intersect(cremona_quadratic(a, base), cremona_quadratic(c, base)) == intersect(a, c)
