import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from surfkit.errors import ExpressionSyntaxError, PreconditionError, SymbolError
from surfkit.symalg import (
    AssumptionSet,
    Poly,
    apply_ring_map,
    determinant,
    differentiate,
    evaluate,
    jacobian,
    parse_poly,
    rank_lower_bound_certificate,
    substitute,
)

P = parse_poly
F = "a1^2*y1^2 + a2^2*y2^2 + a3*y3^2"
G = "b1*y1^3 + b2*y2^3 + b3*y1*y2*y3"
INVOLUTION = {"y1": P("y2"), "y2": P("y1"), "y3": P("-y3"), "a1": P("a2"), "a2": P("a1"),
              "b1": P("b2"), "b2": P("b1"), "b3": P("-b3")}


def test_parse_and_print():
    assert str(P("x*y - 2 + 3/6*x^2")) == "x^2/2 + x*y - 2".replace("x^2/2", "1/2*x^2")
    assert str(P("-(a+b)^2")) == "-a^2 - 2*a*b - b^2"
    assert str(P("0")) == "0"
    assert str(P("a10 + a2")) == "a2 + a10"
    assert P("2*(x - 1)") == P("2*x - 2")


@pytest.mark.parametrize("text", ["", "x +", "(x", "x ^ y", "2x", "x $ y", "1/0"])
def test_parse_errors(text):
    with pytest.raises(ExpressionSyntaxError):
        P(text)


def test_declared_generators():
    p = P("x + y", gens=["x", "y", "z"])
    assert p.gens == ("x", "y", "z")
    with pytest.raises(SymbolError):
        P("x + w", gens=["x"])


def test_differentiate_examples():
    assert differentiate(P(F), "y1") == P("2*a1^2*y1")
    assert differentiate(P("7", gens=["y"]), "y") == 0
    assert differentiate(P("y1*y2*y3*b3"), "y2") == P("b3*y1*y3")
    with pytest.raises(SymbolError):
        differentiate(P("x"), "y")


def test_derivative_against_expanded_evaluation():
    # derivative of y1*y2*y3*b3 in y2 evaluated at random points equals b3*y1*y3 there
    rng = random.Random(3)
    d = differentiate(P("y1*y2*y3*b3"), "y2")
    for _ in range(5):
        vals = {s: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for s in ("y1", "y2", "y3", "b3")}
        assert evaluate(d, vals) == vals["b3"] * vals["y1"] * vals["y3"]


def test_ring_map_examples():
    f, g = P(F), P(G)
    assert apply_ring_map(f, INVOLUTION) == f
    assert apply_ring_map(g, INVOLUTION) == g
    assert apply_ring_map(f, {}) == f


def test_jacobian_examples():
    J = jacobian([P(F)], ["y1", "y2", "y3"])
    assert J == [[P("2*a1^2*y1"), P("2*a2^2*y2"), P("2*a3*y3")]]
    assert jacobian([Poly.const(4)], ["y1", "y2"]) == [[0, 0]]


def test_jacobian_reduced_on_c2_locus():
    J = jacobian([P(F), P(G)], ["b1", "y1", "y2", "y3"])
    red = [[substitute(e, {"b1": 0, "y2": 0}) for e in row] for row in J]
    assert red[0] == [0, P("2*a1^2*y1"), 0, P("2*a3*y3")]
    assert red[1][0] == P("y1^3")


def test_certificate_c2():
    M = [[P("0"), P("2*a1^2*y1"), P("0"), P("2*a3*y3")], [P("k*y1^3"), P("0"), P("b3*y1*y3"), P("0")]]
    cert = rank_lower_bound_certificate(M, AssumptionSet.of({"a1", "a3", "y1", "k"}, {"b1", "y2"}), 2)
    assert cert and cert.cols == (0, 1)
    assert cert.reduced == P("-2*a1^2*k*y1^4")
    assert cert.reverify(0)


def test_certificate_c4_columns_y1_y3():
    M = jacobian([P(F), P(G)], ["y1", "y2", "y3"])
    M = [[Poly.const(0)] + row for row in M]
    cert = rank_lower_bound_certificate(M, AssumptionSet.of({"a1", "a2", "b3", "y1", "y2"}, {"y3"}), 2)
    assert cert and cert.cols == (1, 3)
    assert cert.reduced == P("2*a1^2*b3*y1^2*y2")


def test_certificate_failure_and_precondition():
    zero = [[Poly.const(0)] * 3 for _ in range(2)]
    assert not rank_lower_bound_certificate(zero, AssumptionSet(), 1)
    with pytest.raises(PreconditionError):
        rank_lower_bound_certificate([[P(F)]], AssumptionSet(), 3)


def test_assumption_conflicts():
    with pytest.raises(PreconditionError):
        AssumptionSet.of({"a1"}, {"a1"})
    with pytest.raises(PreconditionError):
        AssumptionSet(frozenset(), (P("a1 + a2"),))
    # unit multiples of a symbol are fine
    assert AssumptionSet(frozenset(), (P("3*b1"),)).zero_symbols == {"b1"}


def test_determinant_small():
    M = [[P("a"), P("b")], [P("c"), P("d")]]
    assert determinant(M) == P("a*d - b*c")


# -- randomized properties -------------------------------------------------------

SYMS = ["x", "y", "z", "a1", "b2"]


def _rand_poly(rng: random.Random, terms=4, deg=3) -> Poly:
    p = Poly.const(0)
    for _ in range(rng.randint(0, terms)):
        mono = Poly.const(Fraction(rng.randint(-5, 5), rng.randint(1, 3)))
        for _ in range(rng.randint(0, deg)):
            mono = mono * Poly.var(rng.choice(SYMS))
        p = p + mono
    return p


def test_leibniz_200_pairs():
    rng = random.Random(11)
    for _ in range(200):
        p, q = _rand_poly(rng), _rand_poly(rng)
        v = rng.choice(SYMS)
        p, q = p.with_gens([v]), q.with_gens([v])
        lhs = differentiate((p * q).with_gens([v]), v)
        assert lhs == p * differentiate(q, v) + q * differentiate(p, v)


def test_ring_map_homomorphism_200():
    rng = random.Random(12)
    swap = {"x": P("y"), "y": P("x"), "z": P("-z")}
    for _ in range(200):
        p, q = _rand_poly(rng), _rand_poly(rng)
        m = {s: _rand_poly(rng, 2, 2) for s in SYMS}
        assert apply_ring_map(p + q, m) == apply_ring_map(p, m) + apply_ring_map(q, m)
        assert apply_ring_map(p * q, m) == apply_ring_map(p, m) * apply_ring_map(q, m)
        assert apply_ring_map(apply_ring_map(p, swap), swap) == p


def test_evaluation_of_derivative_20_assignments():
    rng = random.Random(13)
    p = _rand_poly(rng, 6, 4) + P("x^3*y - 2*x*z")
    d = differentiate(p.with_gens(["x"]), "x")
    for _ in range(20):
        vals = {s: Fraction(rng.randint(-20, 20), rng.randint(1, 7)) for s in SYMS}
        # term-by-term power rule evaluated directly, without building the derivative polynomial
        direct = Fraction(0)
        px = p.with_gens(["x"])
        ix = px.gens.index("x")
        for exps, c in px.terms.items():
            if exps[ix]:
                t = c * exps[ix]
                for g, e in zip(px.gens, exps):
                    t *= vals[g] ** (e - 1 if g == "x" else e)
                direct += t
        assert evaluate(d, vals) == direct


@settings(max_examples=50)
@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_arithmetic_laws(u, v):
    a = P(f"{u[0]}*x + {u[1]}*y + {u[2]}")
    b = P(f"{v[0]}*x*y + {v[1]}*z + {v[2]}")
    c = P("x - z")
    assert a + b == b + a and a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert hash(a + b) == hash(b + a)


def test_printing_is_canonical():
    assert str(P("y + x")) == str(P("x + y")) == "x + y"
    assert str(P("x^2 + y^3 + x*y")) == "y^3 + x^2 + x*y"
