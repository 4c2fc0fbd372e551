import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import rand_poly, sylvester_resultant
from qdist.poly import (
    BiPoly,
    ParamPoly,
    RatFunc,
    UniPoly,
    divrem,
    gcd_squarefree,
    poly_gcd,
    resultant,
    squarefree_decomposition,
)
from qdist.scalar import QQ

X = UniPoly.x("x")

rats = st.builds(
    QQ,
    st.integers(min_value=-30, max_value=30),
    st.integers(min_value=1, max_value=8),
)


def poly_strategy(max_deg=8):
    return st.lists(rats, min_size=1, max_size=max_deg + 1).map(
        lambda cs: UniPoly(cs, "x")
    )


def test_divrem_exact_factor():
    q, r = divrem(X**2 + 3 * X + 2, X + 1)
    assert q == X + 2
    assert not r


def test_divrem_unit_divisor():
    p = 3 * X**4 - X + QQ(1, 2)
    q, r = divrem(p, UniPoly.const(1, "x"))
    assert q == p and not r


def test_divrem_zero_divisor_raises():
    with pytest.raises(ZeroDivisionError):
        divrem(X, UniPoly.zero("x"))


def test_quintic_remainder_with_symbolic_parameter():
    # x^5 + 6x^4 + 2x^3 + a*x^2 - x + 3 modulo its derivative, with the
    # parameter riding along as a rational-function coefficient
    a = RatFunc.parameter("a")
    g = UniPoly([3, -1, a, 2, 6, 1], "x")
    _, r = divrem(g, g.derivative())
    expected = UniPoly(
        [
            QQ(81, 25),
            RatFunc(UniPoly([QQ(-4, 5), QQ(-12, 25)], "a")),
            RatFunc(UniPoly([QQ(-36, 25), QQ(3, 5)], "a")),
            QQ(-124, 25),
        ],
        "x",
    )
    assert r == expected


@given(p=poly_strategy(7), q=poly_strategy(5))
@settings(max_examples=120, deadline=None)
def test_divrem_roundtrip(p, q):
    if not q:
        return
    quot, rem = divrem(p, q)
    assert quot * q + rem == p
    assert rem.degree < q.degree


def test_derivative_basics():
    assert (X**3).derivative() == 3 * X**2
    assert UniPoly.const(7, "x").derivative() == UniPoly.zero("x")


@given(p=poly_strategy(6), q=poly_strategy(6))
@settings(max_examples=100, deadline=None)
def test_derivative_product_rule(p, q):
    lhs = (p * q).derivative()
    rhs = p.derivative() * q + p * q.derivative()
    assert lhs == rhs


@given(p=poly_strategy(6), q=poly_strategy(6), t=rats)
@settings(max_examples=100, deadline=None)
def test_eval_commutes_with_multiplication(p, q, t):
    assert (p * q).eval(t) == p.eval(t) * q.eval(t)


def test_eval_basics():
    assert (X**2 + 1).eval(2) == 5
    assert UniPoly.zero("x").eval(QQ(7, 3)) == 0


def test_gcd_squarefree_constructed_multiplicity():
    p = (X - 1) ** 2 * (X - 2)
    g, sf = gcd_squarefree(p)
    assert g == X - 1
    assert sf.normalized() == ((X - 1) * (X - 2)).normalized()


def test_gcd_squarefree_already_squarefree():
    g, sf = gcd_squarefree(X**2 - 1)
    assert g == UniPoly.const(1, "x")
    assert sf == X**2 - 1


def test_quintic_gcd_at_special_parameter_value():
    # at a = -7 the quintic acquires the double zero -1
    g = UniPoly([3, -1, QQ(-7), 2, 6, 1], "x")
    gg, _ = gcd_squarefree(g)
    _, rem = divrem(gg, X + 1)
    assert not rem


def test_resultant_linear_case():
    assert resultant(X - 2, X - 5) == -3


def test_resultant_sylvester_example():
    assert sylvester_resultant(X**2 + 1, X**2 - 1) == 4
    assert resultant(X**2 + 1, X**2 - 1) == 4


def test_resultant_common_factor_is_zero():
    p = (X - 1) * (X + 3)
    assert resultant(p, p) == 0


def test_resultant_matches_sylvester_oracle():
    rng = random.Random(42)
    for _ in range(120):
        p = rand_poly(rng, rng.randint(1, 6))
        q = rand_poly(rng, rng.randint(1, 6))
        assert resultant(p, q) == sylvester_resultant(p, q)


def test_resultant_zero_input_raises():
    with pytest.raises(ValueError):
        resultant(UniPoly.zero("x"), X)


def test_gcd_nonconstant_iff_resultant_with_derivative_vanishes():
    rng = random.Random(9)
    for _ in range(60):
        if rng.random() < 0.5:
            p = rand_poly(rng, rng.randint(2, 6))
        else:
            r = rand_poly(rng, 1)
            p = r * r * rand_poly(rng, rng.randint(0, 3))
        if p.degree < 2:
            continue
        g = poly_gcd(p, p.derivative())
        assert (g.degree > 0) == (resultant(p, p.derivative()) == 0)


def test_squarefree_decomposition_structure():
    p = (X - 1) ** 3 * (X + 2) ** 2 * (X - 5)
    facs = dict()
    for f, k in squarefree_decomposition(p):
        facs[k] = f
    assert facs[1] == X - 5
    assert facs[2] == X + 2
    assert facs[3] == X - 1


def test_parampoly_evaluation_and_derivatives():
    # p(mu, z) = (z^2 + 1) mu^2 + z mu + 3
    p = ParamPoly([UniPoly([3], "z"), UniPoly([0, 1], "z"), UniPoly([1, 0, 1], "z")],
                  "mu", "z")
    assert p.eval_param(2) == UniPoly([3, 2, 5], "mu")
    assert p.eval_main(1) == UniPoly([4, 1, 1], "z")
    dm = p.derivative("mu")
    assert dm.eval_param(2) == UniPoly([2, 10], "mu")
    dz = p.derivative("z")
    assert dz.eval_param(2) == UniPoly([0, 1, 4], "mu")
    swapped = p.swap_variables()
    assert swapped.eval_point(QQ(1, 2), QQ(3)) == p.eval_point(QQ(3), QQ(1, 2))


def test_bipoly_arithmetic_and_eval():
    x1 = BiPoly.variable(0)
    x2 = BiPoly.variable(1)
    g = x1**2 + x2**2 - 1
    assert g.total_degree == 2
    assert g.eval(QQ(3, 5), QQ(4, 5)) == 0
    assert g.derivative(0) == 2 * x1
    line = g.eval_var(0, QQ(1, 2))
    assert line == UniPoly([QQ(-3, 4), 0, 1], "x2")


def test_ratfunc_arithmetic():
    a = RatFunc.parameter("a")
    f = (a**2 - 1) / (a - 1)
    assert f == a + 1  # gcd cancellation
    g = 1 / (a + 2)
    assert (g * (a + 2)) == 1
    with pytest.raises(ZeroDivisionError):
        f / RatFunc(UniPoly.zero("a"))
    assert f.derivative() == 1
