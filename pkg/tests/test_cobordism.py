"""Formal group law, coefficient alphabets, genus specialization.

sympy is used here as an independent oracle for the series reversions; the
package itself never imports it.
"""

from fractions import Fraction

import pytest
import sympy

from homgenus.cobordism import (
    a_in_terms_of_b,
    b_in_terms_of_a,
    basis_convert,
    evaluate_class,
    formal_group_law,
    specialize_genus,
    tanh_series,
    todd_series,
)
from homgenus.exactalg import MultiPoly, parse_poly


def test_law_degree_three_frozen():
    fgl = formal_group_law(3)
    assert fgl.law.body == parse_poly(
        "u1 + u2 - 2*u1*u2*b1 + 4*u1^2*u2*b1^2 - 3*u1^2*u2*b2"
        " + 4*u1*u2^2*b1^2 - 3*u1*u2^2*b2"
    )


def test_law_unit_and_commutativity():
    fgl = formal_group_law(4)
    law = fgl.law.body
    u1 = MultiPoly.variable("u1")
    u2 = MultiPoly.variable("u2")
    assert law.subs({"u2": MultiPoly.zero()}) == u1
    assert law.subs({"u1": MultiPoly.zero()}) == u2
    assert law.subs({"u1": u2, "u2": u1}) == law


def test_law_associativity():
    fgl = formal_group_law(4)
    law = fgl.law.body
    u2 = MultiPoly.variable("u2")
    u3 = MultiPoly.variable("u3")
    left = fgl.add(law, u3).body
    right = fgl.add(MultiPoly.variable("u1"), law.subs({"u1": u2, "u2": u3})).body
    assert left == right


def test_inverse():
    fgl = formal_group_law(4)
    assert fgl.add(MultiPoly.variable("u1"), fgl.inverse.body).body.is_zero()
    assert formal_group_law(3).inverse.body == parse_poly("-u1 - 2*u1^2*b1 - 4*u1^3*b1^2")


def test_log_and_exp_frozen():
    fgl = formal_group_law(3)
    # the u^{i+1} coefficient of the logarithm is b_i on the nose
    assert fgl.log.body == parse_poly("u1 + u1^2*b1 + u1^3*b2")
    assert fgl.exp.body == parse_poly("x1 - x1^2*b1 + 2*x1^3*b1^2 - x1^3*b2")


def test_power_system():
    fgl = formal_group_law(4)
    u1 = MultiPoly.variable("u1")
    ps2 = fgl.power_system(2)
    assert ps2.body == fgl.add(u1, u1).body
    assert fgl.power_system(3).body == fgl.add(u1, ps2.body).body
    # logarithm turns [n] into multiplication by n
    lo = fgl.log_of(ps2)
    assert lo.body == (fgl.log.body * 2).truncate_weight(lo.cutoff)


def test_multi_bracket():
    fgl = formal_group_law(3)
    assert fgl.multi_bracket((1, 1)).body == fgl.law.body
    chk = fgl.add(fgl.power_system(2).body, MultiPoly.variable("u2"))
    assert fgl.multi_bracket((2, 1)).body == chk.body


def test_formal_group_law_cached():
    assert formal_group_law(5) is formal_group_law(5)


def _sympy_exp(deg):
    """Revert u + sum b_i u^{i+1} with plain sympy, term by term."""
    u, x = sympy.symbols("u x")
    b = [None] + [sympy.Symbol("b%d" % i) for i in range(1, deg + 1)]
    logs = u + sum(b[i] * u ** (i + 1) for i in range(1, deg + 1))
    expx = x
    for k in range(2, deg + 2):
        c = sympy.Symbol("c_tmp")
        eq = sympy.expand(logs.subs(u, expx + c * x ** k)) - x
        coeff = sympy.Poly(eq, x).coeff_monomial(x ** k)
        sol = sympy.solve(sympy.Eq(coeff, 0), c)[0]
        expx = sympy.expand(expx + sol * x ** k)
    return expx


def _as_sympy(poly):
    return sympy.sympify(poly.to_text().replace("^", "**"))


def test_a_in_terms_of_b_against_sympy():
    deg = 4
    x = sympy.Symbol("x")
    expx = _sympy_exp(deg)
    quotient = sympy.series(x / expx, x, 0, deg + 1).removeO()
    for i, val in a_in_terms_of_b(deg).items():
        want = sympy.expand(quotient.coeff(x, i))
        assert sympy.expand(_as_sympy(val) - want) == 0


def test_b_in_terms_of_a_against_sympy():
    deg = 4
    x, u = sympy.symbols("x u")
    a = [None] + [sympy.Symbol("a%d" % i) for i in range(1, deg + 1)]
    f = 1 + sum(a[i] * x ** i for i in range(1, deg + 1))
    ginv = sympy.series(x / f, x, 0, deg + 2).removeO()
    # revert ginv the same slow way
    g = u
    for k in range(2, deg + 2):
        c = sympy.Symbol("c_tmp")
        eq = sympy.expand(ginv.subs(x, g + c * u ** k)) - u
        coeff = sympy.Poly(eq, u).coeff_monomial(u ** k)
        sol = sympy.solve(sympy.Eq(coeff, 0), c)[0]
        g = sympy.expand(g + sol * u ** k)
    for n, val in b_in_terms_of_a(deg).items():
        want = sympy.expand(g.coeff(u, n + 1))
        assert sympy.expand(_as_sympy(val) - want) == 0


def test_alphabet_frozen_values():
    ab = a_in_terms_of_b(3)
    assert ab[1] == parse_poly("b1")
    assert ab[2] == parse_poly("b2 - b1^2")
    assert ab[3] == parse_poly("2*b1^3 - 3*b1*b2 + b3")
    ba = b_in_terms_of_a(3)
    assert ba[2] == parse_poly("a1^2 + a2")
    assert ba[3] == parse_poly("a1^3 + 3*a1*a2 + a3")


def test_basis_convert_round_trip():
    p = parse_poly("2*a1^3 - 6*a1*a2 + 6*a3")
    there = basis_convert(p, "a->b")
    assert basis_convert(there, "b->a") == p
    assert basis_convert(parse_poly("4*b3"), "b->a") == parse_poly(
        "4*a1^3 + 12*a1*a2 + 4*a3"
    )


def test_basis_convert_direction_checked():
    with pytest.raises(ValueError, match="direction"):
        basis_convert(parse_poly("a1"), "sideways")


def test_todd_series_against_sympy():
    u = sympy.Symbol("u")
    want = sympy.series(1 - sympy.exp(-u), u, 0, 9).removeO()
    got = _as_sympy(todd_series(8).body.subs({"u1": MultiPoly.variable("u")}))
    assert sympy.expand(got - want) == 0


def test_tanh_series_against_sympy():
    u = sympy.Symbol("u")
    want = sympy.series(sympy.tanh(u), u, 0, 10).removeO()
    got = _as_sympy(tanh_series(9).body.subs({"u1": MultiPoly.variable("u")}))
    assert sympy.expand(got - want) == 0


def test_series_frozen_low_terms():
    assert todd_series(4).body == parse_poly("u1 - 1/2*u1^2 + 1/6*u1^3 - 1/24*u1^4")
    assert tanh_series(5).body == parse_poly("u1 - 1/3*u1^3 + 2/15*u1^5")


def test_specialize_genus():
    assert specialize_genus(tanh_series(9), 4) == {
        1: Fraction(0),
        2: Fraction(1, 3),
        3: Fraction(0),
        4: Fraction(-1, 45),
    }
    assert specialize_genus(todd_series(7), 3) == {
        1: Fraction(1, 2),
        2: Fraction(1, 12),
        3: Fraction(0),
    }


def test_evaluate_class():
    cls = parse_poly("2*a1^3 - 6*a1*a2 + 6*a3")
    assert evaluate_class(cls, {1: Fraction(1), 2: Fraction(1, 2)}) == -1
    # unassigned generators default to zero
    assert evaluate_class(cls, {}) == 0


def test_evaluate_class_rejects_b_alphabet():
    with pytest.raises(ValueError, match="b-alphabet"):
        evaluate_class(parse_poly("b1"), {1: Fraction(1)})


def test_evaluate_class_rejects_stray_vars():
    with pytest.raises(ValueError):
        evaluate_class(parse_poly("t*a1"), {1: Fraction(1)})
