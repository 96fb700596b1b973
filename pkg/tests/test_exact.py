from fractions import Fraction

import pytest
import sympy
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import given
from hypothesis import strategies as st

from ncprod.exact import (
    ModPoly,
    UniPoly,
    as_rational,
    determinant,
    factor_degrees_mod_p,
    irreducibility_certificate,
    lcm,
    poly_discriminant,
    poly_gcd,
    poly_resultant,
    prime_power_base,
    solve_linear,
)

X = sympy.Symbol("x")
rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
polys = st.lists(st.integers(-6, 6), min_size=1, max_size=6).map(UniPoly)
nonzero_polys = polys.filter(lambda f: not f.is_zero())


def to_sympy(f: UniPoly):
    return sympy.Poly(list(reversed(f.coeffs)) or [0], X, domain="QQ")


def test_gcd_examples():
    assert poly_gcd(UniPoly([-1, 0, 1]), UniPoly([-1, 1])) == UniPoly([-1, 1])
    f = UniPoly([4, 0, 2])
    assert poly_gcd(UniPoly([]), f) == f.monic()
    cubic = UniPoly([-1, -2, 1, 1])
    assert poly_gcd(cubic, cubic.derivative()) == UniPoly([1])


def test_discriminant_examples():
    assert poly_discriminant(UniPoly([-2, 0, 1])) == 8
    assert poly_discriminant(UniPoly([-1, -2, 1, 1])) == 49
    assert poly_discriminant(UniPoly([-1, 1])) == 1
    with pytest.raises(ValueError):
        poly_discriminant(UniPoly([5]))


def test_factor_degree_examples():
    cubic = UniPoly([-1, -2, 1, 1])
    assert factor_degrees_mod_p(cubic, 2) == [3]
    assert factor_degrees_mod_p(cubic, 7) == [1, 1, 1]
    assert factor_degrees_mod_p(UniPoly([2, 0, -4, 0, 1]), 3) == [4]


def test_factor_degrees_rejects_bad_input():
    with pytest.raises(ValueError):
        factor_degrees_mod_p(UniPoly([1]), 3)
    with pytest.raises(ValueError):
        factor_degrees_mod_p(UniPoly([1, 1, 3]), 3)


@given(nonzero_polys, nonzero_polys)
def test_gcd_divides_both(f, g):
    d = poly_gcd(f, g)
    assert (f % d).is_zero() and (g % d).is_zero()


@given(polys, polys)
def test_gcd_matches_sympy(f, g):
    if f.is_zero() and g.is_zero():
        return
    expected = sympy.gcd(to_sympy(f), to_sympy(g)).monic()
    assert to_sympy(poly_gcd(f, g)) == expected


@given(nonzero_polys, nonzero_polys)
def test_resultant_matches_sylvester_determinant(f, g):
    # sympy.resultant returns +1 for res(x+1, x^3); the Sylvester determinant is -1
    if f.degree == 0 and g.degree == 0:
        return
    m = sylvester(to_sympy(f).as_expr(), to_sympy(g).as_expr(), X)
    assert poly_resultant(f, g) == m.det()


def test_resultant_sign_edge_case():
    assert poly_resultant(UniPoly([1, 1]), UniPoly([0, 0, 0, 1])) == -1


@given(nonzero_polys.filter(lambda f: f.degree >= 1))
def test_discriminant_matches_sympy(f):
    assert poly_discriminant(f) == sympy.discriminant(to_sympy(f))


@given(st.lists(st.integers(-9, 9), min_size=2, max_size=7), st.sampled_from([2, 3, 5, 7, 11]))
def test_factor_degrees_match_sympy(cs, p):
    cs[-1] = 1
    f = UniPoly(cs)
    degs = factor_degrees_mod_p(f, p)
    assert sum(degs) == f.degree
    _, facs = sympy.factor_list(sympy.Poly(list(reversed(cs)), X, modulus=p))
    expected = sorted(fac.degree() for fac, m in facs for _ in range(m))
    assert degs == expected


@given(rationals, rationals, rationals)
def test_rational_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a and a + b == b + a
    assert a * (b + c) == a * b + a * c


@given(polys, polys, polys)
def test_poly_ring_axioms(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f


@given(nonzero_polys, nonzero_polys)
def test_divmod_reconstructs(f, g):
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.is_zero() or r.degree < g.degree


def test_as_rational_forms():
    assert as_rational("-7/2") == Fraction(-7, 2)
    assert as_rational([3, 6]) == Fraction(1, 2)
    with pytest.raises(TypeError):
        as_rational(1.5)


def test_modpoly_reduces_coefficients():
    assert ModPoly(7, [8, 14, 1]).coeffs == (1, 0, 1)


def test_irreducibility_certificates():
    assert irreducibility_certificate(UniPoly([-1, -2, 1, 1])) == "irreducible mod 2"
    # x^4+8x^2+100 splits mod every prime; it needs the bounded factor search
    assert "no quadratic factor" in irreducibility_certificate(UniPoly([100, 0, 8, 0, 1]))
    with pytest.raises(ValueError):
        irreducibility_certificate(UniPoly([4, 0, -5, 0, 1]))
    with pytest.raises(ValueError):
        irreducibility_certificate(UniPoly([1, 0, Fraction(1, 2)]))


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_determinant_and_solve_match_sympy(rows):
    m = sympy.Matrix(rows)
    assert determinant(rows) == m.det()
    if m.det() != 0:
        rhs = [1, 2, 3]
        sol = solve_linear([[Fraction(v) for v in r] for r in rows], [Fraction(v) for v in rhs])
        assert list(m.LUsolve(sympy.Matrix(rhs))) == sol


def test_prime_power_and_lcm():
    assert prime_power_base(8) == 2 and prime_power_base(49) == 7 and prime_power_base(12) is None
    assert lcm(4, 6, 9) == 36 and lcm() == 1
