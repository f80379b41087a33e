import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from gkmhopf.exact_arith import (
    SUPPORTED_DIHEDRAL_PRIMES,
    BaseField,
    CapabilityError,
    FieldKind,
    MultiPoly,
    determinant,
    field_norm,
    invert_matrix,
    laurent_divide_binomial,
    laurent_divisible_by_binomial,
    minimal_polynomial_of_gamma,
    poly_divrem_linear,
    solve_rational,
)

NV = 3
X = sympy.symbols("x0:3")


def polys(nvars=NV, max_exp=3, laurent=False):
    exps = st.tuples(*[st.integers(-2 if laurent else 0, max_exp)] * nvars)
    return st.dictionaries(exps, st.integers(-5, 5), max_size=5).map(lambda d: MultiPoly.from_dict(d, nvars))


def linear_forms():
    coeffs = st.lists(st.integers(-3, 3), min_size=NV, max_size=NV).filter(any)
    return coeffs.map(
        lambda cs: MultiPoly.from_dict({tuple(1 if j == i else 0 for j in range(NV)): c for i, c in enumerate(cs) if c}, NV)
    )


def to_sympy(f: MultiPoly):
    return sum((sympy.Rational(int(c.numerator), int(c.denominator)) * sympy.Mul(*[x**e for x, e in zip(X, exp)])
                for exp, c in f.terms.items()), sympy.Integer(0))


# ------------------------------------------------------------ ring axioms
@given(polys(), polys(), polys())
def test_multipoly_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == MultiPoly.zero(NV)
    assert a * MultiPoly.constant(1, NV) == a


@given(polys(), polys())
def test_multipoly_matches_sympy(a, b):
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0
    assert sympy.expand(to_sympy(a - b) - (to_sympy(a) - to_sympy(b))) == 0


@given(polys(laurent=True))
def test_laurent_monomials_invert(a):
    for exp in a.terms:
        m = MultiPoly.monomial(exp, 1, NV)
        assert m * m.monomial_inverse() == MultiPoly.constant(1, NV)


def test_zero_terms_are_dropped():
    f = MultiPoly.from_dict({(1, 0, 0): 2, (0, 1, 0): 0}, NV)
    assert len(f.terms) == 1
    assert not MultiPoly.from_dict({(1, 0, 0): 0}, NV)


@given(polys(), linear_forms())
def test_linear_division_recovers_product(q, lin):
    quo, rem = poly_divrem_linear(q * lin, lin)
    assert not rem
    assert quo == q


@given(polys(), linear_forms())
def test_linear_division_matches_sympy(f, lin):
    quo, rem = poly_divrem_linear(f, lin)
    assert quo * lin + rem == f
    _, r = sympy.div(sympy.Poly(to_sympy(f), *X), sympy.Poly(to_sympy(lin), *X))
    assert (not rem) == r.is_zero


@given(polys(laurent=True), st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2)).filter(any))
def test_laurent_binomial_division(q, a):
    binom = MultiPoly.constant(1, NV) - MultiPoly.monomial(a, 1, NV)
    prod = q * binom
    assert laurent_divisible_by_binomial(prod, a)
    assert laurent_divide_binomial(prod, a) == q


def test_laurent_binomial_nondivisible():
    f = MultiPoly.from_dict({(0, 0, 0): 1, (1, 0, 0): 1}, NV)
    assert not laurent_divisible_by_binomial(f, (1, 0, 0))
    assert laurent_divide_binomial(f, (1, 0, 0)) is None


# ---------------------------------------------------------- number fields
@pytest.mark.parametrize("p", SUPPORTED_DIHEDRAL_PRIMES)
def test_minimal_polynomial_against_sympy(p):
    t = sympy.Symbol("t")
    expected = sympy.Poly(sympy.minimal_polynomial(2 * sympy.cos(sympy.pi / p), t), t).all_coeffs()[::-1]
    assert list(minimal_polynomial_of_gamma(p)) == [int(c) for c in expected]


def test_unsupported_prime_is_capability_error():
    with pytest.raises(CapabilityError):
        minimal_polynomial_of_gamma(11)


@pytest.mark.parametrize("p", [5, 7])
@given(data=st.data())
def test_field_axioms_and_inverse(p, data):
    fld = BaseField(FieldKind.CYCLOTOMIC_REAL, p)
    coeff = st.lists(st.integers(-4, 4), min_size=fld.degree, max_size=fld.degree)
    a, b, c = (fld(data.draw(coeff)) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    if a:
        assert a * a.inverse() == fld.one()


@pytest.mark.parametrize("p", [5, 7])
@given(data=st.data())
def test_field_norm_against_sympy(p, data):
    fld = BaseField(FieldKind.CYCLOTOMIC_REAL, p)
    coeffs = data.draw(st.lists(st.integers(-4, 4), min_size=fld.degree, max_size=fld.degree))
    t = sympy.Symbol("t")
    minpoly = sympy.Poly(list(reversed(fld.minpoly)), t)
    elem = sympy.Poly(list(reversed(coeffs)), t)
    expected = sympy.resultant(minpoly, elem) if any(coeffs) else 0
    assert field_norm(fld(coeffs)) == mpq(int(expected))


def test_gamma_satisfies_minimal_polynomial():
    for p in SUPPORTED_DIHEDRAL_PRIMES:
        fld = BaseField(FieldKind.CYCLOTOMIC_REAL, p)
        g = fld.gamma()
        total = fld.zero()
        for k, c in enumerate(fld.minpoly):
            total = total + g**k * c
        assert not total
        assert abs(g.to_float() - fld.gamma_float()) < 1e-12


# ------------------------------------------------------------ linear algebra
@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_determinant_and_inverse_against_sympy(rows):
    m = sympy.Matrix(rows)
    assert determinant(rows) == mpq(int(m.det()))
    if m.det() != 0:
        q = [[mpq(x) for x in r] for r in rows]
        inv = invert_matrix(q)
        expected = m.inv()
        assert all(inv[i][j] == mpq(int(expected[i, j].p), int(expected[i, j].q)) for i in range(3) for j in range(3))
        sol = solve_rational(q, [mpq(1), mpq(2), mpq(3)])
        assert list(m * sympy.Matrix([sympy.Rational(int(s.numerator), int(s.denominator)) for s in sol])) == [1, 2, 3]
