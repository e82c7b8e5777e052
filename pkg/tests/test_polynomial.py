import pytest
from hypothesis import given
from hypothesis import strategies as st

from balanced_tamari.exceptions import ArityError, PolynomialSyntaxError
from balanced_tamari.polynomial import (
    Polynomial,
    parse_polynomial,
    poly_add,
    poly_compose,
    poly_mul,
)

polynomials = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)),
    st.integers(-5, 5),
    max_size=5,
).map(lambda terms: Polynomial(terms, 2))


def p2(text):
    return parse_polynomial(text, 2)


class TestRingAxioms:

    @given(polynomials, polynomials)
    def test_commutative(self, p, q):
        assert p + q == q + p
        assert p * q == q * p

    @given(polynomials, polynomials, polynomials)
    def test_associative(self, p, q, r):
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)

    @given(polynomials, polynomials, polynomials)
    def test_distributive(self, p, q, r):
        assert p * (q + r) == p * q + p * r

    @given(polynomials)
    def test_identities(self, p):
        assert p + 0 == p
        assert p * 1 == p
        assert p - p == 0
        assert not (p - p)

    @given(polynomials)
    def test_identity_substitution(self, p):
        assert p.compose((p2("x"), p2("y"))) == p

    @given(polynomials, polynomials)
    def test_hash_follows_equality(self, p, q):
        if p == q:
            assert hash(p) == hash(q)


class TestArithmetic:

    def test_canonical_terms(self):
        p = Polynomial({(1, 0): 2, (0, 1): 0}, 2)
        assert p.terms == {(1, 0): 2}
        assert Polynomial({(1, 0): 1}, 2) - Polynomial({(1, 0): 1}, 2) == Polynomial.zero(2)

    def test_power(self):
        cube = (p2("x") + p2("y")) ** 3
        assert cube.coefficient((1, 2)) == 3
        assert cube.total_degree() == 3

    def test_truncated_product(self):
        p = p2("x + x*y")
        product = p.multiply(p, max_x_degree=1)
        assert product == 0
        assert p.multiply(p, max_total=3) == p2("x^2 + 2*x^2*y")

    def test_truncate(self):
        assert p2("x + x^2 + x^3*y").truncate(max_x_degree=2) == p2("x + x^2")

    def test_degrees(self):
        p = p2("x^3 + x*y^4")
        assert p.degree() == 3
        assert p.degree(1) == 4
        assert p.total_degree() == 5
        assert Polynomial.zero(2).degree() == -1

    def test_univariate_coefficients(self):
        assert p2("x + 2*x*y + x^2").univariate_coefficients(3) == [1, 1, 0]

    def test_constants_compare_to_ints(self):
        assert Polynomial.constant(2, 1) == 2
        assert Polynomial.zero(3) == 0
        assert 3 - Polynomial.constant(1, 1) == 2

    @pytest.mark.parametrize("value", [0, 3, -7])
    def test_constants_hash_like_ints(self, value):
        constant = Polynomial.constant(value, 2)
        assert constant == value
        assert hash(constant) == hash(value)
        assert len({constant, value}) == 1

    def test_module_functions(self):
        assert poly_add(p2("x"), p2("y")) == p2("x + y")
        assert poly_mul(p2("x"), p2("y")) == p2("x*y")

    def test_arity_mismatch(self):
        with pytest.raises(ArityError):
            poly_add(Polynomial.variable(0, 1), Polynomial.variable(0, 2))
        with pytest.raises(ArityError):
            Polynomial.variable(0, 1) * Polynomial.variable(0, 2)
        with pytest.raises(ArityError):
            Polynomial({(1,): 1}, 2)
        with pytest.raises(ArityError):
            Polynomial.variable(2, 2)

    def test_invalid_values(self):
        with pytest.raises(ValueError):
            Polynomial({(-1, 0): 1}, 2)
        with pytest.raises(ValueError):
            p2("x").power(-1)
        with pytest.raises(TypeError):
            p2("x") + "y"


class TestComposition:

    def test_seed_under_the_balanced_substitution(self):
        sigma = (p2("x^2 + 2*x*y"), p2("x"))
        assert poly_compose(p2("x"), sigma) == p2("x^2 + 2*x*y")

    def test_first_iterates(self):
        sigma = (p2("x^2 + 2*x*y"), p2("x"))
        a1 = p2("x") + poly_compose(p2("x"), sigma)
        assert a1 == p2("x + 2*x*y + x^2")
        a2 = p2("x") + poly_compose(a1, sigma)
        assert a2 == p2("x + 2*x*y + x^2 + 4*x^2*y + 2*x^3 + 4*x^2*y^2 + 4*x^3*y + x^4")

    def test_changes_arity(self):
        p = p2("x*y")
        q = p.compose((Polynomial.variable(0, 1), Polynomial.constant(3, 1)))
        assert q.arity == 1
        assert q == Polynomial({(1,): 3}, 1)

    def test_truncated(self):
        sigma = (p2("x^2 + 2*x*y"), p2("x"))
        assert p2("x^2").compose(sigma, max_x_degree=3) == p2("4*x^2*y^2 + 4*x^3*y")

    def test_wrong_number_of_substitutions(self):
        with pytest.raises(ArityError):
            p2("x").compose((p2("x"),))


class TestText:

    def test_print(self):
        assert str(p2("x^2 + 2*x*y + x")) == "x + 2*x*y + x^2"
        assert str(parse_polynomial("-x + 3", 1)) == "3 - x"
        assert str(Polynomial.zero(2)) == "0"
        assert repr(p2("y")) == "Polynomial('y', arity=2)"

    def test_round_trip(self):
        text = "x + 2*x*y - 3*y^2 + x^4"
        assert p2(str(p2(text))) == p2(text)

    def test_variables(self):
        p = parse_polynomial("x*y*z*t", 4)
        assert p.terms == {(1, 1, 1, 1): 1}
        assert Polynomial.parse("x^2", 1) == parse_polynomial("x*x", 1)

    def test_repeated_terms_are_collected(self):
        assert p2("x + x - 2*x") == 0

    @pytest.mark.parametrize("text", ["", "2x", "x y", "w", "x^", "z", "x + + y"])
    def test_rejects(self, text):
        with pytest.raises(PolynomialSyntaxError):
            p2(text)
