from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from simpleknots.errors import NotPrimitive, ResourceLimit
from simpleknots.floer import (Word, alexander_polynomial, euler_characteristic, f_profile,
                               free_derivative, fundamental_formula_check, genus, iter_f,
                               relator_word, width, width_reference)
from simpleknots.knot import validate
from simpleknots.laurent import LaurentPolynomial as L

from conftest import primitive_triples


def test_profile_of_k512(k512):
    prof = f_profile(k512)
    assert prof.f == (0, 2, -1, -4, -2)
    assert prof.width == 6
    assert prof.genus == 1
    assert prof.gradings == [3, 1, 0, -1, -3]


def test_even_p_gradings_are_half_integers():
    prof = f_profile(validate(4, 1, 1))
    assert prof.f == (0, 1, -2, -1)
    assert prof.width == 3 and prof.genus == 0
    assert prof.gradings == [Fraction(3, 2), Fraction(1, 2), Fraction(-1, 2), Fraction(-3, 2)]


def test_non_primitive_profile_has_no_genus():
    K = validate(9, 2, 6)
    assert f_profile(K).genus is None
    with pytest.raises(NotPrimitive):
        genus(K)
    with pytest.raises(NotPrimitive):
        alexander_polynomial(K)


def test_polynomials_of_k512(k512):
    chi = euler_characteristic(k512)
    assert chi == L.from_integer_coefficients(-3, [1, 0, 1, 1, 1, 0, 1])
    assert str(alexander_polynomial(k512)) == "t^-1 - 1 + t"


def test_width_matches_reference():
    for p, q, k in primitive_triples(25):
        assert width(p, q, k) == width_reference(p, q, k)
    # non-primitive knots have a width too
    assert width(9, 2, 6) == width_reference(9, 2, 6)


def test_width_budget(monkeypatch):
    monkeypatch.setenv("SIMPLEKNOTS_MAX_P", "100")
    with pytest.raises(ResourceLimit):
        width(101, 1, 2)


def test_torus_knot_duals_small():
    for n in range(1, 30):
        assert genus(validate(4 * n + 3, 4, 2)) == n


def test_relator_word_of_k512(k512):
    w = relator_word(k512)
    assert str(w) == "amama^3"
    assert w.degree() == 0
    assert free_derivative(w, "a") == L.from_exponents(iter_f(5, 1, 2)).shift(-4)


def test_fox_derivative_of_inverse_letter():
    w = Word.parse("a m^-1 a", {"a": 2, "m": -5})
    assert w.syllables() == "am^-1a"
    # d/dm of a m^-1 a = -a m^-1 -> -t^(2+5)
    assert free_derivative(w, "m") == L.monomial(7, -1)
    assert fundamental_formula_check(w)


def test_relator_derivative_is_shifted_profile_sum():
    for p, q, k in primitive_triples(12):
        K = validate(p, q, k)
        w = relator_word(K)
        assert free_derivative(w, "a") == L.from_exponents(iter_f(p, q, k)).shift(-2 * k)
        assert fundamental_formula_check(w)


@settings(max_examples=200)
@given(st.lists(st.tuples(st.sampled_from("am"), st.sampled_from([1, -1])), max_size=30),
       st.integers(-9, 9), st.integers(-9, 9))
def test_fundamental_formula_on_random_words(letters, wa, wm):
    assert fundamental_formula_check(Word(tuple(letters), {"a": wa, "m": wm}))


def test_word_parse_roundtrip():
    w = Word.parse("amama^3", {"a": 2, "m": -5})
    assert len(w.letters) == 7
    assert str(Word.parse(str(w), w.weights)) == "amama^3"
    with pytest.raises(ValueError):
        Word((("x", 1),), {"a": 1})
