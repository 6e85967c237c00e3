"""Randomized invariants of the Floer data and the family predicates."""
import math

import numpy as np
from hypothesis import assume, given, settings, strategies as st

from simpleknots.cone import is_lspace_surgery, surgery_rank, truncated_complex_rank
from simpleknots.families import classify, family_match, matched_tags
from simpleknots.floer import (alexander_polynomial, euler_characteristic, f_profile,
                               fundamental_formula_check, profile_array, relator_word, width,
                               width_reference)
from simpleknots.kernels import inverse_table
from simpleknots.knot import canonical_form, equivalent_parameter_set, validate
from simpleknots.laurent import LaurentPolynomial as L


@st.composite
def primitive_triple(draw, max_p=400):
    p = draw(st.integers(2, max_p))
    q = draw(st.integers(1, p - 1).filter(lambda x: math.gcd(x, p) == 1))
    k = draw(st.integers(1, p - 1).filter(lambda x: math.gcd(x, p) == 1))
    return p, q, k


@settings(max_examples=300)
@given(primitive_triple())
def test_width_symmetries(t):
    p, q, k = t
    K = validate(p, q, k)
    w = width(p, q, k)
    assert w == width_reference(p, q, k)
    for q2, k2 in equivalent_parameter_set(K):
        assert width(p, q2, k2) == w
    assert width(*[getattr(canonical_form(K), a) for a in "pqk"]) == w
    assert (w - p + 1) % 2 == 0 and w >= p - 1


@settings(max_examples=300)
@given(primitive_triple())
def test_profile_structure(t):
    p, q, k = t
    f = profile_array(p, q, k)
    assert f[0] == 0
    assert sorted(f % p) == list(range(p))
    assert np.array_equal(f % p, np.arange(p) * k % p)
    prof = f_profile(validate(p, q, k))
    assert sorted(prof.doubled_gradings) == sorted(-d for d in prof.doubled_gradings)


@settings(max_examples=150)
@given(primitive_triple(max_p=300))
def test_polynomial_identities(t):
    p, q, k = t
    K = validate(p, q, k)
    chi = euler_characteristic(K)
    delta = alexander_polynomial(K)
    assert chi * L({1: 1, -1: -1}) == delta * L({p: 1, -p: -1})
    assert delta.at_one() == 1 and delta.is_symmetric() and chi.at_one() == p
    assert chi.is_symmetric()
    assert fundamental_formula_check(relator_word(K))


@settings(max_examples=100, deadline=None)
@given(primitive_triple(max_p=40), st.integers(-3, 3))
def test_label_walk_matches_oracle(t, turns):
    p, q, k = t
    K = validate(p, q, k)
    a = k * k * pow(q, -1, p) % p
    m = -a + turns * p
    assume(m != 0)
    assert surgery_rank(K, m) == truncated_complex_rank(K, m)
    assert surgery_rank(K, m) >= abs(m)


@settings(max_examples=200)
@given(st.integers(3, 1500).flatmap(
    lambda p: st.tuples(st.just(p), st.integers(1, p - 1).filter(lambda k: math.gcd(k, p) == 1))))
def test_classification_is_orbit_invariant(t):
    p, k = t
    ki = pow(k, -1, p)
    tags = matched_tags(family_match(p, k))
    for other in (p - k, ki, p - ki):
        assert matched_tags(family_match(p, other)) == tags
    rep = classify(p, k)
    assert rep.width == width(p, k * k % p, k)
    assert rep.lspace_criterion == (rep.width < 2 * p)


@settings(max_examples=100)
@given(st.integers(2, 3000))
def test_inverse_table(p):
    inv = inverse_table(p)
    for k in range(1, p):
        if math.gcd(k, p) == 1:
            assert k * int(inv[k]) % p == 1
        else:
            assert inv[k] == 0


@settings(max_examples=100, deadline=None)
@given(primitive_triple(max_p=150))
def test_homology_sphere_lspace_criterion(t):
    p, _q, k = t
    for q in {k * k % p, -k * k % p}:
        K = validate(p, q, k)
        a = k * k * pow(q, -1, p) % p
        for m in (1, -1):
            if (m + a) % p == 0:
                assert is_lspace_surgery(K, m) == (width(p, q, k) < 2 * p)
