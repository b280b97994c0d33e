import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from wiretap.errors import ExponentNotCoprime, NotPrime
from wiretap.fields import (
    FieldElement,
    dth_root,
    find_generator,
    is_irreducible,
    make_extension_field,
    make_prime_field,
)


def test_prime_field_orders():
    assert make_prime_field(13).order == 13
    assert make_prime_field(37).order == 37
    with pytest.raises(NotPrime):
        make_prime_field(12)
    with pytest.raises(NotPrime):
        make_prime_field(1)


@pytest.mark.parametrize("q", [2, 3, 5, 7, 13, 37, 101, 257])
def test_generator_is_smallest_of_full_order(q):
    F = make_prime_field(q)
    g = int(find_generator(F))
    assert g == oracles.smallest_generator(q)
    assert oracles.order(g, q) == q - 1


def test_generator_examples():
    assert int(find_generator(make_prime_field(13))) == 2
    assert int(find_generator(make_prime_field(2))) == 1


def test_dth_root_examples(F13):
    assert dth_root(F13, 6, 5) == 2
    assert dth_root(F13, 0, 5) == 0
    assert dth_root(F13, 1, 7) == 1
    with pytest.raises(ExponentNotCoprime):
        dth_root(F13, 5, 4)


@pytest.mark.parametrize("d", [5, 7, 11])
def test_dth_root_inverts_power(F13, d):
    for x in range(13):
        assert dth_root(F13, pow(x, d, 13), d) == x


def test_dth_root_in_extension():
    E = make_extension_field(make_prime_field(13), 2)
    d = 5  # gcd(5, 168) = 1
    rnd = random.Random(3)
    for _ in range(50):
        x = E.random(rnd)
        assert dth_root(E, E.pow(x, d), d) == x


def test_extension_examples():
    F = make_prime_field(13)
    E1 = make_extension_field(F, 1)
    assert E1.order == 13 and E1.modulus == (0, 1)
    E2 = make_extension_field(F, 2)
    assert E2.order == 169
    assert E2.modulus == (2, 0, 1)


@pytest.mark.parametrize("q,mu", [(13, 2), (13, 3), (2, 3), (5, 2), (37, 2)])
def test_modulus_irreducible_and_rootless(q, mu):
    E = make_extension_field(make_prime_field(q), mu)
    m = E.modulus
    assert oracles.is_irreducible(m, q)
    assert all(oracles.poly_eval(m, x, q) for x in range(q))
    assert is_irreducible(m, q)


@pytest.mark.parametrize("m,q,want", [((1, 0, 1), 5, False), ((2, 0, 1), 5, True), ((1, 1, 0, 1), 2, True), ((1, 0, 0, 1), 2, False)])
def test_irreducibility_matches_sympy(m, q, want):
    assert is_irreducible(m, q) == want == oracles.is_irreducible(m, q)


def test_extension_mul_matches_sympy():
    q = 13
    E = make_extension_field(make_prime_field(q), 3)
    rnd = random.Random(11)
    for _ in range(200):
        a, b = E.random(rnd), E.random(rnd)
        assert E.mul(a, b) == oracles.ext_mul(a, b, E.modulus, q)


def test_extension_inverse_and_elements():
    E = make_extension_field(make_prime_field(5), 2)
    elems = list(E.elements())
    assert len(set(elems)) == 25
    for a in elems[1:]:
        assert E.mul(a, E.inv(a)) == E.one
    with pytest.raises(ZeroDivisionError):
        E.inv(E.zero)


def test_vector_bijection_round_trip():
    E = make_extension_field(make_prime_field(13), 3)
    for vec in [(1, 2, 3), (0, 0, 0), (12, 0, 5)]:
        assert E.to_vector(E.from_vector(vec)) == vec
    with pytest.raises(ValueError):
        E.from_vector((1, 2))


def test_field_element_wrapper(F13):
    a, b = F13(5), F13(9)
    assert int(a + b) == 1
    assert int(a - b) == 9
    assert int(a * b) == 6
    assert int(a / b) == 5 * pow(9, -1, 13) % 13
    assert int(-a) == 8
    assert int(a**-1) == 8
    assert a * a.inverse() == 1
    assert 3 - a == F13(11)
    with pytest.raises(TypeError):
        a + make_prime_field(37)(1)


elems37 = st.integers(min_value=0, max_value=36)


@settings(max_examples=200, deadline=None)
@given(elems37, elems37, elems37)
def test_prime_field_axioms(a, b, c):
    F = make_prime_field(37)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1


vec3 = st.tuples(*[st.integers(0, 12)] * 3)


@settings(max_examples=100, deadline=None)
@given(vec3, vec3, vec3)
def test_extension_field_axioms(a, b, c):
    E = make_extension_field(make_prime_field(13), 3)
    assert E.mul(a, E.add(b, c)) == E.add(E.mul(a, b), E.mul(a, c))
    assert E.mul(E.mul(a, b), c) == E.mul(a, E.mul(b, c))
    assert E.mul(a, b) == E.mul(b, a)
    if any(a):
        assert E.mul(a, E.inv(a)) == E.one


def test_field_element_is_hashable_and_canonical(F13):
    assert F13(14) == F13(1)
    assert len({F13(1), F13(14), F13(2)}) == 2
    assert isinstance(F13(3), FieldElement)
