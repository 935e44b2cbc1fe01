import pytest
from hypothesis import given, strategies as st

from mrhsglue.errors import NotPrime, ZeroInverse
from mrhsglue.gf import GF2, FieldSpec, add, is_prime, mul, mul_inv, smallest_prime_at_least

PRIMES = [2, 3, 5, 11, 17, 29]


def test_add_examples():
    assert add(1, 1, GF2) == 0
    for x in range(11):
        assert add(0, x, FieldSpec(11)) == x
    assert add(9, 5, FieldSpec(11)) == 3


def test_inverse_examples():
    for q in PRIMES:
        assert mul_inv(1, FieldSpec(q)) == 1
    assert mul_inv(2, FieldSpec(11)) == 6
    assert mul_inv(16, FieldSpec(17)) == 16


def test_zero_has_no_inverse():
    with pytest.raises(ZeroInverse):
        mul_inv(0, FieldSpec(7))
    with pytest.raises(ZeroDivisionError):
        mul_inv(0, GF2)


def test_smallest_prime():
    assert smallest_prime_at_least(2) == 2
    assert smallest_prime_at_least(16) == 17
    assert smallest_prime_at_least(24) == 29
    assert smallest_prime_at_least(8) == 11
    with pytest.raises(ValueError):
        smallest_prime_at_least(1)


def test_non_prime_field_rejected():
    for q in (0, 1, 4, 9, 15):
        with pytest.raises(NotPrime):
            FieldSpec(q)


def test_is_prime_table():
    assert [x for x in range(40) if is_prime(x)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]


@st.composite
def field_and_elems(draw, k=3):
    q = draw(st.sampled_from(PRIMES))
    return FieldSpec(q), [draw(st.integers(0, q - 1)) for _ in range(k)]


@given(field_and_elems())
def test_field_axioms(fe):
    f, (a, b, c) = fe
    assert add(a, b, f) == add(b, a, f)
    assert mul(a, b, f) == mul(b, a, f)
    assert add(add(a, b, f), c, f) == add(a, add(b, c, f), f)
    assert mul(mul(a, b, f), c, f) == mul(a, mul(b, c, f), f)
    assert mul(a, add(b, c, f), f) == add(mul(a, b, f), mul(a, c, f), f)
    assert add(a, f.neg(a), f) == 0
    assert f.sub(add(a, b, f), b) == a
    if a:
        assert mul(a, mul_inv(a, f), f) == 1
