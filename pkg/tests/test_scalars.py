import math

import pytest
import sympy
from hypothesis import given, strategies as st

from hopfkit.scalars import (
    Cyclotomic,
    FieldMismatchError,
    PrimeField,
    Rationals,
    Scalar,
    cyclotomic_polynomial,
    multiplicative_order,
    parse_field,
    parse_scalar,
    primitive_root,
    q_binomial,
    roots_in_field,
)

from conftest import close, cyclo_scalars, gf_scalars, to_complex

z = sympy.Symbol("z")


@pytest.mark.parametrize("n", range(1, 41))
def test_cyclotomic_polynomial_matches_sympy(n):
    want = sympy.Poly(sympy.cyclotomic_poly(n, z), z).all_coeffs()[::-1]
    assert list(cyclotomic_polynomial(n)) == [int(c) for c in want]


def test_cyclotomic_polynomial_examples():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)


def test_small_cyclotomic_fields_normalize():
    assert Cyclotomic(1) == Rationals()
    assert Cyclotomic(2) == Rationals()


def test_primitive_root_examples():
    m1 = primitive_root(2)
    assert m1 == Rationals()(-1) and m1.field == Rationals()
    i = primitive_root(4)
    assert i * i == -1
    w = primitive_root(6)
    assert w**3 == -1 and w != -1


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 24, 30])
def test_root_orders(n):
    r = primitive_root(n)
    assert r**n == 1
    for d in range(1, n):
        if n % d == 0:
            assert r**d != 1
    assert multiplicative_order(r) == n
    for k in range(1, n + 1):
        assert (multiplicative_order(r**k) == n) == (math.gcd(k, n) == 1)


def _gauss_poly(m, i):
    """Gaussian binomial as an integer polynomial in q via the product formula."""
    q = sympy.Symbol("q")
    num = sympy.prod([1 - q ** (m - k) for k in range(i)])
    den = sympy.prod([1 - q ** (k + 1) for k in range(i)])
    return sympy.Poly(sympy.cancel(num / den), q).all_coeffs()[::-1]


def _horner(coeffs, x):
    acc = x.field.zero()
    for c in reversed(coeffs):
        acc = acc * x + int(c)
    return acc


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_q_binomial_matches_product_formula(n):
    q = primitive_root(n)
    for m in range(0, 8):
        for i in range(0, m + 1):
            assert q_binomial(m, i, q) == _horner(_gauss_poly(m, i), q)


def test_q_binomial_examples():
    q = primitive_root(5)
    assert q_binomial(2, 1, q) == 1 + q
    assert all(q_binomial(m, 0, q) == 1 for m in range(6))
    assert q_binomial(4, 2, Rationals()(-1)) == 2
    with pytest.raises(ValueError):
        q_binomial(2, 3, q)


@given(st.integers(0, 9), st.integers(0, 9), st.sampled_from([3, 4, 6, 8]))
def test_q_binomial_symmetry_and_q1(m, i, n):
    if i > m:
        m, i = i, m
    q = primitive_root(n)
    assert q_binomial(m, i, q) == q_binomial(m, m - i, q)
    assert q_binomial(m, i, Rationals().one()) == math.comb(m, i)


@given(cyclo_scalars(n=12), cyclo_scalars(n=12), cyclo_scalars(n=12))
def test_cyclotomic_arithmetic_against_embedding(a, b, c):
    assert close(to_complex(a * b + c), to_complex(a) * to_complex(b) + to_complex(c))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if not a.is_zero():
        assert a * a.inverse() == 1
        assert close(to_complex(a.inverse()), 1 / to_complex(a))


@given(gf_scalars(p=101), gf_scalars(p=101), gf_scalars(p=101))
def test_prime_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    if not a.is_zero():
        assert a * a.inverse() == 1
    assert int(a.to_literal()) % 101 == int(a.to_literal())


@given(cyclo_scalars())
def test_literal_roundtrip(a):
    assert parse_scalar(a.to_literal(), a.field) == a
    assert hash(parse_scalar(a.to_literal(), a.field)) == hash(a)


def test_mixed_field_coercion():
    a = primitive_root(4) + primitive_root(6)
    assert a.field == Cyclotomic(12)
    assert close(to_complex(a), 1j + complex(0.5, math.sqrt(3) / 2))
    assert (primitive_root(4) + 1).field == Cyclotomic(4)
    with pytest.raises(FieldMismatchError):
        PrimeField(7)(1) + Rationals()(1)
    with pytest.raises(FieldMismatchError):
        PrimeField(7)(1) * PrimeField(5)(1)


def test_literals_and_field_descriptors():
    assert parse_scalar("3/2*z^2 - 1", Cyclotomic(4)) == Rationals()(-5) / 2
    assert parse_field({"kind": "Q"}) == Rationals()
    assert parse_field({"kind": "cyclotomic", "n": 8}) == Cyclotomic(8)
    assert parse_field({"kind": "gf", "p": 5}) == PrimeField(5)
    with pytest.raises(ValueError):
        parse_field({"kind": "gf", "p": 6})


def test_roots_in_field():
    F = Cyclotomic(4)
    i = primitive_root(4)
    roots, complete = roots_in_field([F(1), F(0), F(1)])  # z^2 + 1
    assert complete and set(roots) == {i, -i}
    roots, complete = roots_in_field([Rationals()(-2), Rationals()(0), Rationals()(1)])  # z^2 - 2 over Q
    assert roots == [] and not complete
