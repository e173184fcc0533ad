#!/usr/bin/env python3
# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.
from fractions import Fraction
from math import gcd

import pytest

from arith import (
    Factorization,
    ModulusMismatch,
    NonCoprimeModuli,
    NotInvertible,
    Residue,
    crt_combine,
    euler_phi,
    extended_gcd,
    factorize,
    inverse_table,
    is_prime,
    mod_inverse,
    rational_mod,
)


def test_residue_normalizes_on_construction():
    assert Residue(-1, 5).value == 4
    assert Residue(12, 5) == Residue(2, 5)
    with pytest.raises(ValueError):
        Residue(0, 1)


def test_residue_arithmetic():
    a, b = Residue(3, 7), Residue(5, 7)
    assert a + b == Residue(1, 7)
    assert a - b == Residue(5, 7)
    assert a * b == Residue(1, 7)
    assert -a == Residue(4, 7)
    assert 2 * a == Residue(6, 7)
    assert 1 - a == Residue(5, 7)
    assert sum([a, b], Residue(0, 7)) == Residue(1, 7)
    assert a**-1 == Residue(5, 7)
    assert a.inverse() * a == Residue(1, 7)


def test_residue_rejects_mixed_moduli():
    with pytest.raises(ModulusMismatch):
        Residue(1, 5) + Residue(1, 7)


def test_residue_reduce_to_divisor():
    assert Residue(18, 25).reduce(5) == Residue(3, 5)
    with pytest.raises(ModulusMismatch):
        Residue(18, 25).reduce(7)


@pytest.mark.parametrize("a, m, expected", ((1, 9, 1), (3, 5, 2), (-2, 7, 3), (10, 21, 19)))
def test_mod_inverse(a, m, expected):
    assert mod_inverse(a, m) == Residue(expected, m)


def test_mod_inverse_not_invertible():
    with pytest.raises(NotInvertible) as exc:
        mod_inverse(5, 10)
    assert exc.value.value == 5
    assert exc.value.modulus == 10
    assert "gcd = 5" in str(exc.value)


def test_extended_gcd_bezout():
    g, s, t = extended_gcd(240, 46)
    assert g == 2
    assert 240 * s + 46 * t == g


@pytest.mark.parametrize(
    "q, m, expected",
    (
        (Fraction(0), 7, 0),
        (Fraction(7, 4), 5, 3),
        (Fraction(-1, 3), 5, 3),
        (Fraction(-3, 4), 25, 18),
    ),
)
def test_rational_mod(q, m, expected):
    assert rational_mod(q, m) == Residue(expected, m)


def test_rational_mod_refuses_shared_denominator():
    with pytest.raises(NotInvertible):
        rational_mod(Fraction(1, 30), 10)


@pytest.mark.parametrize(
    "n, factors",
    (
        (1225, ((5, 2), (7, 2))),
        (175, ((5, 2), (7, 1))),
        (35, ((5, 1), (7, 1))),
        (24, ((2, 3), (3, 1))),
        (97, ((97, 1),)),
    ),
)
def test_factorize(n, factors):
    f = factorize(n)
    assert f.factors == factors
    assert f.n == n


def test_factorize_rejects_small():
    with pytest.raises(ValueError):
        factorize(1)


def test_factorization_canonical_order_and_properties():
    f = Factorization.of([(7, 1), (5, 2)])
    assert f.factors == ((5, 2), (7, 1))
    assert f.n == 175
    assert f.primes == (5, 7)
    assert f.radical == 35
    assert not f.is_squarefree
    assert f.exponent(5) == 2
    assert f.exponent(11) == 0
    assert f.restrict([7]) == Factorization.of([(7, 1)])
    assert f.squared().n == 175**2
    assert str(f) == "5^2 * 7"


@pytest.mark.parametrize("pairs", ([(5, 1), (5, 2)], [(6, 1)], [(5, 0)]))
def test_factorization_validation(pairs):
    with pytest.raises(ValueError):
        Factorization.of(pairs)


@pytest.mark.parametrize("n, phi", ((5, 4), (35, 24), (1225, 840), (25, 20), (16, 8)))
def test_euler_phi(n, phi):
    assert euler_phi(factorize(n)) == phi


@pytest.mark.slow
def test_euler_phi_counts_units_up_to_10000():
    for n in range(2, 10001):
        units = sum(1 for a in range(1, n + 1) if gcd(a, n) == 1)
        assert euler_phi(factorize(n)) == units, n


def test_is_prime():
    assert [n for n in range(40) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]


@pytest.mark.parametrize(
    "parts, expected",
    (
        ([Residue(1, 5)], Residue(1, 5)),
        ([Residue(3, 5), Residue(4, 7)], Residue(18, 35)),
        ([Residue(0, 4), Residue(0, 9)], Residue(0, 36)),
        ([Residue(2, 3), Residue(3, 5), Residue(2, 7)], Residue(23, 105)),
    ),
)
def test_crt_combine(parts, expected):
    assert crt_combine(parts) == expected


def test_crt_combine_rejects_shared_factors():
    with pytest.raises(NonCoprimeModuli) as exc:
        crt_combine([Residue(1, 6), Residue(1, 4)])
    assert exc.value.moduli == (6, 4)


@pytest.mark.parametrize(
    "m, bound, expected",
    (
        (5, 4, {1: 1, 2: 3, 3: 2, 4: 4}),
        (6, 6, {1: 1, 5: 5}),
        (11, 1, {1: 1}),
    ),
)
def test_inverse_table(m, bound, expected):
    assert inverse_table(m, bound) == expected
