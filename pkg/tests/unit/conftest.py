#!/usr/bin/env python3
# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Iterable

import pytest

from arith import Factorization

# odd moduli whose primes are all >= 5, small enough for the O(n^2) oracle
FAST_DOMAIN_MODULI = (5, 7, 11, 13, 25, 35, 49, 55, 65, 77, 91, 125, 175)


def exact_triple_sum(n: int, alternating: bool, primes: Iterable[int] = ()) -> Fraction:
    """The triple sum as an exact rational, straight from its definition."""
    primes = tuple(primes)
    total = Fraction(0)
    for i, j in product(range(1, n), repeat=2):
        k = n - i - j
        if k < 1 or any(gcd(v, p) != 1 for v in (i, j, k) for p in primes):
            continue
        sign = -1 if alternating and i % 2 else 1
        total += Fraction(sign, i * j * k)
    return total


@pytest.fixture
def f5() -> Factorization:
    return Factorization.of([(5, 1)])


@pytest.fixture
def f25() -> Factorization:
    return Factorization.of([(5, 2)])


@pytest.fixture
def f35() -> Factorization:
    return Factorization.of([(5, 1), (7, 1)])
