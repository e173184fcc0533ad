#!/usr/bin/env python3
# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""Exact Bernoulli numbers and polynomials, and their modular reductions.

The convention here is B_1 = -1/2: the power-sum identity for arithmetic
progressions only holds as stated with that sign.
"""

import logging
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import List, Sequence, Tuple

from arith import (
    HarmonicSumsError,
    NotInvertible,
    Rational,
    Residue,
    factorize,
    is_prime,
    rational_mod,
)

logger = logging.getLogger(__name__)


class BernoulliDenominatorError(NotInvertible):
    """Raised when B_k cannot be reduced modulo m.

    By von Staudt-Clausen, a prime q divides the denominator of B_k (k even)
    exactly when (q - 1) | k; any such q dividing m blocks the reduction.
    """

    def __init__(self, index: int, modulus: int, primes: Sequence[int], *args):
        self.index = index
        self.primes = tuple(primes)
        self.value = bernoulli(index).denominator
        self.modulus = modulus
        msg = (
            f"B_{index} cannot be reduced modulo {modulus}: its denominator is divisible "
            f"by {', '.join(map(str, self.primes))}."
        )
        HarmonicSumsError.__init__(self, msg, *args)


class _BernoulliCache:
    """Exact B_0..B_N, grown on demand and never shrunk.

    Only even indices are computed through the recurrence; odd ones are fixed.
    The running sum is kept over a common denominator so each new entry costs
    integer multiplications rather than Fraction normalizations.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._even: List[Fraction] = [Fraction(1)]  # B_0, B_2, B_4, ...
        self._lcm = 1  # lcm of the denominators in self._even

    @property
    def size(self) -> int:
        """Largest index computed so far."""
        return 2 * (len(self._even) - 1)

    def _grow(self, half: int):
        even = self._even
        while len(even) <= half:
            k = 2 * len(even)
            den = self._lcm
            # sum_{j<k} C(k+1, j) B_j with B_1 = -1/2 and odd j >= 3 vanishing
            num = sum(
                comb(k + 1, 2 * j) * b.numerator * (den // b.denominator)
                for j, b in enumerate(even)
            )
            acc = Fraction(num, den) - Fraction(k + 1, 2)
            b_k = -acc / (k + 1)
            even.append(b_k)
            self._lcm = den * b_k.denominator // gcd(den, b_k.denominator)
        logger.debug(f"bernoulli table grown to index {self.size}")

    def get(self, k: int) -> Fraction:
        """Return B_k, growing the table under the lock on a miss.

        Raises:
            ValueError: if k is negative.
        """
        if k < 0:
            raise ValueError(f"Bernoulli index must be >= 0, not {k}")
        if k == 1:
            return Fraction(-1, 2)
        if k % 2:
            return Fraction(0)
        half = k // 2
        if half >= len(self._even):
            with self._lock:
                if half >= len(self._even):
                    logger.info(f"extending bernoulli table to index {k}")
                    self._grow(half)
        return self._even[half]


_CACHE = _BernoulliCache()


def bernoulli(k: int) -> Rational:
    """Exact B_k."""
    return _CACHE.get(k)


@dataclass(frozen=True)
class BernoulliTable:
    """Snapshot of B_0..B_N."""

    values: Tuple[Fraction, ...]

    def __getitem__(self, k: int) -> Fraction:
        """B_k from the snapshot."""
        return self.values[k]

    def __len__(self):
        """Number of stored values, N + 1."""
        return len(self.values)

    def residual(self, k: int) -> Fraction:
        """sum_{j<=k} C(k+1, j) B_j, which is zero for every k >= 1."""
        return sum((comb(k + 1, j) * self.values[j] for j in range(k + 1)), Fraction(0))


def bernoulli_numbers(N: int) -> BernoulliTable:  # noqa: N803
    """Snapshot B_0, ..., B_N from the shared cache.

    Args:
        N: largest index wanted.

    Returns:
        A table indexed by k, B_1 = -1/2 included.

    Raises:
        ValueError: if N is negative.
    """
    if N < 0:
        raise ValueError(f"N must be >= 0, not {N}")
    bernoulli(N)  # grow once, under the lock
    return BernoulliTable(tuple(bernoulli(k) for k in range(N + 1)))


def bernoulli_poly_eval(k: int, x: Rational) -> Rational:
    """B_k(x) = sum_j C(k, j) B_j x^(k-j)."""
    if k < 0:
        raise ValueError(f"polynomial degree must be >= 0, not {k}")
    x = Fraction(x)
    return sum((comb(k, j) * bernoulli(j) * x ** (k - j) for j in range(k + 1)), Fraction(0))


def staudt_clausen_primes(k: int) -> Tuple[int, ...]:
    """Primes q with (q - 1) | k, ascending."""
    if k < 2 or k % 2:
        raise ValueError(f"von Staudt-Clausen needs an even index >= 2, not {k}")
    divisors = [d for d in range(1, k + 1) if k % d == 0]
    return tuple(d + 1 for d in divisors if is_prime(d + 1))


def staudt_clausen_denominator(k: int) -> int:
    """Product of the primes q with (q - 1) | k, the exact denominator of B_k."""
    out = 1
    for q in staudt_clausen_primes(k):
        out *= q
    return out


def bernoulli_mod(k: int, m: int) -> Residue:
    """B_k reduced modulo m, refusing when a prime of m divides its denominator."""
    if k >= 2 and k % 2 == 0 and m >= 2:
        blocking = [p for p in factorize(m).primes if k % (p - 1) == 0]
        if blocking:
            raise BernoulliDenominatorError(k, m, sorted(blocking))
    elif k == 1 and m % 2 == 0:
        raise BernoulliDenominatorError(k, m, (2,))
    return rational_mod(bernoulli(k), m)


def raabe_multiplication(m: int, k: int, x: Rational) -> Tuple[Rational, Rational]:
    """Both sides of m^(k-1) sum_{r<m} B_k(x + r/m) = B_k(mx)."""
    if m < 1 or k < 0:
        raise ValueError(f"need m >= 1 and k >= 0, got m={m}, k={k}")
    x = Fraction(x)
    lhs = Fraction(m) ** (k - 1) * sum(
        (bernoulli_poly_eval(k, x + Fraction(r, m)) for r in range(m)), Fraction(0)
    )
    return lhs, bernoulli_poly_eval(k, m * x)


def half_value_identity(nn: int) -> Tuple[Rational, Rational]:
    """Both sides of B_2n(1/2) = ((1 - 2^(2n-1)) / 2^(2n-1)) B_2n."""
    if nn < 1:
        raise ValueError(f"nn must be >= 1, not {nn}")
    power = Fraction(2) ** (2 * nn - 1)
    return bernoulli_poly_eval(2 * nn, Fraction(1, 2)), (1 - power) / power * bernoulli(2 * nn)
