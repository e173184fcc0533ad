#!/usr/bin/env python3
# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""Exact and modular arithmetic primitives."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, Sequence, Tuple, Union

logger = logging.getLogger(__name__)

# arbitrary-precision reduced fraction; Fraction keeps gcd(num, den) == 1 and den >= 1
Rational = Fraction


class HarmonicSumsError(RuntimeError):
    """Base class for exceptions raised while evaluating sums or closed forms."""


class NotInvertible(HarmonicSumsError):
    """Raised when a value shares a factor with the modulus it is reduced against.

    Solution: pick a modulus coprime to the denominator, or filter out the offending index.
    """

    def __init__(self, value: int, modulus: int, *args):
        self.value = value
        self.modulus = modulus
        msg = f"{value} is not invertible modulo {modulus} (gcd = {gcd(value, modulus)})."
        super().__init__(msg, *args)


class NonCoprimeModuli(HarmonicSumsError):
    """Raised when CRT parts have moduli sharing a factor."""

    def __init__(self, moduli: Sequence[int], *args):
        self.moduli = tuple(moduli)
        super().__init__(f"moduli {list(self.moduli)} are not pairwise coprime.", *args)


class ModulusMismatch(HarmonicSumsError):
    """Raised when Residues with different moduli are combined."""

    def __init__(self, left: int, right: int, *args):
        super().__init__(f"cannot combine residues mod {left} and mod {right}.", *args)


@dataclass(frozen=True)
class Residue:
    """An integer class modulo `modulus`, stored canonically in [0, modulus)."""

    value: int
    modulus: int

    def __post_init__(self):
        """Reduce the value into [0, modulus).

        Raises:
            ValueError: if the modulus is smaller than 2.
        """
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, not {self.modulus}")
        # negative intermediates normalize on construction
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other: Union["Residue", int]) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ModulusMismatch(self.modulus, other.modulus)
            return other.value
        return other

    def __add__(self, other: Union["Residue", int]) -> "Residue":
        """Sum; an int operand is read modulo the same modulus."""
        return Residue(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other: Union["Residue", int]) -> "Residue":
        """Difference, with the same coercion as addition."""
        return Residue(self.value - self._coerce(other), self.modulus)

    def __rsub__(self, other: int) -> "Residue":
        """Difference with an int on the left."""
        return Residue(other - self.value, self.modulus)

    def __mul__(self, other: Union["Residue", int]) -> "Residue":
        """Product; mixing moduli raises ModulusMismatch."""
        return Residue(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self) -> "Residue":
        """Additive inverse."""
        return Residue(-self.value, self.modulus)

    def __pow__(self, exponent: int) -> "Residue":
        """Power; a negative exponent goes through the inverse.

        Raises:
            NotInvertible: if the exponent is negative and the value is not a unit.
        """
        if exponent < 0:
            return mod_inverse(self.value, self.modulus) ** -exponent
        return Residue(pow(self.value, exponent, self.modulus), self.modulus)

    def inverse(self) -> "Residue":
        """Multiplicative inverse; raises NotInvertible for non-units."""
        return mod_inverse(self.value, self.modulus)

    def reduce(self, modulus: int) -> "Residue":
        """Project onto a divisor of the current modulus."""
        if self.modulus % modulus:
            raise ModulusMismatch(self.modulus, modulus)
        return Residue(self.value, modulus)

    def __str__(self):
        """Render as `value (mod modulus)`."""
        return f"{self.value} (mod {self.modulus})"


@dataclass(frozen=True)
class Factorization:
    """Prime-power decomposition n = p1^r1 ... ps^rs.

    Factors are kept with exponents descending and ties broken by the smaller
    prime, which is the r1 >= r2 >= ... >= rs order the theorems assume.
    """

    factors: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        """Validate the prime powers and sort them into canonical order."""
        pairs = tuple((int(p), int(e)) for p, e in self.factors)
        primes = [p for p, _ in pairs]
        if len(set(primes)) != len(primes):
            raise ValueError(f"repeated prime in factorization {pairs}")
        for p, e in pairs:
            if e < 1 or not is_prime(p):
                raise ValueError(f"invalid prime power {p}^{e}")
        object.__setattr__(self, "factors", tuple(sorted(pairs, key=lambda f: (-f[1], f[0]))))

    @classmethod
    def of(cls, pairs: Iterable[Tuple[int, int]]) -> "Factorization":
        """Build from (prime, exponent) pairs in any order."""
        return cls(tuple(pairs))

    @property
    def n(self) -> int:
        """The integer this factorization reconstructs."""
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    @property
    def primes(self) -> Tuple[int, ...]:
        """Distinct primes, in factor order."""
        return tuple(p for p, _ in self.factors)

    @property
    def radical(self) -> int:
        """Product of the distinct primes."""
        out = 1
        for p in self.primes:
            out *= p
        return out

    @property
    def is_squarefree(self) -> bool:
        """Whether every exponent is 1."""
        return all(e == 1 for _, e in self.factors)

    def exponent(self, prime: int) -> int:
        """Exponent of `prime`, 0 when it does not divide n."""
        return dict(self.factors).get(prime, 0)

    def restrict(self, primes: Iterable[int]) -> "Factorization":
        """Sub-factorization on the given primes."""
        wanted = set(primes)
        return Factorization(tuple(f for f in self.factors if f[0] in wanted))

    def squared(self) -> "Factorization":
        """Factorization of n squared."""
        return Factorization(tuple((p, 2 * e) for p, e in self.factors))

    def __str__(self):
        """Render as `p^e * q`, exponents of 1 omitted."""
        return " * ".join(f"{p}^{e}" if e > 1 else f"{p}" for p, e in self.factors)


def is_prime(n: int) -> bool:
    """Deterministic trial division; desk-scale inputs only."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    i = 5
    while i * i <= n:
        if n % i == 0 or n % (i + 2) == 0:
            return False
        i += 6
    return True


def extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, s, t) with a*s + b*t == g == gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def mod_inverse(a: int, m: int) -> Residue:
    """Inverse of a modulo m via extended Euclid."""
    if m < 2:
        raise ValueError(f"modulus must be >= 2, not {m}")
    g, s, _ = extended_gcd(a % m, m)
    if g != 1:
        raise NotInvertible(a, m)
    return Residue(s, m)


def rational_mod(q: Rational, m: int) -> Residue:
    """Reduce an exact rational modulo m."""
    q = Fraction(q)
    if gcd(q.denominator, m) != 1:
        raise NotInvertible(q.denominator, m)
    return Residue(q.numerator, m) * mod_inverse(q.denominator, m)


def factorize(n: int) -> Factorization:
    """Factor n >= 2 by trial division."""
    if n < 2:
        raise ValueError(f"cannot factorize {n}; n must be >= 2")
    pairs = []
    rest = n
    d = 2
    while d * d <= rest:
        if rest % d == 0:
            e = 0
            while rest % d == 0:
                rest //= d
                e += 1
            pairs.append((d, e))
        d += 1 if d == 2 else 2
    if rest > 1:
        pairs.append((rest, 1))
    return Factorization(tuple(pairs))


def euler_phi(f: Factorization) -> int:
    """Number of units modulo f.n, read off the prime powers."""
    out = 1
    for p, e in f.factors:
        out *= p ** (e - 1) * (p - 1)
    return out


def crt_combine(parts: Sequence[Residue]) -> Residue:
    """Glue residues with pairwise-coprime moduli into one residue mod their product."""
    if not parts:
        raise ValueError("crt_combine needs at least one part")
    moduli = [r.modulus for r in parts]
    for i, a in enumerate(moduli):
        for b in moduli[i + 1 :]:
            if gcd(a, b) != 1:
                raise NonCoprimeModuli(moduli)

    value, modulus = parts[0].value, parts[0].modulus
    for part in parts[1:]:
        # value + modulus * t == part.value (mod part.modulus)
        t = (part.value - value) * mod_inverse(modulus, part.modulus).value
        value += modulus * (t % part.modulus)
        modulus *= part.modulus
    return Residue(value, modulus)


def inverse_table(m: int, bound: int) -> Dict[int, int]:
    """Map every unit k <= bound to its inverse mod m."""
    if bound < 1:
        raise ValueError(f"bound must be >= 1, not {bound}")
    if m < 2:
        raise ValueError(f"modulus must be >= 2, not {m}")
    return {k: pow(k, -1, m) for k in range(1, bound + 1) if gcd(k, m) == 1}
