#!/usr/bin/env python3
# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""Harmonic-type sums: brute-force oracles, building blocks and fast evaluators.

The oracles enumerate compositions directly. The fast evaluators rewrite the
triple sums as pair sums, split the coprimality condition on the difference
by inclusion-exclusion over subsets of the prime factors, and factor every
subset term into residue-class sums. Both paths are exact congruences; no
closed form is used inside an evaluator.
"""

import enum
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import floor, gcd
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from arith import (
    Factorization,
    HarmonicSumsError,
    NotInvertible,
    Rational,
    Residue,
    euler_phi,
    inverse_table,
)
from bernoulli import bernoulli_poly_eval

logger = logging.getLogger(__name__)

Subset = Tuple[int, ...]


class NonInvertibleTerm(NotInvertible):
    """Raised when a summation index that the filter admits is not a unit.

    Solution: declare a coprimality filter covering the primes of the modulus.
    """

    def __init__(self, index: int, modulus: int, *args):
        self.index = index
        self.value = index
        self.modulus = modulus
        HarmonicSumsError.__init__(
            self, f"term index {index} is not invertible modulo {modulus}.", *args
        )


class NonCoprimeResidue(HarmonicSumsError):
    """Raised when a residue class representative shares a factor with its modulus."""

    def __init__(self, x: int, modulus: int, *args):
        super().__init__(f"residue {x} is not coprime to {modulus}.", *args)


class DegenerateDenominator(HarmonicSumsError):
    """Raised when phi(P) - 2 == 0 makes a closed-form coefficient undefined."""

    def __init__(self, modulus: int, *args):
        super().__init__(f"phi({modulus}) - 2 == 0; the closed form has no meaning here.", *args)


class UnsupportedFactorization(HarmonicSumsError):
    """Raised when a fast evaluator or a closed form is asked for an unsupported n.

    Solution: use the naive oracle; the fast paths need n odd with all primes >= 5.
    """

    def __init__(self, f: Factorization, reason: str, *args):
        self.factorization = f
        super().__init__(f"unsupported factorization {f}: {reason}.", *args)


class LiftDivisibilityFailure(HarmonicSumsError):
    """Raised when 3T computed modulo n^2 is not divisible by n.

    This signals an implementation error: the identity behind the lift is exact.
    """

    def __init__(self, value: int, modulus: int, *args):
        self.value = value
        self.modulus = modulus
        super().__init__(
            f"3T = {value} (mod {modulus ** 2}) is not divisible by {modulus}.", *args
        )


class SignPattern(enum.Enum):
    """Weight attached to a triple (i, j, k)."""

    UNIFORM = "uniform"
    ALTERNATING_FIRST = "alt"

    def weight(self, i: int) -> int:
        """-1 for odd i under the alternating pattern, otherwise 1."""
        if self is SignPattern.ALTERNATING_FIRST and i % 2:
            return -1
        return 1


@dataclass(frozen=True)
class CoprimalityFilter:
    """Admits an index iff it is coprime to every listed prime."""

    primes: FrozenSet[int] = frozenset()

    @classmethod
    def of(cls, primes: Iterable[int] = ()) -> "CoprimalityFilter":
        """Filter on the given primes; no primes admits everything."""
        return cls(frozenset(primes))

    @classmethod
    def for_factorization(cls, f: Factorization) -> "CoprimalityFilter":
        """Filter on the distinct primes of f."""
        return cls(frozenset(f.primes))

    def admits(self, i: int) -> bool:
        """Whether no listed prime divides i."""
        return all(i % p for p in self.primes)

    def admitted(self, start: int, stop: int) -> List[int]:
        """Admitted integers in [start, stop]."""
        return [i for i in range(start, stop + 1) if self.admits(i)]

    def __str__(self):
        """Render as `{3,5}`."""
        return "{" + ",".join(map(str, sorted(self.primes))) + "}"


def _unit_inverses(
    indices: Iterable[int], m: int, table: Optional[Dict[int, int]] = None
) -> Dict[int, int]:
    """Inverses of the given indices modulo m; the first non-unit raises."""
    table = table if table is not None else {}
    out = {}
    for i in indices:
        inv = table.get(i)
        if inv is None:
            if gcd(i, m) != 1:
                raise NonInvertibleTerm(i, m)
            inv = pow(i, -1, m)
        out[i] = inv
    return out


def _occurring_parts(admitted: List[int], parts: int, N: int) -> List[int]:  # noqa: N803
    """Admitted indices that appear in some composition of N into `parts` admitted parts."""
    # sums of exactly parts - 1 admitted values, bounded by N - 1
    reachable = {0}
    for _ in range(parts - 1):
        reachable = {v + a for v in reachable for a in admitted if v + a < N}
    return [i for i in admitted if N - i in reachable]


def triple_sum_naive(
    N: int,  # noqa: N803
    sign: SignPattern,
    filter_: CoprimalityFilter,
    m: int,
    inverses: Optional[Dict[int, int]] = None,
) -> Residue:
    """Sum of sign(i) / (ijk) over admitted ordered triples with i + j + k = N."""
    if N < 3:
        raise ValueError(f"triple sums need N >= 3, not {N}")
    # only indices that occur in an admitted triple need to be units
    if inverses is None:
        inverses = inverse_table(m, N)
    occurring = _occurring_parts(filter_.admitted(1, N - 2), 3, N)
    inv = _unit_inverses(occurring, m, inverses)
    indices = sorted(inv)

    total = 0
    for i in indices:
        rest = N - i
        acc = 0
        for j in indices:
            k = rest - j
            if k < 1:
                break
            inv_k = inv.get(k)
            if inv_k is not None:
                acc += inv[j] * inv_k
        total += sign.weight(i) * inv[i] * (acc % m)
    return Residue(total, m)


def kfold_sum_naive(k: int, N: int, filter_: CoprimalityFilter, m: int) -> Residue:  # noqa: N803
    """Sum of 1/(l_1 ... l_k) over admitted compositions of N into k parts.

    h_t[v] collects the t-part compositions of v; two buffers are swapped
    across t so memory stays O(N).
    """
    if k < 1 or N < k:
        raise ValueError(f"need 1 <= k <= N, got k={k}, N={N}")
    occurring = _occurring_parts(filter_.admitted(1, N - k + 1), k, N)
    inv = _unit_inverses(occurring, m, inverse_table(m, N))
    indices = sorted(inv)

    h = [0] * (N + 1)
    nxt = [0] * (N + 1)
    h[0] = 1
    for t in range(1, k + 1):
        for v in range(N + 1):
            s = 0
            if v >= t:
                for i in indices:
                    if i > v:
                        break
                    prev = h[v - i]
                    if prev:
                        s += prev * inv[i]
            nxt[v] = s % m
        h, nxt = nxt, h
    return Residue(h[N], m)


def progression_reciprocal_sum(x: int, mult: int, f: Factorization) -> Residue:
    """S(x, mult, f): sum of 1/i over i = x (mod P), 1 <= i <= mult*n - 1, reduced mod n.

    P is the product of the distinct primes of f and n = f.n.
    """
    P, n = f.radical, f.n  # noqa: N806
    if mult < 1:
        raise ValueError(f"mult must be >= 1, not {mult}")
    if not 1 <= x <= P - 1:
        raise ValueError(f"x must lie in [1, {P - 1}], not {x}")
    if gcd(x, P) != 1:
        raise NonCoprimeResidue(x, P)
    return Residue(sum(pow(i, -1, n) for i in range(x, mult * n, P)), n)


def _class_reciprocal_sums(f: Factorization, modulus: int) -> Dict[int, int]:
    """x -> sum of 1/i over i = x (mod P), i < n, for every unit x mod P."""
    P, n = f.radical, f.n  # noqa: N806
    sums = {}
    for x in range(1, P):
        if gcd(x, P) == 1:
            sums[x] = sum(pow(i, -1, modulus) for i in range(x, n, P)) % modulus
    return sums


def progression_square_terms(f: Factorization) -> Dict[int, Residue]:
    """x -> S(x, 1, f)^2 modulo n^2, for every unit x mod P."""
    if not f.factors:
        raise ValueError("empty factorization")
    modulus = f.n**2
    return {x: Residue(s * s, modulus) for x, s in _class_reciprocal_sums(f, modulus).items()}


def progression_square_sum(f: Factorization) -> Residue:
    """Sum over units x mod P of S(x, 1, f)^2 modulo n^2."""
    return sum(progression_square_terms(f).values(), Residue(0, f.n**2))


def ap_power_sum_direct(p: int, m: int, r: int, k: int) -> Rational:
    """Sum of x^k over 0 <= x <= p - 1 with x = r (mod m)."""
    if p < 1 or m < 1 or k < 0:
        raise ValueError(f"need p >= 1, m >= 1, k >= 0; got p={p}, m={m}, k={k}")
    return Fraction(sum(x**k for x in range(p) if (x - r) % m == 0))


def fractional_part(q: Rational) -> Rational:
    """{q} = q - floor(q), floor rounding toward minus infinity."""
    q = Fraction(q)
    return q - floor(q)


def ap_power_sum_bernoulli(p: int, m: int, r: int, k: int) -> Rational:
    """The same restricted power sum through Bernoulli polynomials."""
    if p < 1 or m < 1 or k < 0:
        raise ValueError(f"need p >= 1, m >= 1, k >= 0; got p={p}, m={m}, k={k}")
    upper = Fraction(p, m) + fractional_part(Fraction(r - p, m))
    lower = fractional_part(Fraction(r, m))
    return (
        Fraction(m) ** k
        / (k + 1)
        * (bernoulli_poly_eval(k + 1, upper) - bernoulli_poly_eval(k + 1, lower))
    )


def _squarefree_modulus(f: Factorization) -> int:
    if not f.factors or not f.is_squarefree:
        raise ValueError(f"expected a nonempty squarefree factorization, got {f}")
    if euler_phi(f) == 2:
        raise DegenerateDenominator(f.n)
    return f.n


def signed_cube_sum(f: Factorization) -> Residue:
    """Sum of (-1)^x / x^3 over units 1 <= x <= P - 1, modulo P."""
    P = _squarefree_modulus(f)  # noqa: N806
    total = 0
    for x in range(1, P):
        if gcd(x, P) == 1:
            total += (-1) ** x * pow(x, -3, P)
    return Residue(total, P)


def half_cube_sum(f: Factorization) -> Residue:
    """Sum of 1 / x^3 over units 1 <= x <= (P - 1) / 2, modulo P."""
    P = _squarefree_modulus(f)  # noqa: N806
    if P % 2 == 0:
        raise UnsupportedFactorization(f, "P must be odd")
    return Residue(sum(pow(x, -3, P) for x in range(1, (P - 1) // 2 + 1) if gcd(x, P) == 1), P)


def unit_harmonic_sum(f: Factorization) -> Residue:
    """Sum of 1/j over 1 <= j < n coprime to n, modulo n."""
    n = f.n
    return Residue(sum(pow(j, -1, n) for j in range(1, n) if gcd(j, n) == 1), n)


def doubling_check(
    N: int, sign: SignPattern, filter_: CoprimalityFilter, m: int  # noqa: N803
) -> Tuple[Residue, Residue]:
    """(sum at 2N, 2 * sum at N), both modulo m."""
    return triple_sum_naive(2 * N, sign, filter_, m), 2 * triple_sum_naive(N, sign, filter_, m)


def subsets(primes: Tuple[int, ...]) -> List[Subset]:
    """All subsets of the primes, empty first, then by size and order."""
    return [c for size in range(len(primes) + 1) for c in combinations(primes, size)]


def _product(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out *= v
    return out


def _require_fast_domain(f: Factorization):
    if not f.factors:
        raise UnsupportedFactorization(f, "empty")
    small = [p for p in f.primes if p < 5]
    if small:
        raise UnsupportedFactorization(f, f"primes {small} are below 5")


def alternating_subset_contributions(f: Factorization) -> Dict[Subset, Residue]:
    """Signed inclusion-exclusion pieces whose total is the alternating triple sum mod n.

    The piece for a subset T with product P_T is
        (-1)^|T| * sum_x A_T[x] * C_T[x],
    where A_T[x] sums 1/j and C_T[x] sums (-1)^m / m^2 over admitted j, m < n
    in the class x mod P_T. The empty subset reduces to the unit harmonic sum
    times the full C sum.
    """
    _require_fast_domain(f)
    n = f.n
    inv = {j: pow(j, -1, n) for j in range(1, n) if gcd(j, n) == 1}
    signed_sq = {j: (-1) ** j * v * v for j, v in inv.items()}

    out: Dict[Subset, Residue] = {}
    for subset in subsets(f.primes):
        if not subset:
            part = unit_harmonic_sum(f) * sum(signed_sq.values())
        else:
            modulus = _product(subset)
            a = [0] * modulus
            c = [0] * modulus
            for j, v in inv.items():
                a[j % modulus] += v
                c[j % modulus] += signed_sq[j]
            part = Residue(sum(x * y for x, y in zip(a, c)), n)
        out[subset] = -part if len(subset) % 2 else part
        logger.debug(f"alternating n={n} subset={subset}: {out[subset].value}")
    return out


def triple_sum_fast_alternating(f: Factorization) -> Residue:
    """Alternating triple sum at N = n over the primes of n, modulo n, in O(2^s n)."""
    return sum(alternating_subset_contributions(f).values(), Residue(0, f.n))


def uniform_subset_contributions(f: Factorization) -> Dict[Subset, Residue]:
    """Signed pieces of the pair sum T, modulo n^2.

    T = sum over admitted j + k < n of 1/(jk) splits by inclusion-exclusion on
    the difference m - j into, for each subset T with product P_T,
        (-1)^|T| * sum_x (S_T[x]^2 - Q_T[x]),
    where S_T[x] and Q_T[x] sum 1/k and 1/k^2 over admitted k < n in the class
    x mod P_T.
    """
    _require_fast_domain(f)
    n = f.n
    modulus = n * n
    inv = {k: pow(k, -1, modulus) for k in range(1, n) if gcd(k, n) == 1}

    out: Dict[Subset, Residue] = {}
    for subset in subsets(f.primes):
        classes = _product(subset)
        s = [0] * classes
        q = [0] * classes
        for k, v in inv.items():
            s[k % classes] += v
            q[k % classes] += v * v
        part = Residue(sum(x * x - y for x, y in zip(s, q)), modulus)
        out[subset] = -part if len(subset) % 2 else part
        logger.debug(f"uniform n={n} subset={subset}: {out[subset].value}")
    return out


def triple_sum_fast_uniform(f: Factorization) -> Residue:
    """Uniform triple sum at N = n over the primes of n, modulo n.

    The triple sum equals (3/n) T exactly; T is evaluated modulo n^2 and the
    division by n is checked, never assumed.
    """
    n = f.n
    pair_sum = sum(uniform_subset_contributions(f).values(), Residue(0, n * n))
    three_t = (3 * pair_sum).value
    if three_t % n:
        raise LiftDivisibilityFailure(three_t, n)
    return Residue(three_t // n, n)
