#!/usr/bin/env python3
# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.
"""Acceptance grid, at desk scale.

Statements that are theorems for the given inputs must pass. Where the closed
form is not known to hold (several primes), the report must still be internally
consistent and pin any failure to a subset term.
"""
import pytest

from arith import Residue, factorize
from config import load_grid
from congruence import Method, half_cube_rhs, verify
from harmonic import (
    CoprimalityFilter,
    SignPattern,
    half_cube_sum,
    triple_sum_fast_alternating,
    triple_sum_fast_uniform,
    triple_sum_naive,
)


def _disagreement(report) -> bool:
    return any(note.startswith("naive LHS") for note in report.notes)


def _localized(report) -> bool:
    return report.passed or any("subset" in note for note in report.notes)


@pytest.mark.parametrize("p, expected", ((5, 3), (7, None), (11, None), (13, None)))
def test_uniform_triple_sum_at_prime(p, expected):
    report = verify("literature:eq1_1", {"p": p})
    assert report.passed, report.notes
    if expected is not None:
        assert report.lhs == Residue(expected, p)


@pytest.mark.parametrize("p", (3, 5, 7, 11, 13))
def test_alternating_prime(p):
    report = verify("corollary:c1_1", {"p": p})
    assert report.passed, report.notes
    assert not _disagreement(report)


@pytest.mark.parametrize("target", ("corollary:c1_2", "literature:eq1_6"))
@pytest.mark.parametrize("p, r", ((5, 2), (5, 3), (7, 2), (11, 2)))
def test_alternating_prime_power(target, p, r):
    report = verify(target, {"p": p, "r": r})
    assert report.passed, report.notes
    assert report.modulus == p**r


@pytest.mark.parametrize("p, r", ((5, 2), (5, 3), (7, 2)))
def test_uniform_prime_power_both_forms(p, r):
    corollary = verify("corollary:c1_4", {"p": p, "r": r})
    literature = verify("literature:eq1_3", {"p": p, "r": r})
    assert corollary.passed and literature.passed
    assert corollary.lhs == literature.lhs
    assert any(note.startswith("printed forms agree") for note in corollary.notes)


@pytest.mark.parametrize("p", (7, 11, 13))
@pytest.mark.parametrize("k", (3, 4, 5))
def test_kfold_at_prime(p, k):
    assert verify("literature:eq1_2", {"p": p, "k": k}).passed


@pytest.mark.parametrize("p", (7, 11, 13))
def test_five_fold(p):
    report = verify("literature:eq1_4", {"p": p, "r": 1})
    assert report.passed, report.notes


def test_alternating_mod_p_squared():
    report = verify("literature:eq1_5", {"p": 5})
    assert report.passed
    assert report.rhs == Residue(18, 25)


@pytest.mark.parametrize("n", (35, 175, 245, 385))
def test_theorem1_composite(n):
    report = verify("theorem1", {"n": n})
    assert report.method is Method.BOTH
    assert not _disagreement(report)
    assert _localized(report)


def test_theorem1_fast_only():
    report = verify("theorem1", {"n": 1225}, Method.FAST)
    assert report.method is Method.FAST
    assert report.lhs is not None
    assert _localized(report)


@pytest.mark.parametrize("r0", (1, 2))
def test_theorem1_doubling(r0):
    report = verify("theorem1", {"n": 5, "r0": r0})
    assert report.passed, report.notes
    assert report.lhs == Residue(2**r0 * 3, 5)

    composite = verify("theorem1", {"n": 35, "r0": r0})
    assert not _disagreement(composite)
    assert _localized(composite)


def test_theorem2_prime_square():
    report = verify("theorem2", {"n": 25})
    assert report.passed
    assert not any(note.startswith("LiftDivisibilityFailure") for note in report.notes)


@pytest.mark.parametrize("n", (35, 175))
def test_theorem2_composite(n):
    report = verify("theorem2", {"n": n})
    assert not _disagreement(report)
    assert not any(note.startswith("LiftDivisibilityFailure") for note in report.notes)
    assert _localized(report)


@pytest.mark.parametrize(
    "target",
    ("lemma:l2_1", "lemma:l2_2", "lemma:l2_4", "lemma:l2_5"),
)
def test_lemma_grids(target):
    points = load_grid(target=target)
    assert points
    for point in points:
        report = verify(point.target, point.param_dict)
        assert report.passed, (point, report.notes)


@pytest.mark.parametrize("n", (5, 25))
def test_lemma_square_sums(n):
    assert verify("lemma:l2_3", {"n": n}).passed


@pytest.mark.parametrize("n", (5, 7))
def test_lemma_cube_sums(n):
    assert verify("lemma:l2_6", {"n": n}).passed


def test_cube_sums_at_35_miss_their_closed_forms():
    report = verify("lemma:l2_6", {"n": 35})
    assert not report.passed
    assert report.lhs == Residue(2, 35)
    assert report.rhs == Residue(8, 35)
    assert "signed cube sum 18 does not match its closed form 2" in report.notes


@pytest.mark.parametrize("n", (55, 77))
def test_cube_sums_at_two_primes_are_reported_as_computed(n):
    f = factorize(n)
    report = verify("lemma:l2_6", {"n": n})
    assert report.lhs == half_cube_sum(f)
    assert report.rhs == half_cube_rhs(f)
    assert report.passed == (report.lhs == report.rhs)
    assert any(note.startswith("signed cube sum") for note in report.notes)


@pytest.mark.parametrize("sign", ("uniform", "alt"))
@pytest.mark.slow
def test_doubling_law_sweep(sign):
    for n in range(3, 501, 2):
        report = verify("lemma:l2_7", {"n": n, "sign": sign})
        assert report.passed, (n, report.notes)


def _fast_domain(bound):
    for n in range(5, bound + 1, 2):
        if all(p >= 5 for p in factorize(n).primes):
            yield n


@pytest.mark.slow
def test_fast_paths_match_the_oracle():
    for n in _fast_domain(2000):
        f = factorize(n)
        filter_ = CoprimalityFilter.for_factorization(f)
        alt = triple_sum_naive(n, SignPattern.ALTERNATING_FIRST, filter_, n)
        uniform = triple_sum_naive(n, SignPattern.UNIFORM, filter_, n)
        assert triple_sum_fast_alternating(f) == alt, n
        assert triple_sum_fast_uniform(f) == uniform, n


@pytest.mark.parametrize(
    "params", ({"p1": 5, "r1": 1, "p2": 7, "r2": 1}, {"p1": 7, "r1": 2, "p2": 5, "r2": 1})
)
def test_corollary_1_3_adjudication(params):
    report = verify("corollary:c1_3", params)
    assert not _disagreement(report)
    assert any(note.startswith("literal form") for note in report.notes)
    assert any(note.startswith("theorem 1 specialization") for note in report.notes)
