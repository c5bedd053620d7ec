from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tautring.corealg import (
    as_rational,
    count_partitions,
    enum_partitions,
    gen_binom,
    parse_rational,
    rational_to_str,
)


@pytest.mark.parametrize("z, k, expected", [(5, 2, 10), (-3, 2, 6), (2, 5, 0), (0, 0, 1), (-1, 3, -1)])
def test_gen_binom_values(z, k, expected):
    assert gen_binom(z, k) == expected
    assert isinstance(gen_binom(z, k), Fraction)


def test_gen_binom_rejects_negative_k():
    with pytest.raises(ValueError):
        gen_binom(3, -1)


@given(st.integers(0, 40), st.integers(0, 40))
def test_gen_binom_matches_math_comb(z, k):
    if z >= k:
        assert gen_binom(z, k) == comb(z, k)


def test_count_partitions_examples():
    assert count_partitions(0, parts=("exactly", 0), max_part=("at_most", 6)) == 1
    assert count_partitions(5, parts=("exactly", 2)) == 2
    assert count_partitions(3, parts=("exactly", 1), max_part=("at_most", 2)) == 0
    assert count_partitions(10) == 42


def test_enum_partitions_examples():
    assert enum_partitions(5, 2) == [(1, 4), (2, 3)]
    assert enum_partitions(5, 3) == [(1, 1, 3), (1, 2, 2)]
    assert enum_partitions(0, 0) == [()]
    assert enum_partitions(-1) == []


def _brute(n):
    # every partition of n, independently of enum_partitions
    if n == 0:
        return [()]
    out = []

    def rec(rem, hi, acc):
        if rem == 0:
            out.append(tuple(sorted(acc)))
            return
        for p in range(min(rem, hi), 0, -1):
            rec(rem - p, p, acc + [p])

    rec(n, n, [])
    return out


@pytest.mark.parametrize("n", range(0, 13))
def test_counts_agree_with_brute_force(n):
    parts = _brute(n)
    for k in range(0, n + 1):
        for l in range(0, n + 1):
            exact_k = [p for p in parts if len(p) == k]
            assert count_partitions(n, ("exactly", k), ("at_most", l)) == sum(max(p, default=0) <= l for p in exact_k)
            assert count_partitions(n, ("at_most", k), ("exactly", l)) == sum(
                len(p) <= k and max(p, default=0) == l for p in parts if p
            )
            assert sorted(enum_partitions(n, k, l)) == sorted(p for p in exact_k if max(p, default=0) <= l)


@pytest.mark.parametrize("n", range(1, 21))
def test_conjugation_duality(n):
    # transposing the Young diagram swaps "number of parts" and "largest part"
    for k in range(0, n + 1):
        for l in range(0, n + 1):
            assert count_partitions(n, ("exactly", k), ("at_most", l)) == count_partitions(
                n, ("at_most", l), ("exactly", k)
            )


@pytest.mark.parametrize("n", range(0, 21))
def test_shift_identity(n):
    for k in range(0, 8):
        for l in range(0, 8):
            assert count_partitions(n, ("at_most", k), ("at_most", l)) == count_partitions(
                n + k, ("exactly", k), ("at_most", l + 1)
            )


@given(st.integers(0, 18), st.integers(0, 18), st.integers(0, 18))
def test_enum_length_matches_count(n, k, l):
    assert len(enum_partitions(n, k, l)) == count_partitions(n, ("exactly", k), ("at_most", l))


def test_enum_order_is_lexicographic():
    ps = enum_partitions(12, 4)
    assert ps == sorted(ps)
    assert all(list(p) == sorted(p) for p in ps)


def test_rational_text_round_trip():
    for x in [Fraction(-7, 2), Fraction(0), Fraction(5), Fraction(3, 11)]:
        assert parse_rational(rational_to_str(x)) == x
    assert rational_to_str(Fraction(-7, 2)) == "-7/2"
    assert parse_rational("−3/4") == Fraction(-3, 4)


@pytest.mark.parametrize("bad", ["1.5", "1e3", "", "2E1"])
def test_parse_rational_rejects_non_rational_literals(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        as_rational(0.5)
