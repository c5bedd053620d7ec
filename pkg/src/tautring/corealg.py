"""Exact scalar arithmetic and integer-partition combinatorics.

All coefficients in the package are :class:`fractions.Fraction` values.
Partitions are tuples of positive integers in weakly increasing order.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

Rational = Fraction
Partition = tuple

__all__ = [
    "Rational",
    "Partition",
    "factorial",
    "falling_factorial",
    "gen_binom",
    "count_partitions",
    "enum_partitions",
    "rational_to_str",
    "parse_rational",
    "as_rational",
]


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted")
    return Fraction(x)


def falling_factorial(z: int, k: int) -> int:
    out = 1
    for t in range(k):
        out *= z - t
    return out


def gen_binom(z: int, k: int) -> Fraction:
    """Binomial coefficient z(z-1)...(z-k+1)/k! for any integer z.

    Always an integer, returned as a Fraction for uniformity with the rest
    of the coefficient arithmetic.
    """
    if k < 0:
        raise ValueError(f"gen_binom: k must be nonnegative, got {k}")
    return Fraction(falling_factorial(z, k) // factorial(k))


@lru_cache(maxsize=None)
def _bounded(n: int, k: int, l: int) -> int:
    # partitions of n into at most k parts, each part <= l
    if n == 0:
        return 1
    if n < 0 or k <= 0 or l <= 0:
        return 0
    if n > k * l:
        return 0
    return _bounded(n, k, l - 1) + _bounded(n - l, k - 1, l)


def _parts_le(n: int, kmax: int | None, lmax: int | None) -> int:
    k = n if kmax is None else kmax
    l = n if lmax is None else lmax
    return _bounded(n, k, l)


def _parts_eq(n: int, k: int, lmax: int | None) -> int:
    # exactly k parts each <= l  <->  at most k parts each <= l-1, summing to n-k
    if k == 0:
        return 1 if n == 0 else 0
    if n < k or (lmax is not None and lmax < 1):
        return 0
    l = n if lmax is None else lmax
    return _bounded(n - k, k, l - 1)


def _count_with_max_le(n: int, parts, lmax: int | None) -> int:
    if lmax is not None and lmax < 0:
        lmax = 0
    if parts is None:
        return _parts_le(n, None, lmax)
    kind, k = parts
    if k < 0:
        return 0
    if kind == "exactly":
        return _parts_eq(n, k, lmax)
    if kind == "at_most":
        return _parts_le(n, k, lmax)
    raise ValueError(f"unknown parts constraint {kind!r}")


def count_partitions(n: int, parts=None, max_part=None) -> int:
    """Count partitions of ``n`` under optional constraints.

    ``parts`` and ``max_part`` are each ``None`` or a pair ``(kind, k)`` with
    ``kind`` one of ``"exactly"`` or ``"at_most"``. The empty partition of 0
    counts once, whatever the bound on its (nonexistent) parts.

    >>> count_partitions(5, parts=("exactly", 2))
    2
    >>> count_partitions(3, parts=("exactly", 1), max_part=("at_most", 2))
    0
    """
    if n < 0:
        return 0
    if max_part is None:
        return _count_with_max_le(n, parts, None)
    kind, l = max_part
    if kind == "at_most":
        return _count_with_max_le(n, parts, l)
    if kind == "exactly":
        if n == 0:
            return 0
        if l <= 0:
            return 0
        return _count_with_max_le(n, parts, l) - _count_with_max_le(n, parts, l - 1)
    raise ValueError(f"unknown max_part constraint {kind!r}")


def enum_partitions(n: int, k_parts: int | None = None, max_part: int | None = None) -> list[tuple[int, ...]]:
    """Weakly increasing partitions of ``n``, in lexicographic order.

    ``k_parts`` fixes the exact number of parts, ``max_part`` bounds every part.
    """
    if n < 0:
        return []
    top = n if max_part is None else min(n, max_part)
    out: list[tuple[int, ...]] = []

    def rec(remaining: int, lo: int, prefix: list[int]) -> None:
        if k_parts is not None:
            left = k_parts - len(prefix)
            if left == 0:
                if remaining == 0:
                    out.append(tuple(prefix))
                return
            if remaining < left * lo:
                return
            if remaining > left * top:
                return
        elif remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(lo, min(top, remaining) + 1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(n, 1, [])
    return out


def rational_to_str(x) -> str:
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    s = s.strip().replace("−", "-")
    if not s:
        raise ValueError("empty rational literal")
    if any(c in s for c in ".eE"):
        raise ValueError(f"not a num/den literal: {s!r}")
    return Fraction(s)
