"""Relations coming from a linear system g^r_d and the factor Psi(g, i, r).

B(i, s) sums m_1!...m_s! x_{m_1}...x_{m_s} over compositions of i into s
parts >= 1; C(i, s) does the same with parts >= 2. Compositions are grouped
by their underlying partition, each weighted by its number of orderings.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import comb, factorial, prod

from . import kernels
from .corealg import enum_partitions, falling_factorial, gen_binom
from .operators import op_D_power
from .polyring import Monomial, Polynomial, partition_monomial


def _orderings(parts: tuple[int, ...]) -> int:
    return factorial(len(parts)) // prod(factorial(c) for c in Counter(parts).values())


def _composition_sum(i: int, s: int, min_part: int) -> Polynomial:
    if s < 0 or i < 0:
        return Polynomial()
    if s == 0:
        return Polynomial.const(1) if i == 0 else Polynomial()
    terms = {}
    for parts in enum_partitions(i, s):
        if parts[0] < min_part:
            continue
        terms[partition_monomial(parts)] = _orderings(parts) * prod(factorial(m) for m in parts)
    return Polynomial(terms)


def gen_B(i: int, s: int) -> Polynomial:
    return _composition_sum(i, s, 1)


def gen_C(i: int, s: int) -> Polynomial:
    return _composition_sum(i, s, 2)


def check_BC_identity(i: int, s: int) -> bool:
    """B(i, s) == sum_a binom(s, a) x_1^a C(i - a, s - a)."""
    rhs = Polynomial()
    for a in range(0, s + 1):
        rhs = rhs + (gen_C(i - a, s - a) * Monomial({1: a})).scale(comb(s, a))
    return gen_B(i, s) == rhs


def lemma_C_constant(i: int, s: int) -> int:
    """i! (i-s-1)! / (i-2s)!, read as 0 when i - 2s < 0."""
    if i - 2 * s < 0:
        return 0
    return factorial(i) * factorial(i - s - 1) // factorial(i - 2 * s)


def check_lemma_C(i: int, s: int, g: int = 7) -> bool:
    """D^{s-1} C(i, s) == lemma_C_constant(i, s) * x_{i+1-s}."""
    if s < 1 or i < 0:
        raise ValueError("check_lemma_C needs s >= 1 and i >= 0")
    lhs = op_D_power(gen_C(i, s), g, s - 1)
    c = lemma_C_constant(i, s)
    rhs = Polynomial.var(i + 1 - s).scale(c) if c else Polynomial()
    return lhs == rhs


def psi(g: int, i: int, r: int) -> int:
    """sum_{a<r} binom(i-g, a) binom(i-a, r-a) binom(i-r-1, r-1-a)."""
    if r < 1:
        raise ValueError("psi needs r >= 1")
    total = sum(
        gen_binom(i - g, a) * gen_binom(i - a, r - a) * gen_binom(i - r - 1, r - 1 - a) for a in range(r)
    )
    return int(total)


def psi_reduced(g: int, i: int, r: int) -> Fraction:
    """Psi(g, i, r) / (i - r + 1), evaluated as a polynomial (also at i = r - 1).

    Every term of Psi carries the factor i - r + 1 through binom(i-a, r-a).
    r!(r-1)! times this value is the factor printed for r = 2, 3, 4.
    """
    if r < 1:
        raise ValueError("psi needs r >= 1")
    total = Fraction(0)
    for a in range(r):
        mid = Fraction(falling_factorial(i - a, r - a - 1), factorial(r - a))
        total += gen_binom(i - g, a) * mid * gen_binom(i - r - 1, r - 1 - a)
    return total


def check_DrB(g: int, i: int, r: int) -> bool:
    """D^{r-1} B(i, r) == r!(r-1)!(i-r)! Psi(g, i, r) x_{i+1-r}."""
    if not i > r >= 1:
        raise ValueError("check_DrB needs i > r >= 1")
    lhs = op_D_power(gen_B(i, r), g, r - 1)
    c = factorial(r) * factorial(r - 1) * factorial(i - r) * psi(g, i, r)
    rhs = Polynomial.var(i + 1 - r).scale(c) if c else Polynomial()
    return lhs == rhs


def psi_zero_search(r: int, g_max: int, backend: str | None = None, g_min: int = 2) -> list[tuple[int, int]]:
    """All (g, i) with 1 <= i < g <= g_max where the reduced factor vanishes.

    Psi itself vanishes at i = r - 1 for every g; those trivial roots are
    dropped by testing Psi / (i - r + 1) instead.
    """
    if r < 2 or g_max < 3:
        raise ValueError("psi_zero_search needs r >= 2 and g_max >= 3")
    cands = kernels.psi_zero_candidates(r, g_min, g_max, backend=backend)
    return sorted((g, i) for g, i in cands if psi_reduced(g, i, r) == 0)


def vanishing_report(g: int, r: int, d: int) -> list[int]:
    """k in (d + 1 - 2r, g], k >= 1, with Psi(g, k + r - 1, r) != 0."""
    if r < 1 or d <= r:
        raise ValueError("vanishing_report needs r >= 1 and d > r")
    lo = max(1, d + 2 - 2 * r)
    return [k for k in range(lo, g + 1) if psi(g, k + r - 1, r) != 0]
