"""The operator D on R and the sl2-triple (e, h, f) built from it.

    D = -g d_1 + 1/2 sum_{m,n >= 1} binom(m+n, n) x_{m+n-1} d_m d_n

D is applied monomial by monomial, summing only over pairs of variables that
actually occur, so the infinite sum never has to be materialised. The genus
enters only through the -g d_1 term; on x_1-free input D is genus-free.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .corealg import gen_binom
from .linalg import RationalMatrix
from .polyring import GradedBasis, Monomial, Polynomial, cell_basis, mon_basis


def _check_genus(g: int) -> None:
    if g < 2:
        raise ValueError(f"genus must be >= 2, got {g}")


@lru_cache(maxsize=200_000)
def _d_mono(m: Monomial, g: int) -> tuple[tuple[Monomial, int], ...]:
    items = list(m)
    out: dict[Monomial, int] = {}

    def shifted(removals: tuple[int, ...], add: int | None) -> Monomial:
        d = dict(items)
        for k in removals:
            d[k] -= 1
        if add is not None:
            d[add] = d.get(add, 0) + 1
        return Monomial(d)

    def bump(mono: Monomial, c: int) -> None:
        v = out.get(mono, 0) + c
        if v:
            out[mono] = v
        else:
            out.pop(mono, None)

    e1 = m.exponent(1)
    if e1:
        bump(shifted((1,), None), -g * e1)
    for a, (ka, ea) in enumerate(items):
        if ea >= 2:
            # ordered pair (ka, ka): 1/2 * binom(2ka, ka) * ea(ea-1)
            bump(shifted((ka, ka), 2 * ka - 1), comb(2 * ka, ka) // 2 * ea * (ea - 1))
        for kb, eb in items[a + 1 :]:
            # ordered pairs (ka, kb) and (kb, ka) together
            bump(shifted((ka, kb), ka + kb - 1), comb(ka + kb, ka) * ea * eb)
    return tuple(out.items())


def op_D(p: Polynomial, g: int) -> Polynomial:
    _check_genus(g)
    out: dict[Monomial, Fraction] = {}
    for m, c in p.terms.items():
        for mm, k in _d_mono(m, g):
            v = out.get(mm, 0) + c * k
            if v:
                out[mm] = v
            else:
                out.pop(mm, None)
    return Polynomial._wrap(out)


def op_D_power(p: Polynomial, g: int, n: int) -> Polynomial:
    if n < 0:
        raise ValueError("power must be nonnegative")
    for _ in range(n):
        if p.is_zero():
            break
        p = op_D(p, g)
    return p


def op_e(p: Polynomial) -> Polynomial:
    return p * Monomial({1: 1})


def op_h(p: Polynomial, g: int) -> Polynomial:
    """(2i - j - g) * p on a polynomial homogeneous of bidegree (i, j)."""
    if p.is_zero():
        return p
    i, j = p.bidegree()
    return p.scale(2 * i - j - g)


def op_f(p: Polynomial, g: int) -> Polynomial:
    return -op_D(p, g)


def check_lemma_D_x1power(alpha: Polynomial, a: int, n: int, g: int) -> bool:
    """Compare D^n(x_1^a * alpha) with its closed form in terms of D^k(alpha)."""
    x1a = Monomial({1: a})
    lhs = op_D_power(alpha * x1a, g, n)
    if alpha.is_zero():
        return lhs.is_zero()
    i, j = alpha.bidegree()
    rhs = Polynomial()
    for s in range(0, min(n, a) + 1):
        c = (
            Fraction(factorial(n), factorial(n - s))
            * Fraction(factorial(a), factorial(a - s))
            * gen_binom(2 * i - j - g + a - n + s - 1, s)
        )
        if c:
            rhs = rhs + (op_D_power(alpha, g, n - s) * Monomial({1: a - s})).scale(c)
    return lhs == rhs


# ---------------------------------------------------------------------------
# D on graded bases
# ---------------------------------------------------------------------------


def d_columns(source: GradedBasis, target: GradedBasis, g: int) -> list[dict[int, int]]:
    """Sparse integer columns of D: source -> target, as {target_index: coeff}."""
    idx = target.index()
    cols = []
    for m in source.monomials:
        col = {}
        for mm, k in _d_mono(m, g):
            try:
                col[idx[mm]] = k
            except KeyError:
                raise ValueError(f"D({m}) has term {mm} outside the target basis") from None
        cols.append(col)
    return cols


@lru_cache(maxsize=None)
def d_on_cell(i: int, j: int, g: int) -> tuple[dict[int, int], ...]:
    """D: R^i_(j) -> R^{i-1}_(j) as sparse columns."""
    return tuple(d_columns(cell_basis(i, j), cell_basis(i - 1, j), g))


@lru_cache(maxsize=None)
def d_on_free(i: int, j: int) -> tuple[dict[int, int], ...]:
    """D: M^i_(j) -> M^{i-1}_(j); genus-free, evaluated with a dummy g."""
    return tuple(d_columns(mon_basis(i, j), mon_basis(i - 1, j), 2))


def d_matrix(source: GradedBasis, target: GradedBasis, g: int) -> RationalMatrix:
    cols = d_columns(source, target, g)
    rows = [[Fraction(0)] * len(source) for _ in range(len(target))]
    for c, col in enumerate(cols):
        for r, k in col.items():
            rows[r][c] = Fraction(k)
    return RationalMatrix.from_rows(rows, cols=len(source))


def apply_sparse(cols: tuple[dict[int, int], ...], v, target_len: int) -> list[Fraction]:
    out = [Fraction(0)] * target_len
    for c, x in enumerate(v):
        if x:
            for r, k in cols[c].items():
                out[r] += x * k
    return out
