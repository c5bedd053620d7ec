"""The ideal I of universal relations, the quotient cR = R/I and its sl2 structure.

For i <= g the relations in a cell are I cap R^i_(j) = D^{g-i}(R^g_(j)) (j >= 1);
they are computed by pushing the whole top cell R^g_(j) down one codimension
at a time and keeping a reduced echelon basis at each step. Above the top
codimension everything is a relation.

Multiplicities of the irreducible summands avoid x_1 entirely: mu(i, j) is
the corank of D^{g-2i+j+1} from M^{g-i+j+1}_(j) to M^i_(j).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .corealg import gen_binom, factorial
from .linalg import RationalMatrix, corank, primitive_integer_vector, reduce_against, rref
from .operators import apply_sparse, d_on_cell, d_on_free, op_D, op_D_power
from .polyring import Monomial, Polynomial, cell_basis, mon_basis


@dataclass(frozen=True)
class CellReport:
    g: int
    i: int
    j: int
    dim_R: int
    dim_I: int
    dim_cR: int
    ideal_basis: tuple[Polynomial, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.dim_cR != self.dim_R - self.dim_I or self.dim_cR < 0:
            raise ValueError("inconsistent cell dimensions")


@dataclass(frozen=True)
class Sl2Summand:
    highest_weight: int
    multiplicity: int
    anchor_i: int

    @property
    def dim(self) -> int:
        return self.highest_weight + 1


# ---------------------------------------------------------------------------
# the ideal
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _ideal_chain(g: int, j: int) -> dict[int, tuple[tuple[tuple[Fraction, ...], ...], tuple[int, ...]]]:
    """For j >= 1: codim i -> (RREF rows, pivots) of D^{g-i}(R^g_(j)) in cell_basis(i, j)."""
    top = cell_basis(g, j)
    n = len(top)
    one, zero = Fraction(1), Fraction(0)
    rows = [[one if c == r else zero for c in range(n)] for r in range(n)]
    chain = {g: (tuple(map(tuple, rows)), tuple(range(n)))}
    for i in range(g, 0, -1):
        cols = d_on_cell(i, j, g)
        tgt = len(cell_basis(i - 1, j))
        images = [apply_sparse(cols, r, tgt) for r in rows]
        images = [v for v in images if any(v)]
        rows, piv = rref(images) if images and tgt else ([], [])
        chain[i - 1] = (tuple(map(tuple, rows)), tuple(piv))
        if not rows:
            for k in range(i - 2, -1, -1):
                chain[k] = ((), ())
            break
    return chain


def _ideal_rows(g: int, i: int, j: int):
    if g < 2:
        raise ValueError(f"genus must be >= 2, got {g}")
    if i < 0 or j < 0:
        return (), ()
    n = len(cell_basis(i, j))
    if i > g:
        one, zero = Fraction(1), Fraction(0)
        return tuple(tuple(one if c == r else zero for c in range(n)) for r in range(n)), tuple(range(n))
    if j == 0 or n == 0:
        return (), ()
    return _ideal_chain(g, j)[i]


def ideal_cell(g: int, i: int, j: int) -> list[Polynomial]:
    """Basis of I cap R^i_(j), each element scaled to coprime integer coefficients."""
    basis = cell_basis(i, j)
    rows, _ = _ideal_rows(g, i, j)
    return [basis.element(primitive_integer_vector(r)) for r in rows]


def dim_ideal(g: int, i: int, j: int) -> int:
    return len(_ideal_rows(g, i, j)[0])


def member_of_I(g: int, p: Polynomial) -> bool:
    if p.is_zero():
        return True
    i, j = p.bidegree()
    basis = cell_basis(i, j)
    v = basis.coords(p)
    rows, piv = _ideal_rows(g, i, j)
    return not any(reduce_against(v, rows, piv))


def dim_cR(g: int, i: int, j: int) -> int:
    if i < 0 or j < 0:
        return 0
    return len(cell_basis(i, j)) - dim_ideal(g, i, j)


def cell_report(g: int, i: int, j: int) -> CellReport:
    dR = len(cell_basis(i, j))
    dI = dim_ideal(g, i, j)
    return CellReport(g, i, j, dR, dI, dR - dI, tuple(ideal_cell(g, i, j)))


def dims(g: int) -> list[CellReport]:
    """Reports for every cell 0 <= j <= i <= g, ordered by (j, i)."""
    return [cell_report(g, i, j) for j in range(0, g + 1) for i in range(j, g + 1)]


def level_vanishes(g: int, j: int) -> bool:
    """True iff cR_(j) = 0."""
    return all(dim_cR(g, i, j) == 0 for i in range(0, g + 1))


# ---------------------------------------------------------------------------
# sl2 structure
# ---------------------------------------------------------------------------


def mu_matrix(g: int, i: int, j: int) -> RationalMatrix:
    """Matrix of D^{g-2i+j+1}: M^{g-i+j+1}_(j) -> M^i_(j) in monomial bases."""
    if 2 * i - j > g:
        raise ValueError(f"mu needs 2i - j <= g, got (g, i, j) = ({g}, {i}, {j})")
    src_i = g - i + j + 1
    steps = g - 2 * i + j + 1
    src = mon_basis(src_i, j)
    cols = []
    for k in range(len(src)):
        v = [Fraction(0)] * len(src)
        v[k] = Fraction(1)
        for s in range(steps):
            v = apply_sparse(d_on_free(src_i - s, j), v, len(mon_basis(src_i - s - 1, j)))
        cols.append(v)
    return RationalMatrix.from_columns(cols, len(mon_basis(i, j)))


def mu(g: int, i: int, j: int) -> int:
    """Multiplicity of Sym^{g-2i+j} in cR_(j) attached to codimension i."""
    return corank(mu_matrix(g, i, j))


def sl2_decomp(g: int, j: int) -> list[Sl2Summand]:
    if j < 0:
        raise ValueError("level must be nonnegative")
    if j == 0:
        return [Sl2Summand(g, 1, 0)]
    top = min(g - 1, 2 * j, (g + j) // 2)
    return [Sl2Summand(g - 2 * i + j, mu(g, i, j), i) for i in range(j + 1, top + 1)]


def primitive_lift(g: int, alpha: Polynomial) -> Polynomial:
    """Primitive class attached to an x_1-free alpha in M^i_(j):

        sum_n (-x_1)^n D^n(alpha) / ((n!)^2 * binom(2i - j - g - 2, n))
    """
    if alpha.is_zero():
        return alpha
    if any(m.exponent(1) for m in alpha.terms):
        raise ValueError("primitive_lift expects an x_1-free polynomial")
    i, j = alpha.bidegree()
    if 2 * i - j > g:
        raise ValueError(f"primitive_lift needs 2i - j <= g, got {2 * i - j} > {g}")
    top = 2 * i - j - g - 2
    out = Polynomial()
    n = 0
    dn = alpha
    while not dn.is_zero():
        den = factorial(n) ** 2 * gen_binom(top, n)
        if den == 0:
            raise ZeroDivisionError(f"vanishing denominator at n={n}")
        sign = -1 if n % 2 else 1
        out = out + (dn * Monomial({1: n})).scale(Fraction(sign) / den)
        n += 1
        dn = op_D(dn, g)
    return out


# ---------------------------------------------------------------------------
# vanishing statements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VanishingReport:
    g: int
    nonvanishing_xn: bool  # x_n not in I for all n <= (g+1)/2
    high_xn_in_ideal: bool  # x_n in I for all n >= g/2 + 1
    level_g_minus_4_zero: bool | None  # None when g < 9 (no claim)
    level_g_minus_5_zero: bool | None  # None when g < 12
    sharp_g8: bool | None  # cR_(4) != 0 at g = 8, reported only for g = 8
    sharp_g11: bool | None  # cR_(6) != 0 at g = 11, reported only for g = 11

    def ok(self) -> bool:
        flags = [
            self.nonvanishing_xn,
            self.high_xn_in_ideal,
            self.level_g_minus_4_zero,
            self.level_g_minus_5_zero,
            self.sharp_g8,
            self.sharp_g11,
        ]
        return all(f is not False for f in flags)


def x_n_in_ideal(g: int, n: int) -> bool:
    return member_of_I(g, Polynomial.var(n))


def vanishing_check(g: int) -> VanishingReport:
    if g < 3:
        raise ValueError("vanishing_check needs g >= 3")
    nonvan = all(not x_n_in_ideal(g, n) for n in range(1, g + 2) if 2 * n <= g + 1)
    van = all(x_n_in_ideal(g, n) for n in range(1, g + 2) if 2 * n >= g + 2)
    return VanishingReport(
        g=g,
        nonvanishing_xn=nonvan,
        high_xn_in_ideal=van,
        level_g_minus_4_zero=level_vanishes(g, g - 4) if g >= 9 else None,
        level_g_minus_5_zero=level_vanishes(g, g - 5) if g >= 12 else None,
        sharp_g8=(not level_vanishes(8, 4)) if g == 8 else None,
        sharp_g11=(not level_vanishes(11, 6)) if g == 11 else None,
    )
