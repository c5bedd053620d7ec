from fractions import Fraction

import pytest

from tautring.corealg import count_partitions
from tautring.linalg import in_span
from tautring.operators import op_D, op_D_power
from tautring.polyring import Monomial, Polynomial, cell_basis, format_poly, mon_basis, parse_poly
from tautring.quotient import (
    cell_report,
    dim_cR,
    dims,
    ideal_cell,
    level_vanishes,
    member_of_I,
    mu,
    mu_matrix,
    primitive_lift,
    sl2_decomp,
    vanishing_check,
    x_n_in_ideal,
)

X = Polynomial.var


def test_g10_relation():
    assert [format_poly(p) for p in ideal_cell(10, 7, 5)] == ["7*x2*x5 + 3*x3*x4", "x1*x6"]
    assert member_of_I(10, parse_poly("3*x3*x4 + 7*x2*x5"))
    assert not member_of_I(10, parse_poly("x3*x4"))
    assert not member_of_I(10, parse_poly("x2*x5"))


def test_ideal_cell_edge_cases():
    assert ideal_cell(9, 4, 0) == []
    assert len(ideal_cell(5, 6, 3)) == len(cell_basis(6, 3))
    assert member_of_I(7, Polynomial())


def test_member_examples():
    assert x_n_in_ideal(9, 6)
    for g in range(3, 10):
        assert not x_n_in_ideal(g, 2)


def test_cell_report_bookkeeping():
    rep = cell_report(10, 7, 5)
    assert (rep.dim_R, rep.dim_I, rep.dim_cR) == (3, 2, 1)
    with pytest.raises(ValueError):
        type(rep)(10, 7, 5, 3, 1, 1)


@pytest.mark.parametrize("g", range(3, 11))
def test_dimension_facts(g):
    for i in range(0, g + 1):
        assert dim_cR(g, i, 0) == 1
    for j in range(0, g + 1):
        for i in range(j, g + 1):
            if i + j <= g:
                assert dim_cR(g, i, j) == len(cell_basis(i, j))
            if j >= g - 1:
                assert dim_cR(g, i, j) == 0


@pytest.mark.parametrize("g", range(3, 13))
def test_ideal_is_D_stable(g):
    for j in range(1, g + 1):
        for i in range(1, g + 1):
            below = [cell_basis(i - 1, j).coords(p) for p in ideal_cell(g, i - 1, j)]
            for z in ideal_cell(g, i, j):
                img = op_D(z, g)
                assert img.is_zero() or in_span(cell_basis(i - 1, j).coords(img), below)


@pytest.mark.parametrize("g", range(3, 13))
def test_fourier_symmetry_of_dimensions(g):
    for j in range(0, g + 1):
        for i in range(j, g + 1):
            assert dim_cR(g, i, j) == dim_cR(g, g - i + j, j)


@pytest.mark.parametrize("g", range(3, 13))
def test_decomposition_accounts_for_every_dimension(g):
    for j in range(0, g + 1):
        summands = sl2_decomp(g, j)
        assert sum(dim_cR(g, i, j) for i in range(j, g + 1)) == sum(s.multiplicity * s.dim for s in summands)
        # cell by cell: a summand anchored at i covers codimensions i..g-i+j
        for k in range(j, g + 1):
            assert dim_cR(g, k, j) == sum(
                s.multiplicity for s in summands if s.anchor_i <= k <= s.anchor_i + s.highest_weight
            )


def test_mu_examples():
    assert mu(17, 12, 10) == 1
    assert mu_matrix(17, 12, 10).rows == 5
    assert mu(9, 6, 5) == 0
    with pytest.raises(ValueError):
        mu(9, 8, 5)


@pytest.mark.parametrize("g", range(4, 13))
def test_mu_small_cells(g):
    for j in range(1, g // 3 + 1):
        for s in sl2_decomp(g, j):
            assert s.multiplicity == count_partitions(j, parts=("exactly", s.anchor_i - j))


def test_sl2_examples():
    assert [(s.highest_weight, s.multiplicity) for s in sl2_decomp(9, 0)] == [(9, 1)]
    assert all(s.multiplicity == 0 for s in sl2_decomp(9, 5))
    assert any(s.multiplicity for s in sl2_decomp(8, 4))


def test_multiplicity_grows_with_genus():
    for j in range(1, 7):
        for g in range(3, 12):
            for i in range(j + 1, 2 * j + 1):
                if 2 * i - j > g:
                    continue
                for g2 in range(g + 1, 13):
                    assert mu(g2, i, j) >= mu(g, i, j)


def test_primitive_lift_examples():
    alpha = X(2) * X(5)
    lift = primitive_lift(9, alpha)
    assert lift == alpha + (X(1) * X(6)).scale(Fraction(21, 2))
    assert op_D(lift, 9).is_zero()
    assert op_D(primitive_lift(9, X(3) * X(4)), 9).is_zero()
    kernel_elt = parse_poly("x3*x4")  # D(x3*x4) = 35*x6, not killed
    assert primitive_lift(20, Polynomial()) == Polynomial()
    with pytest.raises(ValueError):
        primitive_lift(9, X(1) * X(6))
    assert kernel_elt != Polynomial()


@pytest.mark.parametrize("g", range(5, 12))
def test_primitive_lifts_are_killed(g):
    for j in range(1, g):
        for i in range(j + 1, 2 * j + 1):
            if 2 * i - j > g - 1:  # denominators stay nonzero strictly below the middle
                continue
            for m in mon_basis(i, j):
                assert op_D(primitive_lift(g, Polynomial.mono(m)), g).is_zero()


def test_vanishing_examples():
    assert level_vanishes(9, 5)
    assert not level_vanishes(8, 4)
    assert level_vanishes(12, 7)
    assert vanishing_check(11).ok() and vanishing_check(11).sharp_g11 is True
    assert vanishing_check(8).sharp_g8 is True
    assert vanishing_check(7).level_g_minus_4_zero is None


def test_dims_covers_triangle():
    reps = dims(6)
    assert len(reps) == 28
    assert {(r.i, r.j) for r in reps} == {(i, j) for j in range(7) for i in range(j, 7)}
