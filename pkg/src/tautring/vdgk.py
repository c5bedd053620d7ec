"""Predicted dimensions of cR^i_(j) and a harness comparing them with computed ones.

The prediction is the number of partitions of i into i - j parts, all of
size at most g + 1 - i. The harness only reports; a mismatch is data, not an
exception.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .corealg import count_partitions, enum_partitions
from .linalg import bareiss_rank
from .polyring import cell_basis, partition_monomial
from .quotient import _ideal_rows, dim_cR


def conj_dim(g: int, i: int, j: int) -> int:
    if i < 0 or j < 0:
        return 0
    return count_partitions(i, parts=("exactly", i - j), max_part=("at_most", g + 1 - i))


def conj_multiplicity(g: int, i: int, j: int) -> int:
    """p_{i-j}(j; <= g-i) - p_{g+1-i}(j; <= i-j-1), for 2i - j <= g."""
    if 2 * i - j > g:
        raise ValueError(f"conj_multiplicity needs 2i - j <= g, got (g, i, j) = ({g}, {i}, {j})")
    return count_partitions(j, parts=("exactly", i - j), max_part=("at_most", g - i)) - count_partitions(
        j, parts=("exactly", g + 1 - i), max_part=("at_most", i - j - 1)
    )


def strong_basis_monomials(g: int, i: int, j: int):
    return [partition_monomial(p) for p in enum_partitions(i, i - j, g + 1 - i)] if i - j >= 0 else []


def strong_form_holds(g: int, i: int, j: int) -> bool:
    """The predicted monomials are independent modulo I and span the cell."""
    basis = cell_basis(i, j)
    cands = strong_basis_monomials(g, i, j)
    rows, _ = _ideal_rows(g, i, j)
    n = len(basis)
    if len(rows) + len(cands) != n:
        return False
    if n == 0:
        return True
    idx = basis.index()
    vecs = [list(r) for r in rows]
    for m in cands:
        v = [0] * n
        v[idx[m]] = 1
        vecs.append(v)
    return bareiss_rank(vecs) == n


@dataclass(frozen=True)
class CellComparison:
    i: int
    j: int
    predicted: int
    computed: int
    strong: bool | None = None

    @property
    def match(self) -> bool:
        return self.predicted == self.computed and self.strong is not False


@dataclass(frozen=True)
class ConjectureReport:
    g: int
    cells: tuple[CellComparison, ...]
    strong_form_checked: bool
    all_match: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "all_match", all(c.match for c in self.cells))

    def mismatches(self) -> list[CellComparison]:
        return [c for c in self.cells if not c.match]

    def to_dict(self) -> dict:
        return {
            "g": self.g,
            "all_match": self.all_match,
            "strong_form_checked": self.strong_form_checked,
            "cells": [
                {
                    "i": c.i,
                    "j": c.j,
                    "predicted": c.predicted,
                    "computed": c.computed,
                    "match": c.match,
                    **({"strong": c.strong} if c.strong is not None else {}),
                }
                for c in self.cells
            ],
        }


def verify_conjecture(g: int, strong: bool = False) -> ConjectureReport:
    if g < 3:
        raise ValueError("verify_conjecture needs g >= 3")
    cells = []
    for j in range(0, g + 1):
        for i in range(j, g + 1):
            cells.append(
                CellComparison(
                    i,
                    j,
                    conj_dim(g, i, j),
                    dim_cR(g, i, j),
                    strong_form_holds(g, i, j) if strong else None,
                )
            )
    return ConjectureReport(g, tuple(cells), strong)


def brill_noether_d(g: int, r: int) -> int:
    """Smallest d such that a general curve of genus g has a g^r_d."""
    if r < 1 or g < 2:
        raise ValueError("brill_noether_d needs r >= 1 and g >= 2")
    return g + r - g // (r + 1)


def bn_vanishing_check(g: int, r: int) -> bool:
    """cR^{j+r}_(j) = 0 exactly when j >= d(g, r) - 2r + 1, for all j with j + r <= g."""
    threshold = brill_noether_d(g, r) - 2 * r + 1
    return all((dim_cR(g, j + r, j) == 0) == (j >= threshold) for j in range(0, g - r + 1))
