"""Exact linear algebra over Q.

Matrices are dense and immutable. Rank goes through fraction-free (Bareiss)
elimination on an integer copy, with a modular full-rank shortcut; kernel and
image bases come from the reduced row echelon form with the leftmost-pivot,
first-nonzero-row rule, so their output is reproducible bit for bit.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .corealg import as_rational, parse_rational, rational_to_str
from .polyring import GradedBasis, Polynomial

Vector = list  # list[Fraction]


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        ent = tuple(tuple(as_rational(x) for x in r) for r in rows)
        if cols is None:
            cols = len(ent[0]) if ent else 0
        return cls(len(ent), cols, ent)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "RationalMatrix":
        ent = tuple(tuple(as_rational(c[r]) for c in columns) for r in range(rows))
        return cls(rows, len(columns), ent)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        z = Fraction(0)
        return cls(rows, cols, tuple((z,) * cols for _ in range(rows)))

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]

    def column(self, c: int) -> list[Fraction]:
        return [row[c] for row in self.entries]

    def transpose(self) -> "RationalMatrix":
        if self.rows == 0:
            return RationalMatrix(self.cols, 0, tuple(() for _ in range(self.cols)))
        return RationalMatrix(self.cols, self.rows, tuple(zip(*self.entries)))

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        ocols = [other.column(c) for c in range(other.cols)]
        ent = tuple(
            tuple(sum((a * b for a, b in zip(row, col) if a and b), Fraction(0)) for col in ocols)
            for row in self.entries
        )
        return RationalMatrix(self.rows, other.cols, ent)

    def apply(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return [sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in self.entries]

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def to_json(self) -> str:
        return json.dumps([[rational_to_str(x) for x in r] for r in self.entries])

    @classmethod
    def from_json(cls, s: str) -> "RationalMatrix":
        data = json.loads(s)
        return cls.from_rows([[parse_rational(x) for x in r] for r in data])


def matrix_of(
    fn: Callable[[Polynomial], Polynomial], source: GradedBasis, target: GradedBasis
) -> RationalMatrix:
    """Column k is the coordinate vector of fn(source[k]) in the target basis."""
    cols = [target.coords(fn(Polynomial.mono(m))) for m in source.monomials]
    return RationalMatrix.from_columns(cols, len(target))


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for r in rows:
        den = 1
        for x in r:
            x = as_rational(x)
            if x.denominator != 1:
                den = lcm(den, x.denominator)
        out.append([int(as_rational(x) * den) for x in r])
    return out


def bareiss_rank(rows: Sequence[Sequence]) -> int:
    """Rank by fraction-free elimination; rows are scaled to integers first."""
    m = _integer_rows(rows)
    if not m:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    prev = 1
    for c in range(n_cols):
        piv = next((r for r in range(rank, n_rows) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][c]
        for r in range(rank + 1, n_rows):
            f = m[r][c]
            row_r, row_p = m[r], m[rank]
            for k in range(c, n_cols):
                row_r[k] = (p * row_r[k] - f * row_p[k]) // prev
            # columns left of c are already zero below the pivot
        prev = p
        rank += 1
        if rank == n_rows:
            break
    return rank


def _modular_rank(rows: Sequence[Sequence], p: int) -> int | None:
    vals = []
    for r in rows:
        out = []
        for x in r:
            x = as_rational(x)
            if x.denominator % p == 0:
                return None
            out.append(x.numerator * pow(x.denominator, p - 2, p) % p)
        vals.append(out)
    arr = np.array(vals, dtype=np.int64).reshape(len(rows), len(rows[0]) if rows else 0)
    return kernels.rank_mod_p(arr, p)


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form (nonzero rows only) and the pivot columns."""
    m = [[as_rational(x) for x in r] for r in rows]
    if not m:
        return [], []
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    r0 = 0
    for c in range(n_cols):
        piv = next((r for r in range(r0, n_rows) if m[r][c]), None)
        if piv is None:
            continue
        m[r0], m[piv] = m[piv], m[r0]
        inv = 1 / m[r0][c]
        prow = [x * inv for x in m[r0]]
        m[r0] = prow
        for r in range(n_rows):
            if r != r0 and m[r][c]:
                f = m[r][c]
                row = m[r]
                m[r] = [a - f * b if b else a for a, b in zip(row, prow)]
        pivots.append(c)
        r0 += 1
        if r0 == n_rows:
            break
    return m[:r0], pivots


def span_basis(vectors: Sequence[Sequence], length: int | None = None) -> list[list[Fraction]]:
    """Canonical basis (RREF rows) of the span of ``vectors``."""
    vecs = [list(v) for v in vectors if any(v)]
    if not vecs:
        return []
    basis, _ = rref(vecs)
    return basis


def rank(m: RationalMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    full = min(m.rows, m.cols)
    # rank mod p <= rank over Q, so a maximal modular rank is a certificate
    for p in kernels.PRIMES:
        rp = _modular_rank(m.entries, p)
        if rp == full:
            return full
    rows = m.entries if m.rows <= m.cols else m.transpose().entries
    return bareiss_rank(rows)


def corank(m: RationalMatrix) -> int:
    """rows - rank: the dimension of the cokernel."""
    return m.rows - rank(m)


def kernel_basis(m: RationalMatrix) -> list[list[Fraction]]:
    if m.cols == 0:
        return []
    red, pivots = rref(m.entries) if m.rows else ([], [])
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def image_basis(m: RationalMatrix) -> list[list[Fraction]]:
    """Columns of ``m`` at the pivot positions of its RREF."""
    if m.rows == 0 or m.cols == 0:
        return []
    _, pivots = rref(m.entries)
    return [m.column(c) for c in pivots]


def in_span(v: Sequence, basis: Sequence[Sequence]) -> bool:
    v = [as_rational(x) for x in v]
    for b in basis:
        if len(b) != len(v):
            raise ValueError(f"dimension mismatch: vector of length {len(v)} vs basis vector of length {len(b)}")
    if not any(v):
        return True
    if not basis:
        return False
    return bareiss_rank(list(basis) + [v]) == bareiss_rank(basis)


def reduce_against(v: Sequence[Fraction], echelon: Sequence[Sequence[Fraction]], pivots: Sequence[int]) -> list[Fraction]:
    """Remainder of v after eliminating the pivots of an RREF basis."""
    out = list(v)
    for row, pc in zip(echelon, pivots):
        f = out[pc]
        if f:
            out = [a - f * b if b else a for a, b in zip(out, row)]
    return out


def primitive_integer_vector(v: Sequence[Fraction]) -> list[int]:
    """Scale v to coprime integers with a positive first nonzero entry."""
    ints = _integer_rows([v])[0]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return ints
    ints = [x // g for x in ints]
    first = next(x for x in ints if x)
    return [-x for x in ints] if first < 0 else ints
