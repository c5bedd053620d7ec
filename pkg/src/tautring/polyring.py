"""The graded polynomial ring Q[x_1, x_2, ...].

Gradings: codim(x_k) = k, level(x_k) = k - 1, weight(x_k) = k + 1, so that
weight = 2*codim - level on every monomial. A cell R^i_(j) is the span of the
monomials of codimension i and level j; M^i_(j) is its x_1-free part.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .corealg import as_rational, enum_partitions, parse_rational, rational_to_str


class Monomial(tuple):
    """Sorted tuple of ``(variable_index, exponent)`` pairs, exponents >= 1.

    The empty tuple is the unit monomial.
    """

    __slots__ = ()

    def __new__(cls, exps: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = exps.items() if isinstance(exps, Mapping) else exps
        acc: dict[int, int] = {}
        for k, e in items:
            if k < 1:
                raise ValueError(f"variable index must be >= 1, got {k}")
            if e < 0:
                raise ValueError(f"negative exponent {e} for x{k}")
            if e:
                acc[k] = acc.get(k, 0) + e
        return super().__new__(cls, sorted(acc.items()))

    @classmethod
    def of(cls, *indices: int) -> "Monomial":
        """``Monomial.of(2, 2, 4)`` is x2^2*x4."""
        acc: dict[int, int] = {}
        for k in indices:
            acc[k] = acc.get(k, 0) + 1
        return cls(acc)

    @classmethod
    def _raw(cls, pairs) -> "Monomial":
        return tuple.__new__(cls, pairs)

    def exponent(self, k: int) -> int:
        for v, e in self:
            if v == k:
                return e
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self)

    def __mul__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        acc = dict(self)
        for k, e in other:
            acc[k] = acc.get(k, 0) + e
        return Monomial._raw(sorted(acc.items()))

    def __str__(self) -> str:
        if not self:
            return "1"
        return "*".join(f"x{k}" if e == 1 else f"x{k}^{e}" for k, e in self)

    def __repr__(self) -> str:
        return f"Monomial({str(self)})"


ONE = Monomial()


def gradings(m: Monomial) -> tuple[int, int, int]:
    """(codim, level, weight) of a monomial."""
    codim = sum(k * e for k, e in m)
    level = sum((k - 1) * e for k, e in m)
    return codim, level, 2 * codim - level


class Polynomial:
    """Element of Q[x_1, x_2, ...] as a map Monomial -> Fraction without zeros."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = as_rational(c)
                if c:
                    clean[m if isinstance(m, Monomial) else Monomial(m)] = c
        self.terms = clean

    @classmethod
    def _wrap(cls, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def const(cls, c) -> "Polynomial":
        return cls({ONE: c})

    @classmethod
    def var(cls, k: int) -> "Polynomial":
        return cls({Monomial({k: 1}): 1})

    @classmethod
    def mono(cls, m: Monomial, c=1) -> "Polynomial":
        return cls({m: c})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._wrap({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = as_rational(c)
        if not c:
            return Polynomial()
        return Polynomial._wrap({m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Monomial):
            return Polynomial._wrap({m * other: c for m, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial._wrap(out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int):
        out = Polynomial.const(1)
        for _ in range(n):
            out = out * self
        return out

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def bidegrees(self) -> set[tuple[int, int]]:
        return {gradings(m)[:2] for m in self.terms}

    def bidegree(self) -> tuple[int, int]:
        """(codim, level) of a nonzero homogeneous polynomial."""
        bd = self.bidegrees()
        if len(bd) != 1:
            raise ValueError(f"polynomial is not homogeneous: bidegrees {sorted(bd)}")
        return next(iter(bd))

    def is_homogeneous(self) -> bool:
        return len(self.bidegrees()) <= 1

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda mc: _term_key(mc[0]))

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_poly(self)!r})"


def _term_key(m: Monomial):
    codim, level, _ = gradings(m)
    return (-codim, -level, tuple(m))


def format_poly(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    pieces = []
    for idx, (m, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        if not m:
            body = rational_to_str(a)
        elif a == 1:
            body = str(m)
        else:
            body = f"{rational_to_str(a)}*{m}"
        if idx == 0:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f" - {body}" if neg else f" + {body}")
    return "".join(pieces)


_VAR = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse_poly(s: str) -> Polynomial:
    """Inverse of :func:`format_poly`; also accepts unicode minus and loose spacing."""
    s = s.replace("−", "-").strip()
    if not s:
        raise ValueError("empty polynomial")
    if s == "0":
        return Polynomial()
    # split into signed terms on + / - that are not inside a rational (x/y has no signs)
    tokens = re.split(r"\s*([+-])\s*", s)
    if tokens[0] == "":
        tokens = tokens[1:]
    else:
        tokens = ["+"] + tokens
    out = Polynomial()
    for sign, body in zip(tokens[0::2], tokens[1::2]):
        if not body:
            raise ValueError(f"malformed polynomial {s!r}")
        coeff = Fraction(1)
        exps: dict[int, int] = {}
        for factor in body.split("*"):
            factor = factor.strip()
            mv = _VAR.match(factor)
            if mv:
                k = int(mv.group(1))
                exps[k] = exps.get(k, 0) + int(mv.group(2) or 1)
            else:
                coeff *= parse_rational(factor)
        if sign == "-":
            coeff = -coeff
        out = out + Polynomial({Monomial(exps): coeff})
    return out


def partition_monomial(parts: Iterable[int], shift: int = 0) -> Monomial:
    """Monomial prod x_{part + shift}."""
    return Monomial.of(*(p + shift for p in parts))


@dataclass(frozen=True)
class GradedBasis:
    i: int
    j: int
    x1_free: bool
    monomials: tuple[Monomial, ...]

    def __len__(self) -> int:
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def index(self) -> dict[Monomial, int]:
        return _basis_index(self)

    def coords(self, p: Polynomial) -> list[Fraction]:
        idx = self.index()
        v = [Fraction(0)] * len(self.monomials)
        for m, c in p.terms.items():
            try:
                v[idx[m]] = c
            except KeyError:
                raise ValueError(f"term {m} lies outside the basis of cell ({self.i},{self.j})") from None
        return v

    def element(self, coords) -> Polynomial:
        return Polynomial(dict(zip(self.monomials, coords)))


@lru_cache(maxsize=None)
def _basis_index(b: GradedBasis) -> dict[Monomial, int]:
    return {m: k for k, m in enumerate(b.monomials)}


@lru_cache(maxsize=None)
def mon_basis(i: int, j: int) -> GradedBasis:
    """Basis of M^i_(j): x_1-free monomials of codim i and level j.

    For j >= 1 these are x_{j_1+1}...x_{j_r+1} for partitions (j_1..j_r) of j
    with r = i - j parts.
    """
    if i < 0 or j < 0:
        return GradedBasis(i, j, True, ())
    if j == 0:
        return GradedBasis(i, j, True, (ONE,) if i == 0 else ())
    if not (j + 1 <= i <= 2 * j):
        return GradedBasis(i, j, True, ())
    mons = tuple(partition_monomial(p, 1) for p in enum_partitions(j, i - j))
    return GradedBasis(i, j, True, mons)


@lru_cache(maxsize=None)
def cell_basis(i: int, j: int) -> GradedBasis:
    """Basis of R^i_(j) = sum_a x_1^a * M^{i-a}_(j), ascending in a."""
    if i < 0 or j < 0:
        return GradedBasis(i, j, False, ())
    mons: list[Monomial] = []
    for a in range(0, i + 1):
        x1a = Monomial({1: a})
        mons.extend(m * x1a for m in mon_basis(i - a, j).monomials)
    return GradedBasis(i, j, False, tuple(mons))


def partial(p: Polynomial, k: int) -> Polynomial:
    """Formal derivative with respect to x_k."""
    if k < 1:
        raise ValueError(f"variable index must be >= 1, got {k}")
    out: dict[Monomial, Fraction] = {}
    for m, c in p.terms.items():
        e = m.exponent(k)
        if not e:
            continue
        d = dict(m)
        d[k] = e - 1
        mm = Monomial(d)
        out[mm] = out.get(mm, 0) + c * e
    return Polynomial(out)
