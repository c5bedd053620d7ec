"""Chow-level tautological classes p_m, q_m, a_m(D) and relations among them.

Polynomials in the formal generators carry an optional genus. When the genus
is set, out-of-range generators vanish on construction: p_m for m > g,
q_m for m >= g, and a_m(D) for m > g (a point class l with l^{g+1}).
q_0 is the scalar g, a_0(D) is the scalar deg D, and the canonical class is
never a symbol: a_0(K) = 2g - 2 and a_m(K) = 2 q_m.

A point divisor Q carries a single variable l = a_1(Q), with
a_m(Q) = l^m / m!. This makes c_t(Q) = 1 + l t, so Chern classes of sums of
points factor as they should.

Relations are written as polynomials that vanish, in the text form
``6*p3 - 2*q1*p2`` with divisor classes as ``a2[Gamma]``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from .corealg import as_rational, parse_rational, rational_to_str
from .herbaut import gen_B
from .linalg import primitive_integer_vector, reduce_against, rref
from .polyring import Polynomial

_KIND_ORDER = {"q": 0, "a": 1, "p": 2}


def _natural(name: str) -> tuple:
    return tuple(int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name))


@dataclass(frozen=True)
class ChowVar:
    kind: str
    index: int
    divisor: str | None = None
    point: bool = False

    def __post_init__(self):
        if self.kind not in _KIND_ORDER:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.index < 1:
            raise ValueError("generator index must be >= 1")
        if (self.kind == "a") != (self.divisor is not None):
            raise ValueError("exactly the a-classes carry a divisor")
        if self.point and self.index != 1:
            raise ValueError("a point divisor only has the generator a1")

    @property
    def sort_key(self) -> tuple:
        return (_KIND_ORDER[self.kind], _natural(self.divisor or ""), self.index)

    @property
    def bidegree(self) -> tuple[int, int]:
        """(codimension, level)."""
        return (self.index, self.index - 1) if self.kind == "p" else (self.index, self.index)

    def __str__(self) -> str:
        if self.kind == "a":
            return f"a{self.index}[{self.divisor}]"
        return f"{self.kind}{self.index}"


def _in_range(v: ChowVar, e: int, g: int | None) -> bool:
    if g is None:
        return True
    if v.kind == "q":
        return v.index <= g - 1
    if v.point:
        return e <= g
    return v.index <= g


ChowMonomial = tuple  # sorted tuple of (ChowVar, exponent)


def _mono(d: Mapping[ChowVar, int]) -> ChowMonomial:
    return tuple(sorted(((v, e) for v, e in d.items() if e), key=lambda ve: ve[0].sort_key))


def _mono_key(m: ChowMonomial) -> tuple:
    return (sum(e for _, e in m), tuple((v.sort_key, e) for v, e in m))


def _merge_genus(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is not None and a != b:
        raise ValueError(f"cannot combine classes of genus {a} and {b}")
    return a


class ChowPoly:
    """Polynomial in p, q and a-classes with exact rational coefficients."""

    __slots__ = ("terms", "g")

    def __init__(self, terms: Mapping[ChowMonomial, object] | None = None, g: int | None = None):
        self.g = g
        out: dict[ChowMonomial, Fraction] = {}
        for m, c in (terms or {}).items():
            c = as_rational(c)
            if c and all(_in_range(v, e, g) for v, e in m):
                out[m] = out.get(m, 0) + c
        self.terms = {m: c for m, c in out.items() if c}

    @classmethod
    def const(cls, c, g: int | None = None) -> "ChowPoly":
        return cls({(): c}, g)

    @classmethod
    def of(cls, v: ChowVar, g: int | None = None, exp: int = 1) -> "ChowPoly":
        return cls({_mono({v: exp}): 1}, g)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ChowPoly.const(other)
        if not isinstance(other, ChowPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _coerce(self, other) -> "ChowPoly":
        if isinstance(other, ChowPoly):
            return other
        return ChowPoly.const(as_rational(other), self.g)

    def __add__(self, other) -> "ChowPoly":
        other = self._coerce(other)
        g = _merge_genus(self.g, other.g)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return ChowPoly(out, g)

    __radd__ = __add__

    def __neg__(self) -> "ChowPoly":
        return ChowPoly({m: -c for m, c in self.terms.items()}, self.g)

    def __sub__(self, other) -> "ChowPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "ChowPoly":
        return self._coerce(other) - self

    def scale(self, c) -> "ChowPoly":
        c = as_rational(c)
        return ChowPoly({m: c * x for m, x in self.terms.items()}, self.g)

    def __mul__(self, other) -> "ChowPoly":
        if not isinstance(other, ChowPoly):
            return self.scale(other)
        g = _merge_genus(self.g, other.g)
        out: dict[ChowMonomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                d = dict(m1)
                for v, e in m2:
                    d[v] = d.get(v, 0) + e
                m = _mono(d)
                out[m] = out.get(m, 0) + c1 * c2
        return ChowPoly(out, g)

    def __rmul__(self, other) -> "ChowPoly":
        return self.scale(other)

    def __pow__(self, n: int) -> "ChowPoly":
        if n < 0:
            raise ValueError("negative power")
        out = ChowPoly.const(1, self.g)
        for _ in range(n):
            out = out * self
        return out

    def with_genus(self, g: int | None) -> "ChowPoly":
        return ChowPoly(self.terms, _merge_genus(self.g, g))

    def variables(self) -> set[ChowVar]:
        return {v for m in self.terms for v, _ in m}

    def coefficient(self, m: ChowMonomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def bidegrees(self) -> set[tuple[int, int]]:
        return {_mono_bidegree(m) for m in self.terms}

    def bidegree(self) -> tuple[int, int]:
        b = self.bidegrees()
        if len(b) != 1:
            raise ValueError(f"not homogeneous: bidegrees {sorted(b)}")
        return next(iter(b))

    def is_homogeneous(self) -> bool:
        return len(self.bidegrees()) <= 1

    def components(self) -> dict[tuple[int, int], "ChowPoly"]:
        parts: dict[tuple[int, int], dict] = {}
        for m, c in self.terms.items():
            parts.setdefault(_mono_bidegree(m), {})[m] = c
        return {b: ChowPoly(t, self.g) for b, t in parts.items()}

    def sorted_terms(self) -> list[tuple[ChowMonomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda mc: _mono_key(mc[0]))

    def normalized(self) -> "ChowPoly":
        """Scaled so that the first term in canonical order has coefficient 1."""
        if self.is_zero():
            return self
        return self.scale(1 / self.sorted_terms()[0][1])

    def derivative(self, v: ChowVar) -> "ChowPoly":
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.get(v, 0)
            if e:
                d[v] = e - 1
                out[_mono(d)] = c * e
        return ChowPoly(out, self.g)

    def kill(self, pred) -> "ChowPoly":
        """Set every generator v with pred(v) true to zero."""
        return ChowPoly({m: c for m, c in self.terms.items() if not any(pred(v) for v, _ in m)}, self.g)

    def __str__(self) -> str:
        return format_chow(self)

    def __repr__(self) -> str:
        return f"ChowPoly({format_chow(self)!r}, g={self.g})"


def _mono_bidegree(m: ChowMonomial) -> tuple[int, int]:
    c = l = 0
    for v, e in m:
        vc, vl = v.bidegree
        c += vc * e
        l += vl * e
    return c, l


def _mono_str(m: ChowMonomial) -> str:
    return "*".join(f"{v}^{e}" if e > 1 else str(v) for v, e in m)


def format_chow(p: ChowPoly) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for k, (m, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        if not m:
            body = rational_to_str(a)
        elif a == 1:
            body = _mono_str(m)
        else:
            body = f"{rational_to_str(a)}*{_mono_str(m)}"
        if k == 0:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f" - {body}" if neg else f" + {body}")
    return "".join(pieces)


_CHOW_VAR = re.compile(r"^(p|q|a)(\d+)(?:\[([A-Za-z_][A-Za-z0-9_]*)\])?(?:\^(\d+))?$")


def parse_chow(s: str, g: int | None = None, points: Iterable[str] = ()) -> ChowPoly:
    """Inverse of :func:`format_chow`. Divisors named in ``points`` are point divisors."""
    points = set(points)
    s = s.replace("−", "-").strip()
    if not s:
        raise ValueError("empty expression")
    tokens = re.split(r"\s*([+-])\s*", s)
    tokens = tokens[1:] if tokens[0] == "" else ["+"] + tokens
    out = ChowPoly(g=g)
    for sign, body in zip(tokens[0::2], tokens[1::2]):
        if not body:
            raise ValueError(f"malformed expression {s!r}")
        coeff = Fraction(1)
        exps: dict[ChowVar, int] = {}
        for factor in body.split("*"):
            factor = factor.strip()
            mv = _CHOW_VAR.match(factor)
            if mv:
                kind, idx, div, e = mv.groups()
                if (kind == "a") != (div is not None):
                    raise ValueError(f"malformed generator {factor!r}")
                v = ChowVar(kind, int(idx), div, div in points)
                exps[v] = exps.get(v, 0) + int(e or 1)
            else:
                coeff *= parse_rational(factor)
        out = out + ChowPoly({_mono(exps): -coeff if sign == "-" else coeff}, g)
    return out


# ---------------------------------------------------------------------------
# divisors and generators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DivisorSymbol:
    """An atomic divisor (optionally a point) or a rational combination of atoms."""

    name: str
    degree: Fraction = Fraction(0)
    point: bool = False
    expansion: tuple[tuple["DivisorSymbol", Fraction], ...] = ()
    composite: bool = False

    @classmethod
    def atom(cls, name: str, degree) -> "DivisorSymbol":
        return cls(name, as_rational(degree))

    @classmethod
    def point_class(cls, name: str) -> "DivisorSymbol":
        return cls(name, Fraction(1), True)

    @classmethod
    def combination(cls, name: str, parts: Iterable[tuple["DivisorSymbol", object]]) -> "DivisorSymbol":
        coeffs: dict[DivisorSymbol, Fraction] = {}
        for d, c in parts:
            for atom, k in d.atoms().items():
                coeffs[atom] = coeffs.get(atom, 0) + as_rational(c) * k
        exp = tuple((a, c) for a, c in sorted(coeffs.items(), key=lambda ac: _natural(ac[0].name)) if c)
        degree = sum((a.degree * c for a, c in exp), Fraction(0))
        return cls(name, degree, False, exp, True)

    @property
    def is_atomic(self) -> bool:
        return not self.composite

    def atoms(self) -> dict["DivisorSymbol", Fraction]:
        return {self: Fraction(1)} if self.is_atomic else dict(self.expansion)


def points_divisor(d: int, name: str = "Gamma", prefix: str = "Q") -> tuple[DivisorSymbol, list[DivisorSymbol]]:
    """Q_1 + ... + Q_d as a combination of d distinct points."""
    pts = [DivisorSymbol.point_class(f"{prefix}{s}") for s in range(1, d + 1)]
    return DivisorSymbol.combination(name, [(q, 1) for q in pts]), pts


def p_class(m: int, g: int | None = None) -> ChowPoly:
    if m <= 0:
        return ChowPoly(g=g)
    return ChowPoly.of(ChowVar("p", m), g)


def q_class(m: int, g: int | None = None) -> ChowPoly:
    if m < 0:
        return ChowPoly(g=g)
    if m == 0:
        if g is None:
            raise ValueError("q0 is the genus; set g")
        return ChowPoly.const(g, g)
    return ChowPoly.of(ChowVar("q", m), g)


def _atom_class(atom: DivisorSymbol, m: int, g: int | None) -> ChowPoly:
    if m == 0:
        return ChowPoly.const(atom.degree, g)
    if atom.point:
        return ChowPoly.of(ChowVar("a", 1, atom.name, True), g, m).scale(Fraction(1, factorial(m)))
    return ChowPoly.of(ChowVar("a", m, atom.name), g)


def a_class(div: DivisorSymbol, m: int, g: int | None = None) -> ChowPoly:
    """a_m(D), extended linearly over the expansion of D."""
    if m < 0:
        return ChowPoly(g=g)
    out = ChowPoly(g=g)
    for atom, c in div.atoms().items():
        out = out + _atom_class(atom, m, g).scale(c)
    return out


def k_class(m: int, g: int) -> ChowPoly:
    """a_m(K) in terms of q-classes."""
    if m < 0:
        return ChowPoly(g=g)
    if m == 0:
        return ChowPoly.const(2 * g - 2, g)
    return q_class(m, g).scale(2)


def from_x_polynomial(p: Polynomial, g: int | None = None) -> ChowPoly:
    """Send x_k to p_k."""
    out = {}
    for m, c in p.terms.items():
        out[_mono({ChowVar("p", k): e for k, e in m})] = c
    return ChowPoly(out, g)


# ---------------------------------------------------------------------------
# the operator D
# ---------------------------------------------------------------------------


def _shift_class(v: ChowVar, k: int, g: int | None) -> ChowPoly:
    """The generator of the same family as v with index k."""
    if v.kind == "p":
        return p_class(k, g)
    if v.kind == "q":
        return q_class(k, g)
    if v.point:
        return _atom_class(DivisorSymbol.point_class(v.divisor), k, g)
    return a_class(DivisorSymbol(v.divisor), k, g)


def _d_monomial(m: ChowMonomial, g: int) -> ChowPoly:
    out = ChowPoly(g=g)
    items = list(m)

    def rest(*drop: ChowVar) -> ChowPoly:
        d = dict(items)
        for v in drop:
            d[v] -= 1
        return ChowPoly({_mono(d): 1}, g)

    ps = [(v, e) for v, e in items if v.kind == "p"]
    for a, (va, ea) in enumerate(ps):
        ka = va.index
        if ea >= 2:
            out = out + (p_class(2 * ka - 1, g) * rest(va, va)).scale(Fraction(comb(2 * ka, ka) * ea * (ea - 1), 2))
        for vb, eb in ps[a + 1 :]:
            kb = vb.index
            out = out + (p_class(ka + kb - 1, g) * rest(va, vb)).scale(comb(ka + kb, kb) * ea * eb)
    for vo, eo in items:
        if vo.kind == "p":
            continue
        mo = vo.index
        for vp, ep in ps:
            n = vp.index
            out = out + (_shift_class(vo, mo + n - 1, g) * rest(vo, vp)).scale(comb(mo + n - 1, n) * eo * ep)
    for vp, ep in ps:
        out = out - (q_class(vp.index - 1, g) * rest(vp)).scale(ep)
    return out


def d_chow(p: ChowPoly, g: int | None = None) -> ChowPoly:
    """The lift of D to p, q and a-classes; needs a genus (q_0 = g)."""
    g = _merge_genus(p.g, g)
    if g is None:
        raise ValueError("d_chow needs a genus")
    if g < 2:
        raise ValueError(f"genus must be >= 2, got {g}")
    out = ChowPoly(g=g)
    for m, c in p.terms.items():
        out = out + _d_monomial(m, g).scale(c)
    return out


def _kill_predicate(kill: Iterable[str]):
    names = set(kill)
    all_q = "q" in names
    names.discard("q")
    for n in names:
        if not re.fullmatch(r"[pq]\d+", n):
            raise ValueError(f"cannot kill {n!r}; use 'q' or a generator name such as 'p1'")
    return lambda v: (all_q and v.kind == "q") or str(v) in names


def quotient_iterate(start: ChowPoly, kill: Iterable[str], steps: int, g: int | None = None) -> ChowPoly:
    """Apply D and then set the killed generators to zero, ``steps`` times."""
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    pred = _kill_predicate(kill)
    cur = start.with_genus(g).kill(pred)
    for _ in range(steps):
        cur = d_chow(cur, g).kill(pred)
    return cur


# ---------------------------------------------------------------------------
# Chern classes and the Riemann-Roch series
# ---------------------------------------------------------------------------


def chern_series(gamma: DivisorSymbol, n: int, g: int | None = None) -> list[ChowPoly]:
    """c_0..c_n of exp(sum_m (-1)^(m-1) (m-1)! a_m t^m)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    s = [None] + [a_class(gamma, m, g).scale((-1) ** (m - 1) * factorial(m - 1)) for m in range(1, n + 1)]
    c = [ChowPoly.const(1, g)]
    # k c_k = sum_m m s_m c_{k-m}
    for k in range(1, n + 1):
        acc = ChowPoly(g=g)
        for m in range(1, k + 1):
            acc = acc + (s[m] * c[k - m]).scale(m)
        c.append(acc.scale(Fraction(1, k)))
    return c


Series = dict  # (t power, h power) -> ChowPoly


def _series_mul(a: Series, b: Series, t_max: int, h_max: int) -> Series:
    out: Series = {}
    for (ta, ha), x in a.items():
        for (tb, hb), y in b.items():
            t, h = ta + tb, ha + hb
            if t <= t_max and h <= h_max:
                prod_ = x * y
                out[t, h] = out[t, h] + prod_ if (t, h) in out else prod_
    return {k: v for k, v in out.items() if v}


def _series_exp(s: Series, t_max: int, h_max: int, g: int | None) -> Series:
    """exp(s) for a series without t^0 terms, via k E_k = sum_m m S_m E_{k-m}."""
    if any(t == 0 for t, _ in s):
        raise ValueError("exponent series must have no t^0 terms")
    by_t: dict[int, Series] = {}
    for (t, h), x in s.items():
        by_t.setdefault(t, {})[0, h] = x
    layers: list[Series] = [{(0, 0): ChowPoly.const(1, g)}]
    for k in range(1, t_max + 1):
        acc: Series = {}
        for m in range(1, k + 1):
            if m not in by_t:
                continue
            for key, v in _series_mul(by_t[m], layers[k - m], 0, h_max).items():
                v = v.scale(m)
                acc[key] = acc[key] + v if key in acc else v
        layers.append({key: v.scale(Fraction(1, k)) for key, v in acc.items() if v})
    return {(k, h): v for k, layer in enumerate(layers) for (_, h), v in layer.items()}


def grr_series(r: int, d: int, j: int, t_max: int, g: int | None = None, gamma: DivisorSymbol | None = None) -> Series:
    """c_t(Gamma) * F^j * exp(K-part) modulo t^(t_max+1) and h^(r+1).

    F = sum_{1<=n<m} (-1)^(m-1) (m-1)! p_{m-n} h^n t^m / n!; the K-part uses
    a_k(K) = 2 q_k and a_0(K) = 2g - 2. Its h-degree can be cut at r - j
    since F^j is divisible by h^j.
    """
    if not (r >= 1 and d > r and 0 <= j <= r):
        raise ValueError("grr_series needs r >= 1, d > r and 0 <= j <= r")
    gamma = gamma or DivisorSymbol.atom("Gamma", d)
    c = chern_series(gamma, t_max, g)
    out: Series = {(k, 0): ck for k, ck in enumerate(c) if ck}
    f: Series = {}
    for m in range(2, t_max + 1):
        for n in range(1, min(m - 1, r) + 1):
            v = p_class(m - n, g).scale(Fraction((-1) ** (m - 1) * factorial(m - 1), factorial(n)))
            if v:
                f[m, n] = v
    for _ in range(j):
        out = _series_mul(out, f, t_max, r)
    if r - j >= 1:
        if g is None:
            raise ValueError("the canonical-class factor needs a genus")
        kpart: Series = {}
        for m in range(1, t_max + 1):
            for n in range(1, min(m, r - j) + 1):
                v = k_class(m - n, g).scale(Fraction((-1) ** (m - 1) * factorial(m - 1), 2 * factorial(n)))
                if v:
                    kpart[m, n] = v
        out = _series_mul(out, _series_exp(kpart, t_max, r - j, g), t_max, r)
    return out


@dataclass(frozen=True)
class StreamRelation:
    h_power: int
    t_power: int
    relation: ChowPoly


def grr_relation_stream(
    r: int, d: int, j: int, i_max: int, g: int | None = None, gamma: DivisorSymbol | None = None
) -> list[StreamRelation]:
    """Nonzero coefficients of t^i h^l with d < i <= i_max, ordered by (l, i)."""
    series = grr_series(r, d, j, i_max, g, gamma)
    out = []
    for h in range(0, r + 1):
        for i in range(d + 1, i_max + 1):
            rel = series.get((i, h))
            if rel:
                out.append(StreamRelation(h, i, rel))
    return out


def b_class(i: int, s: int, g: int | None = None) -> ChowPoly:
    return from_x_polynomial(gen_B(i, s), g)


def herbaut_modrat(
    r: int, d: int, i: int, g: int | None = None, gamma: DivisorSymbol | None = None
) -> ChowPoly:
    """sum_{n=0}^{i-1} (-1)^n c_n(Gamma) B(i-n, r), valid for i > d - r."""
    if r < 1 or d <= r:
        raise ValueError("herbaut_modrat needs r >= 1 and d > r")
    if i <= d - r:
        raise ValueError(f"herbaut_modrat needs i > d - r = {d - r}, got i = {i}")
    gamma = gamma or DivisorSymbol.atom("Gamma", d)
    c = chern_series(gamma, i, g)
    out = ChowPoly(g=g)
    for n in range(0, i):
        out = out + (c[n] * b_class(i - n, r, g)).scale((-1) ** n)
    return out


@dataclass(frozen=True)
class PencilRelations:
    gamma: DivisorSymbol
    points: tuple[DivisorSymbol, ...]
    per_point: tuple[ChowPoly, ...]
    summed: ChowPoly

    def sum_is_consistent(self) -> bool:
        """(1/d) * sum of the per-point relations equals the summed relation."""
        total = sum(self.per_point, ChowPoly(g=self.summed.g))
        return total.scale(Fraction(1, len(self.points))) == self.summed


def _pencil_relation(i: int, c: Sequence[ChowPoly], weight, g: int | None) -> ChowPoly:
    """p_i - sum_nu (-1)^(i+nu+1) nu! weight(nu) c_{i-nu} p_nu / i!."""
    out = p_class(i, g)
    for nu in range(1, i):
        coef = Fraction((-1) ** (i + nu + 1) * factorial(nu), factorial(i)) * weight(nu)
        out = out - (c[i - nu] * p_class(nu, g)).scale(coef)
    return out


def g2d_pencils(d: int, i: int, g: int | None = None) -> PencilRelations:
    """Relations from the pencils |Gamma - Q_s| of a net with Gamma = Q_1 + ... + Q_d."""
    if d < 3:
        raise ValueError("g2d_pencils needs d >= 3")
    if i < max(1, d - 1):
        raise ValueError(f"g2d_pencils needs i >= d - 1 = {d - 1}")
    gamma, pts = points_divisor(d)
    per = []
    for q in pts:
        sub = DivisorSymbol.combination(f"Gamma-{q.name}", [(gamma, 1), (q, -1)])
        per.append(_pencil_relation(i, chern_series(sub, i, g), lambda nu: 1, g))
    summed = _pencil_relation(i, chern_series(gamma, i, g), lambda nu: Fraction(d + nu - i, d), g)
    return PencilRelations(gamma, tuple(pts), tuple(per), summed)


# ---------------------------------------------------------------------------
# closure under D
# ---------------------------------------------------------------------------


@dataclass
class _Cell:
    monomials: list = field(default_factory=list)
    index: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)
    pivots: list = field(default_factory=list)

    def coords(self, p: ChowPoly) -> list[Fraction]:
        for m in p.terms:
            if m not in self.index:
                self.index[m] = len(self.monomials)
                self.monomials.append(m)
                for row in self.rows:
                    row.append(Fraction(0))
        v = [Fraction(0)] * len(self.monomials)
        for m, c in p.terms.items():
            v[self.index[m]] = c
        return v

    def add(self, p: ChowPoly) -> bool:
        v = self.coords(p)
        rem = reduce_against(v, self.rows, self.pivots)
        if not any(rem):
            return False
        self.rows, self.pivots = rref(self.rows + [rem])
        return True

    def canonical(self, g: int | None) -> list[ChowPoly]:
        order = sorted(self.monomials, key=_mono_key)
        perm = [self.index[m] for m in order]
        rows, _ = rref([[row[k] for k in perm] for row in self.rows])
        return [ChowPoly(dict(zip(order, primitive_integer_vector(row))), g) for row in rows]


@dataclass(frozen=True)
class ClosureResult:
    relations: tuple[ChowPoly, ...]
    iterations: int
    stable: bool

    def to_dict(self) -> dict:
        return {
            "iterations": self.iterations,
            "stable": self.stable,
            "relations": relations_to_json(self.relations),
        }


def closure_with_status(relations: Iterable[ChowPoly], max_iter: int, g: int | None = None) -> ClosureResult:
    """D-closure of a relation set with one reduced basis per (codimension, level).

    ``stable`` is True when a round of D produced nothing new; it says nothing
    about whether the set generates every relation.
    """
    if max_iter < 0:
        raise ValueError("max_iter must be nonnegative")
    relations = [p.with_genus(g) for p in relations]
    if g is None:
        g = next((p.g for p in relations if p.g is not None), None)
    cells: dict[tuple[int, int], _Cell] = {}

    def absorb(polys: Iterable[ChowPoly]) -> list[ChowPoly]:
        fresh = []
        for p in polys:
            for b, comp in sorted(p.components().items()):
                if cells.setdefault(b, _Cell()).add(comp):
                    fresh.append(comp)
        return fresh

    frontier = absorb(relations)
    stable = not frontier
    done = 0
    while frontier and done < max_iter:
        done += 1
        frontier = absorb(d_chow(p, g) for p in frontier)
        stable = not frontier
    out = []
    for b in sorted(cells, key=lambda b: (-b[0], -b[1])):
        out.extend(cells[b].canonical(g))
    return ClosureResult(tuple(out), done, stable)


def d_closure(relations: Iterable[ChowPoly], max_iter: int, g: int | None = None) -> list[ChowPoly]:
    return list(closure_with_status(relations, max_iter, g).relations)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def relation_to_json(p: ChowPoly, label: str | None = None) -> dict:
    out: dict = {"relation": format_chow(p)}
    if label is not None:
        out["label"] = label
    b = sorted(p.bidegrees())
    out["bidegree"] = {"codim": b[0][0], "level": b[0][1]} if len(b) == 1 else None
    return out


def relations_to_json(rels: Iterable[ChowPoly]) -> list[dict]:
    return [relation_to_json(p) for p in rels]
