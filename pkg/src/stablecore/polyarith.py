"""Exact arithmetic on monomials and homogeneous polynomials over the rationals.

Monomials are dense exponent tuples in a fixed number of variables ``d``.
Within a single degree they are compared in graded reverse lexicographic
order: ``m < m'`` when, at the last index where the exponents differ, ``m``
has the larger exponent.  So ``x1*x6 < x2*x5`` and, among the degree-3
monomials of ``k[x2, x3]``, ``x2^3`` is the largest.

Text format: ``x1^2*x3`` (1-based indices), ``1`` for the empty monomial.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Iterator, Mapping

__all__ = [
    "DimensionError",
    "DegreeError",
    "Monomial",
    "HomogeneousPoly",
    "LESS",
    "EQUAL",
    "GREATER",
    "revlex_key",
    "revlex_compare",
    "enumerate_degree",
    "monomial_mul",
    "parse_monomial",
    "parse_poly",
    "format_fraction",
    "parse_fraction",
    "variable",
]

LESS, EQUAL, GREATER = -1, 0, 1


class DimensionError(ValueError):
    """Operands live in polynomial rings with different numbers of variables."""


class DegreeError(ValueError):
    """Operands have incompatible degrees."""


@dataclass(frozen=True)
class Monomial:
    exps: tuple[int, ...]
    degree: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        exps = tuple(int(e) for e in self.exps)
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        object.__setattr__(self, "exps", exps)
        object.__setattr__(self, "degree", sum(exps))

    @property
    def d(self) -> int:
        return len(self.exps)

    @classmethod
    def one(cls, d: int) -> Monomial:
        return cls((0,) * d)

    @classmethod
    def from_indices(cls, d: int, indices: Iterable[int]) -> Monomial:
        """Build ``x_{i1} x_{i2} ...`` from 1-based variable indices (repeats allowed)."""
        exps = [0] * d
        for i in indices:
            if not 1 <= i <= d:
                raise DimensionError(f"variable index {i} outside 1..{d}")
            exps[i - 1] += 1
        return cls(tuple(exps))

    def indices(self) -> list[int]:
        """Sorted 1-based support with multiplicity, e.g. ``x1*x3^2 -> [1, 3, 3]``."""
        out: list[int] = []
        for i, e in enumerate(self.exps, start=1):
            out.extend([i] * e)
        return out

    def min_index(self) -> int:
        for i, e in enumerate(self.exps, start=1):
            if e:
                return i
        raise ValueError("the constant monomial has empty support")

    def divides(self, other: Monomial) -> bool:
        _check_dim(self, other)
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def __mul__(self, other: Monomial) -> Monomial:
        return monomial_mul(self, other)

    def __truediv__(self, other: Monomial) -> Monomial:
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        return Monomial(tuple(a - b for a, b in zip(self.exps, other.exps)))

    def embed(self, d: int) -> Monomial:
        """The same monomial in a ring with ``d >= self.d`` variables."""
        if d < self.d and any(self.exps[d:]):
            raise DimensionError(f"{self} does not live in {d} variables")
        return Monomial(self.exps[:d] + (0,) * (d - self.d))

    def __str__(self) -> str:
        parts = []
        for i, e in enumerate(self.exps, start=1):
            if e == 1:
                parts.append(f"x{i}")
            elif e > 1:
                parts.append(f"x{i}^{e}")
        return "*".join(parts) if parts else "1"


def _check_dim(a: Monomial, b: Monomial) -> None:
    if len(a.exps) != len(b.exps):
        raise DimensionError(f"dimension mismatch: {a.d} vs {b.d}")


def variable(d: int, i: int) -> Monomial:
    return Monomial.from_indices(d, [i])


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    _check_dim(a, b)
    return Monomial(tuple(x + y for x, y in zip(a.exps, b.exps)))


def revlex_key(m: Monomial) -> tuple[int, ...]:
    """Sort key realising revlex inside one degree (ascending = smaller first)."""
    return tuple(-e for e in reversed(m.exps))


def revlex_compare(a: Monomial, b: Monomial) -> int:
    _check_dim(a, b)
    if a.degree != b.degree:
        raise DegreeError(f"revlex compares equal degrees only ({a.degree} vs {b.degree})")
    for x, y in zip(reversed(a.exps), reversed(b.exps)):
        if x != y:
            return LESS if x > y else GREATER
    return EQUAL


@lru_cache(maxsize=None)
def enumerate_degree(d: int, k: int) -> tuple[Monomial, ...]:
    """All ``C(d+k-1, k)`` monomials of degree ``k`` in ``d`` variables, ascending in revlex."""
    if d < 1 or k < 0:
        raise ValueError(f"need d >= 1 and k >= 0, got d={d}, k={k}")
    mons = [Monomial.from_indices(d, [i + 1 for i in c])
            for c in combinations_with_replacement(range(d), k)]
    mons.sort(key=revlex_key)
    assert len(mons) == comb(d + k - 1, k)
    return tuple(mons)


_MONO_RE = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse_monomial(text: str, d: int) -> Monomial:
    text = text.strip().replace(" ", "")
    if text == "1":
        return Monomial.one(d)
    exps = [0] * d
    for factor in text.split("*"):
        match = _MONO_RE.match(factor)
        if not match:
            raise ValueError(f"cannot parse monomial factor {factor!r} in {text!r}")
        i = int(match.group(1))
        if not 1 <= i <= d:
            raise DimensionError(f"variable x{i} outside x1..x{d}")
        exps[i - 1] += int(match.group(2) or 1)
    return Monomial(tuple(exps))


def format_fraction(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text)


class HomogeneousPoly:
    """A rational linear combination of monomials of one fixed degree.

    Values are immutable; the arithmetic operators return new polynomials in
    canonical form (no zero coefficients stored).  The zero polynomial still
    carries a degree so that it can be added to polynomials of that degree.
    """

    __slots__ = ("d", "degree", "_terms", "_hash")

    def __init__(self, d: int, degree: int, terms: Mapping[Monomial, object] | None = None):
        clean: dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            if m.d != d:
                raise DimensionError(f"monomial {m} is not in {d} variables")
            if m.degree != degree:
                raise DegreeError(f"monomial {m} has degree {m.degree}, expected {degree}")
            c = Fraction(c)
            if c:
                clean[m] = clean.get(m, 0) + c
                if not clean[m]:
                    del clean[m]
        self.d = d
        self.degree = degree
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def monomial(cls, m: Monomial, coeff: object = 1) -> HomogeneousPoly:
        return cls(m.d, m.degree, {m: coeff})

    @classmethod
    def zero(cls, d: int, degree: int) -> HomogeneousPoly:
        return cls(d, degree)

    @classmethod
    def _raw(cls, d: int, degree: int, terms: dict[Monomial, Fraction]) -> HomogeneousPoly:
        poly = cls.__new__(cls)
        poly.d, poly.degree, poly._terms, poly._hash = d, degree, terms, None
        return poly

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def monomials(self) -> list[Monomial]:
        return sorted(self._terms, key=revlex_key, reverse=True)

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _check_compatible(self, other: HomogeneousPoly) -> None:
        if self.d != other.d:
            raise DimensionError(f"dimension mismatch: {self.d} vs {other.d}")
        if self.degree != other.degree:
            raise DegreeError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other: HomogeneousPoly) -> HomogeneousPoly:
        self._check_compatible(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return HomogeneousPoly._raw(self.d, self.degree, out)

    def __neg__(self) -> HomogeneousPoly:
        return HomogeneousPoly._raw(self.d, self.degree, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: HomogeneousPoly) -> HomogeneousPoly:
        return self + (-other)

    def scale(self, c: object) -> HomogeneousPoly:
        c = Fraction(c)
        if not c:
            return HomogeneousPoly.zero(self.d, self.degree)
        return HomogeneousPoly._raw(self.d, self.degree, {m: c * v for m, v in self._terms.items()})

    def mul_monomial(self, m: Monomial) -> HomogeneousPoly:
        if m.d != self.d:
            raise DimensionError(f"dimension mismatch: {self.d} vs {m.d}")
        return HomogeneousPoly._raw(
            self.d, self.degree + m.degree,
            {monomial_mul(t, m): c for t, c in self._terms.items()})

    def __mul__(self, other: object) -> HomogeneousPoly:
        if isinstance(other, Monomial):
            return self.mul_monomial(other)
        if isinstance(other, HomogeneousPoly):
            if other.d != self.d:
                raise DimensionError(f"dimension mismatch: {self.d} vs {other.d}")
            out: dict[Monomial, Fraction] = {}
            for m1, c1 in self._terms.items():
                for m2, c2 in other._terms.items():
                    m = monomial_mul(m1, m2)
                    v = out.get(m, 0) + c1 * c2
                    if v:
                        out[m] = v
                    else:
                        out.pop(m, None)
            return HomogeneousPoly._raw(self.d, self.degree + other.degree, out)
        return self.scale(other)

    __rmul__ = __mul__

    def substitute(self, images: list[HomogeneousPoly]) -> HomogeneousPoly:
        """Replace ``x_i`` by the linear form ``images[i-1]`` (a graded ring map)."""
        if len(images) != self.d:
            raise DimensionError(f"need {self.d} images, got {len(images)}")
        d_out = images[0].d
        total = HomogeneousPoly.zero(d_out, self.degree)
        for m, c in self._terms.items():
            prod = HomogeneousPoly.monomial(Monomial.one(d_out))
            for i in m.indices():
                prod = prod * images[i - 1]
            total = total + prod.scale(c)
        return total

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        return (self.d, self.degree, self._terms) == (other.d, other.degree, other._terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.d, self.degree, frozenset(self._terms.items())))
        return self._hash

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = ""
        for m in self.monomials():
            c = self._terms[m]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = str(m)
            if a != 1:
                body = format_fraction(a) if body == "1" else f"{format_fraction(a)}*{body}"
            out += (f"-{body}" if sign == "-" else body) if not out else f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"HomogeneousPoly(d={self.d}, {self})"


_TERM_RE = re.compile(r"([+-]?)\s*([^+-]+)")


def parse_poly(text: str, d: int) -> HomogeneousPoly:
    """Parse ``"1/2*x1^2 - 1/2*x2^2"``-style text; all terms must share a degree."""
    text = text.strip()
    terms: list[tuple[Monomial, Fraction]] = []
    for sign, body in _TERM_RE.findall(text):
        body = body.strip()
        if not body:
            continue
        coeff = Fraction(1)
        factors = body.split("*")
        if factors and not factors[0].strip().startswith("x"):
            coeff = Fraction(factors[0].strip())
            factors = factors[1:]
        mono = parse_monomial("*".join(factors) if factors else "1", d)
        terms.append((mono, -coeff if sign == "-" else coeff))
    if not terms:
        raise ValueError(f"empty polynomial text {text!r}")
    degree = terms[0][0].degree
    out = HomogeneousPoly.zero(d, degree)
    for m, c in terms:
        out = out + HomogeneousPoly.monomial(m, c)
    return out
