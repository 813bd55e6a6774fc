"""Degree-by-degree ideal membership, colon ideals and socles by exact row reduction.

Everything here works one graded component at a time.  The degree-``k``
component of an ideal generated by homogeneous polynomials is spanned by the
products ``g_i * m`` with ``m`` ranging over monomials of degree
``k - deg g_i``; row reducing those products (columns in ascending revlex
order, pivot = first nonzero column) answers membership, and the recorded
elimination trail turns a positive answer into an explicit certificate.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .echelon import Echelon, to_fraction, to_q
from .polyarith import (
    DimensionError,
    HomogeneousPoly,
    Monomial,
    enumerate_degree,
    format_fraction,
    parse_monomial,
    revlex_key,
    variable,
)

__all__ = [
    "IdealPresentation",
    "GradedSpan",
    "Certificate",
    "Membership",
    "graded_component",
    "contains",
    "component_equal",
    "colon_component",
    "socle_basis",
    "monomial_ideal",
]


class IdealPresentation:
    """An ideal given by a list of nonzero homogeneous generators in ``d`` variables.

    Immutable after construction.  Graded components are memoised per
    instance behind a lock, so a presentation may be shared across threads.
    """

    def __init__(self, d: int, generators: Iterable[HomogeneousPoly], name: str = ""):
        gens = tuple(generators)
        for g in gens:
            if g.d != d:
                raise DimensionError(f"generator {g} is not in {d} variables")
            if g.is_zero():
                raise ValueError("generators must be nonzero")
        self.d = d
        self.generators = gens
        self.name = name
        self._components: dict[int, GradedSpan] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self.generators)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<IdealPresentation{label} d={self.d} gens={len(self.generators)}>"

    def component(self, k: int) -> GradedSpan:
        with self._lock:
            span = self._components.get(k)
        if span is None:
            span = GradedSpan.of_ideal(self, k)
            with self._lock:
                span = self._components.setdefault(k, span)
        return span


def monomial_ideal(d: int, monomials: Iterable[Monomial], name: str = "") -> IdealPresentation:
    return IdealPresentation(d, [HomogeneousPoly.monomial(m) for m in monomials], name=name)


@dataclass(frozen=True)
class Certificate:
    """``p = sum(coeff * generators[index] * multiplier)``."""

    terms: tuple[tuple[int, Monomial, Fraction], ...]

    def evaluate(self, ideal: IdealPresentation, degree: int) -> HomogeneousPoly:
        total = HomogeneousPoly.zero(ideal.d, degree)
        for index, multiplier, coeff in self.terms:
            total = total + (ideal.generators[index] * multiplier).scale(coeff)
        return total

    def verify(self, ideal: IdealPresentation, p: HomogeneousPoly) -> bool:
        return self.evaluate(ideal, p.degree) == p

    def to_json(self) -> list[list]:
        return [[i, str(m), format_fraction(c)] for i, m, c in self.terms]

    @classmethod
    def from_json(cls, data: Sequence[Sequence], d: int) -> Certificate:
        return cls(tuple((int(i), parse_monomial(m, d), Fraction(c)) for i, m, c in data))


@dataclass(frozen=True)
class Membership:
    member: bool
    certificate: Certificate | None = None

    def __bool__(self) -> bool:
        return self.member


class GradedSpan:
    """Exact row-reduced span of degree-``k`` polynomials in ``d`` variables."""

    def __init__(self, d: int, degree: int, generators: Sequence[HomogeneousPoly],
                 sources: Sequence[tuple[int, Monomial]] | None = None):
        self.d = d
        self.degree = degree
        self.columns = enumerate_degree(d, degree)
        self.col_index = {m: i for i, m in enumerate(self.columns)}
        self.generators = tuple(generators)
        self.sources = tuple(sources) if sources is not None else tuple(
            (i, Monomial.one(d)) for i in range(len(self.generators)))
        self._echelon = Echelon()
        for row, g in enumerate(self.generators):
            if g.d != d or g.degree != degree:
                raise ValueError(f"span element {g} is not homogeneous of degree {degree} in {d} variables")
            self._echelon.insert(self.vector(g), row)

    @classmethod
    def of_ideal(cls, ideal: IdealPresentation, k: int) -> GradedSpan:
        polys: list[HomogeneousPoly] = []
        sources: list[tuple[int, Monomial]] = []
        for i, g in enumerate(ideal.generators):
            if g.degree > k:
                continue
            for m in enumerate_degree(ideal.d, k - g.degree):
                polys.append(g * m)
                sources.append((i, m))
        return cls(ideal.d, k, polys, sources)

    @property
    def rank(self) -> int:
        return self._echelon.rank

    @property
    def full_dimension(self) -> int:
        return len(self.columns)

    def vector(self, p: HomogeneousPoly) -> dict[int, object]:
        if p.d != self.d or p.degree != self.degree:
            raise ValueError(f"{p} is not homogeneous of degree {self.degree} in {self.d} variables")
        return {self.col_index[m]: to_q(c) for m, c in p.items()}

    def poly(self, vec: dict[int, object]) -> HomogeneousPoly:
        return HomogeneousPoly(self.d, self.degree,
                               {self.columns[c]: to_fraction(x) for c, x in vec.items()})

    def normal_form(self, p: HomogeneousPoly) -> HomogeneousPoly:
        """The unique representative of ``p`` modulo the span vanishing on all pivot columns."""
        rem, _ = self._echelon.reduce(self.vector(p))
        return self.poly(rem)

    def reduces_to_zero(self, p: HomogeneousPoly) -> bool:
        rem, _ = self._echelon.reduce(self.vector(p))
        return not rem

    def certificate(self, p: HomogeneousPoly) -> Certificate | None:
        rem, trail = self._echelon.reduce(self.vector(p))
        if rem:
            return None
        combo = self._echelon.combine(trail)
        terms = []
        for row, c in combo.items():
            index, multiplier = self.sources[row]
            terms.append((index, multiplier, to_fraction(c)))
        terms.sort(key=lambda t: (t[0], revlex_key(t[1])))
        return Certificate(tuple(terms))

    def pivot_monomials(self) -> list[Monomial]:
        return [self.columns[c] for c in sorted(self._echelon.pivots)]

    def basis(self) -> list[HomogeneousPoly]:
        """Reduced row echelon basis, one polynomial per pivot, in pivot order."""
        rows = self._echelon.rref_rows()
        return [self.poly(rows[p]) for p in sorted(rows)]

    def contains_span(self, other: GradedSpan) -> bool:
        return all(self.reduces_to_zero(b) for b in other.basis())


def graded_component(ideal: IdealPresentation, k: int) -> GradedSpan:
    if k < 0:
        raise ValueError("degree must be non-negative")
    return ideal.component(k)


def contains(ideal: IdealPresentation, p: HomogeneousPoly) -> Membership:
    if p.is_zero():
        raise ValueError("membership is asked of nonzero polynomials")
    cert = graded_component(ideal, p.degree).certificate(p)
    return Membership(cert is not None, cert)


def component_equal(a: IdealPresentation, b: IdealPresentation, k: int) -> bool:
    sa, sb = graded_component(a, k), graded_component(b, k)
    if sa.rank != sb.rank:
        return False
    return sa.contains_span(sb) and sb.contains_span(sa)


def colon_component(ideal: IdealPresentation, by: Sequence[Monomial], k: int) -> GradedSpan:
    """Degree-``k`` part of ``ideal : (by)`` as the kernel of ``f -> (f*b mod ideal)_b``."""
    if not by:
        raise ValueError("colon needs at least one multiplier")
    d = ideal.d
    targets = [graded_component(ideal, k + b.degree) for b in by]
    widths = [t.full_dimension for t in targets]
    offsets = [sum(widths[:i]) for i in range(len(widths))]
    monos = enumerate_degree(d, k)
    echelon = Echelon()
    kernel: list[dict[int, object]] = []
    for row, m in enumerate(monos):
        vec: dict[int, object] = {}
        for b, span, off in zip(by, targets, offsets):
            rem, _ = span._echelon.reduce({span.col_index[m * b]: to_q(1)})
            for c, x in rem.items():
                vec[off + c] = x
        trail = echelon.insert(vec, row)
        if trail is not None:
            combo = {row: to_q(1)}
            for s, x in echelon.combine(trail).items():
                y = combo.get(s, 0) - x
                if y:
                    combo[s] = y
                else:
                    combo.pop(s, None)
            kernel.append(combo)
    polys = [HomogeneousPoly(d, k, {monos[s]: to_fraction(x) for s, x in combo.items()})
             for combo in kernel]
    return GradedSpan(d, k, polys)


def socle_basis(ideal: IdealPresentation, k: int) -> list[HomogeneousPoly]:
    """Canonical representatives of a basis of ``((ideal : m) / ideal)_k``.

    Colon elements are reduced modulo the ideal's degree-``k`` component, then
    the survivors are put in reduced echelon form with respect to their
    revlex-largest term, whose coefficient is normalised to 1.
    """
    d = ideal.d
    colon = colon_component(ideal, [variable(d, i) for i in range(1, d + 1)], k)
    own = graded_component(ideal, k)
    n = own.full_dimension
    flipped = Echelon()
    for f in colon.basis():
        rem, _ = own._echelon.reduce(own.vector(f))
        if rem:
            flipped.insert({n - 1 - c: x for c, x in rem.items()}, None)
    rows = flipped.rref_rows()
    out = [own.poly({n - 1 - c: x for c, x in rows[p].items()}) for p in sorted(rows)]
    return out
