"""The core ``I m^(g-1)`` and the socle computations behind its lower bound.

``core`` returns the closed form.  The remaining functions check, with
exact graded linear algebra, the statements the formula rests on: the socle
of ``R/J`` for ``J`` the diagonal reduction of ``m^2``, the Northcott
determinant congruences, containment of ``I m^(g-1)`` in images of ``J``
under upper-triangular coordinate changes, and the obstruction ``x_1^g``
not in ``J``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .diagred import DiagonalReduction, core_monomials, diagonal_reduction
from .gradedmembership import (
    Certificate,
    IdealPresentation,
    colon_component,
    component_equal,
    contains,
    graded_component,
    monomial_ideal,
    socle_basis,
)
from .polyarith import HomogeneousPoly, Monomial, enumerate_degree, revlex_key, variable
from .stableideal import GdDiagnostic, PreconditionError, StableIdeal2, has_Gd, trim

__all__ = [
    "GdFailure",
    "CoreResult",
    "NorthcottMatrix",
    "SocleReport",
    "NorthcottReport",
    "UpperBoundReport",
    "ObstructionReport",
    "core",
    "core_strong_stability_check",
    "is_exchange_closed",
    "full_square",
    "diagonal_of_square",
    "x1_powers_in_J_check",
    "x1_times_smaller_reduction_check",
    "socle_check",
    "northcott_matrix",
    "determinant",
    "northcott_check",
    "random_upper_triangular",
    "apply_coordinate_change",
    "certify_core_upper_bound",
    "certify_lower_bound_obstruction",
]


class GdFailure(PreconditionError):
    def __init__(self, diagnostic: GdDiagnostic):
        super().__init__(
            f"the ideal lacks the G_d property (x{diagnostic.g - 1}*x{diagnostic.d} is not in I); "
            "the core formula does not apply")
        self.diagnostic = diagnostic


@dataclass(frozen=True)
class CoreResult:
    source: StableIdeal2
    g: int
    generators: tuple[Monomial, ...]
    working_d: int
    trimmed_from: int | None = None
    provenance: str = "theorem"

    def to_json(self) -> dict:
        out = {
            "g": self.g,
            "degree": self.g + 1,
            "count": len(self.generators),
            "generators": [str(m) for m in self.generators],
            "provenance": self.provenance,
        }
        if self.trimmed_from is not None:
            out["trimmed"] = {"from_d": self.trimmed_from, "to_d": self.working_d}
        return out


def core(ideal: StableIdeal2, auto_trim: bool = True) -> CoreResult:
    """Minimal monomial generators of ``I m^(g-1)``, in the ideal's own ring.

    When ``x_1 x_d`` is missing the computation runs over the trimmed ring
    and the generators are extended back unchanged.
    """
    work = ideal
    trimmed_from = None
    if ideal.rows[0] != ideal.d:
        if not auto_trim:
            raise PreconditionError(f"x1*x{ideal.d} is not in the ideal; trim first")
        work, trimmed_from = trim(ideal)
    diag = has_Gd(work)
    if not diag.holds:
        raise GdFailure(diag)
    gens = sorted((m.embed(ideal.d) for m in core_monomials(work)), key=revlex_key, reverse=True)
    provenance = "formula-extrapolated" if work.g == 1 else "theorem"
    return CoreResult(ideal, work.g, tuple(gens), work.d, trimmed_from, provenance)


def is_exchange_closed(monos: Sequence[Monomial]) -> bool:
    pool = set(monos)
    for m in pool:
        for j in range(1, m.d + 1):
            if not m.exps[j - 1]:
                continue
            for i in range(1, j):
                if (m / variable(m.d, j)) * variable(m.d, i) not in pool:
                    return False
    return True


def core_strong_stability_check(result: CoreResult | Sequence[Monomial]) -> bool:
    monos = result.generators if isinstance(result, CoreResult) else result
    return is_exchange_closed(monos)


def full_square(d: int) -> StableIdeal2:
    return StableIdeal2(d, (d,) * d)


@lru_cache(maxsize=None)
def diagonal_of_square(d: int) -> DiagonalReduction:
    """Diagonal reduction of ``(x_1, ..., x_d)^2``: ``f_i = sum_j x_j x_{j+i-1}``."""
    return diagonal_reduction(full_square(d))


def x1_powers_in_J_check(d: int) -> list[tuple[int, Monomial, Certificate]]:
    """Certificates for ``x_1^h x_{d-h+1}`` in ``J`` for ``h = 1..d``."""
    J = diagonal_of_square(d).ideal
    out = []
    for h in range(1, d + 1):
        m = Monomial.from_indices(d, [1] * h + [d - h + 1])
        found = contains(J, HomogeneousPoly.monomial(m))
        if not found:
            raise AssertionError(f"{m} is not in the diagonal reduction of m^2 (d={d})")
        out.append((h, m, found.certificate))
    return out


def _closed_form_soc_lem(d: int, i: int) -> Certificate:
    # x1*g_i = x1*f_i - (x1*x_d)*x_{d-i+1}; f_d = x1*x_d sits at index d-1
    return Certificate(((i - 1, variable(d, 1), Fraction(1)),
                        (d - 1, variable(d, d - i + 1), Fraction(-1))))


def x1_times_smaller_reduction_check(d: int) -> list[dict]:
    """``x_1 K`` inside ``J``, ``K`` the diagonal reduction of ``(x_1..x_{d-1})^2`` embedded in ``d`` variables."""
    if d < 2:
        raise ValueError("needs d >= 2")
    J = diagonal_of_square(d).ideal
    K = diagonal_of_square(d - 1)
    out = []
    for i, gi in enumerate(K.gens, start=1):
        lifted = HomogeneousPoly(d, 2, {m.embed(d): c for m, c in gi.items()})
        target = lifted * variable(d, 1)
        closed = _closed_form_soc_lem(d, i)
        found = contains(J, target)
        if not found or not closed.verify(J, target):
            raise AssertionError(f"x1*g_{i} not certified in J (d={d})")
        out.append({"i": i, "g": lifted, "product": target,
                    "closed_form": closed, "certificate": found.certificate})
    return out


@dataclass(frozen=True)
class SocleReport:
    d: int
    socle: tuple[HomogeneousPoly, ...]
    socle_gen: HomogeneousPoly
    matches: bool
    top_not_in_J: bool

    def to_json(self) -> dict:
        return {"d": self.d, "socle": [str(p) for p in self.socle],
                "expected": str(self.socle_gen), "matches": self.matches,
                "x1^d_not_in_J": self.top_not_in_J}


def socle_check(d: int) -> SocleReport:
    """Compute the degree-``d`` socle of ``R/J`` for ``J`` the diagonal reduction of ``m^2``.

    For ``d = 1`` the ideal is ``(x_1^2)`` and the socle sits in degree 1.
    """
    J = diagonal_of_square(d).ideal
    expected = HomogeneousPoly.monomial(Monomial.from_indices(d, [1] * d))
    basis = tuple(socle_basis(J, d))
    not_in_J = not contains(J, expected)
    return SocleReport(d, basis, expected, basis == (expected,) and not_in_J, not_in_J)


@dataclass(frozen=True)
class NorthcottMatrix:
    d: int
    entries: tuple[tuple[HomogeneousPoly, ...], ...]

    def row_products(self) -> list[HomogeneousPoly]:
        xs = [HomogeneousPoly.monomial(variable(self.d, j)) for j in range(1, self.d + 1)]
        out = []
        for row in self.entries:
            total = HomogeneousPoly.zero(self.d, 2)
            for a, x in zip(row, xs):
                total = total + a * x
            out.append(total)
        return out


def northcott_matrix(d: int) -> NorthcottMatrix:
    """``a_ij = (x_{j-i+1} + x_{j+i-1}) / 2`` with out-of-range variables set to zero."""
    half = Fraction(1, 2)
    rows = []
    for i in range(1, d + 1):
        row = []
        for j in range(1, d + 1):
            entry = HomogeneousPoly.zero(d, 1)
            for k in (j - (i - 1), j + (i - 1)):
                if 1 <= k <= d:
                    entry = entry + HomogeneousPoly.monomial(variable(d, k), half)
            row.append(entry)
        rows.append(tuple(row))
    return NorthcottMatrix(d, tuple(rows))


def determinant(matrix: Sequence[Sequence[HomogeneousPoly]]) -> HomogeneousPoly:
    """Cofactor expansion along successive rows, memoised on the remaining column set."""
    n = len(matrix)
    d = matrix[0][0].d
    memo: dict[int, HomogeneousPoly] = {}

    def minor(row: int, cols: int) -> HomogeneousPoly:
        if row == n:
            return HomogeneousPoly.monomial(Monomial.one(d))
        if cols in memo:
            return memo[cols]
        total = HomogeneousPoly.zero(d, sum(matrix[r][0].degree for r in range(row, n)))
        sign = 1
        for c in range(n):
            if not cols >> c & 1:
                continue
            entry = matrix[row][c]
            if entry:
                total = total + (entry * minor(row + 1, cols & ~(1 << c))).scale(sign)
            sign = -sign
        memo[cols] = total
        return total

    return minor(0, (1 << n) - 1)


@dataclass(frozen=True)
class NorthcottReport:
    d: int
    det: HomogeneousPoly
    c: int
    rows_match: bool
    det_identity: bool
    sign_identity: bool
    colon_match: bool

    @property
    def ok(self) -> bool:
        return self.rows_match and self.det_identity and self.sign_identity and self.colon_match

    def to_json(self) -> dict:
        return {"d": self.d, "det": str(self.det), "c": self.c, "rows_match": self.rows_match,
                "det_identity": self.det_identity, "sign_identity": self.sign_identity, "colon_match": self.colon_match}


def _in_ideal(J: IdealPresentation, p: HomogeneousPoly) -> bool:
    return p.is_zero() or contains(J, p).member


def northcott_check(d: int) -> NorthcottReport:
    if d < 2:
        raise ValueError("needs d >= 2")
    red = diagonal_of_square(d)
    J = red.ideal
    A = northcott_matrix(d)
    rows_match = A.row_products() == list(red.gens)
    det = determinant(A.entries)
    x1d = HomogeneousPoly.monomial(Monomial.from_indices(d, [1] * d))
    xdd = HomogeneousPoly.monomial(Monomial.from_indices(d, [d] * d))
    c = 0 if d % 4 in (0, 1) else 1
    det_identity = _in_ideal(J, det - x1d)
    sign_identity = _in_ideal(J, x1d - xdd.scale((-1) ** c))
    with_det = IdealPresentation(d, (det,) + J.generators, name="(det A) + J")
    colon = colon_component(J, [variable(d, i) for i in range(1, d + 1)], d)
    own = graded_component(with_det, d)
    colon_match = own.rank == colon.rank and own.contains_span(colon) and colon.contains_span(own)
    return NorthcottReport(d, det, c, rows_match, det_identity, sign_identity, colon_match)


def random_upper_triangular(d: int, rng: random.Random, low: int = -2, high: int = 2) -> list[list[int]]:
    return [[1 if i == j else (rng.randint(low, high) if i < j else 0) for j in range(d)]
            for i in range(d)]


def apply_coordinate_change(J: IdealPresentation, A: Sequence[Sequence[object]]) -> IdealPresentation:
    """Image of ``J`` under ``x_j -> sum_i A[i][j] x_i``."""
    d = J.d
    images = []
    for j in range(d):
        terms = {variable(d, i + 1): A[i][j] for i in range(d) if A[i][j]}
        images.append(HomogeneousPoly(d, 1, terms))
    return IdealPresentation(d, [f.substitute(images) for f in J.generators], name="phi_A(J)")


@dataclass(frozen=True)
class UpperBoundReport:
    trials: int
    seed: int | None
    passed: int
    matrices: tuple[tuple[tuple[int, ...], ...], ...]
    failures: tuple[tuple[int, Monomial], ...] = ()

    @property
    def ok(self) -> bool:
        return self.passed == len(self.matrices) and not self.failures

    def to_json(self) -> dict:
        return {"trials": self.trials, "seed": self.seed, "passed": self.passed,
                "failures": [[t, str(m)] for t, m in self.failures]}


def certify_core_upper_bound(ideal: StableIdeal2, trials: int = 5, seed: int | None = 0,
                             matrices: Sequence[Sequence[Sequence[int]]] | None = None
                             ) -> UpperBoundReport:
    """Every monomial of ``I m^(g-1)`` lies in ``phi_A(J)`` for each sampled upper-triangular ``A``."""
    if not has_Gd(ideal).holds:
        raise GdFailure(has_Gd(ideal))
    red = diagonal_reduction(ideal)
    if matrices is None:
        rng = random.Random(seed)
        matrices = [random_upper_triangular(ideal.d, rng) for _ in range(trials)]
    targets = [HomogeneousPoly.monomial(m) for m in core_monomials(ideal)]
    passed = 0
    failures = []
    for t, A in enumerate(matrices):
        image = apply_coordinate_change(red.ideal, A)
        bad = [p for p in targets if not contains(image, p)]
        if bad:
            failures.append((t, bad[0].monomials()[0]))
        else:
            passed += 1
    frozen = tuple(tuple(tuple(int(x) for x in row) for row in A) for A in matrices)
    return UpperBoundReport(len(frozen), seed, passed, frozen, tuple(failures))


@dataclass(frozen=True)
class ObstructionReport:
    g: int
    socle: SocleReport
    restriction_is_square_reduction: bool
    x1g_not_in_J: bool
    degree_equality: bool

    @property
    def ok(self) -> bool:
        return (self.socle.matches and self.restriction_is_square_reduction
                and self.x1g_not_in_J and self.degree_equality)

    def to_json(self) -> dict:
        return {"socle_in_g_vars": self.socle.matches,
                "restriction_is_square_reduction": self.restriction_is_square_reduction,
                "x1^g_not_in_J": self.x1g_not_in_J,
                "core_equals_I_cap_m^(g+1)": self.degree_equality}


def _restrict(p: HomogeneousPoly, g: int) -> HomogeneousPoly:
    """Set ``x_{g+1}, ..., x_d`` to zero and view the result in ``g`` variables."""
    terms = {Monomial(m.exps[:g]): c for m, c in p.items() if not any(m.exps[g:])}
    return HomogeneousPoly(g, p.degree, terms)


def certify_lower_bound_obstruction(ideal: StableIdeal2) -> ObstructionReport:
    """``x_1^g`` is outside ``J``, so the core has nothing in degree ``g``."""
    if ideal.g < 2:
        raise PreconditionError("the socle obstruction is stated for g >= 2")
    if not has_Gd(ideal).holds:
        raise GdFailure(has_Gd(ideal))
    g, d = ideal.g, ideal.d
    red = diagonal_reduction(ideal)
    socle = socle_check(g)
    restricted = {p for p in (_restrict(f, g) for f in red.gens) if p}
    restriction_ok = restricted == set(diagonal_of_square(g).gens)
    x1g = HomogeneousPoly.monomial(Monomial.from_indices(d, [1] * g))
    outside = not contains(red.ideal, x1g)
    core_ideal = monomial_ideal(d, core_monomials(ideal), name="I m^(g-1)")
    equal = component_equal(core_ideal, ideal.presentation(), g + 1)
    return ObstructionReport(g, socle, restriction_ok, outside, equal)
