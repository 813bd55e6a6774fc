"""The diagonal reduction of a degree-two strongly stable ideal.

The ``n``-th generator sums the monomials on the ``n``-th diagonal of the
tableau, ``f_n = x_1 x_n + x_2 x_{n+1} + ... + x_b x_{b+n-1}`` with ``b``
the last row still reaching column ``b+n-1``.  The module also runs the
ordering procedure on monomials ``M_1 = x_1 x_d, M_2, ..., x_1^2`` that
drives the containment ``I m^(g-1) in J``, and checks the statements about
that ordering together with the containment and reduction claims.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import comb

from .gradedmembership import (
    Certificate,
    IdealPresentation,
    component_equal,
    contains,
    monomial_ideal,
)
from .polyarith import HomogeneousPoly, Monomial, enumerate_degree, revlex_key
from .stableideal import PreconditionError, StableIdeal2, has_Gd

__all__ = [
    "AlgorithmError",
    "NonMembership",
    "DiagonalReduction",
    "OrderedS",
    "StratumCheck",
    "ImInJReport",
    "ReductionReport",
    "diagonal_reduction",
    "run_algorithm",
    "stratum",
    "verify_Sh_equals_Th",
    "successor_in_lower_stratum",
    "certify_Im_in_J",
    "certify_reduction",
    "core_monomials",
    "power_monomials",
]

log = logging.getLogger(__name__)


class AlgorithmError(RuntimeError):
    """The ordering procedure reached a state it does not cover, or repeated itself."""


class NonMembership(AssertionError):
    """A monomial that must lie in the diagonal reduction was not found there."""

    def __init__(self, monomial: Monomial):
        super().__init__(f"{monomial} is not in the diagonal reduction")
        self.monomial = monomial


@dataclass(frozen=True)
class DiagonalReduction:
    d: int
    betas: tuple[int, ...]
    gens: tuple[HomogeneousPoly, ...]

    @cached_property
    def ideal(self) -> IdealPresentation:
        return IdealPresentation(self.d, self.gens, name="J")

    def to_json(self) -> dict:
        return {"betas": list(self.betas), "generators": [str(f) for f in self.gens]}


def diagonal_reduction(ideal: StableIdeal2) -> DiagonalReduction:
    if ideal.rows[0] != ideal.d:
        raise PreconditionError(f"x1*x{ideal.d} must lie in the ideal; trim first")
    d = ideal.d
    betas = []
    gens = []
    for n in range(1, d + 1):
        beta = max(b for b in range(1, ideal.g + 1) if ideal.contains_quadric(b, b + n - 1))
        betas.append(beta)
        terms = {Monomial.from_indices(d, [j, j + n - 1]): 1 for j in range(1, beta + 1)}
        gens.append(HomogeneousPoly(d, 2, terms))
    return DiagonalReduction(d, tuple(betas), tuple(gens))


@dataclass(frozen=True)
class OrderedS:
    d: int
    g: int
    sequence: tuple[Monomial, ...]
    index: dict[Monomial, tuple[int, int]] = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.sequence)

    def position(self, m: Monomial) -> int:
        return self._positions[m]

    @cached_property
    def _positions(self) -> dict[Monomial, int]:
        return {m: i for i, m in enumerate(self.sequence)}

    def stratum(self, h: int) -> list[Monomial]:
        return [m for m in self.sequence if self.index[m][0] == h]

    def to_jsonl(self) -> list[dict]:
        return [{"index": i + 1, "monomial": str(m), "h": self.index[m][0], "j": self.index[m][1]}
                for i, m in enumerate(self.sequence)]


def _step(m: Monomial, g: int) -> Monomial:
    idx = m.indices()
    d = m.d
    h, r = idx[0], idx[1]
    rest = idx[2:]
    if h < r and h < g:
        return Monomial.from_indices(d, [h + 1, r, r] + rest)
    if h == g < r:
        return Monomial.from_indices(d, [h, r - 1] + rest)
    if h == r and rest and h > 1:
        t, sigma = rest[0], rest[1:]
        return Monomial.from_indices(d, [h - 1, t - 1] + sigma)
    raise AlgorithmError(f"no branch applies to {m} (h={h}, r={r}, g={g})")


def run_algorithm(d: int, g: int) -> OrderedS:
    """Generate the ordered set ``S``; it depends only on the dimension and the height.

    Starting at ``x_1 x_d``, each step writes ``M = x_h x_r x_t * sigma`` with
    ``h <= r <= t`` the three smallest indices (with multiplicity) and moves
    up a stratum (``x_{h+1} x_r^2 x_t sigma``), along the bottom stratum
    (``x_g x_{r-1} x_t sigma``) or down one (``x_{h-1} x_{t-1} sigma``),
    stopping once ``x_1^2`` is produced.
    """
    if not 1 <= g <= d:
        raise ValueError(f"need 1 <= g <= d, got g={g}, d={d}")
    cap = sum(comb(d + k - 1, k) for k in range(g + 2)) + 1
    current = Monomial.from_indices(d, [1, d])
    seq = [current]
    seen = {current}
    last_square = Monomial.from_indices(d, [1, 1])
    while current != last_square:
        current = _step(current, g)
        if current in seen:
            raise AlgorithmError(f"{current} produced twice")
        if len(seq) >= cap:
            raise AlgorithmError(f"no termination after {cap} steps")
        seen.add(current)
        seq.append(current)
    index: dict[Monomial, tuple[int, int]] = {}
    counts = [0] * (g + 1)
    for m in seq:
        h = m.min_index()
        if m.degree != h + 1:
            raise AlgorithmError(f"{m} lies in stratum {h} but has degree {m.degree}")
        counts[h] += 1
        index[m] = (h, counts[h])
    for h in range(1, g + 1):
        top = Monomial.from_indices(d, [h] * (h + 1))
        if top in index and index[top][1] != counts[h]:
            raise AlgorithmError(f"{top} appears before the end of stratum {h}")
    return OrderedS(d, g, tuple(seq), index)


def stratum(d: int, h: int) -> list[Monomial]:
    """Degree ``h+1`` monomials whose smallest variable is ``x_h``, ascending in revlex."""
    return [m for m in enumerate_degree(d, h + 1) if m.min_index() == h]


@dataclass(frozen=True)
class StratumCheck:
    ok: bool
    h: int | None = None
    position: int | None = None
    expected: Monomial | None = None
    found: Monomial | None = None


def verify_Sh_equals_Th(s: OrderedS) -> StratumCheck:
    if s.sequence[0] != Monomial.from_indices(s.d, [1, s.d]):
        return StratumCheck(False, 1, 1, Monomial.from_indices(s.d, [1, s.d]), s.sequence[0])
    for h in range(1, s.g + 1):
        got, want = s.stratum(h), stratum(s.d, h)
        for pos in range(max(len(got), len(want))):
            a = got[pos] if pos < len(got) else None
            b = want[pos] if pos < len(want) else None
            if a != b:
                return StratumCheck(False, h, pos + 1, b, a)
    return StratumCheck(True)


def successor_in_lower_stratum(s: OrderedS, m: Monomial, k: int) -> Monomial:
    """First element of ``S_{h-k}`` after ``m = x_h x_{v_1} ... x_{v_h}``.

    Closed form ``x_{h-k} x_{v_{k+1}-1} x_{v_{k+2}} ... x_{v_h}``, confirmed
    against a linear scan of ``S``.
    """
    h = m.min_index()
    if m not in s.index:
        raise ValueError(f"{m} is not an element of S")
    if k < 1 or h - k < 1:
        raise ValueError(f"k must satisfy 1 <= k <= h-1 = {h - 1}, got {k}")
    v = m.indices()[1:]
    closed = Monomial.from_indices(s.d, [h - k, v[k] - 1] + v[k + 1:])
    scanned = next((n for n in s.sequence[s.position(m) + 1:] if s.index[n][0] == h - k), None)
    if scanned != closed:
        raise AlgorithmError(f"successor of {m} in stratum {h - k}: closed form {closed}, scan {scanned}")
    return closed


def core_monomials(ideal: StableIdeal2) -> list[Monomial]:
    """Degree ``g+1`` monomials with a quadric divisor in ``I`` (the monomials of ``I m^(g-1)``)."""
    return [m for m in enumerate_degree(ideal.d, ideal.g + 1) if ideal.contains_monomial(m)]


def power_monomials(ideal: StableIdeal2, r: int) -> list[Monomial]:
    """Distinct monomials of ``I^r``, ascending in revlex."""
    current = {Monomial.one(ideal.d)}
    gens = ideal.to_generators()
    for _ in range(r):
        current = {a * b for a, b in product(current, gens)}
    return sorted(current, key=revlex_key)


@dataclass(frozen=True)
class ImInJReport:
    degree: int
    certificates: tuple[tuple[Monomial, Certificate], ...]

    def to_json(self) -> dict:
        return {"degree": self.degree, "count": len(self.certificates),
                "certificates": {str(m): c.to_json() for m, c in self.certificates}}


def _require_gd(ideal: StableIdeal2) -> None:
    if not has_Gd(ideal).holds:
        raise PreconditionError("the ideal does not have the G_d property")


def certify_Im_in_J(ideal: StableIdeal2, red: DiagonalReduction | None = None) -> ImInJReport:
    """Certificate of membership in ``J`` for every monomial of ``I m^(g-1)``."""
    _require_gd(ideal)
    red = red or diagonal_reduction(ideal)
    certs = []
    for m in core_monomials(ideal):
        p = HomogeneousPoly.monomial(m)
        found = contains(red.ideal, p)
        if not found:
            raise NonMembership(m)
        assert found.certificate.verify(red.ideal, p)
        certs.append((m, found.certificate))
    return ImInJReport(ideal.g + 1, tuple(certs))


@dataclass(frozen=True)
class ReductionReport:
    reduction_holds: bool
    witness_degree: int
    reduction_number: int | None
    ranks: dict[int, tuple[int, int]]
    reasoning: str

    def to_json(self) -> dict:
        return {
            "reduction_holds": self.reduction_holds,
            "witness_degree": self.witness_degree,
            "reduction_number": self.reduction_number,
            "ranks": {str(k): list(v) for k, v in sorted(self.ranks.items())},
            "reasoning": self.reasoning,
        }


def _power_equal(ideal: StableIdeal2, red: DiagonalReduction, r: int) -> tuple[bool, int, int]:
    """Does ``I^{r+1} = J I^r`` hold?  Both sides are generated in degree ``2r+2``."""
    d = ideal.d
    upper = monomial_ideal(d, power_monomials(ideal, r + 1), name=f"I^{r + 1}")
    lower_mons = power_monomials(ideal, r)
    lower = IdealPresentation(d, [f * m for f in red.gens for m in lower_mons], name=f"J I^{r}")
    k = 2 * r + 2
    equal = component_equal(upper, lower, k)
    return equal, upper.component(k).rank, lower.component(k).rank


def certify_reduction(ideal: StableIdeal2, red: DiagonalReduction | None = None) -> ReductionReport:
    """Check ``I^g = J I^(g-1)`` in degree ``2g`` and find the least ``r`` with ``I^(r+1) = J I^r``."""
    _require_gd(ideal)
    red = red or diagonal_reduction(ideal)
    g = ideal.g
    ranks: dict[int, tuple[int, int]] = {}
    holds, a, b = _power_equal(ideal, red, g - 1)
    ranks[2 * g] = (a, b)
    minimal = None
    if holds:
        # I^(r+1) = J I^r persists for larger r, so the first success going up is the least r.
        for r in range(g - 1):
            eq, a, b = _power_equal(ideal, red, r)
            ranks[2 * r + 2] = (a, b)
            if eq:
                minimal = r
                break
        else:
            minimal = g - 1
    reasoning = (
        f"I^{g} and J*I^{g - 1} are both generated in degree {2 * g}, so equality of their "
        f"degree-{2 * g} components (equal rank, mutual reduction to zero) is equality of ideals")
    log.debug("reduction check for %s: holds=%s r=%s", ideal.rows, holds, minimal)
    return ReductionReport(holds, 2 * g, minimal, ranks, reasoning)
