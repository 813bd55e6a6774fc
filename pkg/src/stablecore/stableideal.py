"""Strongly stable ideals generated in degree two, encoded by tableau row lengths.

The tableau of ``I`` has a cell in row ``i``, column ``j`` (``i <= j``) when
``x_i x_j`` lies in ``I``.  For a strongly stable ideal the cells of row
``i`` are exactly columns ``i..rows[i-1]``, so the nonincreasing sequence of
row lengths determines the ideal; the number of rows is its height.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .echelon import Echelon, to_q
from .gradedmembership import IdealPresentation, graded_component, monomial_ideal
from .polyarith import HomogeneousPoly, Monomial, enumerate_degree, revlex_key, variable

__all__ = [
    "TableauError",
    "NotStronglyStable",
    "EmptyInput",
    "PreconditionError",
    "StableIdeal2",
    "GdDiagnostic",
    "SaturationCheck",
    "from_generators",
    "borel_closure",
    "exchange_violation",
    "height",
    "trim",
    "has_Gd",
    "saturation",
    "verify_saturation",
    "analytic_spread",
    "all_tableaux",
    "render_tableau",
]


class TableauError(ValueError):
    """Row data that does not describe a tableau at all."""


class NotStronglyStable(TableauError):
    def __init__(self, message: str, witness: Monomial | None = None,
                 exchange: tuple[int, int] | None = None):
        super().__init__(message)
        self.witness = witness
        self.exchange = exchange


class EmptyInput(TableauError):
    pass


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class StableIdeal2:
    d: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        rows = tuple(int(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if self.d < 1:
            raise TableauError(f"dimension must be positive, got {self.d}")
        if not rows:
            raise EmptyInput("a tableau needs at least one row")
        if len(rows) > self.d:
            raise TableauError(f"{len(rows)} rows cannot fit in {self.d} variables")
        if rows[0] > self.d:
            raise TableauError(f"row length {rows[0]} exceeds d={self.d}")
        for i in range(1, len(rows)):
            if rows[i] > rows[i - 1]:
                j = rows[i]
                raise NotStronglyStable(
                    f"rows must be nonincreasing: x{i + 1}*x{j} is present but "
                    f"x{i}*x{j} (exchange x{i + 1} -> x{i}) is missing",
                    witness=Monomial.from_indices(self.d, [i + 1, j]), exchange=(i, i + 1))
        for i, r in enumerate(rows, start=1):
            if r < i:
                raise TableauError(f"row {i} has length {r} < {i}: its diagonal cell x{i}^2 is missing")

    @property
    def g(self) -> int:
        return len(self.rows)

    def row_length(self, i: int) -> int:
        """``max{j : x_i x_j in I}`` (0 when row ``i`` is absent)."""
        return self.rows[i - 1] if 1 <= i <= self.g else 0

    def contains_quadric(self, i: int, j: int) -> bool:
        i, j = min(i, j), max(i, j)
        return j <= self.row_length(i)

    def contains_monomial(self, m: Monomial) -> bool:
        """Membership of a monomial of any degree: some degree-2 divisor lies in ``I``."""
        idx = m.indices()
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                if self.contains_quadric(idx[a], idx[b]):
                    return True
        return False

    def to_generators(self) -> list[Monomial]:
        return [Monomial.from_indices(self.d, [i, j])
                for i in range(1, self.g + 1) for j in range(i, self.rows[i - 1] + 1)]

    def presentation(self) -> IdealPresentation:
        return monomial_ideal(self.d, self.to_generators(), name="I")

    def to_json(self) -> dict:
        return {"d": self.d, "rows": list(self.rows)}


@dataclass(frozen=True)
class GdDiagnostic:
    holds: bool
    g: int
    d: int
    convention: str | None = None
    s: int | None = None
    t: int | None = None
    prime: tuple[int, ...] = ()
    witness: tuple[Monomial, ...] = ()
    localized_generators: tuple[Monomial, ...] = field(default=(), repr=False)

    @property
    def cell(self) -> tuple[int, int] | None:
        """The tableau cell deciding the property: row ``g-1``, last column."""
        return (self.g - 1, self.d) if self.g >= 2 else None

    def to_json(self) -> dict:
        out: dict = {"holds": self.holds}
        if self.convention:
            out["convention"] = self.convention
        if not self.holds:
            out.update({
                "s": self.s,
                "t": self.t,
                "prime": [f"x{i}" for i in self.prime],
                "witness": [str(m) for m in self.witness],
                "mu_local": len(self.localized_generators),
                "height_prime": len(self.prime),
            })
        return out


def exchange_violation(monos: Iterable[Monomial]) -> tuple[Monomial, int, int] | None:
    """First ``(m, i, j)`` with ``m*x_i/x_j`` missing (``i < j``, ``x_j | m``), else ``None``."""
    pool = set(monos)
    for m in sorted(pool, key=revlex_key, reverse=True):
        d = m.d
        for j in range(1, d + 1):
            if not m.exps[j - 1]:
                continue
            for i in range(1, j):
                swapped = (m / variable(d, j)) * variable(d, i)
                if swapped not in pool:
                    return m, i, j
    return None


def from_generators(gens: Iterable[Monomial], d: int | None = None) -> StableIdeal2:
    gens = set(gens)
    if not gens:
        raise EmptyInput("no generators given")
    dims = {m.d for m in gens}
    if len(dims) != 1:
        raise TableauError(f"generators live in different dimensions {sorted(dims)}")
    dim = dims.pop()
    if d is not None and d != dim:
        raise TableauError(f"generators have {dim} variables, expected {d}")
    for m in gens:
        if m.degree != 2:
            raise TableauError(f"{m} is not of degree two")
    bad = exchange_violation(gens)
    if bad is not None:
        m, i, j = bad
        missing = (m / variable(dim, j)) * variable(dim, i)
        raise NotStronglyStable(
            f"{missing} = {m}*x{i}/x{j} is missing", witness=m, exchange=(i, j))
    rows: dict[int, int] = {}
    for m in gens:
        i, j = m.indices()
        rows[i] = max(rows.get(i, 0), j)
    g = max(rows)
    ideal = StableIdeal2(dim, tuple(rows[i] for i in range(1, g + 1)))
    assert set(ideal.to_generators()) == gens
    return ideal


def borel_closure(gens: Iterable[Monomial]) -> StableIdeal2:
    """Smallest strongly stable degree-two ideal containing ``gens``."""
    frontier = list(set(gens))
    if not frontier:
        raise EmptyInput("no generators given")
    seen = set(frontier)
    while frontier:
        m = frontier.pop()
        for j in range(1, m.d + 1):
            if not m.exps[j - 1]:
                continue
            for i in range(1, j):
                n = (m / variable(m.d, j)) * variable(m.d, i)
                if n not in seen:
                    seen.add(n)
                    frontier.append(n)
    return from_generators(seen)


def height(ideal: StableIdeal2) -> int:
    return ideal.g


def trim(ideal: StableIdeal2) -> tuple[StableIdeal2, int]:
    """Drop the unused trailing variables so that ``x_1 x_d`` lies in the ideal."""
    return StableIdeal2(ideal.rows[0], ideal.rows), ideal.d


def _require_full_first_row(ideal: StableIdeal2) -> None:
    if ideal.rows[0] != ideal.d:
        raise PreconditionError(
            f"x1*x{ideal.d} is not in the ideal (first row has length {ideal.rows[0]}); trim first")


def _localized_minimal_generators(ideal: StableIdeal2, s: int) -> list[Monomial]:
    """Minimal monomial generators of ``I`` after inverting ``x_{s+1}, ..., x_d``."""
    images = set()
    for m in ideal.to_generators():
        kept = [i for i in m.indices() if i <= s]
        images.add(Monomial.from_indices(s, kept))
    minimal = [m for m in images if not any(o != m and o.divides(m) for o in images)]
    return sorted(minimal, key=lambda m: (m.degree, revlex_key(m)), reverse=False)


def has_Gd(ideal: StableIdeal2) -> GdDiagnostic:
    """Decide the G_d property by looking at the cell ``x_{g-1} x_d``.

    For a failure the diagnostic carries the prime ``(x_1, ..., x_s)`` with
    ``s = rows[g-2]`` and ``s + 1`` monomials that must occur among the
    minimal generators of ``I`` localised there; the localisation is
    simulated directly and the witness checked against it.
    """
    _require_full_first_row(ideal)
    g, d = ideal.g, ideal.d
    if g == 1:
        return GdDiagnostic(True, g, d, convention=(
            "g = 1: x1*m is principal away from the maximal ideal; G_d taken to hold by convention"))
    s = ideal.row_length(g - 1)
    if s == d:
        return GdDiagnostic(True, g, d)
    t = min(i for i in range(1, d + 1) if not ideal.contains_quadric(i, s + 1))
    witness = (
        [variable(s, i) for i in range(1, t)]
        + [Monomial.from_indices(s, [i, i]) for i in range(t, g)]
        + [Monomial.from_indices(s, [g - 1, j]) for j in range(g, s + 1)]
        + [Monomial.from_indices(s, [g, g])]
    )
    local = _localized_minimal_generators(ideal, s)
    if not set(witness) <= set(local) or len(witness) != s + 1:
        raise AssertionError(
            f"localisation at (x1..x{s}) gives {sorted(map(str, local))}, "
            f"which does not contain the {s + 1}-element witness {sorted(map(str, witness))}")
    return GdDiagnostic(False, g, d, s=s, t=t, prime=tuple(range(1, s + 1)),
                        witness=tuple(witness), localized_generators=tuple(local))


def saturation(ideal: StableIdeal2) -> IdealPresentation:
    """``I : m^inf`` for a G_d ideal ``(x_1..x_{g-1}) m + x_g (x_g..x_nu)``."""
    if not has_Gd(ideal).holds:
        raise PreconditionError("saturation formula needs the G_d property")
    g, d = ideal.g, ideal.d
    nu = ideal.row_length(g)
    if nu == d:
        gens = [variable(d, i) for i in range(1, g + 1)]
    else:
        gens = [variable(d, i) for i in range(1, g)]
        gens += [Monomial.from_indices(d, [g, j]) for j in range(g, nu + 1)]
    return monomial_ideal(d, gens, name="I'")


@dataclass(frozen=True)
class SaturationCheck:
    ideal_contained: bool
    degrees_checked: tuple[int, ...]
    power: int | None


def verify_saturation(ideal: StableIdeal2) -> SaturationCheck:
    """``I`` inside ``I'`` in degrees ``2..g+2``, and the least ``N <= g`` with ``I' m^N`` inside ``I``."""
    sat = saturation(ideal)
    own = ideal.presentation()
    degrees = tuple(range(2, ideal.g + 3))
    contained = all(graded_component(sat, k).contains_span(graded_component(own, k))
                    for k in degrees)
    power = None
    for n in range(ideal.g + 1):
        ok = True
        for gen in sat.generators:
            k = gen.degree + n
            span = graded_component(own, k)
            if not all(span.reduces_to_zero(gen * m) for m in enumerate_degree(ideal.d, n)):
                ok = False
                break
        if ok:
            power = n
            break
    return SaturationCheck(contained, degrees, power)


def analytic_spread(ideal: StableIdeal2) -> int:
    """Rank of the exponent matrix of the quadric generators (dimension of the fiber ring)."""
    echelon = Echelon()
    for row, m in enumerate(ideal.to_generators()):
        echelon.insert({c: to_q(e) for c, e in enumerate(m.exps) if e}, row)
    return echelon.rank


def all_tableaux(d: int, g: int | None = None, full_first_row: bool = True) -> Iterator[StableIdeal2]:
    """Every valid tableau in ``d`` variables (optionally of height ``g``)."""
    heights = [g] if g is not None else range(1, d + 1)
    for h in heights:
        yield from _rows(d, h, full_first_row)


def _rows(d: int, g: int, full_first_row: bool) -> Iterator[StableIdeal2]:
    def extend(prefix: list[int]) -> Iterator[list[int]]:
        i = len(prefix) + 1
        if i > g:
            yield prefix
            return
        hi = prefix[-1] if prefix else d
        lo = d if (i == 1 and full_first_row) else i
        for r in range(hi, lo - 1, -1):
            yield from extend(prefix + [r])

    for rows in extend([]):
        yield StableIdeal2(d, tuple(rows))


def render_tableau(ideal: StableIdeal2, mark: tuple[int, int] | None = None) -> str:
    """ASCII picture of the tableau; ``mark`` highlights one cell with ``##``."""
    width = max(3, len(f"x{ideal.d}") + 1)
    lines = [" " * width + "".join(f"x{j}".rjust(width) for j in range(1, ideal.d + 1))]
    for i in range(1, ideal.g + 1):
        cells = []
        for j in range(1, ideal.d + 1):
            if j < i or j > ideal.rows[i - 1]:
                cells.append(" " * width)
            elif mark == (i, j):
                cells.append("##".rjust(width))
            else:
                cells.append("[]".rjust(width))
        lines.append(f"x{i}".ljust(width) + "".join(cells).rstrip())
    return "\n".join(lines)
