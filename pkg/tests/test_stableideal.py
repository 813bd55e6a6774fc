import itertools

import pytest
from hypothesis import given, settings, strategies as st

from stablecore.gradedmembership import contains
from stablecore.polyarith import HomogeneousPoly, Monomial, enumerate_degree, parse_monomial
from stablecore.stableideal import (
    EmptyInput,
    NotStronglyStable,
    StableIdeal2,
    TableauError,
    all_tableaux,
    analytic_spread,
    borel_closure,
    exchange_violation,
    from_generators,
    has_Gd,
    height,
    render_tableau,
    saturation,
    trim,
    verify_saturation,
)

SAMPLE = StableIdeal2(6, (6, 6, 6, 4))
SAMPLE_GENS = (
    "x1^2 x1*x2 x1*x3 x1*x4 x1*x5 x1*x6 x2^2 x2*x3 x2*x4 x2*x5 x2*x6 "
    "x3^2 x3*x4 x3*x5 x3*x6 x4^2").split()


def mono(d, *idx):
    return Monomial.from_indices(d, idx)


def test_sample_from_generators():
    ideal = from_generators([parse_monomial(s, 6) for s in SAMPLE_GENS], 6)
    assert ideal == SAMPLE and ideal.g == 4
    assert sorted(map(str, SAMPLE.to_generators())) == sorted(SAMPLE_GENS)


def test_from_generators_examples():
    assert from_generators([mono(1, 1, 1)], 1).rows == (1,)
    with pytest.raises(NotStronglyStable):
        from_generators([mono(2, 1, 2), mono(2, 2, 2)], 2)
    with pytest.raises(EmptyInput):
        from_generators([], 3)
    with pytest.raises(TableauError):
        from_generators([mono(3, 1)], 3)


def test_row_validation():
    with pytest.raises(NotStronglyStable):
        StableIdeal2(4, (3, 4))
    with pytest.raises(TableauError):
        StableIdeal2(4, (4, 1))
    with pytest.raises(TableauError):
        StableIdeal2(3, (4,))


def test_borel_closure_examples():
    assert borel_closure([mono(3, 2, 3)]).rows == (3, 3)
    assert borel_closure(SAMPLE.to_generators()) == SAMPLE
    for d in range(1, 6):
        assert borel_closure([mono(d, d, d)]).rows == (d,) * d


def test_height_and_trim_examples():
    assert height(SAMPLE) == 4
    assert height(StableIdeal2(5, (5,) * 5)) == 5
    assert height(StableIdeal2(5, (5,))) == 1
    t, original = trim(StableIdeal2(6, (4, 2)))
    assert (t.d, t.rows, original) == (4, (4, 2), 6)
    assert trim(SAMPLE)[0] == SAMPLE
    t, _ = trim(StableIdeal2(5, (2, 2)))
    assert t == StableIdeal2(2, (2, 2))


def test_gd_examples():
    diag = has_Gd(SAMPLE)
    assert diag.holds and diag.cell == (3, 6)
    bad = has_Gd(StableIdeal2(4, (4, 3, 3)))
    assert not bad.holds and bad.s == 3 and bad.prime == (1, 2, 3)
    assert len(bad.witness) == bad.s + 1
    assert set(bad.witness) <= set(bad.localized_generators)
    assert has_Gd(StableIdeal2(5, (5,) * 5)).holds
    single = has_Gd(StableIdeal2(3, (3,)))
    assert single.holds and single.convention


def test_saturation_examples():
    sat = saturation(SAMPLE)
    assert sorted(map(str, (g.monomials()[0] for g in sat.generators))) == ["x1", "x2", "x3", "x4^2"]
    check = verify_saturation(SAMPLE)
    assert check.ideal_contained and check.power is not None
    full = saturation(StableIdeal2(4, (4,) * 4))
    assert len(full.generators) == 4


def test_analytic_spread_examples():
    assert analytic_spread(SAMPLE) == 6
    assert analytic_spread(StableIdeal2(1, (1,))) == 1
    assert analytic_spread(StableIdeal2(2, (2, 2))) == 2


def test_render_marks_cell():
    text = render_tableau(SAMPLE, (3, 6))
    assert text.count("##") == 1
    assert text.count("[]") == 15


def test_tableau_counts():
    # full first row: one tableau per subset of the remaining columns' boundary path
    assert sum(1 for _ in all_tableaux(5)) == 16
    assert sum(1 for _ in all_tableaux(8)) == 128


def brute_stable(monos):
    pool = set(monos)
    for m in pool:
        for j, i in itertools.combinations(range(1, m.d + 1), 2):
            if m.exps[i - 1]:
                if m / Monomial.from_indices(m.d, [i]) * Monomial.from_indices(m.d, [j]) not in pool:
                    return False
    return True


@st.composite
def quadric_sets(draw):
    d = draw(st.integers(1, 5))
    basis = enumerate_degree(d, 2)
    return d, draw(st.sets(st.sampled_from(basis), min_size=1))


@settings(max_examples=150, deadline=None)
@given(quadric_sets())
def test_from_generators_agrees_with_exchange_scan(pair):
    d, monos = pair
    stable = exchange_violation(monos) is None
    assert stable == brute_stable(monos)
    if stable:
        ideal = from_generators(monos, d)
        assert set(ideal.to_generators()) == set(monos)
    else:
        with pytest.raises(NotStronglyStable):
            from_generators(monos, d)


@settings(max_examples=150, deadline=None)
@given(quadric_sets())
def test_closure_is_smallest_stable_superset(pair):
    d, monos = pair
    closed = set(borel_closure(monos).to_generators())
    assert monos <= closed and exchange_violation(closed) is None
    # every element is forced: it is reachable from some input by moves to smaller indices
    for m in closed:
        assert any(_dominates(m, n) for n in monos)


def _dominates(m, n):
    a, b = sorted(m.indices()), sorted(n.indices())
    return all(x <= y for x, y in zip(a, b))


def test_gd_matches_membership_and_localization_small():
    for d in range(2, 7):
        for ideal in all_tableaux(d):
            if ideal.g < 2:
                continue
            diag = has_Gd(ideal)
            direct = bool(contains(ideal.presentation(),
                                   HomogeneousPoly.monomial(mono(d, ideal.g - 1, d))))
            assert diag.holds == direct
            if not diag.holds:
                assert len(diag.witness) == diag.s + 1 > len(diag.prime)
