from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from stablecore.corecalc import diagonal_of_square
from stablecore.diagred import diagonal_reduction
from stablecore.gradedmembership import (
    Certificate,
    GradedSpan,
    IdealPresentation,
    colon_component,
    component_equal,
    contains,
    graded_component,
    monomial_ideal,
    socle_basis,
)
from stablecore.polyarith import HomogeneousPoly, Monomial, enumerate_degree, parse_poly, variable
from stablecore.stableideal import StableIdeal2


def maximal(d):
    return monomial_ideal(d, [variable(d, i) for i in range(1, d + 1)])


def J_of_square(d):
    return diagonal_of_square(d).ideal


def test_component_rank_examples():
    assert graded_component(IdealPresentation(2, [parse_poly("x1*x2", 2)]), 1).rank == 0
    for d in range(1, 5):
        assert graded_component(maximal(d), 2).rank == comb(d + 1, 2)
    J = diagonal_reduction(StableIdeal2(6, (6, 6, 6, 4))).ideal
    assert graded_component(J, 2).rank == 6


def test_membership_examples():
    J = J_of_square(2)
    assert contains(J, parse_poly("x1*x2", 2))
    assert not contains(J, parse_poly("x1^2", 2))
    for gen in J.generators:
        found = contains(J, gen)
        assert found and found.certificate.verify(J, gen)


def test_zero_polynomial_rejected():
    with pytest.raises(ValueError):
        contains(maximal(2), HomogeneousPoly.zero(2, 2))


def test_component_equal_examples():
    a = monomial_ideal(2, [variable(2, 1)])
    b = monomial_ideal(2, [variable(2, 2)])
    assert component_equal(a, a, 1)
    assert not component_equal(a, b, 1)


def test_colon_examples():
    J = J_of_square(2)
    colon = colon_component(J, [variable(2, 1), variable(2, 2)], 2)
    assert colon.rank == 3
    assert colon.reduces_to_zero(parse_poly("x1^2", 2))
    m = maximal(3)
    assert colon_component(m, [variable(3, 1)], 1).rank == 3
    J3 = J_of_square(3)
    c3 = colon_component(J3, [variable(3, i) for i in (1, 2, 3)], 2)
    own = graded_component(J3, 2)
    assert c3.rank == own.rank and c3.contains_span(own) and own.contains_span(c3)


def test_socle_examples():
    assert [str(p) for p in socle_basis(J_of_square(2), 2)] == ["x1^2"]
    for k in (1, 2, 3):
        assert socle_basis(maximal(3), k) == []
    assert [str(p) for p in socle_basis(J_of_square(4), 4)] == ["x1^4"]


def test_certificate_json_round_trip():
    J = J_of_square(3)
    p = HomogeneousPoly.monomial(Monomial.from_indices(3, [1, 1, 3]))
    cert = contains(J, p).certificate
    again = Certificate.from_json(cert.to_json(), 3)
    assert again == cert and again.verify(J, p)


def test_span_rejects_wrong_degree():
    with pytest.raises(ValueError):
        GradedSpan(2, 2, [parse_poly("x1", 2)])


# random quadratic ideals in up to three variables
@st.composite
def quadric_ideals(draw):
    d = draw(st.integers(1, 3))
    basis = enumerate_degree(d, 2)
    n = draw(st.integers(1, 3))
    gens = []
    for _ in range(n):
        coeffs = draw(st.lists(st.integers(-2, 2), min_size=len(basis), max_size=len(basis)))
        p = HomogeneousPoly(d, 2, dict(zip(basis, coeffs)))
        if not p.is_zero():
            gens.append(p)
    if not gens:
        gens = [HomogeneousPoly.monomial(basis[0])]
    return IdealPresentation(d, gens)


@st.composite
def ideal_and_poly(draw):
    ideal = draw(quadric_ideals())
    d = ideal.d
    basis = enumerate_degree(d, 3)
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=len(basis), max_size=len(basis)))
    p = HomogeneousPoly(d, 3, dict(zip(basis, coeffs)))
    return ideal, p


@settings(max_examples=60, deadline=None)
@given(ideal_and_poly())
def test_certificates_are_sound(pair):
    ideal, p = pair
    if p.is_zero():
        return
    found = contains(ideal, p)
    if found:
        assert found.certificate.verify(ideal, p)
    else:
        assert not graded_component(ideal, 3).reduces_to_zero(p)


@settings(max_examples=60, deadline=None)
@given(quadric_ideals())
def test_generated_members_are_found(ideal):
    d = ideal.d
    for g in ideal.generators:
        for m in enumerate_degree(d, 1):
            assert contains(ideal, g * m)


@settings(max_examples=40, deadline=None)
@given(quadric_ideals())
def test_rank_monotone_in_generators(ideal):
    smaller = IdealPresentation(ideal.d, ideal.generators[:1])
    for k in (2, 3):
        assert graded_component(smaller, k).rank <= graded_component(ideal, k).rank
        assert graded_component(ideal, k).contains_span(graded_component(smaller, k))


@settings(max_examples=40, deadline=None)
@given(quadric_ideals())
def test_colon_contains_ideal(ideal):
    d = ideal.d
    by = [variable(d, i) for i in range(1, d + 1)]
    colon = colon_component(ideal, by, 2)
    assert colon.contains_span(graded_component(ideal, 2))
    for f in colon.basis():
        for b in by:
            assert graded_component(ideal, 3).reduces_to_zero(f * b)
