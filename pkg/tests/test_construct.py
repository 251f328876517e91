"""Constructions from extension field multiplication operators."""

from __future__ import annotations

import pytest

from constrank import (
    OrderTooLarge,
    ShapeViolation,
    enumerate_elements,
    is_constant_rank,
    make_field,
    rank_profile,
    regular_representation,
    truncated_construction,
)
from conftest import mat


def test_degree_one_is_the_scalar_span(gf3):
    S = regular_representation(gf3, 1)
    assert S.d == 1
    assert S.basis[0] == mat(gf3, [[1]])


def test_gf2_degree_two_matrices(gf2):
    S = regular_representation(gf2, 2)
    assert S.d == 2
    assert S.basis[0] == mat(gf2, [[1, 0], [0, 1]])
    assert S.basis[1] == mat(gf2, [[0, 1], [1, 1]])
    assert rank_profile(S).counts == (0, 0, 3)


def test_multiplication_operators_respect_field_relations(gf2, gf3):
    # x^2 = x + 1 in the quadratic extension of GF(2)
    S = regular_representation(gf2, 2)
    I, Mx = S.basis
    assert Mx @ Mx == I + Mx
    # x^2 = -1 over GF(3), modulus x^2 + 1
    T = regular_representation(gf3, 2)
    I3, Nx = T.basis
    assert Nx @ Nx == I3.scale(2)


def test_regular_representation_spans_are_multiplicatively_closed(gf2):
    S = regular_representation(gf2, 3)
    elements = set(enumerate_elements(S))
    for A in S.basis:
        for B in S.basis:
            assert A @ B in elements


@pytest.mark.parametrize("q,n", [(2, 2), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_regular_representation_is_invertible_span(q, n):
    F = make_field(q)
    S = regular_representation(F, n)
    assert S.d == n
    assert S.m == S.n == n
    ok, witness = is_constant_rank(S, n)
    assert ok, witness


def test_truncation_keeps_top_rows(gf3):
    full = regular_representation(gf3, 4)
    S = truncated_construction(gf3, 3, 4, 2)
    assert (S.d, S.m, S.n) == (4, 3, 4)
    for B, M in zip(S.basis, full.basis):
        for j in range(4):
            assert B.at(0, j) == M.at(0, j)
            assert B.at(1, j) == M.at(1, j)
            assert B.at(2, j) == 0
    ok, witness = is_constant_rank(S, 2)
    assert ok, witness


def test_truncation_with_all_rows_is_the_regular_representation(gf2):
    assert truncated_construction(gf2, 3, 3, 3) == regular_representation(gf2, 3)


@pytest.mark.parametrize("q,m,n,r", [
    (2, 1, 5, 1),   # row spans
    (2, 3, 4, 2),
    (3, 2, 3, 1),
    (5, 3, 3, 2),
])
def test_truncated_construction_reaches_dimension_n(q, m, n, r):
    S = truncated_construction(make_field(q), m, n, r)
    assert S.d == n
    ok, _ = is_constant_rank(S, r)
    assert ok


def test_construction_shape_validation(gf2):
    with pytest.raises(ShapeViolation):
        regular_representation(gf2, 0)
    with pytest.raises(ShapeViolation):
        truncated_construction(gf2, 3, 2, 1)   # m > n
    with pytest.raises(ShapeViolation):
        truncated_construction(gf2, 2, 3, 3)   # r > m
    with pytest.raises(ShapeViolation):
        truncated_construction(gf2, 2, 3, 0)


def test_construction_order_cap():
    with pytest.raises(OrderTooLarge):
        regular_representation(make_field(2), 25)
    with pytest.raises(OrderTooLarge):
        truncated_construction(make_field(5), 2, 11, 1)


def test_construction_is_deterministic(gf3):
    assert regular_representation(gf3, 3) == regular_representation(gf3, 3)
    assert (truncated_construction(gf3, 2, 3, 1)
            == truncated_construction(gf3, 2, 3, 1))
