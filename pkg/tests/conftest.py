"""Shared fixtures and small builders used across the test modules."""

from __future__ import annotations

import random

import pytest

from constrank import MatGF, SubspaceBasis, make_field, make_subspace


@pytest.fixture(scope="session")
def gf2():
    return make_field(2)


@pytest.fixture(scope="session")
def gf3():
    return make_field(3)


@pytest.fixture(scope="session")
def gf4():
    return make_field(2, 2)


@pytest.fixture(scope="session")
def gf5():
    return make_field(5)


def mat(field, rows):
    """Build a MatGF from a list of row lists."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    return MatGF(field, m, n, [x for row in rows for x in row])


def col(field, entries):
    return MatGF.column(field, entries)


def random_basis_change(S: SubspaceBasis, rng: random.Random) -> SubspaceBasis:
    """Rewrite S over a random invertible coefficient matrix.

    The span is unchanged, so any property of the span itself must be
    invariant under this.
    """
    F, d = S.field, S.d
    while True:
        coeffs = [[rng.randrange(F.q) for _ in range(d)] for _ in range(d)]
        C = MatGF(F, d, d, [x for row in coeffs for x in row])
        if C.rank() == d:
            break
    new_basis = []
    for i in range(d):
        acc = MatGF.zero(F, S.m, S.n)
        for j, B in enumerate(S.basis):
            if coeffs[i][j]:
                acc = acc + B.scale(coeffs[i][j])
        new_basis.append(acc)
    return make_subspace(new_basis)
