"""Acceptance suite: nine criteria, one printed PASS line each.

Run with `pytest -s tests/test_acceptance.py` to see the lines.  Each
criterion carries its own wall-clock ceiling, asserted here, so a
regression in the hot paths fails loudly rather than just slowing down.

The constructed family (every field order in {2,3,4,5}, every shape with
r <= m <= n <= 6) is built once and shared; criterion 4's found witness
is stashed for the bound check in criterion 8.
"""

from __future__ import annotations

import random
import time

import pytest

from constrank import (
    SearchStatus,
    brute_force_census,
    check_general_bound,
    check_image_of_kernel,
    counting_report,
    gaussian_binomial,
    is_constant_rank,
    kernel_slice,
    make_field,
    make_subspace,
    qadic_valuation,
    search_constant_rank,
    truncated_construction,
    MatGF,
)
from conftest import random_basis_change

_FIELDS = {
    2: make_field(2),
    3: make_field(3),
    4: make_field(2, 2),
    5: make_field(5),
}

_family = None
_family_seconds = None
_found = []


def _build_family():
    global _family, _family_seconds
    if _family is None:
        t0 = time.perf_counter()
        rows = []
        for q, F in _FIELDS.items():
            for n in range(1, 7):
                for m in range(1, n + 1):
                    for r in range(1, m + 1):
                        rows.append((q, m, n, r, truncated_construction(F, m, n, r)))
        _family_seconds = time.perf_counter() - t0
        _family = rows
    return _family


def test_criterion_1_constructions_reach_dimension_n():
    family = _build_family()
    t0 = time.perf_counter()
    for q, m, n, r, S in family:
        assert S.d == n, (q, m, n, r)
        ok, witness = is_constant_rank(S, r)
        assert ok, (q, m, n, r, witness)
    seconds = _family_seconds + (time.perf_counter() - t0)
    assert len(family) == 224
    assert seconds < 60.0
    print(f"\nPASS criterion 1: 224 constructions reach dimension n and "
          f"verify constant rank ({seconds:.1f}s < 60s)")


def test_criterion_2_double_count_identity():
    family = _build_family()
    t0 = time.perf_counter()
    for q, m, n, r, S in family:
        report = counting_report(S.pad_to_square())
        assert report.omega_by_elements == report.omega_by_vectors, (q, m, n, r)
    rng = random.Random(20260822)
    for _ in range(100):
        q, m, n, r, S = family[rng.randrange(len(family))]
        T = random_basis_change(S.pad_to_square(), rng)
        report = counting_report(T)
        assert report.omega_by_elements == report.omega_by_vectors, (q, m, n, r)
    seconds = time.perf_counter() - t0
    assert seconds < 120.0
    print(f"PASS criterion 2: omega counts agree on 224 constructed + 100 "
          f"randomized subspaces ({seconds:.1f}s < 120s)")


def test_criterion_3_no_subspace_above_the_bound():
    cases = [(2, 2, 1, 3), (3, 2, 1, 3), (3, 2, 2, 3), (2, 3, 1, 4)]
    t0 = time.perf_counter()
    for q, n, r, dim in cases:
        F = _FIELDS[q]
        out = search_constant_rank(F, n, n, r, dim)
        assert out.status is SearchStatus.EXHAUSTED_NONE, (q, n, r, dim)
        assert brute_force_census(F, n, n, r, dim) == 0, (q, n, r, dim)
    seconds = time.perf_counter() - t0
    assert seconds < 600.0
    print(f"PASS criterion 3: four overfull parameter sets exhaust with "
          f"census zero ({seconds:.1f}s < 600s)")


def test_criterion_4_gf2_counterexample_found():
    t0 = time.perf_counter()
    found_r = None
    for r in (2, 3):
        out = search_constant_rank(_FIELDS[2], 3, 3, r, 4)
        if out.status is SearchStatus.FOUND:
            found_r = r
            witness = out.witness
            _found.append((2, 3, 3, r, witness))
    assert found_r is not None
    ok, bad = is_constant_rank(witness, found_r)
    assert ok, bad
    report = check_image_of_kernel(witness)
    assert report.holds is False
    seconds = time.perf_counter() - t0
    assert seconds < 900.0
    print(f"PASS criterion 4: 4-dimensional constant rank {found_r} "
          f"subspace of 3x3 over GF(2) found; image containment fails "
          f"on it ({seconds:.1f}s < 900s)")


def test_criterion_5_image_containment_on_large_enough_fields():
    family = _build_family()
    t0 = time.perf_counter()
    checked = 0
    for q, m, n, r, S in family:
        if q >= r + 1:
            report = check_image_of_kernel(S.pad_to_square())
            assert report.holds, (q, m, n, r)
            checked += 1
    seconds = time.perf_counter() - t0
    assert checked == 155
    assert seconds < 300.0
    print(f"PASS criterion 5: image of kernel contained in image on all "
          f"{checked} subspaces with q >= r+1 ({seconds:.1f}s < 300s)")


def test_criterion_6_rank_nullity_of_evaluation():
    rng = random.Random(1729)
    t0 = time.perf_counter()
    pairs = 0
    while pairs < 1000:
        q = rng.choice((2, 3, 4, 5))
        F = _FIELDS[q]
        n = rng.randint(1, 4)
        d = rng.randint(1, min(4, n * n))
        mats = [
            MatGF(F, n, n, [rng.randrange(q) for _ in range(n * n)])
            for _ in range(d)
        ]
        try:
            S = make_subspace(mats)
        except Exception:
            continue
        entries = [rng.randrange(q) for _ in range(n)]
        if not any(entries):
            continue
        u = MatGF.column(F, entries)
        ks = kernel_slice(S, u)
        assert ks.r_u + ks.image_dim == S.d
        pairs += 1
    seconds = time.perf_counter() - t0
    assert seconds < 10.0
    print(f"PASS criterion 6: slice dimension plus image dimension equals "
          f"span dimension on 1000 random pairs ({seconds:.1f}s < 10s)")


def test_criterion_7_valuation_of_the_count_difference():
    t0 = time.perf_counter()
    checked = 0
    for q in (2, 3, 4, 5, 7, 8, 9):
        for n in range(2, 11):
            for r in range(1, n):
                value = (q ** (2 * n + 1 - r) - q ** (n - r)
                         - q ** (n + 1) + q ** n)
                assert qadic_valuation(q, value) == n - r, (q, n, r)
                checked += 1
    seconds = time.perf_counter() - t0
    assert seconds < 1.0
    print(f"PASS criterion 7: valuation equals n-r on {checked} "
          f"(q, n, r) triples ({seconds:.2f}s < 1s)")


def test_criterion_8_general_dimension_bound():
    family = _build_family()
    for q, m, n, r, S in family:
        report = check_general_bound(S)
        assert report.holds, (q, m, n, r)
    assert _found, "criterion 4 must run before this test"
    for q, m, n, r, S in _found:
        report = check_general_bound(S)
        assert report.holds, (q, m, n, r)
    total = len(family) + len(_found)
    print(f"PASS criterion 8: dimension <= m+n-r on all {total} "
          f"constructed and found subspaces (within criteria 1 and 4)")


def test_criterion_9_search_agrees_with_census():
    shapes = {
        2: [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3), (3, 3)],
        3: [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3)],
    }
    t0 = time.perf_counter()
    instances = 0
    for q, boxes in shapes.items():
        F = _FIELDS[q]
        for m, n in boxes:
            for r in range(1, min(m, n) + 1):
                for dim in range(1, m * n + 1):
                    if gaussian_binomial(q, m * n, dim) > 10 ** 7:
                        continue
                    out = search_constant_rank(F, m, n, r, dim)
                    census = brute_force_census(F, m, n, r, dim)
                    found = out.status is SearchStatus.FOUND
                    assert found == (census > 0), (q, m, n, r, dim)
                    instances += 1
    seconds = time.perf_counter() - t0
    assert seconds < 600.0
    print(f"PASS criterion 9: search verdict matches census on "
          f"{instances} instances ({seconds:.1f}s < 600s)")
