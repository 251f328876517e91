"""Spans of matrices: basis handling, element enumeration, rank statistics.

A SubspaceBasis holds linearly independent matrices of one shape over one
field.  Enumeration walks coefficient vectors in lexicographic order, so the
first witness returned by is_constant_rank is the same on every run.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import (
    BudgetExceeded,
    EmptyInput,
    ParseError,
    ShapeMismatch,
    ZeroSpan,
)
from .field import FieldSpec, parse_field_descriptor
from .matrix import (
    MatGF,
    _gf2_rank_table,
    _pack_flat_bits,
    _parse_matrix_block,
    _rank_rows,
    _rank_words_gf2,
    _rref_rows,
    _tokens_with_cols,
    _unpack_words,
)

__all__ = [
    "DEFAULT_ENUMERATION_BUDGET",
    "RankProfile",
    "SubspaceBasis",
    "enumerate_elements",
    "is_constant_rank",
    "make_subspace",
    "parse_subspace",
    "rank_profile",
]

DEFAULT_ENUMERATION_BUDGET = 1 << 28


class SubspaceBasis:
    """Ordered basis of a subspace of m-by-n matrices."""

    __slots__ = ("field", "m", "n", "basis")

    def __init__(self, basis: Sequence[MatGF]):
        basis = tuple(basis)
        if not basis:
            raise EmptyInput("a subspace basis needs at least one matrix")
        first = basis[0]
        for B in basis[1:]:
            if B.field != first.field:
                raise ShapeMismatch("basis matrices live over different fields")
            if B.m != first.m or B.n != first.n:
                raise ShapeMismatch(
                    f"basis matrices have mixed shapes: {first.m}x{first.n} "
                    f"vs {B.m}x{B.n}"
                )
        rows = [list(B.entries) for B in basis]
        if _rank_rows(first.field, rows) != len(basis):
            raise ValueError("basis matrices are linearly dependent")
        self.field = first.field
        self.m = first.m
        self.n = first.n
        self.basis = basis

    @property
    def d(self) -> int:
        return len(self.basis)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SubspaceBasis):
            return NotImplemented
        return self.basis == other.basis

    def __hash__(self) -> int:
        return hash(self.basis)

    def __repr__(self) -> str:
        return (f"<SubspaceBasis dim={self.d} of {self.m}x{self.n} "
                f"over {self.field.descriptor}>")

    def pad_rows(self, total_rows: int) -> "SubspaceBasis":
        return SubspaceBasis([B.pad_rows(total_rows) for B in self.basis])

    def pad_to_square(self) -> "SubspaceBasis":
        return SubspaceBasis([B.pad_to_square() for B in self.basis])

    def to_text(self) -> str:
        """Render as text: a header line, then one block per basis matrix."""
        parts = [f"{self.d} {self.m} {self.n} {self.field.descriptor}"]
        for B in self.basis:
            parts.append("")
            parts.append(B.to_text())
        return "\n".join(parts) + "\n"


def make_subspace(mats: Sequence[MatGF]) -> SubspaceBasis:
    """Canonical basis of the span of the given matrices.

    The result is in reduced echelon form with respect to row-major entry
    order, so any two generating sets of the same span produce equal bases.
    """
    mats = list(mats)
    if not mats:
        raise EmptyInput("make_subspace needs at least one matrix")
    first = mats[0]
    for A in mats[1:]:
        if A.field != first.field:
            raise ShapeMismatch("matrices live over different fields")
        if A.m != first.m or A.n != first.n:
            raise ShapeMismatch(
                f"mixed shapes: {first.m}x{first.n} vs {A.m}x{A.n}"
            )
    rows = [list(A.entries) for A in mats]
    _rref_rows(first.field, rows)
    kept = [r for r in rows if any(r)]
    if not kept:
        raise ZeroSpan("all generating matrices are zero")
    return SubspaceBasis(
        [MatGF(first.field, first.m, first.n, r) for r in kept]
    )


def parse_subspace(text: str) -> SubspaceBasis:
    """Parse the subspace text format; inverse of SubspaceBasis.to_text()."""
    lines = text.splitlines()
    idx = 0
    nlines = len(lines)
    while idx < nlines and not lines[idx].strip():
        idx += 1
    if idx >= nlines:
        raise ParseError("missing subspace header", nlines + 1, 1)
    header = _tokens_with_cols(lines[idx])
    header_line = idx + 1
    if len(header) < 4:
        raise ParseError("subspace header needs 'd m n GF(...)'",
                         header_line, header[-1][1] if header else 1)

    def geti(k: int, what: str) -> int:
        tok, col = header[k]
        try:
            return int(tok)
        except ValueError:
            raise ParseError(f"{what} must be an integer, got {tok!r}",
                             header_line, col)

    d = geti(0, "basis size")
    m = geti(1, "row count")
    n = geti(2, "column count")
    if d < 1:
        raise ParseError(f"basis size must be at least 1, got {d}",
                         header_line, header[0][1])
    if m < 1 or n < 1:
        raise ParseError(f"matrix shape {m}x{n} must be at least 1x1",
                         header_line, header[1][1])
    desc = " ".join(t for t, _ in header[3:])
    field = parse_field_descriptor(desc, line=header_line, col=header[3][1])

    mats: list[MatGF] = []
    idx += 1
    for k in range(d):
        while idx < nlines and not lines[idx].strip():
            idx += 1
        block_line = idx + 1
        B, idx = _parse_matrix_block(lines, idx)
        if B.field != field:
            raise ParseError(
                f"matrix {k + 1} uses field {B.field.descriptor}, "
                f"subspace header says {field.descriptor}", block_line, 1)
        if B.m != m or B.n != n:
            raise ParseError(
                f"matrix {k + 1} is {B.m}x{B.n}, subspace header says "
                f"{m}x{n}", block_line, 1)
        mats.append(B)
    for k in range(idx, nlines):
        if lines[k].strip():
            raise ParseError("unexpected content after subspace", k + 1, 1)
    try:
        return SubspaceBasis(mats)
    except ValueError as exc:
        raise ParseError(str(exc), header_line, 1)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def _iter_span_entries(S: SubspaceBasis) -> Iterator[tuple[int, ...]]:
    """Flat entry tuples of all q^d span elements, in lexicographic order of
    the coefficient vector (last coefficient fastest, zero element first)."""
    F = S.field
    q = F.q
    d = S.d
    add = F._add_flat
    scaled = [[B.scale(c).entries for c in range(q)] for B in S.basis]
    coeffs = [0] * d
    partial = [(0,) * (S.m * S.n)] * (d + 1)
    yield partial[d]
    while True:
        i = d - 1
        while i >= 0 and coeffs[i] == q - 1:
            coeffs[i] = 0
            i -= 1
        if i < 0:
            return
        coeffs[i] += 1
        base = partial[i]
        srow = scaled[i][coeffs[i]]
        if add is not None:
            new = tuple(add[a * q + b] for a, b in zip(base, srow))
        else:
            new = tuple(F.add(a, b) for a, b in zip(base, srow))
        for j in range(i + 1, d + 1):
            partial[j] = new
        yield new


def enumerate_elements(S: SubspaceBasis, *,
                       budget: int = DEFAULT_ENUMERATION_BUDGET
                       ) -> Iterator[MatGF]:
    """All q^d elements of the span as matrices, zero first, in coefficient
    lexicographic order.  Raises BudgetExceeded before yielding anything if
    the span is larger than budget."""
    total = S.field.q ** S.d
    if total > budget:
        raise BudgetExceeded(
            f"span has {total} elements, enumeration budget is {budget}"
        )

    def gen() -> Iterator[MatGF]:
        F, m, n = S.field, S.m, S.n
        for ent in _iter_span_entries(S):
            yield MatGF(F, m, n, ent)

    return gen()


# ---------------------------------------------------------------------------
# rank statistics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RankProfile:
    """Rank distribution over the non-zero elements of a span.

    counts[s] is the number of non-zero elements of rank s; counts[0] is
    always 0 and the counts sum to q^d - 1.
    """

    field_order: int
    dim: int
    shape: tuple[int, int]
    counts: tuple[int, ...]

    def constant_rank_of(self) -> int | None:
        """The single rank taken by every non-zero element, if there is one."""
        hit = [s for s, c in enumerate(self.counts) if c]
        return hit[0] if len(hit) == 1 else None


def rank_profile(S: SubspaceBasis, *,
                 budget: int = DEFAULT_ENUMERATION_BUDGET) -> RankProfile:
    """Count span elements by rank (the zero element is skipped)."""
    F = S.field
    q, d, m, n = F.q, S.d, S.m, S.n
    total = q ** d
    if total > budget:
        raise BudgetExceeded(
            f"span has {total} elements, enumeration budget is {budget}"
        )
    counts = [0] * (min(m, n) + 1)
    if q == 2:
        packed = [_pack_flat_bits(B.entries) for B in S.basis]
        mn = m * n
        cur = 0
        if mn <= 16:
            # Gray traversal: one XOR per element, table lookup for the rank.
            table = _gf2_rank_table(m, n)
            for k in range(1, 1 << d):
                cur ^= packed[(k & -k).bit_length() - 1]
                counts[table[cur]] += 1
        else:
            for k in range(1, 1 << d):
                cur ^= packed[(k & -k).bit_length() - 1]
                counts[_rank_words_gf2(_unpack_words(cur, m, n))] += 1
    else:
        it = _iter_span_entries(S)
        next(it)
        for ent in it:
            rows = [list(ent[i * n: (i + 1) * n]) for i in range(m)]
            counts[_rank_rows(F, rows)] += 1
    return RankProfile(q, d, (m, n), tuple(counts))


def is_constant_rank(S: SubspaceBasis, r: int, *,
                     budget: int = DEFAULT_ENUMERATION_BUDGET
                     ) -> tuple[bool, MatGF | None]:
    """Whether every non-zero span element has rank exactly r.

    On failure returns the offending element that comes first in coefficient
    lexicographic order, so the witness is stable across runs.
    """
    F = S.field
    q, d, m, n = F.q, S.d, S.m, S.n
    if not 1 <= r <= min(m, n):
        raise ValueError(f"target rank {r} outside 1..{min(m, n)}")
    total = q ** d
    if total > budget:
        raise BudgetExceeded(
            f"span has {total} elements, enumeration budget is {budget}"
        )
    if q == 2:
        mn = m * n
        # counter bit b holds coefficient d-1-b, so counting up walks the
        # coefficient vectors in lexicographic order
        word = [_pack_flat_bits(S.basis[d - 1 - b].entries) for b in range(d)]
        table = _gf2_rank_table(m, n) if mn <= 16 else None
        cur = 0
        for k in range(1, 1 << d):
            low = (k & -k).bit_length() - 1
            for b in range(low + 1):
                cur ^= word[b]
            if table is not None:
                rk = table[cur]
            else:
                rk = _rank_words_gf2(_unpack_words(cur, m, n))
            if rk != r:
                ent = tuple((cur >> (mn - 1 - t)) & 1 for t in range(mn))
                return False, MatGF(F, m, n, ent)
        return True, None
    it = _iter_span_entries(S)
    next(it)
    for ent in it:
        rows = [list(ent[i * n: (i + 1) * n]) for i in range(m)]
        if _rank_rows(F, rows) != r:
            return False, MatGF(F, m, n, ent)
    return True, None
