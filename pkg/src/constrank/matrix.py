"""Dense matrices over a FieldSpec with exact rank/kernel/image machinery.

Entries are stored row-major as field codes; a vector is the n-by-1 case.
The echelon pivot order is fixed (leftmost non-zero column, topmost row) so
kernel and image bases are reproducible.  GF(2) rows additionally pack into
machine words, since the search workload is dominated by rank calls.

Text format (bit-exact round-trip): first line "m n GF(...)", then m lines
of n space-separated element codes.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DimensionMismatch, ParseError, ShapeViolation
from .field import FieldSpec, parse_field_descriptor

__all__ = ["MatGF", "member_of_span", "parse_matrix"]


class MatGF:
    """Immutable m-by-n matrix over a FieldSpec."""

    __slots__ = ("field", "m", "n", "entries")

    def __init__(self, field: FieldSpec, m: int, n: int, entries: Iterable[int]):
        if m < 1 or n < 1:
            raise ShapeViolation(f"matrix shape {m}x{n} must be at least 1x1")
        entries = tuple(entries)
        if len(entries) != m * n:
            raise ShapeViolation(
                f"{m}x{n} matrix needs {m * n} entries, got {len(entries)}"
            )
        q = field.q
        for x in entries:
            if not (isinstance(x, int) and 0 <= x < q):
                raise ValueError(f"entry {x!r} is not a code in 0..{q - 1}")
        self.field = field
        self.m = m
        self.n = n
        self.entries = entries

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, field: FieldSpec, m: int, n: int) -> "MatGF":
        return cls(field, m, n, (0,) * (m * n))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "MatGF":
        ent = [0] * (n * n)
        for i in range(n):
            ent[i * n + i] = 1
        return cls(field, n, n, ent)

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence[int]]) -> "MatGF":
        if not rows:
            raise ShapeViolation("from_rows needs at least one row")
        n = len(rows[0])
        flat: list[int] = []
        for r in rows:
            if len(r) != n:
                raise ShapeViolation("rows have unequal lengths")
            flat.extend(r)
        return cls(field, len(rows), n, flat)

    @classmethod
    def column(cls, field: FieldSpec, values: Sequence[int]) -> "MatGF":
        return cls(field, len(values), 1, values)

    # -- basic access --------------------------------------------------------

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.n + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.n: (i + 1) * self.n]

    def rows_as_lists(self) -> list[list[int]]:
        n = self.n
        e = self.entries
        return [list(e[i * n: (i + 1) * n]) for i in range(self.m)]

    @property
    def is_zero(self) -> bool:
        return not any(self.entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatGF):
            return NotImplemented
        return (self.field == other.field and self.m == other.m
                and self.n == other.n and self.entries == other.entries)

    def __hash__(self) -> int:
        return hash((self.field, self.m, self.n, self.entries))

    def __lt__(self, other: "MatGF") -> bool:
        if not isinstance(other, MatGF):
            return NotImplemented
        if self.field != other.field or self.m != other.m or self.n != other.n:
            raise DimensionMismatch("ordering is defined for equal-shape matrices")
        return self.entries < other.entries

    def __repr__(self) -> str:
        rows = "; ".join(" ".join(map(str, self.row(i))) for i in range(self.m))
        return f"<MatGF {self.m}x{self.n} {self.field.descriptor} [{rows}]>"

    # -- arithmetic ----------------------------------------------------------

    def _require_same_shape(self, other: "MatGF") -> None:
        if self.field != other.field:
            raise DimensionMismatch("matrices live over different fields")
        if self.m != other.m or self.n != other.n:
            raise DimensionMismatch(
                f"shape mismatch: {self.m}x{self.n} vs {other.m}x{other.n}"
            )

    def __add__(self, other: "MatGF") -> "MatGF":
        if not isinstance(other, MatGF):
            return NotImplemented
        self._require_same_shape(other)
        F = self.field
        af = F._add_flat
        q = F.q
        if af is not None:
            ent = tuple(af[a * q + b] for a, b in zip(self.entries, other.entries))
        else:
            ent = tuple(F.add(a, b) for a, b in zip(self.entries, other.entries))
        return MatGF(F, self.m, self.n, ent)

    def __sub__(self, other: "MatGF") -> "MatGF":
        if not isinstance(other, MatGF):
            return NotImplemented
        self._require_same_shape(other)
        F = self.field
        return MatGF(F, self.m, self.n,
                     tuple(F.sub(a, b) for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "MatGF":
        F = self.field
        return MatGF(F, self.m, self.n, tuple(F.neg(a) for a in self.entries))

    def scale(self, c: int) -> "MatGF":
        F = self.field
        if not 0 <= c < F.q:
            raise ValueError(f"scalar {c!r} is not a code in 0..{F.q - 1}")
        return MatGF(F, self.m, self.n, tuple(F.mul(c, a) for a in self.entries))

    def __matmul__(self, other: "MatGF") -> "MatGF":
        if not isinstance(other, MatGF):
            return NotImplemented
        if self.field != other.field:
            raise DimensionMismatch("matrices live over different fields")
        if self.n != other.m:
            raise DimensionMismatch(
                f"cannot multiply {self.m}x{self.n} by {other.m}x{other.n}"
            )
        F = self.field
        a, b = self.entries, other.entries
        n, k = self.n, other.n
        out = []
        for i in range(self.m):
            arow = a[i * n: (i + 1) * n]
            for j in range(k):
                acc = 0
                for t in range(n):
                    x = arow[t]
                    if x:
                        acc = F.add(acc, F.mul(x, b[t * k + j]))
                out.append(acc)
        return MatGF(F, self.m, k, out)

    def transpose(self) -> "MatGF":
        e = self.entries
        n = self.n
        return MatGF(self.field, n, self.m,
                     tuple(e[i * n + j] for j in range(n) for i in range(self.m)))

    # -- rank / kernel / image ----------------------------------------------

    def rank(self) -> int:
        if self.field.q == 2:
            return _rank_words_gf2([_pack_row_bits(self.row(i)) for i in range(self.m)])
        return _rank_rows(self.field, self.rows_as_lists())

    def kernel_basis(self) -> list["MatGF"]:
        """Basis of {v : Av = 0}, exactly n - rank(A) column vectors.

        Vectors are emitted in ascending free-column order from the reduced
        echelon form, so the result is reproducible.
        """
        F = self.field
        rows = self.rows_as_lists()
        pivots = _rref_rows(F, rows)
        pivot_set = set(pivots)
        out = []
        for j in range(self.n):
            if j in pivot_set:
                continue
            v = [0] * self.n
            v[j] = 1
            for i, pj in enumerate(pivots):
                v[pj] = F.neg(rows[i][j])
            out.append(MatGF(F, self.n, 1, v))
        return out

    def image_basis(self) -> list["MatGF"]:
        """Exactly rank(A) independent columns of A spanning {Av}."""
        rows = self.rows_as_lists()
        pivots = _rref_rows(self.field, rows)
        e = self.entries
        n = self.n
        return [MatGF(self.field, self.m, 1, tuple(e[i * n + j] for i in range(self.m)))
                for j in pivots]

    # -- padding -------------------------------------------------------------

    def pad_rows(self, total_rows: int) -> "MatGF":
        """Append zero rows at the bottom until the matrix has total_rows rows."""
        if total_rows < self.m:
            raise ShapeViolation(
                f"cannot pad {self.m} rows down to {total_rows}"
            )
        if total_rows == self.m:
            return self
        pad = (0,) * ((total_rows - self.m) * self.n)
        return MatGF(self.field, total_rows, self.n, self.entries + pad)

    def pad_to_square(self) -> "MatGF":
        """Zero-pad an m-by-n matrix with m <= n to n-by-n (rank preserved)."""
        if self.m > self.n:
            raise ShapeViolation(
                f"pad_to_square needs m <= n, got {self.m}x{self.n}"
            )
        return self.pad_rows(self.n)

    # -- text ----------------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.m} {self.n} {self.field.descriptor}"]
        for i in range(self.m):
            lines.append(" ".join(map(str, self.row(i))))
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# span membership
# ---------------------------------------------------------------------------

def member_of_span(v: MatGF, basis: Sequence[MatGF]) -> bool:
    """Whether vector v lies in the span of the given vectors.

    All vectors must be columns of one length over one field; an empty basis
    spans only the zero vector.
    """
    if v.n != 1:
        raise DimensionMismatch("member_of_span expects column vectors")
    for b in basis:
        if b.n != 1:
            raise DimensionMismatch("member_of_span expects column vectors")
        if b.field != v.field or b.m != v.m:
            raise DimensionMismatch("span vectors must match v in field and length")
    if not basis:
        return v.is_zero
    F = v.field
    rows = [list(b.entries) for b in basis]
    pivots = _rref_rows(F, rows)
    w = list(v.entries)
    _reduce_vector(F, w, rows, pivots)
    return not any(w)


def _reduce_vector(field: FieldSpec, w: list[int], rref_rows: list[list[int]],
                   pivots: list[int]) -> None:
    """Reduce w in place against rows already in reduced echelon form."""
    mf = field._mul_flat
    q = field.q
    if mf is not None:
        sf = field._sub_flat
        for i, pj in enumerate(pivots):
            c = w[pj]
            if c:
                row = rref_rows[i]
                cq = c * q
                for t in range(len(w)):
                    y = row[t]
                    if y:
                        w[t] = sf[w[t] * q + mf[cq + y]]
    else:
        for i, pj in enumerate(pivots):
            c = w[pj]
            if c:
                row = rref_rows[i]
                for t in range(len(w)):
                    if row[t]:
                        w[t] = field.sub(w[t], field.mul(c, row[t]))


# ---------------------------------------------------------------------------
# elimination engines
# ---------------------------------------------------------------------------

def _rank_rows(field: FieldSpec, rows: list[list[int]]) -> int:
    """Row-echelon rank; consumes the row lists."""
    if field.q == 2:
        return _rank_words_gf2([_pack_row_bits(r) for r in rows])
    if field._mul_flat is not None:
        return _rank_rows_table(field, rows)
    return _rank_rows_slow(field, rows)


def _rank_rows_table(field: FieldSpec, rows: list[list[int]]) -> int:
    q = field.q
    mf = field._mul_flat
    sf = field._sub_flat
    iv = field._inv
    nrows = len(rows)
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = -1
        for i in range(rank, nrows):
            if rows[i][col]:
                piv = i
                break
        if piv < 0:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        s = iv[prow[col]]
        if s != 1:
            sq = s * q
            prow = rows[rank] = [mf[sq + x] for x in prow]
        for i in range(rank + 1, nrows):
            ri = rows[i]
            c = ri[col]
            if c:
                cq = c * q
                rows[i] = [sf[x * q + mf[cq + y]] for x, y in zip(ri, prow)]
        rank += 1
        if rank == nrows:
            break
    return rank


def _rank_rows_slow(field: FieldSpec, rows: list[list[int]]) -> int:
    nrows = len(rows)
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = -1
        for i in range(rank, nrows):
            if rows[i][col]:
                piv = i
                break
        if piv < 0:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        s = field.inv(rows[rank][col])
        if s != 1:
            rows[rank] = [field.mul(s, x) for x in rows[rank]]
        prow = rows[rank]
        for i in range(rank + 1, nrows):
            c = rows[i][col]
            if c:
                rows[i] = [field.sub(x, field.mul(c, y))
                           for x, y in zip(rows[i], prow)]
        rank += 1
        if rank == nrows:
            break
    return rank


def _rref_rows(field: FieldSpec, rows: list[list[int]]) -> list[int]:
    """Reduce rows in place to reduced row echelon form; returns pivot columns."""
    q = field.q
    mf = field._mul_flat
    nrows = len(rows)
    ncols = len(rows[0])
    pivots: list[int] = []
    rank = 0
    if mf is not None:
        sf = field._sub_flat
        iv = field._inv
        for col in range(ncols):
            piv = -1
            for i in range(rank, nrows):
                if rows[i][col]:
                    piv = i
                    break
            if piv < 0:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            prow = rows[rank]
            s = iv[prow[col]]
            if s != 1:
                sq = s * q
                prow = rows[rank] = [mf[sq + x] for x in prow]
            for i in range(nrows):
                if i == rank:
                    continue
                ri = rows[i]
                c = ri[col]
                if c:
                    cq = c * q
                    rows[i] = [sf[x * q + mf[cq + y]] for x, y in zip(ri, prow)]
            pivots.append(col)
            rank += 1
            if rank == nrows:
                break
    else:
        for col in range(ncols):
            piv = -1
            for i in range(rank, nrows):
                if rows[i][col]:
                    piv = i
                    break
            if piv < 0:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            s = field.inv(rows[rank][col])
            if s != 1:
                rows[rank] = [field.mul(s, x) for x in rows[rank]]
            prow = rows[rank]
            for i in range(nrows):
                if i != rank and rows[i][col]:
                    c = rows[i][col]
                    rows[i] = [field.sub(x, field.mul(c, y))
                               for x, y in zip(rows[i], prow)]
            pivots.append(col)
            rank += 1
            if rank == nrows:
                break
    return pivots


# ---------------------------------------------------------------------------
# GF(2) fast path: rows as machine words, column 0 in the most significant bit
# ---------------------------------------------------------------------------

def _pack_row_bits(row: Sequence[int]) -> int:
    w = 0
    for x in row:
        w = (w << 1) | x
    return w


def _pack_flat_bits(entries: Sequence[int]) -> int:
    w = 0
    for x in entries:
        w = (w << 1) | x
    return w


def _unpack_words(code: int, m: int, n: int) -> list[int]:
    mask = (1 << n) - 1
    return [(code >> (n * (m - 1 - i))) & mask for i in range(m)]


def _rank_words_gf2(words: list[int]) -> int:
    """Rank of GF(2) rows packed as integers."""
    pivs: dict[int, int] = {}
    rank = 0
    for w in words:
        while w:
            b = w.bit_length()
            p = pivs.get(b)
            if p is None:
                pivs[b] = w
                rank += 1
                break
            w ^= p
    return rank


@lru_cache(maxsize=32)
def _gf2_rank_table(m: int, n: int) -> bytes:
    """Rank of every m-by-n GF(2) matrix, indexed by its packed code.

    Packing is row-major with entry (0,0) in the most significant bit, so
    numeric order on codes equals lexicographic order on entries.  Only built
    for m*n <= 16.
    """
    mn = m * n
    if mn > 16:
        raise ValueError(f"rank table capped at 16 bits, got {mn}")
    out = bytearray(1 << mn)
    for code in range(1, 1 << mn):
        out[code] = _rank_words_gf2(_unpack_words(code, m, n))
    return bytes(out)


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

def _tokens_with_cols(line: str) -> list[tuple[str, int]]:
    out = []
    i = 0
    ln = len(line)
    while i < ln:
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < ln and not line[j].isspace():
            j += 1
        out.append((line[i:j], i + 1))
        i = j
    return out


def _parse_int(token: str, line_no: int, col: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {token!r}", line_no, col)


def _parse_matrix_block(lines: Sequence[str], idx: int) -> tuple[MatGF, int]:
    """Parse one matrix starting at lines[idx] (blank lines skipped first).

    Returns the matrix and the index of the first line after it.  Line and
    column numbers in errors are 1-based and refer to the full line list.
    """
    nlines = len(lines)
    while idx < nlines and not lines[idx].strip():
        idx += 1
    if idx >= nlines:
        raise ParseError("missing matrix header", nlines + 1, 1)
    header = _tokens_with_cols(lines[idx])
    line_no = idx + 1
    if len(header) < 3:
        raise ParseError("matrix header needs 'm n GF(...)'", line_no,
                         header[-1][1] if header else 1)
    m = _parse_int(header[0][0], line_no, header[0][1], "row count")
    n = _parse_int(header[1][0], line_no, header[1][1], "column count")
    if m < 1 or n < 1:
        raise ParseError(f"matrix shape {m}x{n} must be at least 1x1",
                         line_no, header[0][1])
    desc = " ".join(t for t, _ in header[2:])
    field = parse_field_descriptor(desc, line=line_no, col=header[2][1])
    entries: list[int] = []
    for r in range(m):
        row_idx = idx + 1 + r
        if row_idx >= nlines or not lines[row_idx].strip():
            raise ParseError(f"expected {m} rows of entries, got {r}",
                             row_idx + 1, 1)
        toks = _tokens_with_cols(lines[row_idx])
        if len(toks) != n:
            bad_col = toks[n][1] if len(toks) > n else (toks[-1][1] if toks else 1)
            raise ParseError(f"expected {n} entries in row, got {len(toks)}",
                             row_idx + 1, bad_col)
        for tok, col in toks:
            x = _parse_int(tok, row_idx + 1, col, "entry")
            if not 0 <= x < field.q:
                raise ParseError(
                    f"entry {x} is not a code in 0..{field.q - 1}",
                    row_idx + 1, col)
            entries.append(x)
    return MatGF(field, m, n, entries), idx + 1 + m


def parse_matrix(text: str) -> MatGF:
    """Parse the matrix text format; inverse of MatGF.to_text()."""
    lines = text.splitlines()
    mat, nxt = _parse_matrix_block(lines, 0)
    for k in range(nxt, len(lines)):
        if lines[k].strip():
            raise ParseError("unexpected content after matrix", k + 1, 1)
    return mat
