"""Exact sparse linear algebra over the rationals.

Every rank-based decision in the library goes through this module: ranks
and kernels are computed by fraction-free integer elimination (rows are
scaled to integers and combined without ever forming intermediate
fractions, with a gcd normalisation after each combination to keep
entries small).  Pivots prefer sparse columns, with deterministic
tie-breaking by lowest column index then lowest row index, so results and
kernel bases are reproducible across runs and platforms.

``rank_mod_p`` is a screening heuristic only: it is guaranteed to be a
lower bound on the rational rank and must never substitute for it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidModulus, ParseError


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class ExactMatrix:
    """Immutable sparse matrix with arbitrary-precision rational entries.

    Entries are stored as a map ``(row, col) -> Fraction`` with no zeros
    and no duplicates.
    """

    __slots__ = ("rows", "cols", "entries", "_rank")

    def __init__(self, rows: int, cols: int, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimensions")
        self.rows = rows
        self.cols = cols
        cleaned = {}
        for (i, j), v in (entries or {}).items():
            v = _as_fraction(v)
            if not (0 <= i < rows and 0 <= j < cols):
                raise ValueError(f"entry ({i},{j}) outside {rows}x{cols}")
            if v != 0:
                cleaned[(i, j)] = v
        self.entries = cleaned
        self._rank = None

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> "ExactMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                if v:
                    entries[(i, j)] = _as_fraction(v)
        return cls(rows, cols, entries)

    @classmethod
    def from_triplets(cls, rows: int, cols: int, triplets: Iterable) -> "ExactMatrix":
        entries = {}
        for i, j, v in triplets:
            key = (i, j)
            if key in entries:
                raise ValueError(f"duplicate triplet at {key}")
            entries[key] = _as_fraction(v)
        return cls(rows, cols, entries)

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries.get((i, j), Fraction(0))

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()}
        )

    def row_dicts(self):
        rows = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def to_dense(self):
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def apply(self, vector: Sequence) -> tuple:
        """Matrix-vector product, exact."""
        if len(vector) != self.cols:
            raise ValueError("dimension mismatch")
        out = [Fraction(0)] * self.rows
        for (i, j), v in self.entries.items():
            if vector[j]:
                out[i] += v * vector[j]
        return tuple(out)

    def nnz(self) -> int:
        return len(self.entries)

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"

    # --- triplet JSON form used by golden-file tests -------------------

    def to_json_dict(self) -> dict:
        triplets = [
            [i, j, f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator)]
            for (i, j), v in sorted(self.entries.items())
        ]
        return {"rows": self.rows, "cols": self.cols, "triplets": triplets}

    @classmethod
    def from_json_dict(cls, obj: dict) -> "ExactMatrix":
        try:
            return cls.from_triplets(
                int(obj["rows"]), int(obj["cols"]),
                ((int(i), int(j), Fraction(v)) for i, j, v in obj["triplets"]),
            )
        except (KeyError, ValueError, TypeError) as exc:
            raise ParseError(f"bad matrix JSON: {exc}") from exc


@dataclass(frozen=True)
class KernelBasis:
    """Basis of the right kernel of a matrix, as exact rational vectors."""

    vectors: tuple
    ambient_dim: int

    @property
    def dimension(self) -> int:
        return len(self.vectors)


def _integer_rows(matrix: ExactMatrix):
    """Rows as integer dicts, each scaled by the lcm of its denominators."""
    rows = []
    for row in matrix.row_dicts():
        if not row:
            continue
        scale = math.lcm(*(v.denominator for v in row.values()))
        rows.append({j: int(v * scale) for j, v in row.items()})
    return rows


def _normalize_row(row: dict) -> dict:
    g = math.gcd(*row.values()) if row else 1
    if g > 1:
        return {j: v // g for j, v in row.items()}
    return row


def _eliminate(rows):
    """Fraction-free elimination on a list of integer row dicts.

    Returns ``(pivots, rows)`` where ``pivots`` is the ordered list of
    ``(row_index, column)`` pairs.  Pivot choice prefers the sparsest
    column, then the sparsest row in it, breaking ties by lowest column
    and lowest row index.  Retired pivot rows keep their final content,
    so the pivot rows form a triangular system in pivot order.
    """
    col_rows: dict[int, set] = {}
    for r, row in enumerate(rows):
        for j in row:
            col_rows.setdefault(j, set()).add(r)
    pivots = []
    while True:
        best = None
        for j, rs in col_rows.items():
            if not rs:
                continue
            cand = (len(rs), j)
            if best is None or cand < best[0]:
                rws = sorted(rs, key=lambda r: (len(rows[r]), r))
                best = (cand, j, rws[0])
        if best is None:
            break
        _, col, piv = best
        pivrow = rows[piv]
        p = pivrow[col]
        for r in sorted(col_rows[col]):
            if r == piv:
                continue
            row = rows[r]
            v = row[col]
            g = math.gcd(p, v)
            mp, mv = p // g, v // g
            new = {}
            for j, x in row.items():
                y = x * mp - mv * pivrow.get(j, 0)
                if y:
                    new[j] = y
                else:
                    col_rows[j].discard(r)
            for j, x in pivrow.items():
                if j not in row:
                    new[j] = -mv * x
                    col_rows.setdefault(j, set()).add(r)
            rows[r] = _normalize_row(new)
        # retire the pivot row and its column
        for j in pivrow:
            col_rows[j].discard(piv)
        del col_rows[col]
        pivots.append((piv, col))
    return pivots, rows


def rank(matrix: ExactMatrix) -> int:
    """Exact rank over the rationals."""
    if matrix._rank is None:
        pivots, _ = _eliminate(_integer_rows(matrix))
        matrix._rank = len(pivots)
    return matrix._rank


def kernel_basis(matrix: ExactMatrix) -> KernelBasis:
    """Basis of the right kernel, deterministic for a fixed column order.

    Each basis vector corresponds to one free column (set to 1, other
    free columns 0) and is normalised to a primitive integer vector whose
    first nonzero entry is positive.  Vectors are ordered by free column.
    """
    pivots, rows = _eliminate(_integer_rows(matrix))
    matrix._rank = len(pivots)
    pivot_cols = {c for _, c in pivots}
    free_cols = [j for j in range(matrix.cols) if j not in pivot_cols]
    vectors = []
    for f in free_cols:
        x = {f: Fraction(1)}
        for r, c in reversed(pivots):
            row = rows[r]
            s = Fraction(0)
            for j, v in row.items():
                if j != c and j in x:
                    s += v * x[j]
            if s:
                x[c] = -s / Fraction(row[c])
        vec = [x.get(j, Fraction(0)) for j in range(matrix.cols)]
        scale = math.lcm(*(v.denominator for v in vec))
        ints = [int(v * scale) for v in vec]
        g = math.gcd(*ints)
        ints = [v // g for v in ints]
        lead = next(v for v in ints if v)
        if lead < 0:
            ints = [-v for v in ints]
        vectors.append(tuple(Fraction(v) for v in ints))
    return KernelBasis(tuple(vectors), matrix.cols)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def rank_mod_p(matrix: ExactMatrix, p: int) -> int:
    """Rank of the reduction mod p; a fast lower-bound screen only.

    Entries whose denominator vanishes mod p make the reduction
    undefined, which is reported as a modulus error.
    """
    if not _is_prime(p):
        raise InvalidModulus(f"modulus must be prime, got {p}")
    rows: list[dict[int, int]] = [dict() for _ in range(matrix.rows)]
    for (i, j), v in matrix.entries.items():
        if v.denominator % p == 0:
            raise InvalidModulus(f"denominator of entry ({i},{j}) vanishes mod {p}")
        x = v.numerator * pow(v.denominator, -1, p) % p
        if x:
            rows[i][j] = x
    col_rows: dict[int, set] = {}
    for r, row in enumerate(rows):
        for j in row:
            col_rows.setdefault(j, set()).add(r)
    rk = 0
    while True:
        best = None
        for j, rs in col_rows.items():
            if not rs:
                continue
            cand = (len(rs), j)
            if best is None or cand < best[0]:
                rws = sorted(rs, key=lambda r: (len(rows[r]), r))
                best = (cand, j, rws[0])
        if best is None:
            break
        _, col, piv = best
        pivrow = rows[piv]
        pinv = pow(pivrow[col], -1, p)
        for r in sorted(col_rows[col]):
            if r == piv:
                continue
            row = rows[r]
            m = row[col] * pinv % p
            new = {}
            for j, x in row.items():
                y = (x - m * pivrow.get(j, 0)) % p
                if y:
                    new[j] = y
                else:
                    col_rows[j].discard(r)
            for j, x in pivrow.items():
                if j not in row:
                    y = -m * x % p
                    if y:
                        new[j] = y
                        col_rows.setdefault(j, set()).add(r)
            rows[r] = new
        for j in pivrow:
            col_rows[j].discard(piv)
        del col_rows[col]
        rk += 1
    return rk
