"""Sparse exact matrices over any field-like value type.

Entries are stored row-wise as ``{row: {col: value}}`` with zeros dropped.
Values only need ``+``, ``*``, unary ``-`` and truthiness (``Scalar``,
``QuadNumber``, ``Fraction`` all qualify).
"""

from __future__ import annotations

from typing import Callable, Iterator


class SparseMatrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: dict[int, dict[int, object]] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else {}

    @staticmethod
    def from_entries(nrows: int, ncols: int, entries) -> "SparseMatrix":
        m = SparseMatrix(nrows, ncols)
        for (r, c), v in entries:
            m.add_to(r, c, v)
        return m

    @staticmethod
    def identity(n: int, one) -> "SparseMatrix":
        return SparseMatrix(n, n, {i: {i: one} for i in range(n)})

    @staticmethod
    def diagonal(values: list) -> "SparseMatrix":
        n = len(values)
        return SparseMatrix(n, n, {i: {i: v} for i, v in enumerate(values) if v})

    # -- access -----------------------------------------------------------
    def get(self, r: int, c: int, default=None):
        return self.rows.get(r, {}).get(c, default)

    def add_to(self, r: int, c: int, v) -> None:
        if not v:
            return
        row = self.rows.setdefault(r, {})
        if c in row:
            s = row[c] + v
            if s:
                row[c] = s
            else:
                del row[c]
                if not row:
                    del self.rows[r]
        else:
            row[c] = v

    def entries(self) -> Iterator[tuple[tuple[int, int], object]]:
        for r in sorted(self.rows):
            row = self.rows[r]
            for c in sorted(row):
                yield (r, c), row[c]

    def nnz(self) -> int:
        return sum(len(row) for row in self.rows.values())

    def is_zero(self) -> bool:
        return not self.rows

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def copy(self) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols, {r: dict(row) for r, row in self.rows.items()})

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        _check_same_shape(self, other)
        out = self.copy()
        for r, row in other.rows.items():
            for c, v in row.items():
                out.add_to(r, c, v)
        return out

    def __neg__(self) -> "SparseMatrix":
        return self.map(lambda v: -v)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + (-other)

    def scale(self, c) -> "SparseMatrix":
        if not c:
            return SparseMatrix(self.nrows, self.ncols)
        return self.map(lambda v: v * c)

    def map(self, fn: Callable) -> "SparseMatrix":
        rows = {}
        for r, row in self.rows.items():
            new = {}
            for c, v in row.items():
                w = fn(v)
                if w:
                    new[c] = w
            if new:
                rows[r] = new
        return SparseMatrix(self.nrows, self.ncols, rows)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        orows = other.rows
        rows = {}
        for r, row in self.rows.items():
            acc: dict[int, object] = {}
            for k, a in row.items():
                brow = orows.get(k)
                if not brow:
                    continue
                for c, b in brow.items():
                    p = a * b
                    if c in acc:
                        acc[c] = acc[c] + p
                    else:
                        acc[c] = p
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                rows[r] = acc
        return SparseMatrix(self.nrows, other.ncols, rows)

    def scale_columns(self, factors: list) -> "SparseMatrix":
        rows = {}
        for r, row in self.rows.items():
            new = {c: v * factors[c] for c, v in row.items()}
            new = {c: v for c, v in new.items() if v}
            if new:
                rows[r] = new
        return SparseMatrix(self.nrows, self.ncols, rows)

    def transpose(self) -> "SparseMatrix":
        out = SparseMatrix(self.ncols, self.nrows)
        for (r, c), v in self.entries():
            out.rows.setdefault(c, {})[r] = v
        return out

    def kron(self, other: "SparseMatrix") -> "SparseMatrix":
        n2, m2 = other.nrows, other.ncols
        rows = {}
        for r1, row1 in self.rows.items():
            for r2, row2 in other.rows.items():
                new = {}
                for c1, a in row1.items():
                    for c2, b in row2.items():
                        p = a * b
                        if p:
                            new[c1 * m2 + c2] = p
                if new:
                    rows[r1 * n2 + r2] = new
        return SparseMatrix(self.nrows * n2, self.ncols * m2, rows)

    def permute(self, perm: list[int]) -> "SparseMatrix":
        """P M P^-1 where basis index i is sent to perm[i]."""
        rows = {}
        for r, row in self.rows.items():
            rows[perm[r]] = {perm[c]: v for c, v in row.items()}
        return SparseMatrix(self.nrows, self.ncols, rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and (self - other).is_zero()

    __hash__ = None

    def to_dense(self, zero) -> list[list]:
        out = [[zero] * self.ncols for _ in range(self.nrows)]
        for (r, c), v in self.entries():
            out[r][c] = v
        return out

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def _check_same_shape(a: SparseMatrix, b: SparseMatrix) -> None:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def swap_permutation(n1: int, n2: int) -> list[int]:
    """Index map for V1 (x) V2 -> V2 (x) V1."""
    return [b * n1 + a for a in range(n1) for b in range(n2)]


# ---------------------------------------------------------------------------
# dense elimination over a field


def rank_profile(rows: list[list], size: Callable) -> tuple[list[int], list[int]]:
    """Fraction-free (Bareiss) elimination with full pivoting.

    ``rows`` must already be free of denominators; the pivot at each step is
    the nonzero entry of least ``size``.  Returns the original row and column
    indices of the pivots, whose submatrix is therefore invertible.
    """
    m = [row[:] for row in rows]
    nr = len(m)
    nc = len(m[0]) if m else 0
    row_ids = list(range(nr))
    col_ids = list(range(nc))
    prev = None
    k = 0
    while k < min(nr, nc):
        best = None
        for i in range(k, nr):
            for j in range(k, nc):
                x = m[i][j]
                if x:
                    sz = size(x)
                    if best is None or sz < best[0]:
                        best = (sz, i, j)
        if best is None:
            break
        _, i, j = best
        m[k], m[i] = m[i], m[k]
        row_ids[k], row_ids[i] = row_ids[i], row_ids[k]
        for row in m:
            row[k], row[j] = row[j], row[k]
        col_ids[k], col_ids[j] = col_ids[j], col_ids[k]
        p = m[k][k]
        for i in range(k + 1, nr):
            a = m[i][k]
            for j in range(k + 1, nc):
                val = p * m[i][j] - a * m[k][j]
                if prev is not None and val:
                    val = val / prev  # exact by Sylvester's identity
                m[i][j] = val
            m[i][k] = p - p
        prev = p
        k += 1
    return row_ids[:k], col_ids[:k]


def invert_dense(a: list[list], one) -> list[list]:
    """Gauss-Jordan inverse; raises ZeroDivisionError when singular."""
    n = len(a)
    zero = one - one
    m = [row[:] + [one if i == j else zero for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[p] = m[p], m[c]
        inv = m[c][c].inverse()
        m[c] = [x * inv if x else x for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                fac = m[r][c]
                m[r] = [x - fac * y if y else x for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]
