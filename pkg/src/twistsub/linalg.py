"""Exact integer matrices, Smith normal form and abelian group invariants.

Everything here works over Python's arbitrary precision ``int``; no floats
are ever produced.  Matrices are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "IntegerMatrix",
    "SmithForm",
    "AbelianInvariants",
    "snf",
    "invariant_factors",
    "det",
    "inverse",
    "parse_matrix",
    "format_matrix",
]


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        for x in self.entries:
            if not isinstance(x, int) or isinstance(x, bool):
                raise TypeError(f"matrix entries must be int, got {type(x).__name__}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntegerMatrix":
        rows = len(values) if rows is None else rows
        cols = rows if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(values):
            out[i][i] = v
        return cls.from_rows(out, cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix.from_rows(
            [self.column(j) for j in range(self.cols)], self.rows
        )

    T = property(transpose)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.column(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.append([sum(a * b for a, b in zip(r, c)) for c in cols])
        return IntegerMatrix.from_rows(out, other.cols)

    def __add__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntegerMatrix(self.rows, self.cols,
                             tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntegerMatrix(self.rows, self.cols,
                             tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntegerMatrix":
        return IntegerMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def __pow__(self, k: int) -> "IntegerMatrix":
        if not self.is_square:
            raise ValueError("power of non-square matrix")
        if k < 0:
            return inverse(self) ** (-k)
        result = IntegerMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        """Matrix times column vector."""
        if len(vector) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(a * b for a, b in zip(self.row(i), vector)) for i in range(self.rows))

    def is_identity(self) -> bool:
        return self == IntegerMatrix.identity(self.rows) if self.is_square else False

    def __str__(self) -> str:
        return format_matrix(self)


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == S`` with ``U``, ``V`` unimodular and ``S`` diagonal."""

    S: IntegerMatrix
    U: IntegerMatrix
    V: IntegerMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.S[i, i] for i in range(min(self.S.rows, self.S.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


@dataclass(frozen=True)
class AbelianInvariants:
    """A finitely generated abelian group ``Z^free_rank + sum Z/d_i``.

    ``torsion`` is kept in divisibility order (each factor divides the
    next).  When rendered, the free part comes first and the torsion
    factors are listed largest first, e.g. ``Z x Z/24 x Z/2``.
    """

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        t = tuple(int(d) for d in self.torsion)
        for d in t:
            if d < 2:
                raise ValueError(f"invalid invariant factor {d}")
        for a, b in zip(t, t[1:]):
            if b % a:
                raise ValueError(f"invariant factors {t} do not form a divisibility chain")
        object.__setattr__(self, "torsion", t)

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in reversed(self.torsion))
        return " x ".join(parts) if parts else "0"


def _as_lists(A: IntegerMatrix) -> list[list[int]]:
    return A.tolist()


def snf(A: IntegerMatrix) -> SmithForm:
    """Smith normal form of ``A`` with unimodular certificates.

    Pivot-minimisation elimination: the smallest nonzero entry of the
    remaining block is moved to the pivot, its row and column are cleared
    by integer division, and the pivot is enlarged with a row addition
    whenever it fails to divide the rest of the block.
    """
    m, n = A.shape
    a = _as_lists(A)
    u = IntegerMatrix.identity(m).tolist()
    v = IntegerMatrix.identity(n).tolist()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        # row[dst] += q * row[src]
        if q:
            a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
            u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        if q:
            for r in a:
                r[dst] += q * r[src]
            for r in v:
                r[dst] += q * r[src]

    for t in range(min(m, n)):
        while True:
            # smallest nonzero entry of the trailing block
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)

            dirty = False
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue

            bad_row = next(
                (i for i in range(t + 1, m) if any(a[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad_row is None:
                break
            add_row(t, bad_row, 1)
        if best is None:
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    return SmithForm(
        IntegerMatrix.from_rows(a, n),
        IntegerMatrix.from_rows(u, m),
        IntegerMatrix.from_rows(v, n),
    )


def invariant_factors(A: IntegerMatrix, ambient_rank: int) -> AbelianInvariants:
    """Invariants of ``Z^ambient_rank`` modulo the row span of ``A``."""
    if A.cols != ambient_rank:
        raise ValueError(
            f"relation matrix has {A.cols} columns but ambient rank is {ambient_rank}"
        )
    form = snf(A)
    diag = [d for d in form.diagonal if d != 0]
    return AbelianInvariants(ambient_rank - len(diag), tuple(d for d in diag if d != 1))


def det(A: IntegerMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    if not A.is_square:
        raise ValueError(f"determinant of non-square {A.rows}x{A.cols} matrix")
    n = A.rows
    if n == 0:
        return 1
    a = A.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def inverse(A: IntegerMatrix) -> IntegerMatrix:
    """Inverse of a unimodular matrix; raises if the inverse is not integral."""
    if not A.is_square:
        raise ValueError("inverse of non-square matrix")
    n = A.rows
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A.tolist())]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            raise ValueError("matrix is singular")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    out = []
    for row in a:
        tail = row[n:]
        if any(x.denominator != 1 for x in tail):
            raise ValueError("matrix is not invertible over the integers")
        out.append([int(x) for x in tail])
    return IntegerMatrix.from_rows(out, n)


def parse_matrix(text: str) -> IntegerMatrix:
    """Read the ``<rows> <cols>`` header followed by one row per line."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty matrix file")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError(f"bad matrix header {lines[0]!r}")
    try:
        rows, cols = int(header[0]), int(header[1])
        body = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise ValueError(f"non-integer token in matrix file: {exc}") from None
    if rows < 0 or cols < 0:
        raise ValueError("negative matrix dimension")
    if cols == 0:
        # rows of a 0-column matrix carry no tokens and so have no lines
        body = [[] for _ in range(rows)] if not body else body
    if len(body) != rows:
        raise ValueError(f"header announces {rows} rows, found {len(body)}")
    for i, r in enumerate(body):
        if len(r) != cols:
            raise ValueError(f"row {i + 1} has {len(r)} entries, expected {cols}")
    return IntegerMatrix.from_rows(body, cols)


def format_matrix(A: IntegerMatrix) -> str:
    lines = [f"{A.rows} {A.cols}"]
    lines.extend(" ".join(str(x) for x in A.row(i)) for i in range(A.rows))
    return "\n".join(lines) + "\n"


def rank(A: IntegerMatrix) -> int:
    return snf(A).rank


def relation_matrix(rows: Iterable[Sequence[int]], width: int) -> IntegerMatrix:
    """Stack relation vectors of a common length into a matrix."""
    return IntegerMatrix.from_rows(list(rows), width)
