"""Small dense matrices over Q(v^(1/d)) with exact Gaussian elimination.

Weight spaces at desk scale are a few dozen dimensions at most, so dense
row-lists are simpler and faster than a sparse format here.  Graded
operators are dictionaries of these blocks (see ``tensor.py``).
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .arith import RatFunc


def zero(d: int) -> RatFunc:
    return RatFunc.monomial(0, d, 0)


def one(d: int) -> RatFunc:
    return RatFunc.monomial(0, d, 1)


class Mat:
    """Immutable-by-convention dense matrix with RatFunc entries."""

    __slots__ = ("rows", "cols", "data", "d")

    def __init__(self, data: Sequence[Sequence[RatFunc]], cols: int | None = None, d: int = 1):
        self.data = [list(r) for r in data]
        self.rows = len(self.data)
        self.cols = cols if cols is not None else (len(self.data[0]) if self.data else 0)
        self.d = d

    @classmethod
    def zeros(cls, rows: int, cols: int, d: int) -> "Mat":
        z = zero(d)
        return cls([[z] * cols for _ in range(rows)], cols, d)

    @classmethod
    def identity(cls, n: int, d: int) -> "Mat":
        m = cls.zeros(n, n, d)
        o = one(d)
        for k in range(n):
            m.data[k][k] = o
        return m

    @classmethod
    def diag(cls, entries: Sequence[RatFunc], d: int) -> "Mat":
        m = cls.zeros(len(entries), len(entries), d)
        for k, x in enumerate(entries):
            m.data[k][k] = x
        return m

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[RatFunc]], rows: int, d: int) -> "Mat":
        if not columns:
            return cls.zeros(rows, 0, d)
        return cls([[c[r] for c in columns] for r in range(rows)], len(columns), d)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, rc):
        r, c = rc
        return self.data[r][c]

    def column(self, c: int) -> list[RatFunc]:
        return [row[c] for row in self.data]

    def _same_shape(self, other: "Mat"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        return Mat([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)], self.cols, self.d)

    def __sub__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        return Mat([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)], self.cols, self.d)

    def __neg__(self) -> "Mat":
        return Mat([[-a for a in r] for r in self.data], self.cols, self.d)

    def scale(self, c: RatFunc) -> "Mat":
        if c == 1:
            return self
        return Mat([[a * c for a in r] for r in self.data], self.cols, self.d)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        z = zero(self.d)
        ocols = [other.column(c) for c in range(other.cols)]
        out = []
        for row in self.data:
            nz = [(k, a) for k, a in enumerate(row) if a]
            out_row = []
            for col in ocols:
                acc = z
                for k, a in nz:
                    b = col[k]
                    if b:
                        acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return Mat(out, other.cols, self.d)

    def apply(self, vec: Sequence[RatFunc]) -> list[RatFunc]:
        z = zero(self.d)
        out = []
        nzv = [(k, x) for k, x in enumerate(vec) if x]
        for row in self.data:
            acc = z
            for k, x in nzv:
                a = row[k]
                if a:
                    acc = acc + a * x
            out.append(acc)
        return out

    def transpose(self) -> "Mat":
        return Mat([self.column(c) for c in range(self.cols)], self.rows, self.d)

    def map(self, fn) -> "Mat":
        return Mat([[fn(a) for a in r] for r in self.data], self.cols, self.d)

    def bar(self) -> "Mat":
        return self.map(lambda a: a.bar())

    def is_zero(self) -> bool:
        return not any(a for r in self.data for a in r)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r1, r2 in zip(self.data, other.data) for a, b in zip(r1, r2)
        )

    def first_difference(self, other: "Mat"):
        """(row, col) of the first differing entry, or None."""
        self._same_shape(other)
        for r, (r1, r2) in enumerate(zip(self.data, other.data)):
            for c, (a, b) in enumerate(zip(r1, r2)):
                if a != b:
                    return r, c
        return None

    def __repr__(self):
        body = "; ".join(", ".join(str(a) for a in r) for r in self.data)
        return f"Mat({self.rows}x{self.cols}: [{body}])"


def kron(a: Mat, b: Mat) -> Mat:
    out = []
    for ra in a.data:
        for rb in b.data:
            out.append([x * y for x in ra for y in rb])
    return Mat(out, a.cols * b.cols, a.d)


# ---------------------------------------------------------------------------
# elimination


class Echelon:
    """Incremental row echelon form; tracks which inserted rows were independent."""

    def __init__(self, width: int, d: int):
        self.width = width
        self.d = d
        self.rows: list[list[RatFunc]] = []  # normalized pivot rows
        self.pivots: list[int] = []

    def reduce(self, vec: Sequence[RatFunc]) -> list[RatFunc]:
        r = list(vec)
        for row, p in zip(self.rows, self.pivots):
            c = r[p]
            if c:
                for k in range(p, self.width):
                    if row[k]:
                        r[k] = r[k] - c * row[k]
        return r

    def insert(self, vec: Sequence[RatFunc]) -> bool:
        r = self.reduce(vec)
        for p, c in enumerate(r):
            if c:
                inv = c.inverse()
                r = [x * inv if x else x for x in r]
                # keep rows fully reduced so later reductions stay one pass
                for row in self.rows:
                    f = row[p]
                    if f:
                        for k in range(p, self.width):
                            if r[k]:
                                row[k] = row[k] - f * r[k]
                self.rows.append(r)
                self.pivots.append(p)
                return True
        return False

    @property
    def rank(self) -> int:
        return len(self.rows)


def rank(m: Mat) -> int:
    e = Echelon(m.cols, m.d)
    for row in m.data:
        e.insert(row)
    return e.rank


def independent_rows(rows: Iterable[Sequence[RatFunc]], width: int, d: int) -> list[int]:
    """Indices of a greedy maximal independent subset, scanning in order."""
    e = Echelon(width, d)
    return [k for k, r in enumerate(rows) if e.insert(r)]


def solve(a: Mat, b: Mat) -> Mat:
    """Solve a @ x = b for square nonsingular a."""
    n = a.rows
    if a.cols != n or b.rows != n:
        raise ValueError("solve needs a square system")
    aug = [list(a.data[k]) + list(b.data[k]) for k in range(n)]
    w = n + b.cols
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        prow = [x * inv if x else x for x in aug[col]]
        aug[col] = prow
        for r in range(n):
            if r != col:
                f = aug[r][col]
                if f:
                    row = aug[r]
                    for k in range(col, w):
                        if prow[k]:
                            row[k] = row[k] - f * prow[k]
    return Mat([row[n:] for row in aug], b.cols, a.d)


def inverse(a: Mat) -> Mat:
    return solve(a, Mat.identity(a.rows, a.d))


def nullity(m: Mat) -> int:
    return m.cols - rank(m)


def solve_any(a: Mat, b: Sequence[RatFunc]):
    """Solve a @ x = b for a general system.

    Returns (x, kernel_dim) with free variables set to zero, or None when
    the system is inconsistent.
    """
    rows, cols, d = a.rows, a.cols, a.d
    aug = [list(a.data[k]) + [b[k]] for k in range(rows)]
    pivcols = []
    r = 0
    for col in range(cols):
        piv = next((k for k in range(r, rows) if aug[k][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = aug[r][col].inverse()
        prow = [x * inv if x else x for x in aug[r]]
        aug[r] = prow
        for k in range(rows):
            if k != r:
                f = aug[k][col]
                if f:
                    row = aug[k]
                    for c in range(col, cols + 1):
                        if prow[c]:
                            row[c] = row[c] - f * prow[c]
        pivcols.append(col)
        r += 1
        if r == rows:
            break
    for k in range(r, rows):
        if aug[k][cols]:
            return None
    x = [zero(d)] * cols
    for k, col in enumerate(pivcols):
        x[col] = aug[k][cols]
    return x, cols - len(pivcols)
