"""Exact linear algebra over the rationals.

Matrices are immutable and hold Python ``int`` or :class:`fractions.Fraction`
entries.  Integral values are always stored as ``int`` (a Fraction with
denominator 1 is collapsed), which keeps the common sparse 0/1 matrices fast
while staying exact.  No floating point is used anywhere.

Empty matrices (0 x n and n x 0) are ordinary values and stand for maps to or
from the zero space.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

__all__ = [
    "DimensionError",
    "SingularMatrixError",
    "RatMat",
    "as_rat",
    "parse_rat",
    "format_rat",
    "multiply",
    "rref",
    "rank",
    "kernel",
    "kernel_basis",
    "image",
    "image_basis",
    "is_invertible",
    "inverse",
    "solve",
    "solve_matrix",
    "direct_sum",
    "fiber_product",
    "cokernel_map",
    "kron",
    "matrix_power",
    "same_span",
]


class DimensionError(ValueError):
    """Raised when matrix shapes are incompatible."""


class SingularMatrixError(ValueError):
    """Raised when an inverse is requested for a singular matrix."""


def as_rat(x) -> int | Fraction:
    """Canonical exact scalar: ``int`` when integral, ``Fraction`` otherwise."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return parse_rat(x)
    if isinstance(x, Rational):
        return as_rat(Fraction(x.numerator, x.denominator))
    raise TypeError(f"not an exact rational: {x!r}")


def parse_rat(s: str) -> int | Fraction:
    """Parse ``"p/q"`` or ``"p"``.  Decimal or float syntax is rejected."""
    s = s.strip()
    if not s:
        raise ValueError("empty rational")
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {s!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {s!r}")
    return as_rat(Fraction(p, q))


def format_rat(x) -> str:
    x = as_rat(x)
    if isinstance(x, int):
        return str(x)
    return f"{x.numerator}/{x.denominator}"


class RatMat:
    """An immutable rows x cols matrix over Q."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, data: Iterable[Iterable] = (), rows: int | None = None,
                 cols: int | None = None):
        body = tuple(tuple(as_rat(x) for x in row) for row in data)
        if rows is None:
            rows = len(body)
        if cols is None:
            cols = len(body[0]) if body else 0
        if rows < 0 or cols < 0:
            raise DimensionError("negative matrix dimension")
        if not body and rows and not cols:
            body = ((),) * rows
        if len(body) != rows:
            raise DimensionError(f"expected {rows} rows, got {len(body)}")
        for row in body:
            if len(row) != cols:
                raise DimensionError(f"ragged row: expected {cols} entries, got {len(row)}")
        self.rows = rows
        self.cols = cols
        self._data = body
        self._hash = None

    @classmethod
    def _raw(cls, body: tuple, rows: int, cols: int) -> "RatMat":
        m = object.__new__(cls)
        m.rows, m.cols, m._data, m._hash = rows, cols, body, None
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMat":
        return cls._raw(((0,) * cols,) * rows, rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RatMat":
        return cls._raw(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def scalar(cls, n: int, c) -> "RatMat":
        c = as_rat(c)
        return cls._raw(tuple(tuple(c if i == j else 0 for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "RatMat":
        columns = [tuple(as_rat(x) for x in c) for c in columns]
        for c in columns:
            if len(c) != nrows:
                raise DimensionError("column of wrong length")
        return cls._raw(tuple(tuple(c[i] for c in columns) for i in range(nrows)),
                        nrows, len(columns))

    @classmethod
    def column(cls, vec: Sequence) -> "RatMat":
        return cls([[x] for x in vec], len(vec), 1)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.cols)]

    def to_lists(self) -> list[list]:
        return [list(r) for r in self._data]

    def to_json(self) -> list[list[str]]:
        return [[format_rat(x) for x in r] for r in self._data]

    @classmethod
    def from_json(cls, obj, rows: int | None = None, cols: int | None = None) -> "RatMat":
        if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
            raise ValueError("matrix must be a JSON array of arrays")
        for r in obj:
            for x in r:
                if not isinstance(x, (str, int)) or isinstance(x, bool):
                    raise ValueError(f"matrix entry {x!r} must be a rational string")
        if not obj and rows is not None:
            if rows != 0 and (cols or 0) != 0:
                raise DimensionError(f"expected a {rows}x{cols} matrix, got []")
            return cls.zeros(rows, cols or 0)
        m = cls(obj, rows=len(obj), cols=len(obj[0]) if obj else 0)
        if rows is not None and m.rows != rows:
            raise DimensionError(f"expected {rows} rows, got {m.rows}")
        if cols is not None and m.cols != cols and m.rows:
            raise DimensionError(f"expected {cols} columns, got {m.cols}")
        if cols is not None and not m.rows:
            m = cls.zeros(0, cols)
        return m

    def __eq__(self, other):
        if not isinstance(other, RatMat):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self):
        if not self.rows or not self.cols:
            return f"RatMat.zeros({self.rows}, {self.cols})"
        return "RatMat([" + ", ".join("[" + ", ".join(format_rat(x) for x in r) + "]"
                                      for r in self._data) + "])"

    def _nonzero_rows(self):
        return [[(j, x) for j, x in enumerate(r) if x] for r in self._data]

    def __matmul__(self, other: "RatMat") -> "RatMat":
        if not isinstance(other, RatMat):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        n = other.cols
        rhs = other._nonzero_rows()
        out = []
        for r in self._data:
            acc = [0] * n
            for k, a in enumerate(r):
                if a:
                    for j, b in rhs[k]:
                        acc[j] += a * b
            out.append(tuple(_canon(x) for x in acc))
        return RatMat._raw(tuple(out), self.rows, n)

    def __add__(self, other: "RatMat") -> "RatMat":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return RatMat._raw(tuple(tuple(_canon(x + y) for x, y in zip(r, s))
                                 for r, s in zip(self._data, other._data)), self.rows, self.cols)

    def __sub__(self, other: "RatMat") -> "RatMat":
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {self.shape} and {other.shape}")
        return RatMat._raw(tuple(tuple(_canon(x - y) for x, y in zip(r, s))
                                 for r, s in zip(self._data, other._data)), self.rows, self.cols)

    def __neg__(self) -> "RatMat":
        return RatMat._raw(tuple(tuple(-x for x in r) for r in self._data), self.rows, self.cols)

    def __mul__(self, c) -> "RatMat":
        if isinstance(c, RatMat):
            return NotImplemented
        c = as_rat(c)
        return RatMat._raw(tuple(tuple(_canon(c * x) for x in r) for r in self._data),
                           self.rows, self.cols)

    __rmul__ = __mul__

    @property
    def T(self) -> "RatMat":
        body = tuple(zip(*self._data)) if self.rows else ((),) * self.cols
        return RatMat._raw(body, self.cols, self.rows)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._data)

    def submatrix(self, rows: Sequence[int] | range, cols: Sequence[int] | range) -> "RatMat":
        rows, cols = list(rows), list(cols)
        return RatMat._raw(tuple(tuple(self._data[i][j] for j in cols) for i in rows),
                           len(rows), len(cols))

    def row_block(self, start: int, stop: int) -> "RatMat":
        return self.submatrix(range(start, stop), range(self.cols))

    def col_block(self, start: int, stop: int) -> "RatMat":
        return self.submatrix(range(self.rows), range(start, stop))

    @staticmethod
    def hstack(*ms: "RatMat", rows: int | None = None) -> "RatMat":
        if not ms:
            return RatMat.zeros(rows or 0, 0)
        r = ms[0].rows
        if any(m.rows != r for m in ms):
            raise DimensionError("hstack of matrices with different row counts")
        body = tuple(sum((m._data[i] for m in ms), ()) for i in range(r))
        return RatMat._raw(body, r, sum(m.cols for m in ms))

    @staticmethod
    def vstack(*ms: "RatMat", cols: int | None = None) -> "RatMat":
        if not ms:
            return RatMat.zeros(0, cols or 0)
        c = ms[0].cols
        if any(m.cols != c for m in ms):
            raise DimensionError("vstack of matrices with different column counts")
        return RatMat._raw(sum((m._data for m in ms), ()), sum(m.rows for m in ms), c)

    @staticmethod
    def block(grid: Sequence[Sequence["RatMat"]]) -> "RatMat":
        return RatMat.vstack(*(RatMat.hstack(*row) for row in grid))

    @staticmethod
    def block_diag(*ms: "RatMat") -> "RatMat":
        total = sum(m.cols for m in ms)
        out = []
        offset = 0
        for m in ms:
            left, right = (0,) * offset, (0,) * (total - offset - m.cols)
            out.extend(left + r + right for r in m._data)
            offset += m.cols
        return RatMat._raw(tuple(out), sum(m.rows for m in ms), total)


def _canon(x):
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def multiply(g: RatMat, f: RatMat) -> RatMat:
    """The composite ``g . f`` (apply ``f`` first)."""
    return g @ f


def _rref_rows(rows: list[list], ncols: int) -> list[int]:
    """In-place Gauss-Jordan elimination; returns pivot columns.

    Pivot choice: leftmost column with a nonzero entry, smallest row index.
    """
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        lead = prow[c]
        if lead != 1:
            prow = [_canon(Fraction(x) / lead) if x else 0 for x in prow]
            rows[r] = prow
        nz = [(j, prow[j]) for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                row = rows[i]
                f = row[c]
                if f:
                    for j, x in nz:
                        row[j] = _canon(row[j] - f * x)
        pivots.append(c)
        r += 1
    return pivots


def rref(f: RatMat) -> tuple[RatMat, tuple[int, ...]]:
    """Reduced row echelon form and its pivot columns."""
    rows = [list(r) for r in f._data]
    pivots = _rref_rows(rows, f.cols)
    return RatMat._raw(tuple(tuple(r) for r in rows), f.rows, f.cols), tuple(pivots)


def rank(f: RatMat) -> int:
    return len(rref(f)[1])


def kernel(f: RatMat) -> RatMat:
    """Basis of ker f as the columns of a ``f.cols x k`` matrix."""
    rows = [list(r) for r in f._data]
    pivots = _rref_rows(rows, f.cols)
    pivset = set(pivots)
    free = [c for c in range(f.cols) if c not in pivset]
    basis = []
    for fc in free:
        v = [0] * f.cols
        v[fc] = 1
        for k, pc in enumerate(pivots):
            v[pc] = -rows[k][fc]
        basis.append(v)
    return RatMat.from_columns(basis, f.cols)


def kernel_basis(f: RatMat) -> list[tuple]:
    """Basis of ker f as a list of column vectors (tuples)."""
    return kernel(f).columns()


def image(f: RatMat) -> RatMat:
    """Pivot columns of ``f``: a basis of im f."""
    _, pivots = rref(f)
    return f.submatrix(range(f.rows), pivots)


def image_basis(f: RatMat) -> list[tuple]:
    return image(f).columns()


def is_invertible(f: RatMat) -> bool:
    return f.is_square and rank(f) == f.rows


def inverse(f: RatMat) -> RatMat:
    if not f.is_square:
        raise SingularMatrixError(f"non-square {f.shape} matrix has no inverse")
    n = f.rows
    rows = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(f._data)]
    pivots = _rref_rows(rows, 2 * n)
    if n and (len(pivots) < n or pivots[n - 1] >= n):
        raise SingularMatrixError("singular matrix")
    return RatMat._raw(tuple(tuple(r[n:]) for r in rows), n, n)


def solve_matrix(f: RatMat, y: RatMat) -> RatMat | None:
    """Some X with f X = y (free variables set to zero), or None."""
    if f.rows != y.rows:
        raise DimensionError(f"cannot solve {f.shape} system with right side {y.shape}")
    n = f.cols
    rows = [list(a) + list(b) for a, b in zip(f._data, y._data)]
    pivots = _rref_rows(rows, n + y.cols)
    if pivots and pivots[-1] >= n:
        return None
    out = [[0] * y.cols for _ in range(n)]
    for k, pc in enumerate(pivots):
        out[pc] = rows[k][n:]
    return RatMat._raw(tuple(tuple(r) for r in out), n, y.cols)


def solve(f: RatMat, y: Sequence) -> tuple | None:
    """Some x with f x = y, or None when the system is inconsistent."""
    x = solve_matrix(f, RatMat.column(list(y)) if len(y) else RatMat.zeros(f.rows, 1))
    return None if x is None else x.col(0)


def direct_sum(f: RatMat, g: RatMat) -> RatMat:
    return RatMat.block_diag(f, g)


def fiber_product(f: RatMat, g: RatMat) -> tuple[RatMat, RatMat, RatMat]:
    """Fiber product of ``f: A -> C`` and ``g: B -> C``.

    Returns ``(basis, p_A, p_B)``: the columns of ``basis`` span
    ``{(x, y) in A + B : f x = g y}`` and the projections are expressed in that
    basis.
    """
    if f.rows != g.rows:
        raise DimensionError("fiber product of maps with different codomains")
    basis = kernel(RatMat.hstack(f, -g))
    return basis, basis.row_block(0, f.cols), basis.row_block(f.cols, f.cols + g.cols)


def cokernel_map(f: RatMat) -> RatMat:
    """A surjection ``q`` out of the codomain of ``f`` with ``ker q = im f``."""
    return kernel(f.T).T


def kron(a: RatMat, b: RatMat) -> RatMat:
    body = []
    for ra in a._data:
        for rb in b._data:
            body.append(tuple(_canon(x * y) for x in ra for y in rb))
    return RatMat._raw(tuple(body), a.rows * b.rows, a.cols * b.cols)


def matrix_power(f: RatMat, k: int) -> RatMat:
    if not f.is_square:
        raise DimensionError("power of non-square matrix")
    if k < 0:
        return matrix_power(inverse(f), -k)
    out = RatMat.identity(f.rows)
    base = f
    while k:
        if k & 1:
            out = out @ base
        base = base @ base
        k >>= 1
    return out


def same_span(u: RatMat, v: RatMat) -> bool:
    """Whether two column families span the same subspace."""
    if u.rows != v.rows:
        return False
    ru = rank(u)
    return ru == rank(v) == rank(RatMat.hstack(u, v))
