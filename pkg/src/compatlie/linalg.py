"""Exact rational linear algebra.

Every scalar is a ``fractions.Fraction`` (arbitrary precision, kept in
canonical form by the stdlib), so ranks, kernels and membership tests are
exact; no rounding ever occurs.  The ground field of the theory is an
algebraically closed field of characteristic 0, but every operation in this
package (brackets, coboundaries, ranks) is rational-linear in the structure
constants, so working over the rationals loses nothing.

Two independent elimination routines are provided: plain rational
Gauss-Jordan (`Matrix.rref`, used everywhere) and a Bareiss fraction-free
elimination over the integers (`rank_bareiss`), kept as a cross-check oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

Vec = tuple[Fraction, ...]


def frac(x) -> Fraction:
    """Coerce ints / strings / Fractions to Fraction."""
    return x if isinstance(x, Fraction) else Fraction(x)


def vec(entries) -> Vec:
    return tuple(frac(x) for x in entries)


def vzero(n: int) -> Vec:
    return (Fraction(0),) * n


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vscale(c, a: Vec) -> Vec:
    c = frac(c)
    return tuple(c * x for x in a)


def is_zero_vec(a: Vec) -> bool:
    return all(x == 0 for x in a)


class Matrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "_a")

    def __init__(self, entries):
        a = tuple(vec(row) for row in entries)
        self._a = a
        self.rows = len(a)
        self.cols = len(a[0]) if a else 0
        if any(len(r) != self.cols for r in a):
            raise ValueError("ragged rows")

    @classmethod
    def _raw(cls, a, rows: int, cols: int) -> "Matrix":
        # internal: keeps explicit dimensions so 0 x k and k x 0 survive
        m = cls.__new__(cls)
        m._a = a
        m.rows, m.cols = rows, cols
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls._raw(tuple(vzero(cols) for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[Fraction(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns, rows: int | None = None) -> "Matrix":
        columns = [vec(c) for c in columns]
        if rows is None:
            if not columns:
                raise ValueError("row count needed for an empty column list")
            rows = len(columns[0])
        if any(len(c) != rows for c in columns):
            raise ValueError("column has wrong length")
        a = tuple(tuple(c[i] for c in columns) for i in range(rows))
        return cls._raw(a, rows, len(columns))

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self._a[i][j]

    def row(self, i: int) -> Vec:
        return self._a[i]

    def column(self, j: int) -> Vec:
        return tuple(r[j] for r in self._a)

    def columns(self) -> list[Vec]:
        return [self.column(j) for j in range(self.cols)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self._a == other._a
        )

    def __hash__(self):
        return hash(self._a)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        a = tuple(vadd(r, s) for r, s in zip(self._a, other._a))
        return Matrix._raw(a, self.rows, self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        a = tuple(vsub(r, s) for r, s in zip(self._a, other._a))
        return Matrix._raw(a, self.rows, self.cols)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        return Matrix._raw(
            tuple(vscale(c, r) for r in self._a), self.rows, self.cols
        )

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape()} * {other.shape()}")
        bt = other.transpose()._a
        a = tuple(
            tuple(sum(x * y for x, y in zip(r, c)) for c in bt) for r in self._a
        )
        return Matrix._raw(a, self.rows, other.cols)

    def matvec(self, v: Vec) -> Vec:
        if len(v) != self.cols:
            raise ValueError(f"shape mismatch {self.shape()} @ vector of length {len(v)}")
        return tuple(sum(x * y for x, y in zip(r, v)) for r in self._a)

    def transpose(self) -> "Matrix":
        a = tuple(
            tuple(self._a[i][j] for i in range(self.rows))
            for j in range(self.cols)
        )
        return Matrix._raw(a, self.cols, self.rows)

    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(is_zero_vec(r) for r in self._a)

    def commutator(self, other: "Matrix") -> "Matrix":
        return self * other - other * self

    def _check_same_shape(self, other: "Matrix"):
        if self.shape() != other.shape():
            raise ValueError(f"shape mismatch {self.shape()} vs {other.shape()}")

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._a)
        return f"Matrix[{self.rows}x{self.cols}: {body}]"

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and the pivot column indices."""
        a = [list(r) for r in self._a]
        pivots = []
        r = 0
        for c in range(self.cols):
            if r == self.rows:
                break
            p = next((i for i in range(r, self.rows) if a[i][c] != 0), None)
            if p is None:
                continue
            a[r], a[p] = a[p], a[r]
            inv = 1 / a[r][c]
            a[r] = [x * inv for x in a[r]]
            for i in range(self.rows):
                if i != r and a[i][c] != 0:
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
        red = Matrix._raw(tuple(tuple(row) for row in a), self.rows, self.cols)
        return red, tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> "SubspaceBasis":
        """Basis of {v : Mv = 0}, one vector per free column, in reduced
        column-echelon form (the free coordinate of each vector is 1 and is 0
        in every other basis vector)."""
        red, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        vectors = []
        for f in free:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for r, c in enumerate(pivots):
                v[c] = -red[r, f]
            vectors.append(tuple(v))
        return SubspaceBasis(self.cols, tuple(vectors))

    def column_space_basis(self) -> "SubspaceBasis":
        """The pivot columns of M, a basis of the image."""
        _, pivots = self.rref()
        return SubspaceBasis(self.rows, tuple(self.column(c) for c in pivots))

    def solve(self, b: Vec) -> Vec | None:
        """One exact solution of Mx = b, or None if inconsistent."""
        if len(b) != self.rows:
            raise ValueError("right-hand side has wrong length")
        aug = Matrix([list(r) + [x] for r, x in zip(self._a, b)])
        red, pivots = aug.rref()
        if self.cols in pivots:
            return None
        x = [Fraction(0)] * self.cols
        for r, c in enumerate(pivots):
            x[c] = red[r, self.cols]
        return tuple(x)


@dataclass(frozen=True)
class SubspaceBasis:
    """Linearly independent vectors spanning a subspace of Q^ambient_dim."""

    ambient_dim: int
    vectors: tuple[Vec, ...]

    def __post_init__(self):
        for v in self.vectors:
            if len(v) != self.ambient_dim:
                raise ValueError("basis vector has wrong length")

    def __len__(self) -> int:
        return len(self.vectors)

    def dim(self) -> int:
        return len(self.vectors)

    def as_column_matrix(self) -> Matrix:
        return Matrix.from_columns(self.vectors, rows=self.ambient_dim)


def rank(m: Matrix) -> int:
    return m.rank()


def kernel_basis(m: Matrix) -> SubspaceBasis:
    return m.kernel_basis()


def in_span(basis: SubspaceBasis, v: Vec) -> tuple[bool, Vec | None]:
    """Is v a rational combination of the basis vectors?  When yes, the
    certificate coefficients c with basis . c = v are returned."""
    if len(v) != basis.ambient_dim:
        raise ValueError(
            f"vector length {len(v)} != ambient dimension {basis.ambient_dim}"
        )
    coeffs = basis.as_column_matrix().solve(vec(v))
    return (coeffs is not None), coeffs


def extend_basis(base: list[Vec], candidates: list[Vec], ambient: int) -> list[Vec]:
    """Candidates that extend `base` to a larger independent set (greedy)."""
    chosen: list[Vec] = []
    current = [vec(v) for v in base]
    r = Matrix(current).rank() if current else 0
    for cand in candidates:
        trial = current + [vec(cand)]
        tr = Matrix(trial).rank()
        if tr > r:
            chosen.append(vec(cand))
            current = trial
            r = tr
    return chosen


def rank_bareiss(m: Matrix) -> int:
    """Rank via integer fraction-free (Bareiss) elimination.

    Independent of `Matrix.rref`: rows are cleared of denominators (which
    preserves rank) and all pivoting is done in exact integer arithmetic.
    """
    a = []
    for row in m._a:
        mult = lcm(*(x.denominator for x in row)) if row else 1
        a.append([int(x * mult) for x in row])
    nrows, ncols = m.rows, m.cols
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
    return r
