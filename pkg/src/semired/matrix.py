"""Dense exact matrices and the linear-algebra kernels built on them."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .fields import Field, Residue, Scalar, field_of

__all__ = [
    "Matrix",
    "LinearSolution",
    "solve_linear_system",
    "kernel_basis",
    "berkowitz",
]


class Matrix:
    """Row-major dense matrix over a :class:`Field`.

    Treated as immutable: every operation returns a new matrix.
    """

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, data: Sequence[Sequence], *, _trusted: bool = False):
        self.field = field
        if _trusted:
            self.data = data
        else:
            self.data = [[field(x) for x in row] for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.rows else 0
        if not _trusted and any(len(r) != self.cols for r in self.data):
            raise ValueError("ragged matrix rows")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        z = field.zero
        return cls(field, [[z] * cols for _ in range(rows)], _trusted=True)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)], _trusted=True)

    @classmethod
    def unit(cls, field: Field, n: int, i: int, j: int, m: int | None = None) -> "Matrix":
        """The matrix unit E_ij of shape n x m."""
        M = cls.zeros(field, n, m)
        M.data[i][j] = field.one
        return M

    @classmethod
    def diagonal(cls, field: Field, entries: Sequence) -> "Matrix":
        n = len(entries)
        M = cls.zeros(field, n)
        for i, x in enumerate(entries):
            M.data[i][i] = field(x)
        return M

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence]) -> "Matrix":
        return cls(field, [list(r) for r in zip(*columns)])

    @classmethod
    def permutation(cls, field: Field, perm: Sequence[int]) -> "Matrix":
        """Matrix sending basis vector e_j to e_perm[j] (0-based)."""
        n = len(perm)
        M = cls.zeros(field, n)
        for j, i in enumerate(perm):
            M.data[i][j] = field.one
        return M

    # -- basic protocol -----------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> list:
        return list(self.data[i])

    def column(self, j: int) -> list:
        return [r[j] for r in self.data]

    def copy_data(self) -> list[list]:
        return [list(r) for r in self.data]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.data == other.data

    def __hash__(self):
        return hash((self.field, tuple(tuple(r) for r in self.data)))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.data)
        return f"Matrix({self.field!r}, [{body}])"

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def is_identity(self) -> bool:
        return self.is_square and all(
            (x == 1) if i == j else (x == 0) for i, r in enumerate(self.data) for j, x in enumerate(r)
        )

    def is_upper_triangular(self, strict: bool = False) -> bool:
        for i, r in enumerate(self.data):
            stop = i + 1 if strict else i
            for j in range(min(stop, self.cols)):
                if r[j] != 0:
                    return False
        return True

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Matrix"):
        if self.field != other.field:
            raise TypeError(f"field mismatch: {self.field!r} vs {other.field!r}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Matrix(self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], _trusted=True)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return Matrix(self.field, [[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], _trusted=True)

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, [[-a for a in r] for r in self.data], _trusted=True)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix(self.field, [[c * a for a in r] for r in self.data], _trusted=True)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        F = self.field
        cols = list(zip(*other.data))
        if F.is_finite:
            p = F.p
            A = [[x.v for x in r] for r in self.data]
            B = [[x.v for x in c] for c in cols]
            out = [[Residue(sum(a * b for a, b in zip(r, c)), p) for c in B] for r in A]
        else:
            z = F.zero
            out = [[sum((a * b for a, b in zip(r, c) if a and b), z) for c in cols] for r in self.data]
        return Matrix(F, out, _trusted=True)

    def apply(self, vec: Sequence) -> list:
        """Matrix-vector product."""
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch in matrix-vector product")
        z = self.field.zero
        return [sum((a * b for a, b in zip(r, vec) if a and b), z) for r in self.data]

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square:
            raise ValueError("power of non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result = Matrix.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [list(c) for c in zip(*self.data)], _trusted=True)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def trace(self) -> Scalar:
        return sum((self.data[i][i] for i in range(self.rows)), self.field.zero)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Matrix":
        cols = list(cols)
        return Matrix(self.field, [[self.data[i][j] for j in cols] for i in rows], _trusted=True)

    def commutator(self, other: "Matrix") -> "Matrix":
        return self @ other - other @ self

    def flatten(self) -> list:
        return [x for r in self.data for x in r]

    # -- elimination --------------------------------------------------------

    def rref(self) -> tuple["Matrix", list[int]]:
        """Reduced row echelon form and pivot columns."""
        F = self.field
        A = self.copy_data()
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            piv = next((i for i in range(r, self.rows) if A[i][c] != 0), None)
            if piv is None:
                continue
            A[r], A[piv] = A[piv], A[r]
            inv = F.one / A[r][c]
            A[r] = [x * inv for x in A[r]]
            for i in range(self.rows):
                if i != r and A[i][c] != 0:
                    f = A[i][c]
                    A[i] = [x - f * y for x, y in zip(A[i], A[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return Matrix(F, A, _trusted=True), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def det(self) -> Scalar:
        if not self.is_square:
            raise ValueError("determinant of non-square matrix")
        F = self.field
        A = self.copy_data()
        n = self.rows
        d = F.one
        for c in range(n):
            piv = next((i for i in range(c, n) if A[i][c] != 0), None)
            if piv is None:
                return F.zero
            if piv != c:
                A[c], A[piv] = A[piv], A[c]
                d = -d
            d = d * A[c][c]
            inv = F.one / A[c][c]
            for i in range(c + 1, n):
                if A[i][c] != 0:
                    f = A[i][c] * inv
                    A[i] = [x - f * y for x, y in zip(A[i], A[c])]
        return d

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        F = self.field
        aug = Matrix(F, [r + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(self.copy_data())], _trusted=True)
        R, piv = aug.rref()
        if piv[:n] != list(range(n)):
            raise ValueError("matrix is singular")
        return Matrix(F, [r[n:] for r in R.data], _trusted=True)

    def is_invertible(self) -> bool:
        return self.is_square and self.rank() == self.rows

    def is_nilpotent(self) -> bool:
        if not self.is_square:
            raise ValueError("nilpotency of non-square matrix")
        return (self ** self.rows).is_zero()

    # -- serialisation ------------------------------------------------------

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.data]

    @classmethod
    def from_json(cls, field: Field, rows: list) -> "Matrix":
        return cls(field, [[field(x) if not isinstance(x, str) else field.parse(x) for x in r] for r in rows])


@dataclass(frozen=True)
class LinearSolution:
    """Solution set of A x = b: ``particular + span(kernel)``, or inconsistent."""

    particular: list | None
    kernel: list[list] = dc_field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return self.particular is not None


def kernel_basis(A: Matrix) -> list[list]:
    R, pivots = A.rref()
    F = A.field
    free = [c for c in range(A.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [F.zero] * A.cols
        v[f] = F.one
        for r, pc in enumerate(pivots):
            v[pc] = -R.data[r][f]
        basis.append(v)
    return basis


def solve_linear_system(A: Matrix, b: Sequence) -> LinearSolution:
    """Solve A x = b exactly; report one solution and a kernel basis."""
    if len(b) != A.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {A.rows}")
    F = A.field
    for x in b:
        if field_of(x) != F:
            raise TypeError(f"field mismatch: {field_of(x)!r} entry for a matrix over {F!r}")
    aug = Matrix(F, [list(r) + [x] for r, x in zip(A.data, b)], _trusted=True)
    R, pivots = aug.rref()
    kernel = kernel_basis(A)
    if pivots and pivots[-1] == A.cols:
        return LinearSolution(None, kernel)
    x = [F.zero] * A.cols
    for r, pc in enumerate(pivots):
        x[pc] = R.data[r][A.cols]
    return LinearSolution(x, kernel)


def berkowitz(A: Sequence[Sequence], zero, one) -> list:
    """Coefficients ``[1, c1, ..., cn]`` of det(t I - A) = sum c_k t^(n-k).

    Division-free, so it works over any commutative ring whose elements
    support ``+``, ``-`` and ``*`` (field scalars or polynomials).
    """
    n = len(A)
    if n == 0:
        return [one]
    vect = [one, -A[0][0]]
    for r in range(1, n):
        R = [A[r][j] for j in range(r)]
        v = [A[i][r] for i in range(r)]
        col = [one, -A[r][r]]
        for _ in range(r):
            s = zero
            for a, b in zip(R, v):
                s = s + a * b
            col.append(-s)
            v = [_dot(A[i][:r], v, zero) for i in range(r)]
        new = []
        for i in range(r + 2):
            s = zero
            for j in range(min(i, r) + 1):
                s = s + col[i - j] * vect[j]
            new.append(s)
        vect = new
    return vect


def _dot(row, vec, zero):
    s = zero
    for a, b in zip(row, vec):
        s = s + a * b
    return s
