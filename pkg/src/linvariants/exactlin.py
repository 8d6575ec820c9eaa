"""Exact rational linear algebra: dense matrices and subspaces over Q.

Everything is computed with `fractions.Fraction`, so results are exact.
The elimination core is fraction-free (Bareiss): rows are scaled to
integers and the forward pass uses the two-term minor update, which keeps
intermediate entries bounded by minors of the input instead of letting
numerators and denominators blow up independently.

Subspaces are stored by their reduced row-echelon basis, which is a
canonical form: two subspaces are equal iff their stored bases are equal.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Scalar = Fraction
Vector = tuple[Fraction, ...]


class DimensionMismatchError(ValueError):
    """Operands live in different ambient dimensions."""


def rational(value) -> Fraction:
    """Coerce ints, strings like '3/4' and Fractions to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact scalar: {value!r}")


def vector(values: Iterable) -> Vector:
    return tuple(rational(v) for v in values)


def _bareiss_echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free forward elimination on integer rows (in place).

    Returns the echelon rows and the pivot column list.  After step k every
    entry is a (k+1)x(k+1) minor of the input, so the exact divisions below
    never truncate.
    """
    if not rows:
        return rows, []
    n_cols = len(rows[0])
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(n_cols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != r:
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        p = rows[r][c]
        for i in range(r + 1, len(rows)):
            row_i = rows[i]
            head = row_i[c]
            for j in range(c, n_cols):
                row_i[j] = (row_i[j] * p - head * rows[r][j]) // prev
        prev = p
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def _to_integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        scale = lcm(*(f.denominator for f in row)) if row else 1
        ints = [int(f * scale) for f in row]
        g = 0
        for x in ints:
            g = gcd(g, x)
        if g > 1:
            ints = [x // g for x in ints]
        out.append(ints)
    return out


def _rref(rows: Sequence[Sequence[Fraction]]) -> tuple[tuple[Vector, ...], tuple[int, ...]]:
    """Reduced row echelon form; zero rows are dropped."""
    work = _to_integer_rows(rows)
    work, pivots = _bareiss_echelon(work)
    # Back-substitute over Fraction; the forward pass already paid the
    # expensive part, this touches O(rank * cols) entries.
    frac_rows: list[list[Fraction]] = []
    for r, c in enumerate(pivots):
        p = Fraction(work[r][c])
        frac_rows.append([Fraction(x) / p for x in work[r]])
    for r in range(len(pivots) - 1, -1, -1):
        row = frac_rows[r]
        for above in range(r):
            factor = frac_rows[above][pivots[r]]
            if factor:
                target = frac_rows[above]
                for j in range(pivots[r], len(row)):
                    target[j] -= factor * row[j]
    return tuple(tuple(row) for row in frac_rows), tuple(pivots)


class Matrix:
    """Immutable dense matrix over Fraction."""

    __slots__ = ("rows", "cols", "entries", "_rref")

    def __init__(self, entries: Iterable[Iterable]):
        grid = tuple(tuple(rational(x) for x in row) for row in entries)
        if grid and any(len(row) != len(grid[0]) for row in grid):
            raise DimensionMismatchError("ragged rows")
        object.__setattr__(self, "rows", len(grid))
        object.__setattr__(self, "cols", len(grid[0]) if grid else 0)
        object.__setattr__(self, "entries", grid)
        object.__setattr__(self, "_rref", None)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "Matrix":
        return cls(list(zip(*cols))) if cols else cls([])

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"Matrix({[[str(x) for x in row] for row in self.entries]})"

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self.entries[i][j]

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError("matrix shapes differ")
        return Matrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in row] for row in self.entries])

    def scale(self, c) -> "Matrix":
        c = rational(c)
        return Matrix([[c * a for a in row] for row in self.entries])

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatchError("inner dimensions differ")
        cols = list(zip(*other.entries))
        return Matrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.entries]
        )

    def apply(self, v: Sequence) -> Vector:
        v = vector(v)
        if len(v) != self.cols:
            raise DimensionMismatchError("vector length differs from cols")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self.entries))) if self.rows else Matrix([])

    def rref(self) -> tuple[tuple[Vector, ...], tuple[int, ...]]:
        cached = self._rref
        if cached is None:
            cached = _rref(self.entries)
            object.__setattr__(self, "_rref", cached)
        return cached

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> list[Vector]:
        """Basis of the right kernel, one vector per free column."""
        reduced, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for r, c in enumerate(pivots):
                v[c] = -reduced[r][f]
            basis.append(tuple(v))
        return basis

    def solve(self, b: Sequence) -> "LinearSolution | None":
        """Solve A x = b.  Returns None when the system is inconsistent."""
        b = vector(b)
        if len(b) != self.rows:
            raise DimensionMismatchError("rhs length differs from rows")
        augmented = [list(row) + [rhs] for row, rhs in zip(self.entries, b)]
        if not augmented:
            return LinearSolution((), [])
        reduced, pivots = _rref(augmented)
        if self.cols in pivots:
            return None
        x = [Fraction(0)] * self.cols
        for r, c in enumerate(pivots):
            x[c] = reduced[r][self.cols]
        return LinearSolution(tuple(x), self.kernel())


class LinearSolution:
    """One solution of a consistent linear system plus the kernel basis."""

    __slots__ = ("solution", "kernel")

    def __init__(self, solution: Vector, kernel: list[Vector]):
        object.__setattr__(self, "solution", solution)
        object.__setattr__(self, "kernel", kernel)

    def __setattr__(self, name, value):
        raise AttributeError("LinearSolution is immutable")

    def is_unique(self) -> bool:
        return not self.kernel


def solve(a: Matrix, b: Sequence) -> LinearSolution | None:
    return a.solve(b)


class Subspace:
    """Subspace of Q^n stored by its canonical RREF basis."""

    __slots__ = ("ambient_dim", "basis", "_ann")

    def __init__(self, ambient_dim: int, basis: tuple[Vector, ...]):
        # trusted constructor; use from_vectors for arbitrary spans
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "_ann", None)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def from_vectors(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows = [vector(v) for v in vectors]
        for v in rows:
            if len(v) != ambient_dim:
                raise DimensionMismatchError("spanning vector has wrong length")
        basis, _ = _rref(rows)
        return cls(ambient_dim, basis)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.from_vectors(
            ambient_dim, Matrix.identity(ambient_dim).entries
        )

    @classmethod
    def coordinate(cls, ambient_dim: int, positions: Iterable[int]) -> "Subspace":
        # sorted unit vectors are already in reduced row-echelon form
        basis = []
        for pos in sorted(set(positions)):
            if not 0 <= pos < ambient_dim:
                raise DimensionMismatchError("coordinate position out of range")
            basis.append(
                tuple(Fraction(int(j == pos)) for j in range(ambient_dim))
            )
        return cls(ambient_dim, tuple(basis))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def _check_ambient(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatchError("ambient dimensions differ")

    def contains(self, v: Sequence) -> bool:
        v = vector(v)
        if len(v) != self.ambient_dim:
            raise DimensionMismatchError("vector has wrong length")
        # reduce v against the echelon basis
        residue = list(v)
        for row in self.basis:
            pivot = next(i for i, x in enumerate(row) if x == 1)
            factor = residue[pivot]
            if factor:
                for j in range(pivot, self.ambient_dim):
                    residue[j] -= factor * row[j]
        return not any(residue)

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        return all(self.contains(v) for v in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace.from_vectors(self.ambient_dim, self.basis + other.basis)

    def annihilator_rows(self) -> list[Vector]:
        """Functionals cutting out the subspace; empty for the full space."""
        cached = self._ann
        if cached is None:
            if not self.basis:
                cached = [
                    tuple(row) for row in Matrix.identity(self.ambient_dim).entries
                ]
            else:
                cached = Matrix(self.basis).kernel()
            object.__setattr__(self, "_ann", cached)
        return cached

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        constraints = self.annihilator_rows() + other.annihilator_rows()
        return Subspace.from_vectors(
            self.ambient_dim, _kernel_of_rows(constraints, self.ambient_dim)
        )

    def image_under(self, t: Matrix) -> "Subspace":
        if t.cols != self.ambient_dim:
            raise DimensionMismatchError("map domain differs from ambient")
        return Subspace.from_vectors(t.rows, [t.apply(v) for v in self.basis])

    def preimage_under(self, t: Matrix) -> "Subspace":
        """{v : t(v) in self}."""
        if t.rows != self.ambient_dim:
            raise DimensionMismatchError("map codomain differs from ambient")
        transposed = t.transpose()
        constraints = [transposed.apply(f) for f in self.annihilator_rows()]
        return Subspace.from_vectors(t.cols, _kernel_of_rows(constraints, t.cols))

    def coordinate_support(self) -> tuple[int, ...] | None:
        """Positions spanned, if this is a coordinate subspace; else None."""
        support = []
        for row in self.basis:
            nonzero = [i for i, x in enumerate(row) if x]
            if len(nonzero) != 1:
                return None
            support.append(nonzero[0])
        return tuple(support)


def _kernel_of_rows(rows: list[Vector], dim: int) -> list[Vector]:
    """Kernel of the linear system given by `rows` inside Q^dim."""
    if not rows:
        return [tuple(row) for row in Matrix.identity(dim).entries]
    return Matrix(rows).kernel()


def subspace_sum_dim_identity(u: Subspace, w: Subspace) -> bool:
    """dim(U+W) + dim(U^W) == dim U + dim W, for tests."""
    return (u + w).dim + u.intersect(w).dim == u.dim + w.dim


def all_coordinate_subspaces(ambient_dim: int):
    """All 2^n coordinate spans, in subset order."""
    for r in range(ambient_dim + 1):
        for combo in itertools.combinations(range(ambient_dim), r):
            yield Subspace.coordinate(ambient_dim, combo)
