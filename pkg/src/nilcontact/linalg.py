"""Exact linear algebra over the rationals.

Everything here works on :class:`fractions.Fraction` entries; floats are
rejected on entry.  Elimination always pivots on the first nonzero column and
the smallest available row, so every result (kernels, particular solutions,
complements) is reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Optional, Sequence

Vector = tuple  # tuple of Fraction


def as_fraction(x) -> Fraction:
    """Convert an int, Fraction or ``"p/q"`` string to a Fraction; refuse floats."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rational scalars")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip().replace("−", "-")
        if not s:
            raise ValueError("empty rational string")
        if any(c in s for c in ".eE"):
            raise ValueError(f"not an exact rational: {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def as_vector(values: Iterable) -> Vector:
    return tuple(as_fraction(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(1 if k == i else 0) for k in range(n))


def is_zero(v: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in v)


def _rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """In-place reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        if p != 1:
            rows[r] = [x / p for x in rows[r]]
        pr = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    ri = rows[i]
                    rows[i] = [a - f * b for a, b in zip(ri, pr)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


@dataclass(frozen=True)
class QMatrix:
    """Dense rational matrix, immutable."""

    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("QMatrix entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "QMatrix":
        rows = [as_vector(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols required for a matrix with no rows")
            cols = len(rows[0])
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "QMatrix":
        cols = [as_vector(c) for c in columns]
        if any(len(c) != rows for c in cols):
            raise ValueError("column length mismatch")
        entries = tuple(tuple(c[i] for c in cols) for i in range(rows))
        return cls(rows, len(cols), entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, tuple(zero_vector(cols) for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, tuple(unit_vector(n, i) for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else
                       tuple(() for _ in range(self.cols)))

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch in matrix product")
            ocols = [other.column(j) for j in range(other.cols)]
            return QMatrix(self.rows, other.cols, tuple(
                tuple(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in ocols)
                for r in self.entries))
        v = as_vector(other)
        if len(v) != self.cols:
            raise ValueError("shape mismatch in matrix-vector product")
        return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self.entries)

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return QMatrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __neg__(self) -> "QMatrix":
        return QMatrix(self.rows, self.cols, tuple(tuple(-a for a in r) for r in self.entries))

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return self + (-other)

    def scale(self, c) -> "QMatrix":
        c = as_fraction(c)
        return QMatrix(self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self.entries))

    def stack(self, other: "QMatrix") -> "QMatrix":
        """Vertical concatenation."""
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return QMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i] for i in range(self.rows) for j in range(i))

    def rank(self) -> int:
        return len(_rref([list(r) for r in self.entries], self.cols)[1])

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        a = [list(r) for r in self.entries]
        n = self.rows
        det = Fraction(1)
        for c in range(n):
            piv = next((i for i in range(c, n) if a[i][c] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = -det
            det *= a[c][c]
            for i in range(c + 1, n):
                f = a[i][c] / a[c][c]
                if f:
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return det


class Subspace:
    """A subspace of Q^n stored by its canonical reduced row echelon basis.

    Two subspaces with the same span have identical ``basis`` tuples, so
    equality is component-wise.
    """

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        rows = [list(as_vector(v)) for v in vectors]
        if any(len(r) != ambient_dim for r in rows):
            raise ValueError("vector length does not match the ambient dimension")
        reduced, pivots = _rref(rows, ambient_dim)
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(r) for r in reduced)
        self.pivots = tuple(pivots)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, [unit_vector(n, i) for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(
                f"ambient dimension mismatch: {self.ambient_dim} != {other.ambient_dim}")

    def reduce(self, v: Sequence) -> Vector:
        """Eliminate the pivot coordinates of ``v`` using the basis rows."""
        w = list(as_vector(v))
        if len(w) != self.ambient_dim:
            raise ValueError("vector length does not match the ambient dimension")
        for row, p in zip(self.basis, self.pivots):
            f = w[p]
            if f != 0:
                w = [a - f * b for a, b in zip(w, row)]
        return tuple(w)

    def contains(self, v: Sequence) -> bool:
        return is_zero(self.reduce(v))

    __contains__ = contains

    def coordinates(self, v: Sequence) -> Vector:
        """Coordinates of a member vector in the canonical basis."""
        v = as_vector(v)
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(v[p] for p in self.pivots)

    def combine(self, coords: Sequence) -> Vector:
        out = [Fraction(0)] * self.ambient_dim
        for c, row in zip(as_vector(coords), self.basis):
            if c:
                out = [a + c * b for a, b in zip(out, row)]
        return tuple(out)

    def is_subspace_of(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(b) for b in self.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient_dim, self.basis + other.basis)

    __add__ = sum

    def intersection(self, other: "Subspace") -> "Subspace":
        """Zassenhaus-free route: solve a.x = b.y via the kernel of [A | -B]."""
        self._check(other)
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient_dim)
        cols = list(self.basis) + [tuple(-x for x in b) for b in other.basis]
        m = QMatrix.from_columns(cols, self.ambient_dim)
        ker = kernel_basis(m)
        k = self.dim
        return Subspace(self.ambient_dim, [self.combine(v[:k]) for v in ker.basis])

    __and__ = intersection

    def project(self, indices: Sequence[int]) -> "Subspace":
        """Image under the coordinate projection onto ``indices``."""
        return Subspace(len(indices), [[b[i] for i in indices] for b in self.basis])


def kernel_basis(m: QMatrix) -> Subspace:
    """Null space of ``m`` as a canonical :class:`Subspace` of Q^cols."""
    reduced, pivots = _rref([list(r) for r in m.entries], m.cols)
    pivset = set(pivots)
    vecs = []
    for free in range(m.cols):
        if free in pivset:
            continue
        v = [Fraction(0)] * m.cols
        v[free] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[free]
        vecs.append(v)
    return Subspace(m.cols, vecs)


def image_basis(m: QMatrix) -> Subspace:
    """Column space of ``m``."""
    return Subspace(m.rows, [m.column(j) for j in range(m.cols)])


def solve(m: QMatrix, rhs: Sequence) -> Optional[Vector]:
    """Return some x with m @ x == rhs, or None if rhs is not in the column space.

    Free variables are set to zero.
    """
    b = as_vector(rhs)
    if len(b) != m.rows:
        raise ValueError("right-hand side length does not match the row count")
    aug = [list(r) + [bi] for r, bi in zip(m.entries, b)]
    reduced, pivots = _rref(aug, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [Fraction(0)] * m.cols
    for row, p in zip(reduced, pivots):
        x[p] = row[m.cols]
    return tuple(x)


class QuotientMap:
    """Coordinates of vectors of ``a`` modulo ``b``.

    A complement of a∩b inside a is chosen by pivoting in coordinate order;
    the map sends v in a to its coordinates along that complement, so its
    kernel is exactly a∩b.
    """

    def __init__(self, a: Subspace, b: Subspace):
        a._check(b)
        self.source = a
        self.modulus = a.intersection(b)
        residues = [self.modulus.reduce(v) for v in a.basis]
        self.complement = Subspace(a.ambient_dim, residues)

    @property
    def dim(self) -> int:
        return self.complement.dim

    @property
    def representatives(self) -> tuple:
        return self.complement.basis

    def __call__(self, v: Sequence) -> Vector:
        v = as_vector(v)
        if not self.source.contains(v):
            raise ValueError("vector is not in the source subspace")
        w = self.modulus.reduce(v)
        return tuple(w[p] for p in self.complement.pivots)


def subspace_ops(a: Subspace, b: Subspace) -> dict:
    """Sum, intersection, membership test and quotient map for a pair of subspaces."""
    a._check(b)
    return {
        "sum": a.sum(b),
        "intersection": a.intersection(b),
        "contains": b.contains,
        "quotient": QuotientMap(a, b),
    }


def is_positive_definite(m: QMatrix) -> bool:
    """Sylvester criterion: symmetric with all leading principal minors > 0."""
    if not m.is_symmetric():
        return False
    for k in range(1, m.rows + 1):
        sub = QMatrix(k, k, tuple(r[:k] for r in m.entries[:k]))
        if sub.det() <= 0:
            return False
    return True
