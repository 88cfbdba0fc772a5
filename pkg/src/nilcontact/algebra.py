"""Lie algebras given by structure constants."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .errors import InvalidInput
from .linalg import QMatrix, Subspace, Vector, as_fraction, as_vector, kernel_basis, unit_vector


@dataclass(frozen=True)
class JacobiViolation:
    triple: tuple  # 0-based (i, j, k), i < j < k
    defect: Vector

    def describe(self, names: Sequence[str]) -> str:
        i, j, k = self.triple
        terms = " + ".join(f"{c}*{names[m]}" for m, c in enumerate(self.defect) if c)
        return f"Jacobi fails on ({names[i]}, {names[j]}, {names[k]}): defect {terms}"


class LieAlgebra:
    """Finite-dimensional Lie algebra over Q.

    ``brackets`` maps 0-based pairs ``(i, j)`` with ``i < j`` to the
    coordinates of ``[X_i, X_j]``.  Only the upper triangle may be given.
    The Jacobi identity is checked on construction unless ``check=False``.
    """

    def __init__(self, dim: int, brackets: Mapping, basis_names: Optional[Sequence[str]] = None,
                 grading: Optional[Sequence[int]] = None, name: str = "", check: bool = True):
        if dim < 0:
            raise InvalidInput("dimension must be non-negative")
        self.dim = dim
        self.name = name
        self.basis_names = tuple(basis_names) if basis_names else tuple(
            f"X{i + 1}" for i in range(dim))
        if len(self.basis_names) != dim:
            raise InvalidInput("basis_names length differs from dim")
        table = {}
        for (i, j), vec in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise InvalidInput(f"bracket index out of range: ({i + 1}, {j + 1})")
            if i >= j:
                raise InvalidInput(
                    f"bracket ({i + 1}, {j + 1}) must be given with the smaller index first")
            v = _coerce(vec, dim)
            if any(v):
                table[(i, j)] = v
        self._brackets = table
        self.grading = tuple(grading) if grading is not None else None
        if check:
            violations = validate_jacobi(self)
            if violations:
                raise InvalidInput("; ".join(v.describe(self.basis_names) for v in violations))
            if self.grading is not None and not verify_grading(self, self.grading):
                raise InvalidInput("grading is not compatible with the brackets")
        self._cache: dict = {}

    @property
    def brackets(self) -> dict:
        return dict(self._brackets)

    def structure_constant(self, i: int, j: int, k: int) -> Fraction:
        """c_{ij}^k, antisymmetrically extended."""
        if i == j:
            return Fraction(0)
        if i < j:
            v = self._brackets.get((i, j))
            return v[k] if v else Fraction(0)
        v = self._brackets.get((j, i))
        return -v[k] if v else Fraction(0)

    def basis_bracket(self, i: int, j: int) -> Vector:
        if i == j:
            return (Fraction(0),) * self.dim
        if i < j:
            return self._brackets.get((i, j), (Fraction(0),) * self.dim)
        v = self._brackets.get((j, i))
        return tuple(-x for x in v) if v else (Fraction(0),) * self.dim

    def basis_vector(self, i: int) -> Vector:
        return unit_vector(self.dim, i)

    def ad(self, v: Sequence) -> QMatrix:
        """Matrix of ad_v in the X-basis (columns are [v, X_j])."""
        v = _coerce(v, self.dim)
        return QMatrix.from_columns(
            [bracket(self, v, self.basis_vector(j)) for j in range(self.dim)], self.dim)

    def __repr__(self):
        return f"LieAlgebra({self.name or 'unnamed'}, dim={self.dim}, brackets={len(self._brackets)})"


def _coerce(v, dim: int) -> Vector:
    if isinstance(v, Mapping):
        out = [Fraction(0)] * dim
        for k, c in v.items():
            if not 0 <= k < dim:
                raise InvalidInput(f"index {k + 1} out of range")
            out[k] = as_fraction(c)
        return tuple(out)
    out = as_vector(v)
    if len(out) != dim:
        raise InvalidInput(f"expected a vector of length {dim}, got {len(out)}")
    return out


def bracket(L: LieAlgebra, v: Sequence, w: Sequence) -> Vector:
    """Bilinear antisymmetric extension of the structure constants."""
    v = _coerce(v, L.dim)
    w = _coerce(w, L.dim)
    out = [Fraction(0)] * L.dim
    for (i, j), c in L._brackets.items():
        coef = v[i] * w[j] - v[j] * w[i]
        if coef:
            for k, ck in enumerate(c):
                if ck:
                    out[k] += coef * ck
    return tuple(out)


def validate_jacobi(L: LieAlgebra) -> list:
    """All triples i<j<k on which the Jacobi identity fails."""
    out = []
    n = L.dim
    e = [L.basis_vector(i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                terms = (
                    bracket(L, bracket(L, e[i], e[j]), e[k]),
                    bracket(L, bracket(L, e[j], e[k]), e[i]),
                    bracket(L, bracket(L, e[k], e[i]), e[j]),
                )
                defect = tuple(sum(t) for t in zip(*terms))
                if any(defect):
                    out.append(JacobiViolation((i, j, k), defect))
    return out


def center(L: LieAlgebra) -> Subspace:
    """{v : [v, X_i] = 0 for all i}, intersecting the kernels of v -> [v, X_i]."""
    result = Subspace.full(L.dim)
    for i in range(L.dim):
        m = QMatrix.from_columns([L.basis_bracket(j, i) for j in range(L.dim)], L.dim)
        result = result.intersection(kernel_basis(m))
    return result


def derived_ideal(L: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    """Span of [a, b]."""
    vecs = [bracket(L, x, y) for x in a.basis for y in b.basis]
    return Subspace(L.dim, vecs)


def lower_central_series(L: LieAlgebra) -> list:
    """g, [g,g], [g,[g,g]], ... until the series stabilises."""
    g = Subspace.full(L.dim)
    series = [g]
    while True:
        nxt = derived_ideal(L, g, series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)
        if nxt.dim == 0:
            return series


def is_nilpotent(L: LieAlgebra) -> tuple:
    """(nilpotent?, dimensions of the lower central series)."""
    series = lower_central_series(L)
    dims = tuple(s.dim for s in series)
    return dims[-1] == 0, dims


def verify_grading(L: LieAlgebra, weights: Sequence[int]) -> bool:
    if len(weights) != L.dim:
        raise InvalidInput(f"grading has {len(weights)} weights for a {L.dim}-dimensional algebra")
    if any(int(w) != w or w <= 0 for w in weights):
        raise InvalidInput("grading weights must be positive integers")
    for (i, j), c in L._brackets.items():
        for k, ck in enumerate(c):
            if ck and weights[i] + weights[j] != weights[k]:
                return False
    return True


def abelian(dim: int) -> LieAlgebra:
    return LieAlgebra(dim, {}, name=f"abelian{dim}")


def heisenberg(n: int) -> LieAlgebra:
    """h_{2n+1}: [X_i, X_{n+i}] = X_{2n+1}."""
    dim = 2 * n + 1
    br = {(i, n + i): {dim - 1: 1} for i in range(n)}
    return LieAlgebra(dim, br, name=f"heisenberg{dim}")
