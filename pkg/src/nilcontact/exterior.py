"""Sparse alternating forms on a Lie algebra and the Chevalley-Eilenberg differential.

Conventions (used everywhere in the package):

* determinant wedge: ``(a1^a2)(X, Y) = a1(X) a2(Y) - a1(Y) a2(X)``; the basis
  monomial ``a_{i1..ik}`` evaluates to 1 on ``(X_{i1}, ..., X_{ik})``;
* ``d a(X, Y) = -a([X, Y])`` on 1-forms, extended as an antiderivation.

With this convention the compatibility ``d eta = 2 g(., phi .)`` of the
half-normalised convention reads ``d eta(X, Y) = g(X, phi Y)``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Optional, Sequence

from .algebra import LieAlgebra, _coerce
from .linalg import QMatrix, Vector, as_fraction


def basis_monomials(n: int, k: int) -> list:
    """Index tuples of Λ^k in lexicographic order; the coordinate order of all matrices."""
    if k < 0 or k > n:
        return []
    return list(combinations(range(n), k))


def monomial_index(n: int, k: int) -> dict:
    return {m: i for i, m in enumerate(basis_monomials(n, k))}


def merge_sign(a: Sequence[int], b: Sequence[int]) -> tuple:
    """Sort the concatenation a+b of two increasing tuples.

    Returns ``(sign, merged)``; sign is 0 when the tuples share an index.
    """
    sa = set(a)
    if sa.intersection(b):
        return 0, ()
    inversions = sum(1 for x in a for y in b if x > y)
    return (-1 if inversions % 2 else 1), tuple(sorted(sa.union(b)))


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq``; 0 on repeats."""
    if len(set(seq)) != len(seq):
        return 0
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


class Form:
    """Alternating k-form on the dual of an n-dimensional algebra.

    ``terms`` maps strictly increasing 0-based index tuples to nonzero
    Fractions.  Instances are immutable.
    """

    __slots__ = ("degree", "dim", "_terms", "_hash")

    def __init__(self, dim: int, degree: int, terms: Optional[Mapping] = None):
        if degree < 0:
            raise ValueError("negative degree")
        self.dim = dim
        self.degree = degree
        clean = {}
        if terms and degree <= dim:
            for idx, c in terms.items():
                idx = tuple(idx)
                if len(idx) != degree:
                    raise ValueError(f"monomial {idx} has the wrong degree for a {degree}-form")
                if any(not 0 <= i < dim for i in idx):
                    raise ValueError(f"monomial {idx} out of range for dimension {dim}")
                sign = permutation_sign(idx)
                c = as_fraction(c)
                if sign == 0 or c == 0:
                    continue
                key = tuple(sorted(idx))
                clean[key] = clean.get(key, Fraction(0)) + sign * c
        self._terms = {k: v for k, v in sorted(clean.items()) if v != 0}
        self._hash = None

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def coefficient(self, idx: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(idx), Fraction(0))

    # construction helpers -------------------------------------------------
    @classmethod
    def zero(cls, dim: int, degree: int) -> "Form":
        return cls(dim, degree)

    @classmethod
    def constant(cls, dim: int, c=1) -> "Form":
        return cls(dim, 0, {(): c})

    @classmethod
    def monomial(cls, dim: int, indices: Sequence[int], coef=1) -> "Form":
        return cls(dim, len(indices), {tuple(indices): coef})

    @classmethod
    def one_form(cls, coeffs: Sequence) -> "Form":
        v = [as_fraction(c) for c in coeffs]
        return cls(len(v), 1, {(i,): c for i, c in enumerate(v) if c})

    @classmethod
    def from_vector(cls, dim: int, degree: int, vec: Sequence) -> "Form":
        mons = basis_monomials(dim, degree)
        if len(vec) != len(mons):
            raise ValueError("coordinate vector has the wrong length")
        return cls(dim, degree, {m: c for m, c in zip(mons, vec) if c})

    def to_vector(self) -> Vector:
        return tuple(self._terms.get(m, Fraction(0)) for m in basis_monomials(self.dim, self.degree))

    # arithmetic -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self._terms

    def _same_space(self, other: "Form"):
        if self.dim != other.dim or self.degree != other.degree:
            raise ValueError("forms of different degree or dimension")

    def __add__(self, other: "Form") -> "Form":
        self._same_space(other)
        t = dict(self._terms)
        for k, v in other._terms.items():
            t[k] = t.get(k, Fraction(0)) + v
        return Form(self.dim, self.degree, t)

    def __neg__(self) -> "Form":
        return Form(self.dim, self.degree, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __mul__(self, c) -> "Form":
        c = as_fraction(c)
        return Form(self.dim, self.degree, {k: c * v for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __xor__(self, other: "Form") -> "Form":
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return (self.dim, self.degree, self._terms) == (other.dim, other.degree, other._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, self.degree, tuple(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Form({format_form(self, ascii=True)})"

    def __str__(self):
        return format_form(self)


def format_form(a: Form, prefix: str = "α", ascii: bool = False) -> str:
    """Human-readable rendering with 1-based indices, e.g. ``2 α1∧α2 - α3∧α4``."""
    if ascii:
        prefix, sep, minus = "a", "^", "-"
    else:
        sep, minus = "∧", "−"
    if a.is_zero():
        return "0"
    parts = []
    for idx, c in a.items():
        mono = sep.join(f"{prefix}{i + 1}" for i in idx) if idx else ""
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag} {mono}"
        parts.append((c < 0, body))
    out = (minus if parts[0][0] else "") + parts[0][1]
    for neg, body in parts[1:]:
        out += f" {minus if neg else '+'} {body}"
    return out


def wedge(a: Form, b: Form) -> Form:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} != {b.dim}")
    deg = a.degree + b.degree
    if deg > a.dim:
        return Form.zero(a.dim, deg)
    out: dict = {}
    for ia, ca in a.items():
        for ib, cb in b.items():
            s, m = merge_sign(ia, ib)
            if s:
                out[m] = out.get(m, Fraction(0)) + s * ca * cb
    return Form(a.dim, deg, out)


def wedge_all(forms: Iterable[Form], dim: int) -> Form:
    out = Form.constant(dim)
    for f in forms:
        out = wedge(out, f)
    return out


def power(a: Form, k: int) -> Form:
    """k-fold wedge power (no factorial normalisation)."""
    return wedge_all([a] * k, a.dim)


def interior(v: Sequence, a: Form) -> Form:
    """Contraction i_v a in the first slot."""
    vec = _coerce(v, a.dim)
    if a.degree == 0:
        return Form.zero(a.dim, 0)
    out: dict = {}
    for idx, c in a.items():
        for pos, j in enumerate(idx):
            if vec[j]:
                rest = idx[:pos] + idx[pos + 1:]
                s = -1 if pos % 2 else 1
                out[rest] = out.get(rest, Fraction(0)) + s * vec[j] * c
    return Form(a.dim, a.degree - 1, out)


def evaluate(a: Form, vectors: Sequence[Sequence]) -> Fraction:
    """Alternating multilinear evaluation a(v_1, ..., v_k)."""
    if len(vectors) != a.degree:
        raise ValueError(f"a {a.degree}-form needs {a.degree} arguments, got {len(vectors)}")
    vs = [_coerce(v, a.dim) for v in vectors]
    total = Fraction(0)
    for idx, c in a.items():
        m = QMatrix(a.degree, a.degree, tuple(tuple(vs[s][i] for s in range(a.degree)) for i in idx))
        total += c * m.det() if a.degree else c
    return total


def dual_one_form(L_or_dim, i: int) -> Form:
    """The dual 1-form α_i (0-based i)."""
    n = L_or_dim.dim if isinstance(L_or_dim, LieAlgebra) else L_or_dim
    return Form.monomial(n, (i,))


def _one_form_differentials(L: LieAlgebra) -> list:
    cached = L._cache.get("d1")
    if cached is None:
        n = L.dim
        cached = []
        for k in range(n):
            t = {}
            for (i, j), c in L.brackets.items():
                if c[k]:
                    t[(i, j)] = -c[k]
            cached.append(Form(n, 2, t))
        L._cache["d1"] = cached
    return cached


def _monomial_differential(L: LieAlgebra, idx: tuple) -> Form:
    cache = L._cache.setdefault("dmono", {})
    hit = cache.get(idx)
    if hit is not None:
        return hit
    n = L.dim
    d1 = _one_form_differentials(L)
    out = Form.zero(n, len(idx) + 1)
    for pos, i in enumerate(idx):
        if d1[i].is_zero():
            continue
        left = Form.monomial(n, idx[:pos])
        right = Form.monomial(n, idx[pos + 1:])
        term = wedge(wedge(left, d1[i]), right)
        out = out - term if pos % 2 else out + term
    cache[idx] = out
    return out


def ce_d(L: LieAlgebra, a: Form) -> Form:
    """Chevalley-Eilenberg differential of ``a``."""
    if a.dim != L.dim:
        raise ValueError("form and algebra have different dimensions")
    out = Form.zero(L.dim, a.degree + 1)
    if a.degree == 0:
        return out
    acc: dict = {}
    for idx, c in a.items():
        for m, cm in _monomial_differential(L, idx).items():
            acc[m] = acc.get(m, Fraction(0)) + c * cm
    return Form(L.dim, a.degree + 1, acc)


def operator_matrix(fn, n: int, k_in: int, k_out: int) -> QMatrix:
    """Matrix (monomial bases) of a linear map Λ^k_in -> Λ^k_out given on forms."""
    cols = [fn(Form.monomial(n, m)).to_vector() for m in basis_monomials(n, k_in)]
    rows = comb(n, k_out) if 0 <= k_out <= n else 0
    if not cols:
        return QMatrix.zeros(rows, 0)
    return QMatrix.from_columns(cols, rows)
