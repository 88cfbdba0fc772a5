"""Chevalley-Eilenberg cohomology H^*(g; Q).

For a nilpotent algebra with rational structure constants this is the de Rham
cohomology of any associated compact nilmanifold (Nomizu); reports label it
accordingly.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional

from .algebra import LieAlgebra
from .errors import InvalidInput
from .exterior import Form, ce_d, operator_matrix
from .linalg import QMatrix, QuotientMap, Subspace, Vector, image_basis, kernel_basis, solve

NOMIZU_LABEL = "H(g) ≅ H_DR(M) by Nomizu's theorem"


def d_matrix(L: LieAlgebra, k: int) -> QMatrix:
    """Matrix of d: Λ^k -> Λ^{k+1} in the lexicographic monomial bases."""
    if not 0 <= k <= L.dim:
        raise ValueError(f"degree {k} outside 0..{L.dim}")
    cache = L._cache.setdefault("dmat", {})
    if k not in cache:
        cache[k] = operator_matrix(lambda f: ce_d(L, f), L.dim, k, k + 1)
    return cache[k]


@dataclass(frozen=True)
class CohomologySpace:
    degree: int
    ambient_dim: int
    cocycles: Subspace
    coboundaries: Subspace
    quotient: QuotientMap

    @property
    def dim(self) -> int:
        return self.quotient.dim

    @property
    def representatives(self) -> list:
        """Representative cocycles, as forms, in the chosen deterministic order."""
        return [Form.from_vector(self.ambient_dim, self.degree, v)
                for v in self.quotient.representatives]

    def class_coords(self, a: Form) -> Vector:
        """Coordinates of the class of the cocycle ``a`` in the representative basis."""
        if a.degree != self.degree:
            raise ValueError("degree mismatch")
        v = a.to_vector()
        if not self.cocycles.contains(v):
            raise InvalidInput("form is not closed")
        return self.quotient(v)

    def is_coboundary(self, a: Form) -> bool:
        return self.coboundaries.contains(a.to_vector())


def cohomology(L: LieAlgebra, k: int) -> CohomologySpace:
    cache = L._cache.setdefault("H", {})
    if k in cache:
        return cache[k]
    if not 0 <= k <= L.dim:
        raise ValueError(f"degree {k} outside 0..{L.dim}")
    cocycles = kernel_basis(d_matrix(L, k))
    if k == 0:
        coboundaries = Subspace.zero(1)
    else:
        coboundaries = image_basis(d_matrix(L, k - 1))
    h = CohomologySpace(k, L.dim, cocycles, coboundaries, QuotientMap(cocycles, coboundaries))
    cache[k] = h
    return h


def is_exact(L: LieAlgebra, a: Form) -> Optional[Form]:
    """A primitive gamma with d gamma = a, or None when [a] != 0.

    The primitive is reduced modulo closed forms (zero on the pivot monomials of
    the cocycle space), which makes it canonical and usually sparse.
    """
    if a.dim != L.dim:
        raise ValueError("form and algebra have different dimensions")
    if not ce_d(L, a).is_zero():
        raise InvalidInput("is_exact requires a closed form")
    if a.is_zero():
        return Form.zero(L.dim, max(a.degree - 1, 0))
    if a.degree == 0:
        return None
    k = a.degree - 1
    x = solve(d_matrix(L, k), a.to_vector())
    if x is None:
        return None
    x = cohomology(L, k).cocycles.reduce(x)
    return Form.from_vector(L.dim, k, x)


def betti_vector(L: LieAlgebra) -> tuple:
    """(b_0, ..., b_n) via rank-nullity: b_k = dim Λ^k - rank d_k - rank d_{k-1}."""
    n = L.dim
    ranks = [d_matrix(L, k).rank() for k in range(n + 1)]
    return tuple(comb(n, k) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(n + 1))


@dataclass(frozen=True)
class ParityEntry:
    p: int
    betti: int
    required_even: bool
    satisfied: bool


def parity_report(L: LieAlgebra) -> dict:
    """Betti-parity check for odd p <= n on a (2n+1)-dimensional algebra.

    A compact Sasakian manifold has even b_p for every odd p <= n, so an odd
    value there is an obstruction.  The range stops at n: the Heisenberg
    nilmanifold of dimension 5 is Sasakian and has b_3 = 5.
    """
    if L.dim % 2 == 0:
        raise InvalidInput("parity report needs an odd-dimensional algebra")
    n = (L.dim - 1) // 2
    betti = betti_vector(L)
    entries = []
    for p in range(L.dim + 1):
        req = p % 2 == 1 and p <= n
        entries.append(ParityEntry(p, betti[p], req, (not req) or betti[p] % 2 == 0))
    obstructed = [e.p for e in entries if not e.satisfied]
    return {
        "entries": entries,
        "obstructed_degrees": obstructed,
        "obstruction": bool(obstructed),
        "summary": (f"parity obstruction in degrees {obstructed}" if obstructed
                    else "no parity obstruction"),
    }


def euler_characteristic(betti) -> int:
    return sum((-1) ** k * b for k, b in enumerate(betti))

