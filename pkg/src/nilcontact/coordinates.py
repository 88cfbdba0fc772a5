"""Polynomial exterior calculus on Q^m for checking explicit group models.

A group model is a polynomial multiplication on R^m together with a list of
polynomial 1-forms.  The checks here are symbolic identities (canonical forms
compared exactly), never sampled: associativity and unit of the law, left
invariance of the 1-forms, and agreement of their exterior derivatives with
the Chevalley-Eilenberg differentials of a Lie algebra.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

import sympy

from .algebra import LieAlgebra
from .errors import InvalidInput
from .exterior import Form, ce_d, dual_one_form, merge_sign, permutation_sign
from .linalg import as_fraction


class Poly:
    """Multivariate polynomial over Q: exponent tuple -> nonzero Fraction."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Optional[Mapping] = None):
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError("exponent length differs from variable count")
            c = as_fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
        self._terms = {e: c for e, c in sorted(clean.items()) if c}

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int, c=1) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): c})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def constant_value(self) -> Optional[Fraction]:
        """The value if the polynomial is constant, else None."""
        if self.is_zero():
            return Fraction(0)
        if len(self._terms) == 1:
            (e, c), = self._terms.items()
            if not any(e):
                return c
        return None

    def __add__(self, other: "Poly") -> "Poly":
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        t = dict(self._terms)
        for e, c in other._terms.items():
            t[e] = t.get(e, Fraction(0)) + c
        return Poly(self.nvars, t)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = as_fraction(other)
            return Poly(self.nvars, {e: c * v for e, v in self._terms.items()})
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        t: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, Fraction(0)) + c1 * c2
        return Poly(self.nvars, t)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self.nvars, tuple(self._terms.items())))

    def diff(self, i: int) -> "Poly":
        t = {}
        for e, c in self._terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                t[tuple(f)] = c * e[i]
        return Poly(self.nvars, t)

    def compose(self, subs: Sequence["Poly"]) -> "Poly":
        """Substitute variable i by ``subs[i]`` (all in a common ring)."""
        if len(subs) != self.nvars:
            raise ValueError("need one substitution per variable")
        nv = subs[0].nvars if subs else 0
        out = Poly(nv)
        pow_cache: dict = {}
        for e, c in self._terms.items():
            term = Poly.const(nv, c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in pow_cache:
                        pow_cache[key] = subs[i] ** k
                    term = term * pow_cache[key]
            out = out + term
        return out

    def embed(self, nvars: int, mapping: Sequence[int]) -> "Poly":
        """Rename variable i to ``mapping[i]`` in a ring with ``nvars`` variables."""
        t = {}
        for e, c in self._terms.items():
            f = [0] * nvars
            for i, k in enumerate(e):
                f[mapping[i]] += k
            t[tuple(f)] = c
        return Poly(nvars, t)

    def to_string(self, names: Sequence[str]) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), key=lambda t: (-sum(t[0]), [-k for k in t[0]])):
            mono = "*".join(n if k == 1 else f"{n}**{k}" for n, k in zip(names, e) if k)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            elif mag.denominator == 1:
                body = f"{mag.numerator}*{mono}"
            elif mag.numerator == 1:
                body = f"{mono}/{mag.denominator}"
            else:
                body = f"{mag.numerator}*{mono}/{mag.denominator}"
            parts.append(("-" if c < 0 else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Poly({self.to_string([f'v{i}' for i in range(self.nvars)])})"


class PolyForm:
    """Differential form with polynomial coefficients.

    Differentials are d(v_offset), ..., d(v_{offset+m-1}) of the coefficient
    ring's variables; the remaining variables act as constant parameters.
    """

    __slots__ = ("m", "degree", "nvars", "offset", "_terms")

    def __init__(self, m: int, degree: int, nvars: int, terms: Optional[Mapping] = None,
                 offset: int = 0):
        self.m, self.degree, self.nvars, self.offset = m, degree, nvars, offset
        clean: dict = {}
        for idx, p in (terms or {}).items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise ValueError("monomial degree mismatch")
            s = permutation_sign(idx)
            if not s or p.is_zero():
                continue
            key = tuple(sorted(idx))
            clean[key] = clean.get(key, Poly(nvars)) + (p if s > 0 else -p)
        self._terms = {k: v for k, v in sorted(clean.items()) if not v.is_zero()}

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _like(self, terms, degree=None) -> "PolyForm":
        return PolyForm(self.m, self.degree if degree is None else degree, self.nvars, terms,
                        self.offset)

    def __add__(self, other: "PolyForm") -> "PolyForm":
        t = dict(self._terms)
        for k, v in other._terms.items():
            t[k] = t[k] + v if k in t else v
        return self._like(t)

    def __neg__(self):
        return self._like({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, p) -> "PolyForm":
        if not isinstance(p, Poly):
            p = Poly.const(self.nvars, p)
        return self._like({k: v * p for k, v in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, PolyForm):
            return NotImplemented
        return (self.m, self.degree, self.nvars, self.offset, self._terms) == (
            other.m, other.degree, other.nvars, other.offset, other._terms)

    def to_form(self) -> Form:
        """Convert a constant-coefficient form to an algebra :class:`Form`."""
        out = {}
        for idx, p in self._terms.items():
            c = p.constant_value()
            if c is None:
                raise ValueError("form has non-constant coefficients")
            out[idx] = c
        return Form(self.m, self.degree, out)

    def __repr__(self):
        names = [f"v{i}" for i in range(self.nvars)]
        body = " + ".join(f"({p.to_string(names)})*d{list(k)}" for k, p in self._terms.items())
        return f"PolyForm({body or '0'})"


def poly_wedge(a: PolyForm, b: PolyForm) -> PolyForm:
    t: dict = {}
    for ia, pa in a._terms.items():
        for ib, pb in b._terms.items():
            s, mrg = merge_sign(ia, ib)
            if s:
                prod = pa * pb
                t[mrg] = t.get(mrg, Poly(a.nvars)) + (prod if s > 0 else -prod)
    return a._like(t, a.degree + b.degree)


def poly_d(a: PolyForm) -> PolyForm:
    """Exterior derivative; coefficients differentiated in the differential variables."""
    t: dict = {}
    for idx, p in a._terms.items():
        for j in range(a.m):
            dp = p.diff(a.offset + j)
            if dp.is_zero():
                continue
            s, mrg = merge_sign((j,), idx)
            if s:
                t[mrg] = t.get(mrg, Poly(a.nvars)) + (dp if s > 0 else -dp)
    return a._like(t, a.degree + 1)


def one_form(coeffs: Sequence[Poly], offset: int = 0) -> PolyForm:
    nv = coeffs[0].nvars
    return PolyForm(len(coeffs), 1, nv, {(j,): c for j, c in enumerate(coeffs)}, offset)


def pullback(a: PolyForm, F: Sequence[Poly], offset: int) -> PolyForm:
    """Pull back ``a`` (coefficients in its own variables x) along x = F(params, y).

    ``F`` lives in a ring whose variables ``offset .. offset+m-1`` are the new
    differential variables y.
    """
    m = a.m
    nv = F[0].nvars
    dF = [one_form([F[j].diff(offset + k) for k in range(m)], offset) for j in range(m)]
    coeff_subs = list(F) + [Poly(nv)] * (a.nvars - m)
    out = PolyForm(m, a.degree, nv, {}, offset)
    for idx, p in a._terms.items():
        term = PolyForm(m, 0, nv, {(): p.compose(coeff_subs)}, offset)
        for j in idx:
            term = poly_wedge(term, dF[j])
        out = out + term
    return out


@dataclass(frozen=True)
class GroupLaw:
    """Multiplication on R^m: ``components[i]`` is a polynomial in (x_1..x_m, y_1..y_m)."""

    m: int
    components: tuple

    def __post_init__(self):
        if len(self.components) != self.m or any(p.nvars != 2 * self.m for p in self.components):
            raise InvalidInput("group law needs m polynomials in 2m variables")

    @classmethod
    def additive(cls, m: int) -> "GroupLaw":
        return cls(m, tuple(Poly.var(2 * m, i) + Poly.var(2 * m, m + i) for i in range(m)))


@dataclass
class IdentityReport:
    ok: bool
    failures: list = field(default_factory=list)  # (label, residual Poly)


def verify_group_law(mu: GroupLaw) -> IdentityReport:
    """Two-sided unit at 0 and associativity, as polynomial identities."""
    m = mu.m
    failures = []
    two = 2 * m
    zero2 = Poly(two)
    for i, comp in enumerate(mu.components):
        right_unit = comp.compose([Poly.var(two, k) for k in range(m)] + [zero2] * m)
        left_unit = comp.compose([zero2] * m + [Poly.var(two, m + k) for k in range(m)])
        if right_unit != Poly.var(two, i):
            failures.append((f"mu(x,0) component {i + 1}", right_unit - Poly.var(two, i)))
        if left_unit != Poly.var(two, m + i):
            failures.append((f"mu(0,y) component {i + 1}", left_unit - Poly.var(two, m + i)))
    three = 3 * m
    X = [Poly.var(three, k) for k in range(m)]
    Y = [Poly.var(three, m + k) for k in range(m)]
    Z = [Poly.var(three, 2 * m + k) for k in range(m)]
    xy = [c.compose(X + Y) for c in mu.components]
    yz = [c.compose(Y + Z) for c in mu.components]
    for i, comp in enumerate(mu.components):
        lhs = comp.compose(xy + Z)
        rhs = comp.compose(X + yz)
        if lhs != rhs:
            failures.append((f"associativity component {i + 1}", lhs - rhs))
    return IdentityReport(not failures, failures)


def left_translation(mu: GroupLaw) -> list:
    """Components of y -> mu(a, y) in variables (a, y); differentials in y."""
    return list(mu.components)


def verify_left_invariance(mu: GroupLaw, coframe: Sequence[PolyForm]) -> IdentityReport:
    """L_a^* alpha == alpha for every form, identically in the parameters a."""
    m = mu.m
    failures = []
    F = left_translation(mu)
    rename = [m + k for k in range(m)]
    for i, alpha in enumerate(coframe):
        pulled = pullback(alpha, F, offset=m)
        same = PolyForm(m, alpha.degree, 2 * m,
                        {k: p.embed(2 * m, rename) for k, p in alpha.terms.items()}, offset=m)
        if pulled != same:
            failures.append((f"form {i + 1}", pulled - same))
    return IdentityReport(not failures, failures)


def coframe_matrix(coframe: Sequence[PolyForm]) -> list:
    """A[i][j] = coefficient of dx_j in alpha_i."""
    m = len(coframe)
    rows = []
    for a in coframe:
        if a.degree != 1:
            raise InvalidInput("coframe entries must be 1-forms")
        rows.append([a.terms.get((j,), Poly(a.nvars)) for j in range(m)])
    return rows


def _matmul(A, B, nv):
    n = len(A)
    return [[sum((A[i][k] * B[k][j] for k in range(n)), Poly(nv)) for j in range(n)]
            for i in range(n)]


def invert_unipotent(A) -> list:
    """Inverse of I + N with N nilpotent (polynomial entries), via the finite Neumann series."""
    m = len(A)
    nv = A[0][0].nvars
    N = [[A[i][j] - (Poly.const(nv, 1) if i == j else Poly(nv)) for j in range(m)]
         for i in range(m)]
    power = N
    for _ in range(m - 1):
        power = _matmul(power, N, nv)
    if any(not p.is_zero() for row in power for p in row):
        raise InvalidInput("coframe is not unipotent-triangular in the dx basis")
    inv = [[Poly.const(nv, 1) if i == j else Poly(nv) for j in range(m)] for i in range(m)]
    term = inv
    for k in range(1, m):
        term = _matmul(term, N, nv)
        sign = -1 if k % 2 else 1
        inv = [[inv[i][j] + term[i][j] * sign for j in range(m)] for i in range(m)]
    return inv


def express_in_coframe(a: PolyForm, coframe: Sequence[PolyForm]) -> PolyForm:
    """Rewrite ``a`` (in dx monomials) in terms of the coframe: result indices refer to alphas."""
    B = invert_unipotent(coframe_matrix(coframe))  # dx_j = sum_l B[j][l] alpha_l
    m = len(coframe)
    theta = [PolyForm(m, 1, a.nvars, {(l,): B[j][l] for l in range(m)}) for j in range(m)]
    out = PolyForm(m, a.degree, a.nvars)
    for idx, p in a.terms.items():
        term = PolyForm(m, 0, a.nvars, {(): p})
        for j in idx:
            term = poly_wedge(term, theta[j])
        out = out + term
    return out


@dataclass
class StructureMatch:
    ok: bool
    differentials: list  # per coframe element: the Form computed from coordinates
    mismatches: list  # (index, coordinate Form or message, algebraic Form)


def match_structure(mu: GroupLaw, coframe: Sequence[PolyForm], L: LieAlgebra) -> StructureMatch:
    """Compare d(alpha_i), rewritten in the coframe, with the CE differential on L."""
    if len(coframe) != L.dim or mu.m != L.dim:
        raise InvalidInput("coordinate model and algebra have different dimensions")
    diffs, mismatches = [], []
    for i, alpha in enumerate(coframe):
        da = express_in_coframe(poly_d(alpha), coframe)
        try:
            f = da.to_form()
        except ValueError:
            diffs.append(None)
            mismatches.append((i, "non-constant structure coefficients", None))
            continue
        diffs.append(f)
        expected = ce_d(L, dual_one_form(L, i))
        if f != expected:
            mismatches.append((i, f, expected))
    return StructureMatch(not mismatches, diffs, mismatches)


# --- string parsing -------------------------------------------------------

def _symbols(prefix: str, m: int):
    return [sympy.Symbol(f"{prefix}{i + 1}") for i in range(m)]


def _sympy_to_poly(expr, gens, nvars: int, positions: Sequence[int]) -> Poly:
    if expr == 0:
        return Poly(nvars)
    p = sympy.Poly(expr, *gens, domain="QQ")
    t = {}
    for mono, c in p.terms():
        e = [0] * nvars
        for pos, k in zip(positions, mono):
            e[pos] += k
        t[tuple(e)] = Fraction(int(c.numerator), int(c.denominator))
    return Poly(nvars, t)


def _parse(text: str, local: dict):
    try:
        expr = sympy.parse_expr(text.replace("^", "**").replace("−", "-"), local_dict=local,
                                evaluate=True)
    except Exception as exc:  # sympy raises a zoo of exception types
        raise InvalidInput(f"cannot parse polynomial {text!r}: {exc}") from exc
    free = expr.free_symbols - set(local.values())
    if free:
        raise InvalidInput(f"unknown symbols {sorted(map(str, free))} in {text!r}")
    if any(isinstance(a, sympy.Float) for a in sympy.preorder_traversal(expr)):
        raise InvalidInput(f"floating-point coefficient in {text!r}")
    return sympy.expand(expr)


def parse_group_law(components: Sequence[str]) -> GroupLaw:
    """Parse strings in x1..xm, y1..ym (``^`` or ``**`` for powers)."""
    m = len(components)
    xs, ys = _symbols("x", m), _symbols("y", m)
    local = {str(s): s for s in xs + ys}
    polys = []
    for text in components:
        expr = _parse(text, local)
        try:
            polys.append(_sympy_to_poly(expr, xs + ys, 2 * m, range(2 * m)))
        except sympy.PolynomialError as exc:
            raise InvalidInput(f"not a polynomial: {text!r}") from exc
    return GroupLaw(m, tuple(polys))


def parse_one_form(text: str, m: int) -> PolyForm:
    """Parse e.g. ``"dx3 - x1*dx2"`` into a 1-form on R^m."""
    xs, dxs = _symbols("x", m), _symbols("dx", m)
    local = {str(s): s for s in xs + dxs}
    expr = _parse(text, local)
    try:
        p = sympy.Poly(expr, *dxs)
    except sympy.PolynomialError as exc:
        raise InvalidInput(f"not polynomial in the differentials: {text!r}") from exc
    coeffs = [Poly(m) for _ in range(m)]
    for mono, c in p.terms():
        if sum(mono) != 1:
            raise InvalidInput(f"{text!r} is not a 1-form (term of degree {sum(mono)} in dx)")
        j = mono.index(1)
        coeffs[j] = coeffs[j] + _sympy_to_poly(sympy.expand(c), xs, m, range(m))
    return one_form(coeffs)


def format_group_law(mu: GroupLaw) -> list:
    names = [f"x{i + 1}" for i in range(mu.m)] + [f"y{i + 1}" for i in range(mu.m)]
    return [p.to_string(names) for p in mu.components]


def format_one_form(a: PolyForm) -> str:
    names = [f"x{i + 1}" for i in range(a.nvars)]
    parts = []
    for (j,), p in a.terms.items():
        c = p.to_string(names)
        if c == "1":
            parts.append(f"dx{j + 1}")
        elif c == "-1":
            parts.append(f"-dx{j + 1}")
        elif len(p.terms) == 1:
            parts.append(f"{c}*dx{j + 1}")
        else:
            parts.append(f"({c})*dx{j + 1}")
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"
