"""Contact, contact-metric, K-contact and invariant Sasakian checks on a Lie algebra.

All structures are left-invariant and given in the X-basis.  ``phi`` is the
matrix acting on column vectors: column j holds the coordinates of phi(X_j).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import LieAlgebra, _coerce, bracket
from .errors import InvalidInput
from .exterior import Form, ce_d, evaluate, interior, power, wedge
from .linalg import QMatrix, Vector, is_positive_definite, kernel_basis, unit_vector


def _eta_form(L: LieAlgebra, eta) -> Form:
    if isinstance(eta, Form):
        if eta.degree != 1 or eta.dim != L.dim:
            raise InvalidInput("eta must be a 1-form on the algebra")
        return eta
    return Form.one_form(_coerce(eta, L.dim))


@dataclass(frozen=True)
class ContactResult:
    is_contact: bool
    volume: Form
    volume_coefficient: Fraction


def is_contact(L: LieAlgebra, eta) -> ContactResult:
    """eta ^ (d eta)^n as a top form; contact iff its coefficient is nonzero."""
    if L.dim % 2 == 0:
        raise InvalidInput(f"contact forms need odd dimension, got {L.dim}")
    eta = _eta_form(L, eta)
    n = (L.dim - 1) // 2
    vol = wedge(eta, power(ce_d(L, eta), n))
    coef = vol.coefficient(tuple(range(L.dim)))
    return ContactResult(coef != 0, vol, coef)


def two_form_matrix(w: Form) -> QMatrix:
    """Gram matrix w(X_i, X_j) of a 2-form."""
    n = w.dim
    e = [unit_vector(n, i) for i in range(n)]
    return QMatrix.from_rows([[evaluate(w, [e[i], e[j]]) for j in range(n)] for i in range(n)])


def reeb_solution_space(L: LieAlgebra, eta):
    """Solutions of i_xi d eta = 0 (before normalising eta(xi) = 1)."""
    eta = _eta_form(L, eta)
    # i_xi d eta (X_j) = sum_i xi_i dη(X_i, X_j): the transpose of the Gram matrix.
    omega = two_form_matrix(ce_d(L, eta))
    return kernel_basis(omega.transpose())


def reeb(L: LieAlgebra, eta) -> Vector:
    """Unique xi with i_xi eta = 1 and i_xi d eta = 0."""
    eta = _eta_form(L, eta)
    if not is_contact(L, eta).is_contact:
        raise InvalidInput("eta is not a contact form")
    space = reeb_solution_space(L, eta)
    if space.dim != 1:
        raise InvalidInput(f"Reeb conditions have a {space.dim}-dimensional solution space")
    v = space.basis[0]
    s = evaluate(eta, [v])
    if s == 0:
        raise InvalidInput("eta vanishes on the kernel of d eta")
    xi = tuple(x / s for x in v)
    assert interior(xi, eta).coefficient(()) == 1 and interior(xi, ce_d(L, eta)).is_zero()
    return xi


@dataclass(frozen=True)
class MetricStructure:
    phi: QMatrix
    metric: QMatrix

    def __post_init__(self):
        n = self.metric.rows
        if (self.phi.rows, self.phi.cols, self.metric.cols) != (n, n, n):
            raise InvalidInput("phi and metric must both be n x n")

    @classmethod
    def from_rows(cls, phi_rows, metric_rows) -> "MetricStructure":
        return cls(QMatrix.from_rows(phi_rows), QMatrix.from_rows(metric_rows))

    @classmethod
    def from_images(cls, images: Sequence[Sequence], metric=None) -> "MetricStructure":
        """Build phi from the list phi(X_1), ..., phi(X_n); metric defaults to identity."""
        n = len(images)
        phi = QMatrix.from_columns(images, n)
        return cls(phi, metric if metric is not None else QMatrix.identity(n))

    def g(self, x, y) -> Fraction:
        return sum((a * b for a, b in zip(x, self.metric @ y)), Fraction(0))


@dataclass
class AxiomCheck:
    name: str
    passed: bool
    counterexample: Optional[tuple] = None  # 0-based basis indices
    detail: str = ""


@dataclass
class ContactMetricReport:
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> AxiomCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failed(self) -> list:
        return [c.name for c in self.checks if not c.passed]


def _first_pair(n, pred):
    for i in range(n):
        for j in range(n):
            if not pred(i, j):
                return (i, j)
    return None


def _first_index(n, pred):
    for i in range(n):
        if not pred(i):
            return (i,)
    return None


def verify_contact_metric(L: LieAlgebra, eta, ms: MetricStructure) -> ContactMetricReport:
    """Check the contact-metric axioms on all basis pairs.

    a: eta(X) = g(X, xi);  b: d eta(X, Y) = g(X, phi Y);  c: phi^2 = -I + eta (x) xi;
    d: Phi(X, Y) = g(X, phi Y) antisymmetric;  e: phi xi = 0, eta o phi = 0,
    g(phi X, phi Y) = g(X, Y) - eta(X) eta(Y).
    """
    n = L.dim
    if ms.phi.rows != n:
        raise InvalidInput("structure dimension differs from the algebra")
    if not is_positive_definite(ms.metric):
        raise InvalidInput("metric is not symmetric positive definite")
    eta = _eta_form(L, eta)
    xi = reeb(L, eta)
    d_eta = ce_d(L, eta)
    e = [unit_vector(n, i) for i in range(n)]
    eta_v = [evaluate(eta, [x]) for x in e]
    phi_e = [ms.phi.column(j) for j in range(n)]
    g = ms.g

    def cx(name, found, detail=""):
        return AxiomCheck(name, found is None, found, detail if found is not None else "")

    checks = []
    checks.append(cx("eta_is_g_dual_of_reeb",
                     _first_index(n, lambda i: eta_v[i] == g(e[i], xi))))
    checks.append(cx("d_eta_equals_sasaki_form",
                     _first_pair(n, lambda i, j: evaluate(d_eta, [e[i], e[j]]) == g(e[i], phi_e[j])),
                     "d eta(X, Y) != g(X, phi Y)"))
    phi2 = ms.phi @ ms.phi
    target = QMatrix.from_rows([[(-1 if i == j else 0) + xi[i] * eta_v[j] for j in range(n)]
                                for i in range(n)])
    checks.append(cx("phi_squared", _first_pair(n, lambda i, j: phi2[i, j] == target[i, j])))
    checks.append(cx("sasaki_form_antisymmetric",
                     _first_pair(n, lambda i, j: g(e[i], phi_e[j]) == -g(e[j], phi_e[i]))))
    phi_xi = ms.phi @ xi
    checks.append(cx("phi_reeb_zero", _first_index(n, lambda i: phi_xi[i] == 0)))
    checks.append(cx("eta_phi_zero", _first_index(n, lambda i: evaluate(eta, [phi_e[i]]) == 0)))
    checks.append(cx("phi_compatible_metric",
                     _first_pair(n, lambda i, j: g(phi_e[i], phi_e[j])
                                 == g(e[i], e[j]) - eta_v[i] * eta_v[j])))
    return ContactMetricReport(checks)


def is_killing(L: LieAlgebra, metric: QMatrix, v) -> bool:
    """ad_v is g-skew: g([v,X],Y) + g(X,[v,Y]) = 0 on all basis pairs."""
    if not is_positive_definite(metric):
        raise InvalidInput("metric is not symmetric positive definite")
    ad = L.ad(_coerce(v, L.dim))
    # g-skewness of ad_v  <=>  ad^T G + G ad = 0
    return (ad.transpose() @ metric + metric @ ad).is_zero()


@dataclass(frozen=True)
class NormalityReport:
    table: dict  # (i, j) -> vector, all pairs i < j
    sasakian: bool

    def nonzero_pairs(self) -> list:
        return [k for k, v in self.table.items() if any(v)]


def normality_tensor(L: LieAlgebra, eta, ms: MetricStructure) -> NormalityReport:
    """N(X,Y) = phi^2[X,Y] + [phi X, phi Y] - phi[phi X, Y] - phi[X, phi Y] + d eta(X,Y) xi."""
    n = L.dim
    eta = _eta_form(L, eta)
    xi = reeb(L, eta)
    d_eta = ce_d(L, eta)
    phi = ms.phi
    phi2 = phi @ phi
    e = [unit_vector(n, i) for i in range(n)]

    def N(x, y):
        terms = [
            phi2 @ bracket(L, x, y),
            bracket(L, phi @ x, phi @ y),
            tuple(-c for c in phi @ bracket(L, phi @ x, y)),
            tuple(-c for c in phi @ bracket(L, x, phi @ y)),
            tuple(evaluate(d_eta, [x, y]) * c for c in xi),
        ]
        return tuple(sum(t) for t in zip(*terms))

    table = {(i, j): N(e[i], e[j]) for i in range(n) for j in range(i + 1, n)}
    return NormalityReport(table, all(not any(v) for v in table.values()))


def normality_value(L: LieAlgebra, eta, ms: MetricStructure, x, y) -> Vector:
    """N evaluated on arbitrary vectors (used for antisymmetry checks)."""
    n = L.dim
    x, y = _coerce(x, n), _coerce(y, n)
    report = normality_tensor(L, eta, ms)
    out = [Fraction(0)] * n
    for (i, j), v in report.table.items():
        c = x[i] * y[j] - x[j] * y[i]
        if c:
            out = [a + c * b for a, b in zip(out, v)]
    return tuple(out)


@dataclass(frozen=True)
class KContactVerdict:
    contact: bool
    contact_metric: bool
    k_contact: bool
    invariant_sasakian: bool
    reeb: Optional[Vector]
    metric_report: Optional[ContactMetricReport]
    normality: Optional[NormalityReport]

    @property
    def flags(self) -> dict:
        return {"CONTACT_METRIC": self.contact_metric, "K_CONTACT": self.k_contact,
                "INVARIANT_SASAKIAN": self.invariant_sasakian}


def k_contact_report(L: LieAlgebra, eta, ms: MetricStructure) -> KContactVerdict:
    """Aggregate contact, contact-metric, Killing-Reeb and normality checks.

    INVARIANT_SASAKIAN false only rules out a left-invariant Sasakian
    structure with this (phi, g); it is not a certificate for arbitrary metrics.
    """
    eta = _eta_form(L, eta)
    c = is_contact(L, eta)
    if not c.is_contact:
        return KContactVerdict(False, False, False, False, None, None, None)
    xi = reeb(L, eta)
    rep = verify_contact_metric(L, eta, ms)
    if not rep.passed:
        return KContactVerdict(True, False, False, False, xi, rep, None)
    killing = is_killing(L, ms.metric, xi)
    norm = normality_tensor(L, eta, ms)
    return KContactVerdict(True, True, killing, norm.sasakian, xi, rep, norm)
