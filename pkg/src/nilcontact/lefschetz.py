"""Lefschetz relation of a contact Lie algebra and its graph-of-isomorphism verdict.

For 0 <= p <= n on a (2n+1)-dimensional algebra with contact form eta and
Reeb vector xi, the relation is spanned by the pairs

    ([beta], [eta ^ (d eta)^(n-p) ^ beta])

over closed invariant p-forms beta with i_xi beta = 0 and
(d eta)^(n-p+1) ^ beta = 0.  Powers of d eta carry no 1/2 factor; rescaling
the image side by a nonzero constant cannot change any rank below.

A failure of the graph property found on invariant forms is a failure on the
nilmanifold (invariant forms are genuine forms there and, by Nomizu, keep
their classes).  A pass only speaks about the invariant sub-relation.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import LieAlgebra
from .cohomology import CohomologySpace, cohomology, is_exact
from .contact import is_contact, reeb
from .errors import InvalidInput, InvariantViolation
from .exterior import Form, ce_d, interior, operator_matrix, power, wedge
from .linalg import QMatrix, Subspace, Vector, as_fraction, kernel_basis, unit_vector


class Outcome(str, enum.Enum):
    SOUND_FAIL = "SOUND_FAIL"
    INVARIANT_PASS = "INVARIANT_PASS"
    INCONCLUSIVE = "INCONCLUSIVE"


class Overall(str, enum.Enum):
    NON_SASAKIAN_CERTIFIED = "NON_SASAKIAN_CERTIFIED"
    LEFSCHETZ_INVARIANT_PASS = "LEFSCHETZ_INVARIANT_PASS"
    INCONCLUSIVE = "INCONCLUSIVE"


def _eta(L: LieAlgebra, eta) -> Form:
    if isinstance(eta, Form):
        return eta
    return Form.one_form(eta)


def _check_contact(L: LieAlgebra, eta: Form) -> int:
    if not is_contact(L, eta).is_contact:
        raise InvalidInput("eta is not a contact form")
    return (L.dim - 1) // 2


@dataclass(frozen=True)
class AdmissibleSpace:
    degree: int
    algebra_dim: int
    space: Subspace  # in Λ^p monomial coordinates

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self) -> list:
        return [Form.from_vector(self.algebra_dim, self.degree, v) for v in self.space.basis]


def admissible_space(L: LieAlgebra, eta, p: int) -> AdmissibleSpace:
    """S_p = ker d ∩ ker i_xi ∩ ker((d eta)^(n-p+1) ^ .) inside Λ^p."""
    eta = _eta(L, eta)
    n = _check_contact(L, eta)
    if not 0 <= p <= n:
        raise InvalidInput(f"degree p={p} outside 0..{n}")
    xi = reeb(L, eta)
    dim = L.dim
    lam = power(ce_d(L, eta), n - p + 1)
    closed = kernel_basis(operator_matrix(lambda f: ce_d(L, f), dim, p, p + 1))
    horizontal = kernel_basis(operator_matrix(lambda f: interior(xi, f), dim, p, p - 1)) \
        if p > 0 else Subspace.full(1)
    primitive = kernel_basis(operator_matrix(lambda f: wedge(lam, f), dim, p, p + lam.degree))
    s = closed.intersection(horizontal).intersection(primitive)
    return AdmissibleSpace(p, dim, s)


def lefschetz_image(L: LieAlgebra, eta, p: int, beta: Form, scale=1) -> Form:
    """scale * eta ^ (d eta)^(n-p) ^ beta."""
    eta = _eta(L, eta)
    n = (L.dim - 1) // 2
    return wedge(wedge(eta, power(ce_d(L, eta), n - p)), beta) * as_fraction(scale)


@dataclass(frozen=True)
class Generator:
    beta: Form
    image: Form
    source_class: Vector
    image_class: Vector


@dataclass(frozen=True)
class LefschetzRelationSpace:
    degree: int
    relation: Subspace  # in H^p ⊕ H^(2n+1-p) class coordinates
    generators: tuple
    source: CohomologySpace
    target: CohomologySpace
    admissible: AdmissibleSpace
    eta: Form
    scale: Fraction = Fraction(1)


def lefschetz_relation(L: LieAlgebra, eta, p: int, scale=1) -> LefschetzRelationSpace:
    """Span of (class(beta), class(image)) over a basis of S_p.

    Every image is checked closed before its class is taken; failure means
    the engine's conventions are inconsistent and raises InvariantViolation.
    """
    eta = _eta(L, eta)
    adm = admissible_space(L, eta, p)
    hp = cohomology(L, p)
    hq = cohomology(L, L.dim - p)
    gens = []
    for beta in adm.basis:
        img = lefschetz_image(L, eta, p, beta, scale)
        if not ce_d(L, img).is_zero():
            raise InvariantViolation(
                f"Lefschetz image of {beta} in degree {p} is not closed")
        gens.append(Generator(beta, img, hp.class_coords(beta), hq.class_coords(img)))
    rel = Subspace(hp.dim + hq.dim, [g.source_class + g.image_class for g in gens])
    return LefschetzRelationSpace(p, rel, tuple(gens), hp, hq, adm, eta, as_fraction(scale))


@dataclass(frozen=True)
class Witness:
    """Replayable evidence that a relation is not the graph of an isomorphism.

    kind "kernel": [beta] != 0 and image = d(primitive).
    kind "functionality": beta = d(primitive) while [image] != 0.
    """

    kind: str
    degree: int
    beta: Form
    image: Form
    primitive: Form

    def replay(self, L: LieAlgebra, eta) -> bool:
        return replay_witness(L, eta, self)


@dataclass(frozen=True)
class Diagnostics:
    dim_admissible: int
    dim_relation: int
    dim_source_projection: int
    dim_target_projection: int
    dim_source: int
    dim_target: int
    dim_target_only: int  # dim R ∩ (0 ⊕ H')
    dim_source_only: int  # dim R ∩ (H ⊕ 0)

    def as_tuple(self) -> tuple:
        return (self.dim_admissible, self.dim_relation, self.dim_source_projection,
                self.dim_target_projection, self.dim_target_only, self.dim_source_only)


@dataclass(frozen=True)
class LefschetzVerdict:
    degree: int
    outcome: Outcome
    diagnostics: Diagnostics
    witnesses: tuple = ()
    note: str = ""

    @property
    def witness(self) -> Optional[Witness]:
        """The primary witness (fewest monomials in beta, then monomial order)."""
        return self.witnesses[0] if self.witnesses else None


def _diagnostics(rel: LefschetzRelationSpace) -> Diagnostics:
    a, b = rel.source.dim, rel.target.dim
    R = rel.relation
    src_axis = Subspace(a + b, [unit_vector(a + b, i) for i in range(a)])
    tgt_axis = Subspace(a + b, [unit_vector(a + b, a + i) for i in range(b)])
    return Diagnostics(
        dim_admissible=rel.admissible.dim,
        dim_relation=R.dim,
        dim_source_projection=R.project(range(a)).dim,
        dim_target_projection=R.project(range(a, a + b)).dim,
        dim_source=a,
        dim_target=b,
        dim_target_only=R.intersection(tgt_axis).dim,
        dim_source_only=R.intersection(src_axis).dim,
    )


def _selection_key(beta: Form):
    return (len(beta), [idx for idx, _ in beta.items()])


def _candidates(L, rel: LefschetzRelationSpace, vanish: str) -> list:
    """Forms in S_p whose ``vanish`` side class is zero and whose other side is not.

    Returned as the canonical basis of that subspace (in Λ^p coordinates),
    filtered to elements with the other side nonzero, sorted by selection key.
    """
    gens = rel.generators
    if not gens:
        return []
    side = [g.image_class if vanish == "image" else g.source_class for g in gens]
    width = len(side[0])
    if width:
        m = QMatrix.from_columns(side, width)
        combos = kernel_basis(m)
        combo_vecs = combos.basis
    else:
        combo_vecs = tuple(unit_vector(len(gens), i) for i in range(len(gens)))
    dim = L.dim
    p = rel.degree
    forms = []
    for c in combo_vecs:
        f = Form.zero(dim, p)
        for ci, g in zip(c, gens):
            if ci:
                f = f + g.beta * ci
        forms.append(f.to_vector())
    if not forms:
        return []
    canon = Subspace(len(forms[0]), forms)
    out = []
    for v in canon.basis:
        beta = Form.from_vector(dim, p, v)
        img = lefschetz_image(L, rel.eta, p, beta)
        other = rel.source.class_coords(beta) if vanish == "image" else rel.target.class_coords(img)
        if any(other):
            out.append((beta, img))
    out.sort(key=lambda t: _selection_key(t[0]))
    return out


def verdict(rel: LefschetzRelationSpace, L: Optional[LieAlgebra] = None) -> LefschetzVerdict:
    """Classify a relation: SOUND_FAIL, INVARIANT_PASS or INCONCLUSIVE."""
    diag = _diagnostics(rel)
    a, b = diag.dim_source, diag.dim_target
    if diag.dim_source_only or diag.dim_target_only:
        witnesses = []
        if L is not None:
            for beta, img in _candidates(L, rel, "image") if diag.dim_source_only else []:
                gamma = is_exact(L, img)
                witnesses.append(Witness("kernel", rel.degree, beta, img, gamma))
            for beta, img in _candidates(L, rel, "source") if diag.dim_target_only else []:
                delta = is_exact(L, beta)
                witnesses.append(Witness("functionality", rel.degree, beta, img, delta))
        return LefschetzVerdict(rel.degree, Outcome.SOUND_FAIL, diag, tuple(witnesses))
    if diag.dim_source_projection == a and diag.dim_target_projection == b:
        return LefschetzVerdict(rel.degree, Outcome.INVARIANT_PASS, diag,
                                note="invariant sub-relation is the graph of an isomorphism")
    return LefschetzVerdict(rel.degree, Outcome.INCONCLUSIVE, diag,
                            note="invariant relation is not total/surjective; "
                                 "non-invariant forms could complete it")


def lefschetz_verdict(L: LieAlgebra, eta, p: int, scale=1) -> LefschetzVerdict:
    eta = _eta(L, eta)
    rel = lefschetz_relation(L, eta, p, scale)
    v = verdict(rel, L)
    for w in v.witnesses:
        if not replay_witness(L, eta, w):
            raise InvariantViolation(f"witness in degree {p} failed to replay")
    return v


@dataclass(frozen=True)
class HardLefschetzReport:
    verdicts: tuple
    overall: Overall
    certified_degree: Optional[int] = None

    @property
    def certificate(self) -> Optional[Witness]:
        if self.certified_degree is None:
            return None
        return self.verdicts[self.certified_degree].witness


def hard_lefschetz_report(L: LieAlgebra, eta, scale_images: bool = False) -> HardLefschetzReport:
    """Verdicts for every 0 <= p <= n and the overall certificate.

    ``scale_images`` restores the (1/2)^(n-p) factor of L = eps_{d eta / 2};
    verdicts are unchanged by it.
    """
    eta = _eta(L, eta)
    n = _check_contact(L, eta)
    verdicts = []
    for p in range(n + 1):
        scale = Fraction(1, 2 ** (n - p)) if scale_images else 1
        verdicts.append(lefschetz_verdict(L, eta, p, scale))
    fails = [v.degree for v in verdicts if v.outcome is Outcome.SOUND_FAIL]
    if fails:
        return HardLefschetzReport(tuple(verdicts), Overall.NON_SASAKIAN_CERTIFIED, fails[0])
    if all(v.outcome is Outcome.INVARIANT_PASS for v in verdicts):
        return HardLefschetzReport(tuple(verdicts), Overall.LEFSCHETZ_INVARIANT_PASS)
    return HardLefschetzReport(tuple(verdicts), Overall.INCONCLUSIVE)


def replay_witness(L: LieAlgebra, eta, w: Witness) -> bool:
    """Re-verify a witness by direct form arithmetic, independently of the relation."""
    eta = _eta(L, eta)
    if not is_contact(L, eta).is_contact:
        return False
    n = (L.dim - 1) // 2
    p = w.degree
    if not 0 <= p <= n or w.beta.degree != p:
        return False
    xi = reeb(L, eta)
    beta = w.beta
    if not ce_d(L, beta).is_zero() or not interior(xi, beta).is_zero():
        return False
    if not wedge(power(ce_d(L, eta), n - p + 1), beta).is_zero():
        return False
    image = lefschetz_image(L, eta, p, beta)
    if w.primitive is None:
        return False
    if w.kind == "kernel":
        return (ce_d(L, w.primitive) == image) and is_exact(L, beta) is None
    if w.kind == "functionality":
        return (ce_d(L, w.primitive) == beta) and is_exact(L, image) is None
    return False
