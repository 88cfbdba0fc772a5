"""Full analysis of one algebra file, certificates, and their independent replay."""
from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .algebra import LieAlgebra, center, is_nilpotent, validate_jacobi, verify_grading
from .cohomology import NOMIZU_LABEL, betti_vector, cohomology, euler_characteristic, parity_report
from .contact import is_contact, k_contact_report, reeb
from .coordinates import match_structure, verify_group_law, verify_left_invariance
from .errors import InvalidInput, InvariantViolation
from .exterior import Form, format_form
from .io import AlgebraInput, form_from_json, form_to_json, parse_data, rational_str, serialize, \
    vector_to_json
from .lefschetz import Outcome, Overall, Witness, hard_lefschetz_report, lefschetz_image, \
    replay_witness

DOSSIER_FORMAT = "nilcontact-dossier/1"
CERTIFICATE_FORMAT = "nilcontact-certificate/1"

CONCLUSION = ("no Sasakian metric compatible with {form}, invariant or otherwise, exists on "
              "the compact nilmanifold M built from {name}")


def _vector_name(v, names) -> str:
    parts = []
    for c, nm in zip(v, names):
        if c:
            coef = "" if c == 1 else "-" if c == -1 else f"{rational_str(c)}*"
            parts.append(f"{coef}{nm}")
    return " + ".join(parts).replace("+ -", "- ") or "0"


def identity_text(w: Witness, n: int) -> str:
    power = n - w.degree
    lhs = "η" + (f"∧(dη)^{power}" if power > 1 else "∧dη" if power == 1 else "") + "∧β"
    if w.kind == "kernel":
        return (f"{lhs} = dγ:  {format_form(w.image)} = d({format_form(w.primitive)}), "
                f"with β = {format_form(w.beta)} not exact")
    return (f"β = dδ:  {format_form(w.beta)} = d({format_form(w.primitive)}), "
            f"while {lhs} = {format_form(w.image)} is not exact")


def build_certificate(inp: AlgebraInput, form_name: str, eta: Form, w: Witness) -> dict:
    n = (inp.algebra.dim - 1) // 2
    return {
        "format": CERTIFICATE_FORMAT,
        "algebra": serialize(inp),
        "contact_form": form_name,
        "eta": vector_to_json(eta.coefficient((i,)) for i in range(inp.algebra.dim)),
        "degree": w.degree,
        "kind": w.kind,
        "beta": form_to_json(w.beta),
        "image": form_to_json(w.image),
        "primitive": form_to_json(w.primitive),
        "identity": identity_text(w, n),
        "claim": (f"R_Lef_{w.degree} is not the graph of an isomorphism; "
                  + CONCLUSION.format(name=inp.name, form=form_name)),
    }


def verify_certificate(cert: dict) -> tuple:
    """Replay a certificate from its own data. Returns (ok, message)."""
    try:
        if cert.get("format") != CERTIFICATE_FORMAT:
            return False, "not a certificate"
        inp = parse_data(cert["algebra"])
        L = inp.algebra
        eta = Form.one_form(cert["eta"])
        p = int(cert["degree"])
        kind = cert["kind"]
        beta = form_from_json(cert["beta"], L.dim, p, "beta")
        prim_deg = p - 1 if kind == "functionality" else L.dim - p - 1
        primitive = form_from_json(cert["primitive"], L.dim, max(prim_deg, 0), "primitive")
        image = form_from_json(cert["image"], L.dim, L.dim - p, "image")
    except (KeyError, TypeError, ValueError) as exc:
        return False, f"malformed certificate: {exc}"
    w = Witness(kind, p, beta, image, primitive)
    if not replay_witness(L, eta, w):
        return False, f"replay failed for {inp.name} degree {p}"
    if lefschetz_image(L, eta, p, beta) != image:
        return False, "recorded image differs from the recomputed image"
    return True, f"{inp.name}: degree {p} {kind} witness verified"


def _lefschetz_section(inp: AlgebraInput, form_name: str, eta: Form) -> tuple:
    L = inp.algebra
    rep = hard_lefschetz_report(L, eta)
    verdicts = []
    certs = []
    for v in rep.verdicts:
        d = v.diagnostics
        entry = {
            "p": v.degree,
            "outcome": v.outcome.value,
            "diagnostics": {
                "dim_admissible": d.dim_admissible,
                "dim_relation": d.dim_relation,
                "dim_H_p": d.dim_source,
                "dim_H_q": d.dim_target,
                "dim_projection_H_p": d.dim_source_projection,
                "dim_projection_H_q": d.dim_target_projection,
                "dim_R_cap_0_plus_Hq": d.dim_target_only,
                "dim_R_cap_Hp_plus_0": d.dim_source_only,
            },
            "witnesses": [{"kind": w.kind, "beta": form_to_json(w.beta),
                           "primitive": form_to_json(w.primitive),
                           "identity": identity_text(w, (L.dim - 1) // 2)} for w in v.witnesses],
        }
        if v.note:
            entry["note"] = v.note
        verdicts.append(entry)
        for w in v.witnesses:
            certs.append(build_certificate(inp, form_name, eta, w))
    section = {"overall": rep.overall.value, "verdicts": verdicts}
    if rep.certified_degree is not None:
        section["certified_degree"] = rep.certified_degree
        section["conclusion"] = CONCLUSION.format(name=inp.name, form=form_name)
    elif rep.overall is Overall.LEFSCHETZ_INVARIANT_PASS:
        section["conclusion"] = ("every invariant Lefschetz relation is the graph of an "
                                 "isomorphism (statement about invariant forms only)")
    return section, certs


def contact_section(inp: AlgebraInput, form_name: str) -> tuple:
    L = inp.algebra
    eta = inp.contact_forms[form_name]
    c = is_contact(L, eta)
    out = {"eta": vector_to_json(eta.coefficient((i,)) for i in range(L.dim)),
           "contact": c.is_contact,
           "volume": form_to_json(c.volume),
           "volume_coefficient": rational_str(c.volume_coefficient)}
    certs = []
    if c.is_contact:
        out["reeb"] = vector_to_json(reeb(L, eta))
        out["lefschetz"], certs = _lefschetz_section(inp, form_name, eta)
    return out, certs


def structure_section(inp: AlgebraInput, name: str) -> dict:
    L = inp.algebra
    spec = inp.structures[name]
    v = k_contact_report(L, spec.eta, spec.ms)
    out = {"eta": spec.eta_name or vector_to_json(
        spec.eta.coefficient((i,)) for i in range(L.dim)), "contact": v.contact}
    if v.metric_report is not None:
        out["axioms"] = {c.name: {"passed": c.passed, **(
            {"counterexample": [L.basis_names[i] for i in c.counterexample]}
            if c.counterexample is not None else {})} for c in v.metric_report.checks}
    out.update(v.flags)
    if v.normality is not None:
        out["normality_nonzero_pairs"] = [
            [L.basis_names[i], L.basis_names[j]] for i, j in v.normality.nonzero_pairs()]
    out["note"] = ("INVARIANT_SASAKIAN concerns this left-invariant (phi, g) only; "
                   "non-existence of arbitrary compatible Sasakian metrics comes from the "
                   "Lefschetz certificate")
    return out


def run_dossier(inp: AlgebraInput) -> dict:
    """Run the complete pipeline. Certificates are replayed before being emitted."""
    L = inp.algebra
    nil, series = is_nilpotent(L)
    alg = {
        "jacobi_violations": [list(v.triple) for v in validate_jacobi(L)],
        "nilpotent": nil,
        "lower_central_series": list(series),
        "center": [_vector_name(b, L.basis_names) for b in center(L).basis],
    }
    if L.grading is not None:
        alg["grading"] = {"weights": list(L.grading), "valid": verify_grading(L, L.grading)}
    betti = betti_vector(L)
    coh = {
        "label": NOMIZU_LABEL,
        "betti": list(betti),
        "H1_representatives": [form_to_json(f) for f in cohomology(L, 1).representatives],
        "poincare_duality": all(betti[k] == betti[L.dim - k] for k in range(L.dim + 1)),
        "euler_characteristic": euler_characteristic(betti),
    }
    if L.dim % 2 == 1:
        pr = parity_report(L)
        coh["parity"] = {"summary": pr["summary"], "obstructed_degrees": pr["obstructed_degrees"],
                         "checked": {str(e.p): e.betti for e in pr["entries"] if e.required_even}}
    dossier = {"format": DOSSIER_FORMAT, "input": serialize(inp), "algebra": alg,
               "cohomology": coh}
    certs = []
    if inp.contact_forms:
        if L.dim % 2 == 0:
            raise InvalidInput("contact forms given on an even-dimensional algebra")
        dossier["contact_forms"] = {}
        for name in inp.contact_forms:
            section, c = contact_section(inp, name)
            dossier["contact_forms"][name] = section
            certs.extend(c)
    if inp.structures:
        dossier["structures"] = {name: structure_section(inp, name) for name in inp.structures}
    if inp.group_law is not None:
        dossier["coordinate_model"] = coordinate_section(inp)
    for cert in certs:
        ok, msg = verify_certificate(cert)
        if not ok:
            raise InvariantViolation(f"emitted certificate does not replay: {msg}")
    dossier["certificates"] = certs
    return dossier


def coordinate_section(inp: AlgebraInput) -> dict:
    law = verify_group_law(inp.group_law)
    inv = verify_left_invariance(inp.group_law, inp.coframe)
    out = {"group_law_associative_with_unit": law.ok,
           "coframe_left_invariant": inv.ok,
           "failures": [label for label, _ in law.failures + inv.failures]}
    match = match_structure(inp.group_law, inp.coframe, inp.algebra)
    out["structure_equations_match"] = match.ok
    out["warnings"] = [f"d(alpha{i + 1}): coordinates give {got}, algebra gives {exp}"
                       for i, got, exp in match.mismatches]
    return out


def overall_verdicts(dossier: dict) -> list:
    return [sec["lefschetz"]["overall"] for sec in dossier.get("contact_forms", {}).values()
            if "lefschetz" in sec]


def render_text(d: dict) -> str:
    inp = d["input"]
    lines = [f"== {inp['name']} (dim {inp['dim']}) =="]
    alg = d["algebra"]
    lines.append(f"Jacobi identity: {'ok' if not alg['jacobi_violations'] else 'FAILS'}")
    lines.append(f"nilpotent: {alg['nilpotent']}  lower central series dims: "
                 f"{tuple(alg['lower_central_series'])}")
    lines.append(f"center: span{{{', '.join(alg['center'])}}}")
    if "grading" in alg:
        lines.append(f"grading {tuple(alg['grading']['weights'])}: "
                     f"{'valid' if alg['grading']['valid'] else 'INVALID'}")
    coh = d["cohomology"]
    lines.append(f"Betti numbers: {tuple(coh['betti'])}   [{coh['label']}]")
    if "parity" in coh:
        lines.append(f"Betti parity (odd p <= n): {coh['parity']['summary']}")
    for name, sec in d.get("contact_forms", {}).items():
        lines.append(f"-- contact form {name} --")
        lines.append(f"contact: {sec['contact']}  eta^(d eta)^n = "
                     f"{_fmt(sec['volume'], inp['dim'])}")
        if "reeb" in sec:
            lines.append(f"Reeb field: {_vector_name([Fraction(x) for x in sec['reeb']], inp['basis'])}")
            lef = sec["lefschetz"]
            for v in lef["verdicts"]:
                lines.append(f"  p={v['p']}: {v['outcome']}")
                if v["witnesses"]:
                    lines.append(f"      witness: {v['witnesses'][0]['identity']}")
                    if len(v["witnesses"]) > 1:
                        lines.append(f"      (+{len(v['witnesses']) - 1} further witnesses)")
            lines.append(f"overall: {lef['overall']}")
            if "conclusion" in lef:
                lines.append(f"  => {lef['conclusion']}")
    for name, sec in d.get("structures", {}).items():
        lines.append(f"-- structure {name} --")
        for ax, res in sec.get("axioms", {}).items():
            extra = f" at {tuple(res['counterexample'])}" if "counterexample" in res else ""
            lines.append(f"  {ax}: {'pass' if res['passed'] else 'FAIL'}{extra}")
        lines.append("  " + "  ".join(f"{k}={sec[k]}" for k in
                                      ("CONTACT_METRIC", "K_CONTACT", "INVARIANT_SASAKIAN")))
    if "coordinate_model" in d:
        cm = d["coordinate_model"]
        lines.append("-- coordinate model --")
        lines.append(f"  group law associative with unit 0: {cm['group_law_associative_with_unit']}")
        lines.append(f"  coframe left-invariant: {cm['coframe_left_invariant']}")
        lines.append(f"  structure equations match algebra: {cm['structure_equations_match']}")
        for w in cm["warnings"]:
            lines.append(f"  warning: {w}")
    lines.append(f"certificates: {len(d.get('certificates', []))} (all replayed)")
    return "\n".join(lines) + "\n"


def _fmt(form_json: dict, dim: int) -> str:
    if not form_json:
        return "0"
    deg = len(next(iter(form_json)).split(",")) if next(iter(form_json)) else 0
    return format_form(form_from_json(form_json, dim, deg))


def expectation_label(outcome: Optional[str]) -> Optional[str]:
    """Map a verdict string to the CLI's --expect vocabulary."""
    return {Outcome.SOUND_FAIL.value: "certified", Outcome.INVARIANT_PASS.value: "pass",
            Outcome.INCONCLUSIVE.value: "inconclusive",
            Overall.NON_SASAKIAN_CERTIFIED.value: "certified",
            Overall.LEFSCHETZ_INVARIANT_PASS.value: "pass"}.get(outcome)
