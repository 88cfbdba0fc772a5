"""Command-line interface.

Exit codes: 0 computed (and expectation met), 1 ``--expect`` mismatch,
2 invalid input, 3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import catalog
from .algebra import center, is_nilpotent, validate_jacobi
from .cohomology import NOMIZU_LABEL, betti_vector, cohomology, parity_report
from .contact import is_contact, k_contact_report, reeb
from .dossier import (_vector_name, contact_section, expectation_label, overall_verdicts,
                      render_text, run_dossier, structure_section, verify_certificate)
from .errors import InvalidInput, InvariantViolation
from .exterior import format_form
from .io import AlgebraInput, dumps, form_to_json, parse_input, rational_str, serialize, \
    vector_to_json
from .lefschetz import hard_lefschetz_report, lefschetz_verdict

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2, 3


def load(source: str) -> AlgebraInput:
    """A JSON file path, or the name of a built-in catalog entry."""
    if not Path(source).exists() and source in catalog.NAMES:
        return catalog.get(source)
    return parse_input(Path(source))


def _pick_form(inp: AlgebraInput, name: Optional[str]) -> str:
    if name is None:
        if len(inp.contact_forms) == 1:
            return next(iter(inp.contact_forms))
        raise InvalidInput(f"--form required; available: {sorted(inp.contact_forms)}")
    if name not in inp.contact_forms:
        raise InvalidInput(f"unknown contact form {name!r}; available: {sorted(inp.contact_forms)}")
    return name


def _emit(args, text: str, data) -> None:
    out = dumps(data) if args.format == "json" else text
    if args.out:
        Path(args.out).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)


def _check_expect(args, labels) -> int:
    if not args.expect:
        return EXIT_OK
    got = [expectation_label(x) for x in labels]
    if got and all(g == args.expect for g in got):
        return EXIT_OK
    sys.stderr.write(f"expectation {args.expect!r} not met: got {labels}\n")
    return EXIT_MISMATCH


def cmd_validate(args) -> int:
    inp = load(args.file)
    L = inp.algebra
    nil, series = is_nilpotent(L)
    data = {"name": L.name, "dim": L.dim, "brackets": len(L.brackets),
            "jacobi_violations": [list(v.triple) for v in validate_jacobi(L)],
            "nilpotent": nil, "lower_central_series": list(series),
            "center": [_vector_name(b, L.basis_names) for b in center(L).basis],
            "contact_forms": sorted(inp.contact_forms), "structures": sorted(inp.structures),
            "coordinate_model": inp.group_law is not None}
    text = (f"{L.name}: valid Lie algebra of dim {L.dim} ({len(L.brackets)} brackets), "
            f"nilpotent={nil}, lower central series {tuple(series)}\n")
    _emit(args, text, data)
    return EXIT_OK


def cmd_betti(args) -> int:
    inp = load(args.file)
    L = inp.algebra
    b = betti_vector(L)
    data = {"name": L.name, "betti": list(b), "label": NOMIZU_LABEL,
            "H1_representatives": [form_to_json(f) for f in cohomology(L, 1).representatives]}
    text = f"{L.name}: betti {tuple(b)}  [{NOMIZU_LABEL}]\n"
    if L.dim % 2:
        pr = parity_report(L)
        data["parity"] = pr["summary"]
        text += f"parity: {pr['summary']}\n"
    _emit(args, text, data)
    return EXIT_OK


def cmd_contact(args) -> int:
    inp = load(args.file)
    name = _pick_form(inp, args.form)
    L = inp.algebra
    c = is_contact(L, inp.contact_forms[name])
    data = {"form": name, "contact": c.is_contact, "volume": form_to_json(c.volume),
            "volume_coefficient": rational_str(c.volume_coefficient)}
    text = f"{name}: contact={c.is_contact}  eta^(d eta)^n = {format_form(c.volume)}\n"
    if c.is_contact:
        xi = reeb(L, inp.contact_forms[name])
        data["reeb"] = vector_to_json(xi)
        text += f"Reeb field: {_vector_name(xi, L.basis_names)}\n"
    _emit(args, text, data)
    return EXIT_OK


def cmd_lefschetz(args) -> int:
    inp = load(args.file)
    name = _pick_form(inp, args.form)
    L = inp.algebra
    eta = inp.contact_forms[name]
    if args.p is not None:
        v = lefschetz_verdict(L, eta, args.p)
        data = {"form": name, "p": v.degree, "outcome": v.outcome.value,
                "diagnostics": v.diagnostics.__dict__,
                "witnesses": [{"kind": w.kind, "beta": form_to_json(w.beta),
                               "primitive": form_to_json(w.primitive)} for w in v.witnesses]}
        text = f"{name} p={v.degree}: {v.outcome.value}\n"
        for w in v.witnesses:
            text += f"  witness ({w.kind}): beta = {format_form(w.beta)}, " \
                    f"primitive = {format_form(w.primitive)}\n"
        _emit(args, text, data)
        return _check_expect(args, [v.outcome.value])
    section, certs = contact_section(inp, name)
    lef = section["lefschetz"]
    text = "".join(f"{name} p={v['p']}: {v['outcome']}\n" for v in lef["verdicts"])
    text += f"overall: {lef['overall']}\n"
    if "conclusion" in lef:
        text += f"=> {lef['conclusion']}\n"
    _emit(args, text, {"form": name, **lef, "certificates": certs})
    return _check_expect(args, [lef["overall"]])


def cmd_kcontact(args) -> int:
    inp = load(args.file)
    if args.structure not in inp.structures:
        raise InvalidInput(f"unknown structure {args.structure!r}; "
                           f"available: {sorted(inp.structures)}")
    sec = structure_section(inp, args.structure)
    lines = [f"structure {args.structure}:"]
    for ax, res in sec.get("axioms", {}).items():
        lines.append(f"  {ax}: {'pass' if res['passed'] else 'FAIL'}")
    lines.append("  " + "  ".join(f"{k}={sec[k]}" for k in
                                  ("CONTACT_METRIC", "K_CONTACT", "INVARIANT_SASAKIAN")))
    _emit(args, "\n".join(lines) + "\n", sec)
    return EXIT_OK


def cmd_dossier(args) -> int:
    d = run_dossier(load(args.file))
    _emit(args, render_text(d), d)
    return _check_expect(args, overall_verdicts(d))


def cmd_catalog(args) -> int:
    if args.action == "list":
        data = [{"name": n, "dim": catalog.raw(n)["dim"]} for n in catalog.names()]
        _emit(args, "".join(f"{e['name']}  (dim {e['dim']})\n" for e in data), data)
        return EXIT_OK
    if args.action == "get":
        if not args.name:
            raise InvalidInput("catalog get needs an entry name")
        data = serialize(catalog.get(args.name))
        _emit(args, dumps(data), data)
        return EXIT_OK
    # run
    if args.all or not args.name:
        names = catalog.names()
    else:
        names = [args.name]
    dossiers = [run_dossier(catalog.get(n)) for n in names]
    text = "".join(render_text(d) + "\n" for d in dossiers)
    _emit(args, text, dossiers)
    return _check_expect(args, [v for d in dossiers for v in overall_verdicts(d)])


def _collect_certificates(data) -> list:
    if isinstance(data, list):
        return [c for item in data for c in _collect_certificates(item)]
    if isinstance(data, dict):
        if data.get("format", "").startswith("nilcontact-certificate"):
            return [data]
        if "certificates" in data:
            return list(data["certificates"])
    return []


def cmd_verify_certificate(args) -> int:
    try:
        data = json.loads(Path(args.file).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read certificate file: {exc}") from exc
    certs = _collect_certificates(data)
    if not certs:
        raise InvalidInput("no certificates found in file")
    results = [verify_certificate(c) for c in certs]
    text = "".join(f"{'OK  ' if ok else 'FAIL'} {msg}\n" for ok, msg in results)
    _emit(args, text, [{"ok": ok, "message": msg} for ok, msg in results])
    return EXIT_OK if all(ok for ok, _ in results) else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", help="write output to this path instead of stdout")
    common.add_argument("--expect", choices=("certified", "pass", "inconclusive"),
                        help="exit with status 1 unless the verdict matches")

    parser = argparse.ArgumentParser(
        prog="nilcontact",
        description="Cohomology, contact structures and Lefschetz obstructions for "
                    "nilpotent Lie algebras, in exact arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="parse and validate an algebra file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("betti", parents=[common], help="Betti numbers and parity report")
    p.add_argument("file")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("contact", parents=[common], help="contact condition and Reeb field")
    p.add_argument("file")
    p.add_argument("--form")
    p.set_defaults(func=cmd_contact)

    p = sub.add_parser("lefschetz", parents=[common], help="Lefschetz relation verdicts")
    p.add_argument("file")
    p.add_argument("--form")
    p.add_argument("--p", type=int)
    p.set_defaults(func=cmd_lefschetz)

    p = sub.add_parser("kcontact", parents=[common], help="contact-metric / K-contact checks")
    p.add_argument("file")
    p.add_argument("--structure", required=True)
    p.set_defaults(func=cmd_kcontact)

    p = sub.add_parser("dossier", parents=[common], help="full analysis")
    p.add_argument("file")
    p.set_defaults(func=cmd_dossier)

    p = sub.add_parser("catalog", parents=[common], help="built-in algebras")
    p.add_argument("action", choices=("list", "get", "run"))
    p.add_argument("name", nargs="?")
    p.add_argument("--all", action="store_true")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify-certificate", parents=[common],
                       help="replay certificates (a certificate, a list, or a dossier)")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify_certificate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidInput as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return EXIT_INVALID
    except InvariantViolation as exc:
        sys.stderr.write(f"internal invariant violated: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
