"""JSON input format for algebras and their attachments.

An algebra file looks like::

    {
      "name": "heisenberg3",
      "dim": 3,
      "basis": ["X1", "X2", "X3"],
      "brackets": [{"on": [1, 2], "result": {"3": "1"}}],
      "grading": [1, 1, 2],
      "contact_forms": {"alpha3": ["0", "0", "1"]},
      "structures": {"standard": {"eta": "alpha3", "phi": [[...]], "metric": [[...]]}},
      "coordinate_model": {"group_law": ["x1 + y1", ...], "coframe": ["dx1", ...]}
    }

Indices are 1-based; bracket pairs must have the smaller index first.
Rationals are strings ``"p/q"`` (plain integers are accepted too).
``phi[i][j]`` is the X_{i+1}-coordinate of phi(X_{j+1}).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from .algebra import LieAlgebra
from .contact import MetricStructure
from .coordinates import GroupLaw, PolyForm, format_group_law, format_one_form, parse_group_law, \
    parse_one_form
from .errors import InvalidInput
from .exterior import Form
from .linalg import QMatrix, as_fraction

KNOWN_FIELDS = {"name", "dim", "basis", "brackets", "grading", "contact_forms", "structures",
                "coordinate_model", "notes"}


def rational_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(value, where: str) -> Fraction:
    if isinstance(value, float):
        raise InvalidInput(f"{where}: floating-point value {value!r}; write it as a string \"p/q\"")
    try:
        return as_fraction(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InvalidInput(f"{where}: not an exact rational: {value!r}") from exc


def form_to_json(a: Form) -> dict:
    """{"1,2": "-1", ...} with 1-based indices; the empty key is the 0-form part."""
    return {",".join(str(i + 1) for i in idx): rational_str(c) for idx, c in a.items()}


def form_from_json(data: dict, dim: int, degree: int, where: str = "form") -> Form:
    if not isinstance(data, dict):
        raise InvalidInput(f"{where}: expected an object mapping monomials to rationals")
    terms = {}
    for key, val in data.items():
        try:
            idx = tuple(int(s) - 1 for s in key.split(",")) if key.strip() else ()
        except ValueError as exc:
            raise InvalidInput(f"{where}: bad monomial key {key!r}") from exc
        if len(idx) != degree or any(not 0 <= i < dim for i in idx):
            raise InvalidInput(f"{where}: monomial {key!r} invalid for a {degree}-form in dim {dim}")
        terms[idx] = parse_rational(val, f"{where}[{key!r}]")
    return Form(dim, degree, terms)


def vector_to_json(v) -> list:
    return [rational_str(x) for x in v]


def matrix_to_json(m: QMatrix) -> list:
    return [[rational_str(x) for x in row] for row in m.entries]


@dataclass
class StructureSpec:
    eta_name: Optional[str]
    eta: Form
    ms: MetricStructure


@dataclass
class AlgebraInput:
    algebra: LieAlgebra
    contact_forms: dict = field(default_factory=dict)  # name -> Form
    structures: dict = field(default_factory=dict)  # name -> StructureSpec
    group_law: Optional[GroupLaw] = None
    coframe: Optional[list] = None  # list of PolyForm
    notes: str = ""

    @property
    def name(self) -> str:
        return self.algebra.name


def _matrix(rows, n, where) -> QMatrix:
    if not isinstance(rows, list) or len(rows) != n or any(
            not isinstance(r, list) or len(r) != n for r in rows):
        raise InvalidInput(f"{where}: expected a {n}x{n} matrix")
    return QMatrix.from_rows([[parse_rational(x, f"{where}[{i + 1}][{j + 1}]")
                               for j, x in enumerate(r)] for i, r in enumerate(rows)])


def _vector(vals, n, where):
    if not isinstance(vals, list) or len(vals) != n:
        raise InvalidInput(f"{where}: expected a list of {n} rationals")
    return [parse_rational(x, f"{where}[{i + 1}]") for i, x in enumerate(vals)]


def parse_data(data: dict) -> AlgebraInput:
    """Validate a decoded algebra file and build the algebra and attachments."""
    if not isinstance(data, dict):
        raise InvalidInput("top level must be a JSON object")
    unknown = set(data) - KNOWN_FIELDS
    if unknown:
        raise InvalidInput(f"unknown fields: {sorted(unknown)}")
    for req in ("name", "dim", "brackets"):
        if req not in data:
            raise InvalidInput(f"missing required field {req!r}")
    dim = data["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise InvalidInput("dim: expected a positive integer")
    basis = data.get("basis") or [f"X{i + 1}" for i in range(dim)]
    if not isinstance(basis, list) or len(basis) != dim:
        raise InvalidInput(f"basis: expected {dim} names")
    brackets = {}
    if not isinstance(data["brackets"], list):
        raise InvalidInput("brackets: expected a list")
    for n, rec in enumerate(data["brackets"]):
        where = f"brackets[{n}]"
        if not isinstance(rec, dict) or set(rec) != {"on", "result"}:
            raise InvalidInput(f"{where}: expected an object with fields 'on' and 'result'")
        on = rec["on"]
        if (not isinstance(on, list) or len(on) != 2
                or not all(isinstance(k, int) and not isinstance(k, bool) for k in on)):
            raise InvalidInput(f"{where}.on: expected two integer indices")
        i, j = on
        if not (1 <= i <= dim and 1 <= j <= dim):
            raise InvalidInput(f"{where}.on: index out of range 1..{dim}")
        if i >= j:
            raise InvalidInput(f"{where}.on: pair [{i}, {j}] must be listed with i < j")
        if (i - 1, j - 1) in brackets:
            raise InvalidInput(f"{where}.on: duplicate bracket [{i}, {j}]")
        res = rec["result"]
        if not isinstance(res, dict):
            raise InvalidInput(f"{where}.result: expected an object index -> rational")
        vec = {}
        for key, val in res.items():
            try:
                k = int(key)
            except ValueError as exc:
                raise InvalidInput(f"{where}.result: bad index {key!r}") from exc
            if not 1 <= k <= dim:
                raise InvalidInput(f"{where}.result: index {k} out of range 1..{dim}")
            vec[k - 1] = parse_rational(val, f"{where}.result[{key!r}]")
        brackets[(i - 1, j - 1)] = vec
    grading = data.get("grading")
    if grading is not None:
        if not isinstance(grading, list) or len(grading) != dim or not all(
                isinstance(w, int) and not isinstance(w, bool) and w > 0 for w in grading):
            raise InvalidInput(f"grading: expected {dim} positive integers")
    L = LieAlgebra(dim, brackets, basis, grading, name=str(data["name"]))

    forms = {}
    for fname, vals in (data.get("contact_forms") or {}).items():
        forms[fname] = Form.one_form(_vector(vals, dim, f"contact_forms.{fname}"))

    structures = {}
    for sname, rec in (data.get("structures") or {}).items():
        where = f"structures.{sname}"
        if not isinstance(rec, dict) or not {"eta", "phi"} <= set(rec):
            raise InvalidInput(f"{where}: expected fields 'eta', 'phi' and optionally 'metric'")
        eta_ref = rec["eta"]
        if isinstance(eta_ref, str):
            if eta_ref not in forms:
                raise InvalidInput(f"{where}.eta: unknown contact form {eta_ref!r}")
            eta_name, eta = eta_ref, forms[eta_ref]
        else:
            eta_name, eta = None, Form.one_form(_vector(eta_ref, dim, f"{where}.eta"))
        phi = _matrix(rec["phi"], dim, f"{where}.phi")
        metric = _matrix(rec["metric"], dim, f"{where}.metric") if "metric" in rec \
            else QMatrix.identity(dim)
        structures[sname] = StructureSpec(eta_name, eta, MetricStructure(phi, metric))

    group_law = coframe = None
    cm = data.get("coordinate_model")
    if cm is not None:
        if not isinstance(cm, dict) or set(cm) != {"group_law", "coframe"}:
            raise InvalidInput("coordinate_model: expected fields 'group_law' and 'coframe'")
        if len(cm["group_law"]) != dim or len(cm["coframe"]) != dim:
            raise InvalidInput(f"coordinate_model: expected {dim} components and {dim} forms")
        group_law = parse_group_law(cm["group_law"])
        coframe = [parse_one_form(s, dim) for s in cm["coframe"]]
    return AlgebraInput(L, forms, structures, group_law, coframe, str(data.get("notes", "")))


def parse_input(source: Union[str, Path, dict]) -> AlgebraInput:
    """Parse a path, a JSON string, or an already-decoded dict."""
    if isinstance(source, dict):
        return parse_data(source)
    text = None
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        path = Path(source)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise InvalidInput(f"cannot read {path}: {exc}") from exc
    else:
        text = source
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") \
            from exc
    return parse_data(data)


def serialize(inp: AlgebraInput) -> dict:
    """Canonical JSON-ready form of an input (brackets sorted, rationals as strings)."""
    L = inp.algebra
    out = {
        "name": L.name,
        "dim": L.dim,
        "basis": list(L.basis_names),
        "brackets": [
            {"on": [i + 1, j + 1],
             "result": {str(k + 1): rational_str(c) for k, c in enumerate(v) if c}}
            for (i, j), v in sorted(L.brackets.items())
        ],
    }
    if L.grading is not None:
        out["grading"] = list(L.grading)
    if inp.contact_forms:
        out["contact_forms"] = {name: [rational_str(f.coefficient((i,))) for i in range(L.dim)]
                                for name, f in inp.contact_forms.items()}
    if inp.structures:
        out["structures"] = {
            name: {
                "eta": s.eta_name if s.eta_name is not None else
                [rational_str(s.eta.coefficient((i,))) for i in range(L.dim)],
                "phi": matrix_to_json(s.ms.phi),
                "metric": matrix_to_json(s.ms.metric),
            } for name, s in inp.structures.items()}
    if inp.group_law is not None:
        out["coordinate_model"] = {
            "group_law": format_group_law(inp.group_law),
            "coframe": [format_one_form(a) for a in inp.coframe],
        }
    if inp.notes:
        out["notes"] = inp.notes
    return out


def dumps(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
