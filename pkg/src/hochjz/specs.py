"""Reading algebra, module, subspace and morphism spec files.

Every problem is raised as SpecError with a path such as ``table[1][0][2]``.
"""

from __future__ import annotations

import json
from pathlib import Path

from .algebra import (
    Algebra, AlgebraMorphism, Ideal, Module, SpecError, subalgebra_inclusion, validate_algebra,
    validate_module,
)
from .linalg import Field, Matrix, Subspace, sparse


def load_json(path: str | Path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SpecError(str(path), f"cannot read file ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(str(path), f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc


def _scalar(field: Field, x, path: str):
    try:
        return field(x)
    except ValueError as exc:
        raise SpecError(path, str(exc)) from exc


def _vector(field: Field, v, n: int, path: str) -> dict:
    if not isinstance(v, list):
        raise SpecError(path, "expected a list of coefficients")
    if len(v) != n:
        raise SpecError(path, f"expected {n} coefficients, got {len(v)}")
    return sparse([_scalar(field, x, f"{path}[{k}]") for k, x in enumerate(v)], field)


def _field_of(doc: dict, default: Field | None, path: str) -> Field:
    spec = doc.get("field")
    if spec is None:
        return default or Field(0)
    if not isinstance(spec, dict) or "char" not in spec:
        raise SpecError(f"{path}.field", 'expected {"char": 0 or a prime}')
    try:
        f = Field(spec["char"])
    except (TypeError, ValueError) as exc:
        raise SpecError(f"{path}.field.char", str(exc)) from exc
    if default is not None and f != default:
        raise SpecError(f"{path}.field.char", f"file says characteristic {f.characteristic}, "
                                              f"--field says {default.characteristic}")
    return f


def parse_algebra(doc, field: Field | None = None, name: str = "A", path: str = "algebra") -> Algebra:
    """{"field": {"char": p}, "basis": [...], "unit": [...], "table": c[i][j][k]}."""
    if not isinstance(doc, dict):
        raise SpecError(path, "expected a JSON object")
    f = _field_of(doc, field, path)
    if "table" not in doc:
        raise SpecError(f"{path}.table", "missing")
    table = doc["table"]
    if not isinstance(table, list) or not table:
        raise SpecError(f"{path}.table", "expected a non-empty d x d x d array")
    d = len(table)
    labels = doc.get("basis", [f"e{i}" for i in range(d)])
    if not isinstance(labels, list) or len(labels) != d:
        raise SpecError(f"{path}.basis", f"expected {d} labels")
    mult = []
    for i, row in enumerate(table):
        if not isinstance(row, list) or len(row) != d:
            raise SpecError(f"{path}.table[{i}]", f"expected {d} entries")
        mult.append([_vector(f, row[j], d, f"{path}.table[{i}][{j}]") for j in range(d)])
    unit = doc.get("unit")
    u = _vector(f, unit, d, f"{path}.unit") if unit is not None else None
    a = Algebra(f, mult, u, [str(x) for x in labels], doc.get("name", name))
    rep = validate_algebra(a)
    if not rep:
        where = f"{path}.table" if rep.kind == "associativity" else f"{path}.unit"
        raise SpecError(where, rep.message)
    return a


def _matrices(f: Field, mats, count: int, dim: int, path: str) -> list:
    if not isinstance(mats, list) or len(mats) != count:
        raise SpecError(path, f"expected {count} matrices (one per algebra basis element)")
    out = []
    for i, m in enumerate(mats):
        if not isinstance(m, list) or len(m) != dim or any(not isinstance(r, list) or len(r) != dim for r in m):
            raise SpecError(f"{path}[{i}]", f"expected a {dim} x {dim} matrix")
        rows = [[_scalar(f, x, f"{path}[{i}][{r}][{c}]") for c, x in enumerate(row)] for r, row in enumerate(m)]
        out.append(Matrix.from_rows(f, rows, dim))
    return out


def parse_module(doc, a: Algebra, name: str = "M", path: str = "module") -> Module:
    """{"parity": .., "dim": n, "left_action": [...], "right_action": [...]}."""
    if not isinstance(doc, dict):
        raise SpecError(path, "expected a JSON object")
    parity = doc.get("parity")
    if parity not in ("left", "right", "bi"):
        raise SpecError(f"{path}.parity", 'expected "left", "right" or "bi"')
    dim = doc.get("dim")
    if not isinstance(dim, int) or dim < 0:
        raise SpecError(f"{path}.dim", "expected a non-negative integer")
    f = a.field
    left = right = None
    if parity in ("left", "bi"):
        if "left_action" not in doc:
            raise SpecError(f"{path}.left_action", "missing")
        left = _matrices(f, doc["left_action"], a.dim, dim, f"{path}.left_action")
    if parity in ("right", "bi"):
        if "right_action" not in doc:
            raise SpecError(f"{path}.right_action", "missing")
        right = _matrices(f, doc["right_action"], a.dim, dim, f"{path}.right_action")
    m = Module(a, parity, dim, left, right, doc.get("name", name))
    rep = validate_module(m)
    if not rep:
        raise SpecError(path, rep.message)
    return m


def parse_span(doc, a: Algebra, path: str) -> Subspace:
    if isinstance(doc, dict):
        doc = doc.get("vectors")
    if not isinstance(doc, list):
        raise SpecError(path, "expected a list of coefficient vectors")
    vecs = [_vector(a.field, v, a.dim, f"{path}[{k}]") for k, v in enumerate(doc)]
    return Subspace.span(a.field, a.dim, vecs)


def parse_subalgebra(doc, a: Algebra, path: str = "subalgebra") -> AlgebraMorphism:
    span = parse_span(doc, a, path)
    try:
        return subalgebra_inclusion(a, span, name="B")
    except ValueError as exc:
        raise SpecError(path, str(exc)) from exc


def parse_ideal(doc, a: Algebra, path: str = "ideal") -> Ideal:
    span = parse_span(doc, a, path)
    try:
        return Ideal(a, span)
    except ValueError as exc:
        raise SpecError(path, str(exc)) from exc


def parse_morphism(doc, target: Algebra, path: str = "morphism") -> AlgebraMorphism:
    """{"source": algebra spec, "images": [image of each source basis vector]}."""
    if not isinstance(doc, dict) or "source" not in doc or "images" not in doc:
        raise SpecError(path, 'expected {"source": algebra, "images": [...]}')
    src = parse_algebra(doc["source"], target.field, "B", f"{path}.source")
    imgs = doc["images"]
    if not isinstance(imgs, list) or len(imgs) != src.dim:
        raise SpecError(f"{path}.images", f"expected {src.dim} image vectors")
    cols = [_vector(target.field, v, target.dim, f"{path}.images[{k}]") for k, v in enumerate(imgs)]
    try:
        return AlgebraMorphism(src, target, Matrix(target.field, target.dim, src.dim, cols))
    except ValueError as exc:
        raise SpecError(path, str(exc)) from exc
