"""Reading and writing model files.

A model file is a YAML mapping::

    format: metriclie-model/1
    name: sphere
    dimension: 3
    basis: [e1, e2, e3]
    brackets:            # [i, j, k, c]: coefficient c of e_k in [e_i, e_j]; 1-based, i < j
      - [1, 2, 3, 1]
      - [1, 3, 2, -1]
      - [2, 3, 1, 1]
    isotropy:            # rows spanning h; omit or [] for a group
      - [1, 0, 0]
    complement:          # optional; Killing-orthogonal complement of h when omitted
      - [0, 1, 0]
      - [0, 0, 1]
    metric:              # in complement coordinates; full rows or upper-triangular rows
      - [1, 0]
      - [0, 1]
    subspaces:           # optional named subspaces (k, m1, candidate ideals)
      k_h: [[1, 0, 0]]
    tolerances: {eps_struct: 1e-10, eps_rank: 1e-9}

Numbers may be integers, decimals or exact rationals written as strings
(``"3/2"``).  Indices are 1-based in the file and 0-based in memory.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np
import yaml

from .homogeneous import HomogeneousModel, ModelValidationError, build_model
from .liealg import EPS_RANK, EPS_STRUCT, StructureTensor, Subspace

FORMAT = "metriclie-model/1"

_SECTION_OF = {
    "antisymmetry": "brackets", "jacobi": "brackets", "subalgebra": "isotropy",
    "reductive": "complement", "direct-sum": "complement", "complement-required": "complement",
    "metric-symmetry": "metric", "metric-spd": "metric", "metric-invariance": "metric", "metric-shape": "metric",
    "dimension": "dimension",
}


@dataclass(frozen=True)
class Diagnostic:
    location: str
    message: str
    residual: float = None

    def __str__(self):
        s = f"{self.location}: {self.message}"
        return s if self.residual is None else f"{s} (residual {self.residual:.6g})"


class ModelFileError(ValueError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics))


def _marks(node, path=(), out=None):
    """Map key paths to ``line:column`` and flag duplicate mapping keys."""
    out = {} if out is None else out
    out[path] = f"line {node.start_mark.line + 1}, column {node.start_mark.column + 1}"
    if isinstance(node, yaml.MappingNode):
        seen = set()
        for k, v in node.value:
            if k.value in seen:
                raise ModelFileError([Diagnostic(
                    f"line {k.start_mark.line + 1}, column {k.start_mark.column + 1}",
                    f"duplicate key {k.value!r}")])
            seen.add(k.value)
            _marks(v, path + (k.value,), out)
    elif isinstance(node, yaml.SequenceNode):
        for i, v in enumerate(node.value):
            _marks(v, path + (i,), out)
    return out


class _Reader:
    def __init__(self, marks):
        self.marks = marks
        self.errors = []

    def where(self, path):
        p = tuple(path)
        while p and p not in self.marks:
            p = p[:-1]
        name = ".".join(str(x) for x in path) or "<document>"
        return f"{name} ({self.marks[p]})" if p in self.marks else name

    def fail(self, path, msg, residual=None):
        self.errors.append(Diagnostic(self.where(path), msg, residual))

    def number(self, value, path):
        if isinstance(value, bool):
            self.fail(path, f"expected a number, got {value!r}")
            return 0.0
        if isinstance(value, (int, float)):
            return float(value)
        if isinstance(value, str):
            try:
                return float(Fraction(value.strip()))
            except (ValueError, ZeroDivisionError):
                pass
        self.fail(path, f"expected a number or rational literal, got {value!r}")
        return 0.0

    def rows(self, value, path, width):
        if value is None:
            return np.zeros((0, width))
        if not isinstance(value, list):
            self.fail(path, "expected a list of coordinate vectors")
            return np.zeros((0, width))
        out = []
        for i, row in enumerate(value):
            if not isinstance(row, list) or len(row) != width:
                self.fail(path + [i], f"expected a list of {width} numbers")
                continue
            out.append([self.number(v, path + [i, j]) for j, v in enumerate(row)])
        return np.array(out, dtype=float).reshape(-1, width)

    def subspace(self, value, path, width, label, eps_rank):
        rows = self.rows(value, path, width)
        try:
            return Subspace(rows, label, eps_rank)
        except ValueError as exc:
            self.fail(path, str(exc))
            return None


def _metric(rd: _Reader, value, r):
    path = ["metric"]
    if r == 0:
        if value not in (None, []):
            rd.fail(path, "metric must be empty when the complement is zero-dimensional")
        return np.zeros((0, 0))
    if not isinstance(value, list) or len(value) != r:
        rd.fail(path, f"expected {r} rows for a {r}x{r} metric")
        return None
    lengths = [len(row) if isinstance(row, list) else -1 for row in value]
    upper = lengths == [r - i for i in range(r)] and lengths != [r] * r
    if not upper and lengths != [r] * r:
        rd.fail(path, f"rows must all have {r} entries, or {r}, {r - 1}, ..., 1 "
                      "entries for upper-triangular form")
        return None
    g = np.zeros((r, r))
    for i, row in enumerate(value):
        start = i if upper else 0
        for j, v in enumerate(row):
            g[i, start + j] = rd.number(v, path + [i, j])
    if upper:
        g = g + np.triu(g, 1).T
    return g


def parse_model(source, force: bool = False, eps_struct=None, eps_rank=None) -> HomogeneousModel:
    """Parse a model from a path or from YAML text and validate it fully.

    Raises :class:`ModelFileError` carrying every diagnostic found.
    """
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source
                                     and Path(source).exists()):
        text = Path(source).read_text()
    else:
        text = str(source)
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
        data = yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        loc = f"line {mark.line + 1}, column {mark.column + 1}" if mark else "<document>"
        raise ModelFileError([Diagnostic(loc, f"syntax error: {exc.problem}")]) from None
    if not isinstance(data, dict):
        raise ModelFileError([Diagnostic("<document>", "expected a mapping at top level")])
    rd = _Reader(_marks(node))

    fmt = data.get("format", FORMAT)
    if fmt != FORMAT:
        rd.fail(["format"], f"unsupported format {fmt!r} (expected {FORMAT!r})")
    n = data.get("dimension")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        rd.fail(["dimension"], "dimension must be a positive integer")
        raise ModelFileError(rd.errors)

    known = {"format", "name", "dimension", "basis", "brackets", "isotropy", "complement",
             "metric", "subspaces", "tolerances"}
    for key in data:
        if key not in known:
            rd.fail([key], f"unknown key {key!r}")

    tol = data.get("tolerances") or {}
    if not isinstance(tol, dict):
        rd.fail(["tolerances"], "expected a mapping")
        tol = {}
    if eps_struct is None:
        eps_struct = rd.number(tol.get("eps_struct", EPS_STRUCT), ["tolerances", "eps_struct"])
    if eps_rank is None:
        eps_rank = rd.number(tol.get("eps_rank", EPS_RANK), ["tolerances", "eps_rank"])

    names = data.get("basis") or [f"e{i + 1}" for i in range(n)]
    if not isinstance(names, list) or len(names) != n or len(set(map(str, names))) != n:
        rd.fail(["basis"], f"basis must list {n} distinct names")
        names = [f"e{i + 1}" for i in range(n)]

    records = []
    seen = {}
    brackets = data.get("brackets") or []
    if not isinstance(brackets, list):
        rd.fail(["brackets"], "expected a list of [i, j, k, coefficient] records")
        brackets = []
    for idx, rec in enumerate(brackets):
        path = ["brackets", idx]
        if not isinstance(rec, list) or len(rec) != 4:
            rd.fail(path, "expected a record [i, j, k, coefficient]")
            continue
        i, j, k = rec[:3]
        if not all(isinstance(v, int) and not isinstance(v, bool) and 1 <= v <= n for v in (i, j, k)):
            rd.fail(path, f"indices must be integers in 1..{n}")
            continue
        if i >= j:
            rd.fail(path, "records must have i < j")
            continue
        if (i, j, k) in seen:
            rd.fail(path, f"duplicate bracket record ({i}, {j}, {k}); first given at "
                          f"brackets.{seen[(i, j, k)]}")
            continue
        seen[(i, j, k)] = idx
        records.append((i - 1, j - 1, k - 1, rd.number(rec[3], path + [3])))

    iso = rd.subspace(data.get("isotropy"), ["isotropy"], n, "h", eps_rank)
    comp = None
    if data.get("complement") is not None:
        comp = rd.subspace(data.get("complement"), ["complement"], n, "m", eps_rank)
    subs = {}
    raw_subs = data.get("subspaces") or {}
    if not isinstance(raw_subs, dict):
        rd.fail(["subspaces"], "expected a mapping of name -> list of vectors")
        raw_subs = {}
    for key, rows in raw_subs.items():
        s = rd.subspace(rows, ["subspaces", key], n, str(key), eps_rank)
        if s is not None:
            subs[str(key)] = s
    if rd.errors:
        raise ModelFileError(rd.errors)

    algebra = StructureTensor.from_brackets(n, records, tuple(str(x) for x in names))
    r = comp.dim if comp is not None else n - iso.dim
    metric = _metric(rd, data.get("metric"), r)
    if rd.errors:
        raise ModelFileError(rd.errors)
    try:
        return build_model(algebra, iso, metric, comp, name=str(data.get("name", "")),
                           eps_struct=eps_struct, eps_rank=eps_rank, force=force, subspaces=subs)
    except ModelValidationError as exc:
        raise ModelFileError([
            Diagnostic(rd.where([_SECTION_OF.get(v.invariant, v.invariant)]),
                       f"{v.invariant} violated" + (f": {v.detail}" if v.detail else ""),
                       v.residual)
            for v in exc.violations]) from None


def format_number(x: float):
    """Integers stay integers, short rationals become ``"p/q"``, anything else is
    written with the shortest repr that round-trips (at most 17 significant digits)."""
    x = float(x)
    if x.is_integer() and abs(x) < 2 ** 53:
        return str(int(x))
    text = repr(x)
    frac = Fraction(x).limit_denominator(1000)
    if float(frac) == x and len(text) > 8:
        return f'"{frac.numerator}/{frac.denominator}"'
    return text


def _row(v):
    return "[" + ", ".join(format_number(x) for x in v) + "]"


def _rows(lines, key, rows, indent=""):
    if len(rows) == 0:
        lines.append(f"{indent}{key}: []")
        return
    lines.append(f"{indent}{key}:")
    for row in rows:
        lines.append(f"{indent}  - {_row(row)}")


def emit_model(model: HomogeneousModel, subspaces: dict = None) -> str:
    """Serialize ``model`` (and its named subspaces) to model-file text."""
    subspaces = model.subspaces if subspaces is None else subspaces
    lines = [f"format: {FORMAT}", f"name: {json.dumps(model.name)}",
             f"dimension: {model.n}",
             "basis: [" + ", ".join(json.dumps(s) for s in model.algebra.names) + "]"]
    recs = model.algebra.brackets()
    if recs:
        lines.append("brackets:")
        for i, j, k, c in recs:
            lines.append(f"  - [{i + 1}, {j + 1}, {k + 1}, {format_number(c)}]")
    else:
        lines.append("brackets: []")
    _rows(lines, "isotropy", model.isotropy.span)
    _rows(lines, "complement", model.complement.span)
    _rows(lines, "metric", model.metric)
    if subspaces:
        lines.append("subspaces:")
        for key, s in subspaces.items():
            lines.append(f"  {json.dumps(key)}: [" + ", ".join(_row(v) for v in s.span) + "]")
    if model.eps_struct != EPS_STRUCT or model.eps_rank != EPS_RANK:
        lines.append(f"tolerances: {{eps_struct: {format_number(model.eps_struct)}, "
                     f"eps_rank: {format_number(model.eps_rank)}}}")
    return "\n".join(lines) + "\n"


def entry_subspaces(entry) -> dict:
    """Named subspaces recorded for a catalog entry: ideals, k's and splits."""
    out = {name: s for name, (s, _) in entry.ideals.items()}
    out.update(entry.ks)
    for s in entry.splits:
        out[f"m1_{s.label}"] = s
    return out
