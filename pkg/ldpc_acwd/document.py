"""
Ensemble spec documents in, result documents out.

A spec document is JSON:

    {"version": 1,
     "ensemble": {"kind": "concat",
                  "children": [{"kind": "bipartite", "j": 2, "k": 4, "n": 6, "m": 3},
                               {"kind": "bipartite", "j": 1, "k": 2, "n": 6, "m": 3}]}}

Results carry an echo of the spec, the payload (rationals as "p/q" strings)
and provenance. The same payload renders as JSON, CSV or markdown.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Union

import jsonschema

from .__version__ import __version__
from .ensembles import expr as ex
from .ensembles.tables import AcwdTable, SplitAcwdTensor
from .exceptions import ParameterError, SchemaError
from .utils import format_float, rational_from_str, rational_to_str, syndrome_bits

SPEC_VERSION = 1
FORMATS = ("csv", "json", "markdown")


def _params_schema(*names: str) -> Dict[str, Any]:
    props = {"kind": {"type": "string"}}
    props.update({name: {"type": "integer", "minimum": 1} for name in names})
    return {"type": "object", "required": list(names), "properties": props, "additionalProperties": False}


_NODE = {"$ref": "#/definitions/node"}

SPEC_SCHEMA: Dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "LDPC ensemble spec",
    "type": "object",
    "required": ["version", "ensemble"],
    "properties": {
        "version": {"const": SPEC_VERSION},
        "description": {"type": "string"},
        "ensemble": _NODE,
    },
    "additionalProperties": False,
    "definitions": {
        "node": {
            "type": "object",
            "required": ["kind"],
            "properties": {
                "kind": {
                    "enum": [
                        "gallager",
                        "constant_row",
                        "bipartite",
                        "single_matrix",
                        "stack",
                        "concat",
                        "row_shuffle",
                        "col_shuffle",
                    ]
                }
            },
            "allOf": [
                {"if": {"required": ["kind"], "properties": {"kind": {"const": "gallager"}}}, "then": _params_schema("j", "k", "n", "m")},
                {"if": {"required": ["kind"], "properties": {"kind": {"const": "constant_row"}}}, "then": _params_schema("k", "n", "m")},
                {"if": {"required": ["kind"], "properties": {"kind": {"const": "bipartite"}}}, "then": _params_schema("j", "k", "n", "m")},
                {
                    "if": {"required": ["kind"], "properties": {"kind": {"const": "single_matrix"}}},
                    "then": {
                        "type": "object",
                        "required": ["rows"],
                        "properties": {
                            "kind": {"type": "string"},
                            "rows": {
                                "type": "array",
                                "minItems": 1,
                                "items": {"type": "string", "pattern": "^[01]+$"},
                            },
                            "copies": {"type": "integer", "minimum": 1},
                        },
                        "additionalProperties": False,
                    },
                },
                {
                    "if": {"required": ["kind"], "properties": {"kind": {"enum": ["stack", "concat"]}}},
                    "then": {
                        "type": "object",
                        "required": ["children"],
                        "properties": {
                            "kind": {"type": "string"},
                            "children": {"type": "array", "minItems": 1, "items": _NODE},
                        },
                        "additionalProperties": False,
                    },
                },
                {
                    "if": {"required": ["kind"], "properties": {"kind": {"enum": ["row_shuffle", "col_shuffle"]}}},
                    "then": {
                        "type": "object",
                        "required": ["child"],
                        "properties": {"kind": {"type": "string"}, "child": _NODE},
                        "additionalProperties": False,
                    },
                },
            ],
        }
    },
}

_validator = jsonschema.Draft7Validator(SPEC_SCHEMA)


# ---------- spec documents ----------
def validate_spec(document: Any) -> None:
    """Raise SchemaError listing every schema violation of the document."""
    errors = sorted(_validator.iter_errors(document), key=lambda e: list(e.absolute_path))
    if errors:
        lines = []
        for err in errors:
            where = "/".join(str(p) for p in err.absolute_path) or "<root>"
            lines.append(f"{where}: {err.message}")
        raise SchemaError("invalid ensemble spec:\n  " + "\n  ".join(lines))


def _build(node: Mapping[str, Any], path: str) -> ex.EnsembleExpr:
    kind = node["kind"]
    try:
        if kind == "gallager":
            return ex.gallager(node["j"], node["k"], node["n"], node["m"])
        if kind == "constant_row":
            return ex.constant_row(node["k"], node["n"], node["m"])
        if kind == "bipartite":
            return ex.bipartite(node["j"], node["k"], node["n"], node["m"])
        if kind == "single_matrix":
            return ex.single_matrix(node["rows"], node.get("copies", 1))
    except ParameterError as exc:
        raise SchemaError(f"{path}: {exc}") from exc

    if kind in ("row_shuffle", "col_shuffle"):
        child = _build(node["child"], f"{path}/child")
        return ex.row_shuffle(child) if kind == "row_shuffle" else ex.col_shuffle(child)

    children = [_build(c, f"{path}/children/{i}") for i, c in enumerate(node["children"])]
    # ShapeError from mismatched sizes propagates with the offending subtree
    return ex.stack(*children) if kind == "stack" else ex.concat(*children)


def parse_spec(document: Mapping[str, Any]) -> ex.EnsembleExpr:
    """Validate a spec document and build its expression."""
    validate_spec(document)
    return _build(document["ensemble"], "ensemble")


def load_spec(path: Union[str, Path]) -> Dict[str, Any]:
    """Read a spec document from disk; unreadable or non-JSON input is a SchemaError."""
    text = Path(path).read_text()
    if not text.strip():
        raise SchemaError(f"spec file {path} is empty")
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"spec file {path} is not valid JSON: {exc}") from exc
    validate_spec(document)
    return document


def expr_to_spec(expr: ex.EnsembleExpr) -> Dict[str, Any]:
    """Inverse of parse_spec for the ensemble node."""
    if isinstance(expr, ex.Base):
        p = expr.params
        node: Dict[str, Any] = {"kind": p.family}
        if p.family == "single_matrix":
            node["rows"] = list(p.rows)
            if p.copies != 1:
                node["copies"] = p.copies
            return node
        for name in ("j", "k", "n", "m"):
            if hasattr(p, name):
                node[name] = getattr(p, name)
        return node
    if isinstance(expr, ex.RowShuffle):
        return {"kind": "row_shuffle", "child": expr_to_spec(expr.child)}
    if isinstance(expr, ex.ColShuffle):
        return {"kind": "col_shuffle", "child": expr_to_spec(expr.child)}
    kind = "stack" if isinstance(expr, ex.Stack) else "concat"
    return {"kind": kind, "children": [expr_to_spec(c) for c in expr.children]}


# ---------- payloads ----------
def _value(value: Union[Fraction, float], as_float: bool) -> str:
    if isinstance(value, Fraction):
        return format_float(float(value)) if as_float else rational_to_str(value)
    return format_float(value)


def _json_number(value: float) -> Union[float, str]:
    return value if value != float("-inf") else "-inf"


def table_payload(table: AcwdTable) -> Dict[str, Any]:
    """sigma rows, w columns."""
    return {
        "n": table.n,
        "m": table.m,
        "rows": [[rational_to_str(v) for v in row] for row in table.by_syndrome_weight()],
    }


def table_from_payload(payload: Mapping[str, Any]) -> AcwdTable:
    n, m = payload["n"], payload["m"]
    by_sigma = [[rational_from_str(v) for v in row] for row in payload["rows"]]
    return AcwdTable.from_rows(n, m, [[by_sigma[s][w] for s in range(m + 1)] for w in range(n + 1)])


def tensor_payload(tensor: SplitAcwdTensor) -> Dict[str, Any]:
    """Nonzero cells only."""
    cells = [
        {"w": w, "sigmas": list(sigmas), "value": rational_to_str(value)}
        for (w, sigmas), value in sorted(tensor.entries.items())
        if value
    ]
    return {"n": tensor.n, "part_sizes": list(tensor.part_sizes), "cells": cells}


def tensor_from_payload(payload: Mapping[str, Any]) -> SplitAcwdTensor:
    entries = {(c["w"], tuple(c["sigmas"])): rational_from_str(c["value"]) for c in payload["cells"]}
    return SplitAcwdTensor(payload["n"], tuple(payload["part_sizes"]), entries)


@dataclass
class ResultDocument:
    """
    One CLI result.

    kind is one of acwd_table, split_tensor, split_weight, oracle, agr_curves
    or typical_weight; mode is "closed-form" or "oracle".
    """

    kind: str
    payload: Dict[str, Any]
    spec: Optional[Dict[str, Any]] = None
    mode: str = "closed-form"
    parameters: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {}
        if self.spec is not None:
            out["spec"] = self.spec
        if self.parameters:
            out["parameters"] = self.parameters
        out["result"] = {"kind": self.kind, **self.payload}
        out["provenance"] = {"library": "ldpc_acwd", "version": __version__, "mode": self.mode}
        return out

    # ---------- tabular view ----------
    def tabular(self, as_float: bool = False) -> List[List[str]]:
        """Header row followed by data rows, shared by the CSV and markdown renderings."""
        p = self.payload
        if self.kind == "acwd_table":
            rows = [["sigma"] + [f"w={w}" for w in range(p["n"] + 1)]]
            for sigma, row in enumerate(p["rows"]):
                rows.append([str(sigma)] + [_value(rational_from_str(v), as_float) for v in row])
            return rows
        if self.kind == "split_tensor":
            rows = [["w"] + [f"sigma_{i + 1}" for i in range(len(p["part_sizes"]))] + ["value"]]
            for cell in p["cells"]:
                value = _value(rational_from_str(cell["value"]), as_float)
                rows.append([str(cell["w"])] + [str(s) for s in cell["sigmas"]] + [value])
            return rows
        if self.kind == "split_weight":
            rows = [["sigma", "w1", "w2", "value"]]
            for cell in p["cells"]:
                value = _value(rational_from_str(cell["value"]), as_float)
                rows.append([str(cell["sigma"]), str(cell["w1"]), str(cell["w2"]), value])
            return rows
        if self.kind == "oracle":
            rows = [["w", "syndrome", "closed_form", "bruteforce", "match"]]
            for cell in p["cells"]:
                closed = rational_from_str(cell["closed_form"])
                brute = rational_from_str(cell["bruteforce"])
                rows.append(
                    [str(cell["w"]), cell["syndrome"], _value(closed, as_float), _value(brute, as_float),
                     str(closed == brute).lower()]
                )
            return rows
        if self.kind == "agr_curves":
            rows = [["eta", "ell", "agr"]]
            for curve in p["curves"]:
                for ell, value in curve["samples"]:
                    rows.append([format_float(curve["eta"]), format_float(ell), format_float(float(value))])
            return rows
        if self.kind == "typical_weight":
            rows = [["eta", "theta"]]
            for item in p["weights"]:
                rows.append([format_float(item["eta"]), f"{item['theta']:.4g}"])
            return rows
        raise ParameterError(f"unknown result kind {self.kind!r}")


def render(doc: ResultDocument, fmt: str = "json", as_float: bool = False) -> str:
    """Serialize a result as json, csv or markdown."""
    if fmt == "json":
        return json.dumps(doc.to_dict(), indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(doc.tabular(as_float))
        return buf.getvalue()
    if fmt == "markdown":
        header, *body = doc.tabular(as_float)
        lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
        lines.extend("| " + " | ".join(row) + " |" for row in body)
        return "\n".join(lines) + "\n"
    raise ParameterError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")


# ---------- result builders ----------
def acwd_result(spec: Dict[str, Any], result: Union[AcwdTable, SplitAcwdTensor]) -> ResultDocument:
    if isinstance(result, AcwdTable):
        return ResultDocument("acwd_table", table_payload(result), spec=spec)
    return ResultDocument("split_tensor", tensor_payload(result), spec=spec)


def oracle_result(
    spec: Dict[str, Any],
    m: int,
    closed: Sequence[Sequence[Fraction]],
    brute: Sequence[Sequence[Fraction]],
    members: int,
) -> ResultDocument:
    """closed[w][s] against brute[w][s] over every weight and syndrome."""
    cells = []
    for w, (row_c, row_b) in enumerate(zip(closed, brute)):
        for s, (c, b) in enumerate(zip(row_c, row_b)):
            cells.append({
                "w": w,
                "syndrome": syndrome_bits(s, m),
                "closed_form": rational_to_str(c),
                "bruteforce": rational_to_str(b),
            })
    exact = all(c == b for row_c, row_b in zip(closed, brute) for c, b in zip(row_c, row_b))
    payload = {"members": members, "exact_match": exact, "cells": cells}
    return ResultDocument("oracle", payload, spec=spec, mode="oracle")


def agr_result(j: int, k: int, curves: Sequence[Any]) -> ResultDocument:
    payload = {
        "curves": [
            {"eta": c.eta, "samples": [[ell, _json_number(value)] for ell, value in c.samples]}
            for c in curves
        ]
    }
    return ResultDocument("agr_curves", payload, parameters={"family": "bipartite", "j": j, "k": k})


def typical_weight_result(j: int, k: int, weights: Mapping[float, float]) -> ResultDocument:
    payload = {"weights": [{"eta": eta, "theta": theta} for eta, theta in weights.items()]}
    return ResultDocument("typical_weight", payload, parameters={"family": "bipartite", "j": j, "k": k})


def split_weight_result(spec: Dict[str, Any], cells: Sequence[Mapping[str, Any]]) -> ResultDocument:
    payload = {
        "cells": [
            {"sigma": c["sigma"], "w1": c["w1"], "w2": c["w2"], "value": rational_to_str(c["value"])}
            for c in cells
        ]
    }
    return ResultDocument("split_weight", payload, spec=spec)
