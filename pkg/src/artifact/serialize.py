"""JSON/CSV/table emission and the matching parsers used for round trips."""

from __future__ import annotations

import csv
import io
import json
from typing import Any, TextIO

from .cube import FaceCode, face_of_vector, face_to_pair
from .dynamics import IntervalVector, ValuationVector, fmt_rational, lambda_table, parse_rational, Role
from .index import EmbSet, PrimeSplitting
from .strata import (
    AdmissiblePair,
    component_count_at,
    is_horizontal,
    pi_stratum_image,
    stratum_dim,
    type_window,
    w_stratum_image,
)

FORMATS = ("json", "csv", "table")


def set_json(s: EmbSet) -> list[list[int]]:
    return s.to_list()


def set_from_json(splitting: PrimeSplitting, obj: list[list[int]]) -> EmbSet:
    return EmbSet.of(splitting, [tuple(x) for x in obj])


def pair_json(p: AdmissiblePair) -> dict[str, Any]:
    return {"phi": set_json(p.phi), "eta": set_json(p.eta)}


def pair_from_json(splitting: PrimeSplitting, obj: dict[str, Any]) -> AdmissiblePair:
    return AdmissiblePair(set_from_json(splitting, obj["phi"]), set_from_json(splitting, obj["eta"]))


def stratum_row(p: AdmissiblePair) -> dict[str, Any]:
    t = is_horizontal(p)
    lo, hi = type_window(p)
    return {
        "phi": set_json(p.phi),
        "eta": set_json(p.eta),
        "I": set_json(p.crit),
        "dim": stratum_dim(p),
        "components": component_count_at(p),
        "horizontal": None if t is None else sorted(t),
        "pi_image": set_json(pi_stratum_image(p)),
        "w_image": pair_json(w_stratum_image(p)),
        "type_window": [set_json(lo), set_json(hi)],
    }


def vector_json(v: ValuationVector) -> list[str]:
    return v.strings()


def vector_from_json(splitting: PrimeSplitting, obj: list[str], role: Role = Role.X) -> ValuationVector:
    return ValuationVector.of(splitting, [parse_rational(x) for x in obj], role)


def intervals_json(iv: IntervalVector) -> list[str | list[str]]:
    return [x.serialize() for x in iv.intervals]


def chain_entry_json(x: ValuationVector | IntervalVector) -> dict[str, Any]:
    if isinstance(x, ValuationVector):
        return {"exact": True, "nu": vector_json(x)}
    return {"exact": False, "bounds": intervals_json(x)}


def face_row(a: FaceCode) -> dict[str, Any]:
    p = face_to_pair(a)
    return {"face": str(a), "code": a.code, "face_dim": a.dim(), **pair_json(p), "I": set_json(p.crit), "stratum_dim": stratum_dim(p)}


def vector_summary(v: ValuationVector) -> dict[str, Any]:
    return {"role": v.role.value, "nu": vector_json(v), "face": str(face_of_vector(v)), "lambda": [r["lambda"] for r in lambda_table(v)]}


def _cell(x: Any) -> str:
    if x is None:
        return ""
    if isinstance(x, (str, int)):
        return str(x)
    return json.dumps(x, separators=(",", ":"))


def _rows(data: Any) -> list[dict[str, Any]]:
    if isinstance(data, list):
        return data
    if isinstance(data, dict) and isinstance(data.get("rows"), list):
        return data["rows"]
    return [data]


def emit(data: Any, fmt: str, out: TextIO) -> None:
    if fmt == "json":
        json.dump(data, out, indent=2, sort_keys=False)
        out.write("\n")
        return
    rows = _rows(data)
    cols: list[str] = []
    for r in rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_cell(r.get(c)) for c in cols])
        return
    if fmt == "table":
        cells = [[_cell(r.get(c)) for c in cols] for r in rows]
        widths = [max([len(c)] + [len(row[k]) for row in cells]) for k, c in enumerate(cols)]
        out.write("  ".join(c.ljust(wd) for c, wd in zip(cols, widths)).rstrip() + "\n")
        for row in cells:
            out.write("  ".join(x.ljust(wd) for x, wd in zip(row, widths)).rstrip() + "\n")
        return
    raise ValueError(f"unknown format {fmt!r}")


def parse_csv(text: str) -> list[dict[str, Any]]:
    """Inverse of CSV emission: cells holding JSON are decoded, empty cells become None."""
    out = []
    for r in csv.DictReader(io.StringIO(text)):
        row: dict[str, Any] = {}
        for k, v in r.items():
            if v == "":
                row[k] = None
            elif v[0] in "[{":
                row[k] = json.loads(v)
            else:
                try:
                    row[k] = int(v)
                except ValueError:
                    row[k] = v
        out.append(row)
    return out


__all__ = [
    "FORMATS",
    "emit",
    "fmt_rational",
    "pair_from_json",
    "pair_json",
    "parse_csv",
    "set_from_json",
    "set_json",
    "stratum_row",
    "vector_from_json",
    "vector_json",
]
