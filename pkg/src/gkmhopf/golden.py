"""Reference tables checked into the package and their live comparison.

Each JSON document under ``golden/v1`` describes one worked example.  Ring
entries are written with root symbols (see
:meth:`FGLBackend.parse_root_expression`) and compared exactly against the
live computation.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Dict, List, Optional

from .dihedral import double_quotient, hopf_on_quotient
from .structure import StructureAlgebra

GOLDEN_VERSION = "v1"


def golden_dir() -> Path:
    return Path(__file__).resolve().parent / "golden" / GOLDEN_VERSION


def load_golden(directory: Optional[Path] = None) -> List[Dict]:
    directory = Path(directory) if directory else golden_dir()
    return [json.loads(p.read_text()) for p in sorted(directory.glob("*.json"))]


def _same(ring, live, text: str) -> bool:
    return (ring.lift(live) - ring.parse_root_expression(text)).is_zero()


def _compare_matrix(alg, live, expected, labels, diffs, what):
    ring = alg.ring
    for i, row in enumerate(expected):
        for j, text in enumerate(row):
            if not _same(ring, live[labels[i]][labels[j]], text):
                diffs.append(f"{what}[{i}][{j}]: live {ring.format(ring.lift(live[labels[i]][labels[j]]).normalize())}, expected {text}")


def _compare_class(alg, z, expected, diffs, what):
    for v, text in enumerate(expected):
        if not _same(alg.ring, z.coords[v], text):
            diffs.append(f"{what} at {alg.rs.elements[v].word_string()}: live {alg.ring.format(z.coords[v])}, expected {text}")


def _check_sl2(doc, diffs):
    alg = StructureAlgebra.of(doc["type"], doc["fgl"], doc["lattice"])
    rs = alg.rs
    order = [0, 1]
    for name, coords in doc["schubert"].items():
        _compare_class(alg, alg.zeta(rs.parse_element(name)), coords, diffs, f"zeta_{name}")
    for name, coords in doc["duals"].items():
        _compare_class(alg, alg.dual(rs.parse_element(name)), coords, diffs, f"dual_{name}")
    for u_name, mats in doc["matrices"].items():
        c, d = alg.multiplicity_matrices(rs.parse_element(u_name))
        _compare_matrix(alg, c, mats["C"], order, diffs, f"C_{u_name}")
        _compare_matrix(alg, d, mats["D"], order, diffs, f"D_{u_name}")


def _check_table(doc, diffs):
    alg = StructureAlgebra.of(doc["type"], doc["fgl"], doc["lattice"])
    rs = alg.rs
    c, d = alg.multiplicity_matrices(rs.parse_element(doc["u"]))
    live = c if doc["matrix"] == "C" else d
    labels = [rs.parse_element(w) for w in doc["rows"]]
    if doc.get("alternative_order") and labels != rs.alternative_a2_order():
        diffs.append("row labels differ from the alternative A2 order")
    _compare_matrix(alg, live, doc["entries"], labels, diffs, doc["matrix"])


def _check_duality(doc, diffs):
    for tag in doc["types"]:
        alg = StructureAlgebra.of(tag, "additive", doc["lattice"])
        rs, ring = alg.rs, alg.ring
        c, d = alg.multiplicity_matrices(rs.w0)
        for w in range(alg.order):
            for v in range(alg.order):
                expected = ring.const(1 if rs.mul(rs.w0, w) == v else 0)
                if c[w][v] != expected or d[w][v] != expected:
                    diffs.append(f"{tag}: (C, D)_w0 at ({w}, {v}) is not Kronecker")
            if alg.dual(w) != alg.sigma(rs.mul(rs.w0, w)):
                diffs.append(f"{tag}: dual of zeta_{rs.elements[w].word_string()} differs from sigma_(w0 w)")


def _check_quotient(doc, diffs):
    live = double_quotient(doc["type"], doc["lattice"]).summary()
    if live != doc["factors"]:
        diffs.append(f"graded group: live {live}, expected {doc['factors']}")


def _check_dihedral(doc, diffs):
    res = hopf_on_quotient(doc["p"])
    if res["graded_group"] != doc["graded_group"]:
        diffs.append(f"graded group: live {res['graded_group']}, expected {doc['graded_group']}")
    live_a = {str(k): v for k, v in res["a"].items()}
    if live_a != doc["a"]:
        diffs.append(f"a_k: live {live_a}, expected {doc['a']}")
    for name, ok in res["checks"].items():
        if not ok:
            diffs.append(f"check {name} failed")


_CHECKERS = {
    "sl2_example": _check_sl2,
    "multiplicity_table": _check_table,
    "additive_duality": _check_duality,
    "double_quotient": _check_quotient,
    "dihedral": _check_dihedral,
}


def check_document(doc: Dict) -> Dict:
    """Compare one golden document with the live computation."""
    diffs: List[str] = []
    checker = _CHECKERS.get(doc.get("kind"))
    if checker is None:
        diffs.append(f"unknown golden kind {doc.get('kind')!r}")
    else:
        try:
            checker(doc, diffs)
        except (ArithmeticError, ValueError) as exc:
            diffs.append(f"{type(exc).__name__}: {exc}")
    return {"id": doc.get("id"), "kind": doc.get("kind"), "passed": not diffs, "diffs": diffs}
