"""JSON documents for bound quivers.

One schema-versioned format everywhere: vertices, arrows, relations as
lists of {coef, path} terms with rational coefficients serialized as
strings ("3/4" or "-2") and paths as arrow-id lists in traversal order
(first-traversed first). Validation reports JSON-pointer paths.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from .core import Arrow, BoundQuiver, Path, QuiverError, relation

SCHEMA_VERSION = 1


class DocumentError(ValueError):
    def __init__(self, pointer: str, message: str):
        self.pointer = pointer
        super().__init__(f"{pointer}: {message}")


def parse_coef(text: Any, pointer: str) -> Fraction:
    if not isinstance(text, str):
        raise DocumentError(pointer, "coefficient must be a string like '1' or '3/4'")
    try:
        if "/" in text:
            num, _, den = text.partition("/")
            d = int(den)
            if d == 0:
                raise DocumentError(pointer, "zero denominator")
            return Fraction(int(num), d)
        return Fraction(int(text))
    except DocumentError:
        raise
    except (ValueError, ZeroDivisionError) as e:
        raise DocumentError(pointer, f"bad rational: {e}")


def format_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def quiver_from_document(doc: Dict[str, Any]) -> BoundQuiver:
    if not isinstance(doc, dict):
        raise DocumentError("", "document must be an object")
    version = doc.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise DocumentError("/schema_version", f"unsupported version {version}")
    verts = doc.get("vertices")
    if not isinstance(verts, list) or not all(isinstance(v, str) for v in verts):
        raise DocumentError("/vertices", "must be a list of strings")
    if len(set(verts)) != len(verts):
        raise DocumentError("/vertices", "duplicate vertex ids")
    arrows: List[Arrow] = []
    seen = set()
    for i, a in enumerate(doc.get("arrows", [])):
        ptr = f"/arrows/{i}"
        if not isinstance(a, dict):
            raise DocumentError(ptr, "must be an object")
        for key in ("id", "from", "to"):
            if not isinstance(a.get(key), str):
                raise DocumentError(f"{ptr}/{key}", "must be a string")
        if a["id"] in seen:
            raise DocumentError(f"{ptr}/id", f"duplicate arrow id {a['id']}")
        seen.add(a["id"])
        if a["from"] not in verts:
            raise DocumentError(f"{ptr}/from", f"unknown vertex {a['from']}")
        if a["to"] not in verts:
            raise DocumentError(f"{ptr}/to", f"unknown vertex {a['to']}")
        bid = a.get("bidegree", [1, 0])
        if (
            not isinstance(bid, list) or len(bid) != 2
            or bid[0] != 1 or bid[1] not in (0, 1)
        ):
            raise DocumentError(f"{ptr}/bidegree", "must be [1, 0] or [1, 1]")
        arrows.append(Arrow(a["id"], a["from"], a["to"], (bid[0], bid[1])))
    amap = {a.id: a for a in arrows}
    rels = []
    for i, r in enumerate(doc.get("relations", [])):
        ptr = f"/relations/{i}"
        if not isinstance(r, list) or not r:
            raise DocumentError(ptr, "must be a non-empty list of terms")
        terms: List[Tuple[Fraction, Path]] = []
        for j, term in enumerate(r):
            tptr = f"{ptr}/{j}"
            if not isinstance(term, dict):
                raise DocumentError(tptr, "must be an object")
            coef = parse_coef(term.get("coef"), f"{tptr}/coef")
            if coef == 0:
                raise DocumentError(f"{tptr}/coef", "zero coefficient")
            ids = term.get("path")
            if not isinstance(ids, list) or not ids or not all(isinstance(x, str) for x in ids):
                raise DocumentError(f"{tptr}/path", "must be a non-empty arrow-id list")
            at = None
            for k, x in enumerate(ids):
                if x not in amap:
                    raise DocumentError(f"{tptr}/path/{k}", f"unknown arrow {x}")
                if at is not None and amap[x].source != at:
                    raise DocumentError(
                        f"{tptr}/path/{k}",
                        f"not composable: {x} starts at {amap[x].source}, expected {at}",
                    )
                at = amap[x].target
            p = Path(tuple(ids), amap[ids[0]].source, amap[ids[-1]].target)
            terms.append((coef, p))
        first = terms[0][1]
        for coef, p in terms[1:]:
            if (p.length, p.source, p.target) != (first.length, first.source, first.target):
                raise DocumentError(
                    ptr,
                    "terms must be same-length paths with the same endpoints "
                    "(homogeneous normalized relations)",
                )
        rels.append(relation(terms))
    meta = doc.get("metadata", {})
    name = meta.get("name", "") if isinstance(meta, dict) else ""
    try:
        return BoundQuiver(verts, arrows, rels, name=name)
    except QuiverError as e:
        raise DocumentError("", str(e))


def quiver_to_document(q: BoundQuiver, metadata: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    doc: Dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "vertices": list(q.vertices),
        "arrows": [
            {
                "id": a.id,
                "from": a.source,
                "to": a.target,
                **({"bidegree": [a.bidegree[0], a.bidegree[1]]} if a.bidegree != (1, 0) else {}),
            }
            for a in q.arrows.values()
        ],
        "relations": [
            [{"coef": format_coef(c), "path": list(p.arrows)} for c, p in r.terms]
            for r in q.relations
        ],
    }
    meta = dict(metadata or {})
    if q.name and "name" not in meta:
        meta["name"] = q.name
    if meta:
        doc["metadata"] = meta
    return doc


def load_quiver(path: str) -> BoundQuiver:
    import sys

    if path == "-":
        doc = json.load(sys.stdin)
    else:
        with open(path, "r", encoding="utf-8") as f:
            doc = json.load(f)
    return quiver_from_document(doc)


def save_quiver(q: BoundQuiver, path: str, metadata: Optional[Dict[str, Any]] = None) -> None:
    doc = quiver_to_document(q, metadata)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(doc, f, indent=2, sort_keys=False)
        f.write("\n")


def validate_document(doc: Dict[str, Any]) -> List[str]:
    """All problems found (pointer-tagged messages); empty when valid."""
    problems: List[str] = []
    try:
        quiver_from_document(doc)
    except DocumentError as e:
        problems.append(str(e))
    return problems
