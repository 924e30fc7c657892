"""DOT emission with a layered layout.

Window vertices "i@t" keep their names as stable node ids; vertices are
ranked by level (or by the canonical grading when one exists) so renders
line up with the usual figures. Highlight sets shade slices, double slices
and hammocks.
"""

from __future__ import annotations

from typing import Dict, Iterable, Mapping, Optional

from .core import BoundQuiver


def _levels(q: BoundQuiver) -> Dict[str, int]:
    levels: Dict[str, int] = {}
    ok = True
    for v in q.vertices:
        name, _, t = v.rpartition("@")
        if name and t.lstrip("-").isdigit():
            levels[v] = int(t)
        else:
            ok = False
            break
    if ok and levels:
        return levels
    d = q.nicely_graded_map()
    return d if d is not None else {}


def emit_dot(
    q: BoundQuiver,
    slice_vertices: Optional[Iterable[str]] = None,
    secondary_vertices: Optional[Iterable[str]] = None,
    multiplicities: Optional[Mapping[str, int]] = None,
    name: str = "quiver",
) -> str:
    slice_set = set(slice_vertices or ())
    second_set = set(secondary_vertices or ())
    mult = dict(multiplicities or {})
    levels = _levels(q)
    lines = [f'digraph "{name}" {{', "  rankdir=LR;", '  node [shape=circle, fontsize=10];']
    by_level: Dict[int, list] = {}
    for v in q.vertices:
        by_level.setdefault(levels.get(v, 0), []).append(v)
    for t in sorted(by_level):
        lines.append("  { rank = same;")
        for v in sorted(by_level[t]):
            attrs = []
            label = v if v not in mult else f"{v} ({mult[v]})"
            attrs.append(f'label="{label}"')
            if v in slice_set:
                attrs.append('style=filled, fillcolor="#9ecae1"')
            elif v in second_set:
                attrs.append('style=filled, fillcolor="#a1d99b"')
            elif v in mult:
                attrs.append('style=filled, fillcolor="#fdd0a2"')
            lines.append(f'    "{v}" [{", ".join(attrs)}];')
        lines.append("  }")
    for a in q.arrows.values():
        style = ' [style=dashed]' if a.bidegree[1] == 1 else ""
        lines.append(f'  "{a.source}" -> "{a.target}"{style};')
    if q.relations:
        rel = "\\n".join(str(r) for r in q.relations[:20])
        more = "" if len(q.relations) <= 20 else f"\\n... ({len(q.relations)} total)"
        lines.append(f'  relations [shape=note, fontsize=8, label="{rel}{more}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
