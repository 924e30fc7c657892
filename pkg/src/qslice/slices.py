"""Slices in translation-quiver windows and everything built from them:
mutations, hammocks, double slices, companions, and the combinatorial
Auslander-Reiten quiver of the higher preprojective component.

Conventions (pinned by the worked fixtures): a source mutation removes a
source of the slice and inserts its inverse translate, which becomes a sink
of the new slice; a sink mutation is the inverse. Forward hammocks are
supports of the quadratic-dual window algebra out of the anchor; the double
slice of a slice S is S together with all forward hammocks out of S.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product as iproduct
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from .algebra import GradedAlgebraView
from .core import BoundQuiver, RefutationError
from .duality import quadratic_dual
from .extension import build_trivial_extension
from .linalg import spans_equal
from .zquiver import MarginError, ZWindow, full_subquiver, vname


@dataclass
class SliceCheck:
    ok: bool
    side: str
    witness: str = ""


def slice_arrows(window: ZWindow, vertices: Set[str]):
    return [a for a in window.quiver.arrows.values()
            if a.source in vertices and a.target in vertices]


def slice_sources(window: ZWindow, vertices: Set[str]) -> Set[str]:
    arr = slice_arrows(window, vertices)
    return set(vertices) - {a.target for a in arr}


def slice_sinks(window: ZWindow, vertices: Set[str]) -> Set[str]:
    arr = slice_arrows(window, vertices)
    return set(vertices) - {a.source for a in arr}


def is_complete_tau_slice(window: ZWindow, vertices: Iterable[str], side: str = "tau") -> SliceCheck:
    """Full, convex, and meeting each translation orbit exactly once."""
    vs = set(vertices)
    for v in vs:
        if not window.has_vertex(v):
            return SliceCheck(False, side, f"{v} is not a window vertex")
    if window.hi - window.lo + 1 < window.min_period(side):
        raise MarginError(
            "window narrower than one translation period",
            (window.lo, window.lo + window.min_period(side) - 1),
        )
    keys: Dict[str, str] = {}
    for v in sorted(vs):
        k = str(window.orbit_key(v, side))
        if k in keys:
            return SliceCheck(False, side, f"{v} and {keys[k]} share the orbit {k}")
        keys[k] = v
    missing = {str(k) for k in window.all_orbit_keys(side)} - set(keys)
    if missing:
        return SliceCheck(False, side, f"orbits not met: {sorted(missing)}")
    witness = window.is_convex(vs)
    if witness is not None:
        a, mid, b = witness
        return SliceCheck(False, side, f"not convex: a path from {a} to {b} passes {mid}")
    return SliceCheck(True, side)


def mutate_slice(
    window: ZWindow, vertices: Iterable[str], v: str, direction: str, side: str = "tau"
) -> FrozenSet[str]:
    """Mutation at a source ('+', replaced by its inverse translate) or a
    sink ('-', replaced by its translate); the result is verified complete."""
    vs = set(vertices)
    if v not in vs:
        raise RefutationError(f"{v} is not in the slice")
    if direction == "+":
        if v not in slice_sources(window, vs):
            raise RefutationError(f"{v} is not a source of the slice")
        new = window.translate(v, side, power=-1)
    elif direction == "-":
        if v not in slice_sinks(window, vs):
            raise RefutationError(f"{v} is not a sink of the slice")
        new = window.translate(v, side, power=1)
    else:
        raise ValueError("direction must be '+' (source) or '-' (sink)")
    out = (vs - {v}) | {new}
    check = is_complete_tau_slice(window, out, side)
    if not check.ok:
        raise RefutationError(f"mutation left the slice class: {check.witness}")
    return frozenset(out)


def level_slice(window: ZWindow, lo: int, hi: int) -> FrozenSet[str]:
    """All window vertices with levels in [lo, hi] (the homogeneous slices)."""
    return frozenset(v for v in window.quiver.vertices if lo <= window.level(v) <= hi)


def slice_algebra(window: ZWindow, vertices: Iterable[str], side: str = "tau") -> BoundQuiver:
    """The full bound subquiver on a complete slice (relations restricted);
    the dual side restricts the dual window relations."""
    vs = set(vertices)
    check = is_complete_tau_slice(window, vs, side)
    if not check.ok:
        raise RefutationError(f"not a complete slice: {check.witness}")
    carrier = window.quiver if side == "tau" else window.dual_quiver
    return full_subquiver(carrier, vs)


@dataclass
class Hammock:
    anchor: str
    direction: str                       # "forward" | "backward"
    multiplicities: Dict[str, int]
    terminal: str

    def support(self) -> Set[str]:
        return set(self.multiplicities)


def hammock(window: ZWindow, v: str, direction: str = "forward", side: str = "dual") -> Hammock:
    """Support, with multiplicities, of the (dual) window algebra out of or
    into the anchor; spans the dual Loewy degrees and ends at the inverse
    translate of the anchor (dually, starts at the translate)."""
    if not window.has_vertex(v):
        raise RefutationError(f"{v} is not a window vertex")
    if side == "dual":
        algebra = window.dual_view
        depth = window.base.dual_top
        tside = "tau_perp"
    else:
        algebra = window.view
        depth = window.base.n + 1
        tside = "tau"
    lev = window.level(v)
    if direction == "forward" and lev + depth > window.hi:
        raise MarginError(f"forward hammock at {v} needs {depth} levels above", (window.lo, lev + depth))
    if direction == "backward" and lev - depth < window.lo:
        raise MarginError(f"backward hammock at {v} needs {depth} levels below", (lev - depth, window.hi))
    mult: Dict[str, int] = {}
    for t in range(depth + 1):
        for p in algebra.degree(t).basis:
            if direction == "forward" and p.source == v:
                mult[p.target] = mult.get(p.target, 0) + 1
            elif direction == "backward" and p.target == v:
                mult[p.source] = mult.get(p.source, 0) + 1
    if mult.get(v) != 1:
        raise RuntimeError(f"anchor multiplicity is {mult.get(v)}, not 1")
    terminal = window.translate(v, tside, power=-1 if direction == "forward" else 1)
    if mult.get(terminal) != 1:
        raise RuntimeError(f"terminal {terminal} multiplicity is {mult.get(terminal)}, not 1")
    return Hammock(v, direction, mult, terminal)


@dataclass
class DoubleSlice:
    vertices: FrozenSet[str]
    s_part: FrozenSet[str]
    complement: FrozenSet[str]
    direction: str                      # "S+" | "-S"


def double_slice(window: ZWindow, vertices: Iterable[str], direction: str = "S+") -> DoubleSlice:
    """The slice together with all forward (resp. backward) dual-side
    hammocks out of (into) its vertices; checked to satisfy the defining
    at-most-one property, to be convex, and to decompose into the slice and
    a complete dual-side slice."""
    vs = set(vertices)
    check = is_complete_tau_slice(window, vs, "tau")
    if not check.ok:
        raise RefutationError(f"not a complete slice: {check.witness}")
    hdir = "forward" if direction == "S+" else "backward"
    support: Set[str] = set(vs)
    for v in sorted(vs):
        support |= hammock(window, v, hdir, side="dual").support()
    _check_double_slice_property(window, support)
    witness = window.is_convex(support)
    if witness is not None:
        raise RuntimeError(f"double slice is not convex: {witness}")
    comp = frozenset(support - vs)
    comp_check = is_complete_tau_slice(window, comp, "tau_perp")
    if not comp_check.ok:
        raise RuntimeError(f"complement fails the dual slice check: {comp_check.witness}")
    return DoubleSlice(frozenset(support), frozenset(vs), comp, direction)


def _check_double_slice_property(window: ZWindow, support: Set[str]) -> None:
    for v in support:
        try:
            back = window.translate(v, "tau", power=-1)
        except MarginError:
            back = None
        try:
            perp = window.translate(v, "tau_perp", power=1)
        except MarginError:
            perp = None
        if back is not None and perp is not None and back in support and perp in support:
            raise RuntimeError(
                f"double slice property fails at {v}: both {back} and {perp} inside"
            )


def decompose_double_slice(window: ZWindow, d: DoubleSlice) -> Tuple[FrozenSet[str], FrozenSet[str]]:
    comp_check = is_complete_tau_slice(window, d.complement, "tau_perp")
    if not comp_check.ok:
        raise RuntimeError(comp_check.witness)
    return d.s_part, d.complement


def mutate_double_slice(window: ZWindow, d: DoubleSlice, v: str, direction: str) -> DoubleSlice:
    """Source mutation: drop a source, insert its double inverse translate;
    sink mutation dually."""
    vs = set(d.vertices)
    if v not in vs:
        raise RefutationError(f"{v} is not in the double slice")
    if direction == "+":
        if v not in slice_sources(window, vs):
            raise RefutationError(f"{v} is not a source of the double slice")
        new = window.translate(window.translate(v, "tau", -1), "tau_perp", -1)
    elif direction == "-":
        if v not in slice_sinks(window, vs):
            raise RefutationError(f"{v} is not a sink of the double slice")
        new = window.translate(window.translate(v, "tau", 1), "tau_perp", 1)
    else:
        raise ValueError("direction must be '+' or '-'")
    out = (vs - {v}) | {new}
    _check_double_slice_property(window, out)
    s_part = set(d.s_part)
    if v in s_part:
        s_part.discard(v)
    comp = out - s_part
    return DoubleSlice(frozenset(out), frozenset(s_part), frozenset(comp), d.direction)


# -- companions and the higher preprojective quiver -----------------------------


def _canonical_relabel(q: BoundQuiver, levels: Dict[str, int]) -> BoundQuiver:
    order = sorted(q.vertices, key=lambda v: (levels[v], v))
    vmap = {v: str(i + 1) for i, v in enumerate(order)}
    amap = {}
    for k, a in enumerate(sorted(q.arrows.values(), key=lambda a: (vmap[a.source], vmap[a.target], a.id))):
        amap[a.id] = f"x{k}"
    return q.relabelled(vmap, amap)


@dataclass
class CompanionResult:
    quiver: BoundQuiver
    side: str                       # "right" | "left"
    double_slice: DoubleSlice
    window: ZWindow
    slice_vertices: FrozenSet[str]


def companion(gamma: BoundQuiver, left: bool = False,
              hom_bound: int = 12, degree_bound: int = 24) -> CompanionResult:
    """The paired finite-type slice algebra: dualize the complement of the
    copy-zero slice inside its double slice, translated into the window.

    Requires a finite-type verdict; the returned presentation is the
    quadratic dual of the translated complement's slice algebra, with
    vertices relabelled deterministically."""
    from .homology import classify

    report = classify(gamma, hom_bound=hom_bound, degree_bound=degree_bound)
    if report.verdict != "finite":
        raise RefutationError(f"companion needs a finite-type input, got {report.verdict}")
    window, ds, s0 = _double_slice_of_copy_zero(gamma)
    comp = ds.complement
    if not left:
        moved = frozenset(window.translate(v, "tau", 1) for v in comp)
    else:
        # left companion: inverse translate of the backward complement
        ds = double_slice(window, s0, "-S")
        moved = frozenset(window.translate(v, "tau", -1) for v in ds.complement)
    check = is_complete_tau_slice(window, moved, "tau_perp")
    if not check.ok:
        raise RuntimeError(f"companion slice fails the check: {check.witness}")
    algebra = slice_algebra(window, moved, side="tau_perp")
    levels = {v: window.level(v) for v in algebra.vertices}
    comp_quiver = _canonical_relabel(quadratic_dual(algebra), levels)
    comp_quiver = BoundQuiver(
        comp_quiver.vertices, list(comp_quiver.arrows.values()), comp_quiver.relations,
        name=(gamma.name + ".companion") if gamma.name else "companion",
    )
    return CompanionResult(comp_quiver, "left" if left else "right", ds, window, moved)


def _double_slice_of_copy_zero(gamma: BoundQuiver) -> Tuple[ZWindow, DoubleSlice, FrozenSet[str]]:
    from .core import GradedAutomorphism
    from .algebra import check_properly_graded

    lam = quadratic_dual(gamma)
    lam_view = GradedAlgebraView(lam)
    n = check_properly_graded(lam_view)
    ext = build_trivial_extension(lam_view, GradedAutomorphism.nu(lam, n), strict=False)
    from .zquiver import build_window

    probe = build_window(ext, "zn", 0, 0)
    depth = probe.base.dual_top
    window = ZWindow(probe.base, "zn", -1, depth + 1)
    s0 = frozenset(vname(i, 0) for i in ext.quiver.vertices)
    ds = double_slice(window, s0, "S+")
    return window, ds, s0


@dataclass
class ARQuiver:
    quiver: BoundQuiver                  # opposite of the double slice
    projective_part: FrozenSet[str]      # image of the copy-zero slice
    companion_part: FrozenSet[str]
    double: DoubleSlice
    window: ZWindow


def ar_quiver_preprojective(gamma: BoundQuiver) -> ARQuiver:
    """The combinatorial Auslander-Reiten quiver of the higher preprojective
    component of a finite-type slice algebra: the opposite bound quiver of
    the double slice of the copy-zero slice, with the decomposition into the
    input's quiver and its companion's exposed."""
    if gamma.nicely_graded_map() is None:
        raise RefutationError("the input quiver is not nicely graded")
    window, ds, s0 = _double_slice_of_copy_zero(gamma)
    sub = full_subquiver(window.dual_quiver, ds.vertices)
    op = sub.opposite()
    op = BoundQuiver(op.vertices, list(op.arrows.values()), op.relations,
                     name=(gamma.name + ".arquiver") if gamma.name else "arquiver")
    return ARQuiver(op, ds.s_part, ds.complement, ds, window)


# -- isomorphism search ----------------------------------------------------------


def _relation_blocks(q: BoundQuiver):
    blocks: Dict[Tuple[str, str, int], List] = {}
    for r in q.relations:
        blocks.setdefault((r.source, r.target, r.degree), []).append(r)
    return blocks


def bound_quiver_isomorphic(
    a: BoundQuiver,
    b: BoundQuiver,
    allow_signs: bool = True,
    max_nodes: int = 200000,
) -> Optional[Dict[str, str]]:
    """Search for a vertex/arrow bijection matching relation spans, allowing
    per-arrow sign twists. Returns the vertex map, or None.

    Degree profiles prune the vertex search; relation spans are compared
    exactly per block, searching sign vectors only over arrows that occur in
    multi-term relations.
    """
    if len(a.vertices) != len(b.vertices) or len(a.arrows) != len(b.arrows):
        return None

    def profile(q: BoundQuiver, v: str):
        return (len(q.arrows_from[v]), len(q.arrows_into[v]))

    bp: Dict[Tuple[int, int], List[str]] = {}
    for v in b.vertices:
        bp.setdefault(profile(b, v), []).append(v)
    averts = sorted(a.vertices, key=lambda v: (len(bp.get(profile(a, v), [])), v))
    budget = [max_nodes]

    def extend(i: int, vmap: Dict[str, str], used: Set[str]):
        if budget[0] <= 0:
            return
        budget[0] -= 1
        if i == len(averts):
            yield dict(vmap)
            return
        v = averts[i]
        for w in bp.get(profile(a, v), []):
            if w in used:
                continue
            ok = True
            for u, x in vmap.items():
                for (s, t, sb, tb) in ((u, v, x, w), (v, u, w, x)):
                    na = sum(1 for arr in a.arrows_from[s] if arr.target == t)
                    nb = sum(1 for arr in b.arrows_from[sb] if arr.target == tb)
                    if na != nb:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            vmap[v] = w
            used.add(w)
            yield from extend(i + 1, vmap, used)
            del vmap[v]
            used.discard(w)

    sign_arrows = sorted(
        {x for r in a.relations if len(r.terms) > 1 for _, p in r.terms for x in p.arrows}
    ) if allow_signs else []
    blocks_a = _relation_blocks(a)
    blocks_b = _relation_blocks(b)

    def check(vmap: Dict[str, str], amap: Dict[str, str]) -> bool:
        for signs in iproduct((Fraction(1), Fraction(-1)), repeat=len(sign_arrows)):
            sign_of = dict(zip(sign_arrows, signs))
            good = True
            for (s, t, d), rels in blocks_a.items():
                index: Dict[Tuple[str, ...], int] = {}
                rows_a = []
                for r in rels:
                    row: Dict[int, Fraction] = {}
                    for c, p in r.terms:
                        ids = tuple(amap[x] for x in p.arrows)
                        c2 = c
                        for x in p.arrows:
                            c2 *= sign_of.get(x, Fraction(1))
                        j = index.setdefault(ids, len(index))
                        row[j] = row.get(j, Fraction(0)) + c2
                    rows_a.append(row)
                rows_b = []
                for r in blocks_b[(vmap[s], vmap[t], d)]:
                    row = {}
                    for c, p in r.terms:
                        j = index.setdefault(p.arrows, len(index))
                        row[j] = row.get(j, Fraction(0)) + c
                    rows_b.append(row)
                if not spans_equal(rows_a, rows_b):
                    good = False
                    break
            if good:
                return True
        return False

    pairs: Dict[Tuple[str, str], List[str]] = {}
    for arr in sorted(a.arrows.values(), key=lambda x: x.id):
        pairs.setdefault((arr.source, arr.target), []).append(arr.id)
    bpairs: Dict[Tuple[str, str], List[str]] = {}
    for arr in sorted(b.arrows.values(), key=lambda x: x.id):
        bpairs.setdefault((arr.source, arr.target), []).append(arr.id)

    for vmap in extend(0, {}, set()):
        keys_a = {(vmap[s], vmap[t], d) for (s, t, d) in blocks_a}
        if keys_a != set(blocks_b):
            continue
        classes = sorted(pairs)
        choices: List[List[Tuple[Tuple[str, ...], Tuple[str, ...]]]] = []
        feasible = True
        for key in classes:
            src = tuple(pairs[key])
            tgt = bpairs.get((vmap[key[0]], vmap[key[1]]), [])
            if len(tgt) != len(src):
                feasible = False
                break
            choices.append([(src, perm) for perm in permutations(tgt)])
        if not feasible:
            continue
        for combo in iproduct(*choices) if choices else [()]:
            amap: Dict[str, str] = {}
            for src, tgt in combo:
                for x, y in zip(src, tgt):
                    amap[x] = y
            if check(vmap, amap):
                return dict(vmap)
    return None


def window_iso_check(wa, wb, allow_signs: bool = True) -> Optional[Dict[str, str]]:
    """Bound-quiver isomorphism between two materialized windows (ZWindow or
    plain bound quivers); vertex map or None."""
    qa = wa.quiver if isinstance(wa, ZWindow) else wa
    qb = wb.quiver if isinstance(wb, ZWindow) else wb
    return bound_quiver_isomorphic(qa, qb, allow_signs=allow_signs)
