"""Finite windows of the doubly infinite translation quivers.

Two unrollings of a returning-arrow quiver are materialized as plain bound
quivers on vertices "i@t": the level unrolling, where every arrow climbs one
level, and the copy unrolling, where old arrows stay inside a copy of the
base quiver and returning arrows climb to the next copy. Relations are the
level-shifted copies of the base relations whose support fits the window,
which makes any computation between window vertices agree with the infinite
quiver (arrows never descend, so paths cannot leave the window).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Set, Tuple

from .algebra import GradedAlgebraView
from .core import Arrow, BoundQuiver, BoundsExceededError, Path, RefutationError, relation
from .duality import quadratic_dual
from .extension import TrivialExtensionPresentation


class MarginError(RefutationError):
    """The window is too small for the requested operation."""

    def __init__(self, message: str, required: Optional[Tuple[int, int]] = None):
        self.required = required
        super().__init__(message + (f" (required level range {required})" if required else ""))


def vname(i: str, t: int) -> str:
    return f"{i}@{t}"


def vsplit(name: str) -> Tuple[str, int]:
    i, _, t = name.rpartition("@")
    return i, int(t)


class TranslationBase:
    """Translation data of a base extension: the permutation carried by the
    top-degree classes on each side, with the dual side's level offsets.

    The dual side needs the dual algebra to be finite dimensional (finite
    type); it is computed lazily so that windows over infinite-type bases
    still support everything on the primal side."""

    def __init__(self, ext: TrivialExtensionPresentation, degree_cap: int = 64,
                 dual_dim_cap: int = 256):
        self.ext = ext
        self.n = ext.n
        self.degree_cap = degree_cap
        self.dual_dim_cap = dual_dim_cap
        q = ext.quiver
        # primal side: top classes of the extension end where they start
        self.tau_perm: Dict[str, str] = {}
        for p in ext.view.degree(self.n + 1).basis:
            if p.target in self.tau_perm:
                raise RefutationError(f"two top classes end at {p.target}")
            self.tau_perm[p.target] = p.source
        if set(self.tau_perm) != set(q.vertices):
            raise RefutationError("extension top degree misses some vertex")
        self.tau_inv: Dict[str, str] = {u: v for v, u in self.tau_perm.items()}
        self.dual_quiver = quadratic_dual(q)
        self._dual_data: Optional[Tuple[GradedAlgebraView, int, Dict, Dict, Dict]] = None

    def _dual(self):
        if self._dual_data is None:
            dual_view = GradedAlgebraView(self.dual_quiver)
            # cheap finiteness probe: any genuinely self-injective dual has
            # small bounded graded dims, so runaway growth refuses early
            # instead of enumerating exponentially many paths
            dual_top = None
            for t in range(self.degree_cap + 1):
                d = dual_view.dims(t)
                if d == 0:
                    dual_top = t - 1
                    break
                if d > self.dual_dim_cap:
                    break
            if dual_top is None:
                raise RefutationError(
                    f"dual algebra is not finite dimensional within degree "
                    f"{self.degree_cap} (dim cap {self.dual_dim_cap}); "
                    "no dual translation available"
                )
            perm: Dict[str, str] = {}
            delta: Dict[str, int] = {}
            for p in dual_view.degree(dual_top).basis:
                d = self.dual_quiver.second_degree(p)
                if p.target in perm:
                    if (perm[p.target], delta[p.target]) != (p.source, d):
                        raise RefutationError(f"dual top classes at {p.target} disagree")
                    continue
                perm[p.target] = p.source
                delta[p.target] = d
            if set(perm) != set(self.ext.quiver.vertices):
                raise RefutationError("dual top degree misses some vertex")
            inv = {u: v for v, u in perm.items()}
            self._dual_data = (dual_view, dual_top, perm, delta, inv)
        return self._dual_data

    @property
    def dual_view(self) -> GradedAlgebraView:
        return self._dual()[0]

    @property
    def dual_top(self) -> int:
        return self._dual()[1]

    @property
    def tau_perp_perm(self) -> Dict[str, str]:
        return self._dual()[2]

    @property
    def tau_perp_delta(self) -> Dict[str, int]:
        return self._dual()[3]

    @property
    def tau_perp_inv(self) -> Dict[str, str]:
        return self._dual()[4]

    @property
    def has_dual_translation(self) -> bool:
        try:
            self._dual()
            return True
        except RefutationError:
            return False


@dataclass(frozen=True)
class OrbitKey:
    vertex: str
    residue: int

    def __str__(self) -> str:
        return f"{self.vertex}%{self.residue}"


class ZWindow:
    """A materialized level range of one of the two unrollings."""

    def __init__(self, base: TranslationBase, kind: str, lo: int, hi: int,
                 component_of: Optional[str] = None):
        if kind not in ("zv", "zn"):
            raise ValueError("kind must be 'zv' or 'zn'")
        if lo > hi:
            raise RefutationError("empty level range")
        self.base = base
        self.kind = kind
        self.lo = lo
        self.hi = hi
        bq = base.ext.quiver
        self.quiver = self._materialize(bq)
        if component_of is not None:
            keep = self._component_vertices(vname(component_of, self._anchor_level(component_of)))
            self.quiver = full_subquiver(self.quiver, keep)
        self._dual_quiver: Optional[BoundQuiver] = None
        self._dual_view: Optional[GradedAlgebraView] = None
        self._view: Optional[GradedAlgebraView] = None
        self._reach: Optional[Dict[str, Set[str]]] = None

    # -- construction -------------------------------------------------------

    def _level_step(self, arrow: Arrow) -> int:
        return 1 if self.kind == "zv" else arrow.bidegree[1]

    def _anchor_level(self, i: str) -> int:
        for t in range(self.lo, self.hi + 1):
            if vname(i, t) in getattr(self, "quiver").vertices:
                return t
        raise RefutationError(f"vertex {i} not present in window")

    def _materialize(self, bq: BoundQuiver) -> BoundQuiver:
        verts = [vname(i, t) for t in range(self.lo, self.hi + 1) for i in sorted(bq.vertices)]
        arrows: List[Arrow] = []
        for t in range(self.lo, self.hi + 1):
            for a in sorted(bq.arrows.values(), key=lambda a: a.id):
                t2 = t + self._level_step(a)
                if t2 <= self.hi:
                    arrows.append(
                        Arrow(f"{a.id}@{t}", vname(a.source, t), vname(a.target, t2), a.bidegree)
                    )
        rels = []
        for r in bq.relations:
            total = sum(self._level_step(bq.arrows[x]) for x in r.terms[0][1].arrows)
            for t in range(self.lo, self.hi + 1):
                if t + total > self.hi:
                    continue
                if any(
                    t + sum(self._level_step(bq.arrows[x]) for x in p.arrows[:k + 1]) > self.hi
                    for _, p in r.terms for k in range(len(p.arrows))
                ):
                    continue
                terms = []
                for c, p in r.terms:
                    lev = t
                    ids = []
                    for x in p.arrows:
                        ids.append(f"{x}@{lev}")
                        lev += self._level_step(bq.arrows[x])
                    terms.append((c, Path(tuple(ids), vname(p.source, t), vname(p.target, lev))))
                rels.append(relation(terms))
        name = f"{bq.name}.{self.kind}[{self.lo},{self.hi}]"
        return BoundQuiver(verts, arrows, rels, name=name)

    def _component_vertices(self, start: str) -> Set[str]:
        adj: Dict[str, Set[str]] = {v: set() for v in self.quiver.vertices}
        for a in self.quiver.arrows.values():
            adj[a.source].add(a.target)
            adj[a.target].add(a.source)
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    # -- views ----------------------------------------------------------------

    @property
    def view(self) -> GradedAlgebraView:
        if self._view is None:
            self._view = GradedAlgebraView(self.quiver)
        return self._view

    @property
    def dual_quiver(self) -> BoundQuiver:
        if self._dual_quiver is None:
            self._dual_quiver = quadratic_dual(self.quiver)
        return self._dual_quiver

    @property
    def dual_view(self) -> GradedAlgebraView:
        if self._dual_view is None:
            self._dual_view = GradedAlgebraView(self.dual_quiver)
        return self._dual_view

    def level(self, v: str) -> int:
        return vsplit(v)[1]

    def has_vertex(self, v: str) -> bool:
        return v in self.quiver.arrows_from

    # -- translations -----------------------------------------------------------

    def _shift(self, side: str, i: str, inverse: bool) -> Tuple[str, int]:
        b = self.base
        if side == "tau":
            if inverse:
                return b.tau_inv[i], (b.n + 1 if self.kind == "zv" else 1)
            return b.tau_perm[i], -(b.n + 1 if self.kind == "zv" else 1)
        if inverse:
            j = b.tau_perp_inv[i]
            step = b.dual_top if self.kind == "zv" else b.tau_perp_delta[j]
            return j, step
        j = b.tau_perp_perm[i]
        step = b.dual_top if self.kind == "zv" else b.tau_perp_delta[i]
        return j, -step

    def translate(self, v: str, side: str = "tau", power: int = 1) -> str:
        """tau / tau_perp action on a window vertex; raises on margin."""
        i, t = vsplit(v)
        for _ in range(abs(power)):
            i, dt = self._shift(side, i, inverse=power < 0)
            t += dt
        out = vname(i, t)
        if not self.has_vertex(out):
            need = (min(t, self.lo), max(t, self.hi))
            raise MarginError(f"translate({v}) = {out} leaves the window", need)
        return out

    def orbit_key(self, v: str, side: str = "tau") -> OrbitKey:
        """Window-independent label of the translation orbit through v."""
        i, t = vsplit(v)
        start = i
        shifts = 0
        cycle = [i]
        while True:
            j, dt = self._shift(side, i, inverse=False)
            shifts -= dt  # dt is negative going forward
            i = j
            if i == start:
                break
            cycle.append(i)
        total = shifts
        if total <= 0:
            raise RefutationError(f"translation orbit through {v} has no level drift")
        rep = min(cycle)
        # walk v forward to the representative vertex, tracking the level
        i, lev = vsplit(v)
        while i != rep:
            j, dt = self._shift(side, i, inverse=False)
            lev += dt
            i = j
        return OrbitKey(rep, lev % total)

    def all_orbit_keys(self, side: str = "tau") -> Set[OrbitKey]:
        """Orbit labels met by this window; complete when the window is at
        least one full period wide."""
        return {self.orbit_key(v, side) for v in self.quiver.vertices}

    def min_period(self, side: str = "tau") -> int:
        seen = set()
        worst = 1
        for i in self.base.ext.quiver.vertices:
            if i in seen:
                continue
            cycle = [i]
            shifts = 0
            j = i
            while True:
                j, dt = self._shift(side, j, inverse=False)
                shifts -= dt
                if j == i:
                    break
                cycle.append(j)
            seen.update(cycle)
            worst = max(worst, shifts)
        return worst

    # -- reachability / convexity ------------------------------------------------

    def _reachability(self) -> Dict[str, Set[str]]:
        if self._reach is None:
            order = self._topo_order()
            reach: Dict[str, Set[str]] = {v: {v} for v in self.quiver.vertices}
            for v in reversed(order):
                for a in self.quiver.arrows_from[v]:
                    reach[v] |= reach[a.target]
            self._reach = reach
        return self._reach

    def _topo_order(self) -> List[str]:
        indeg = {v: 0 for v in self.quiver.vertices}
        for a in self.quiver.arrows.values():
            indeg[a.target] += 1
        stack = sorted([v for v, d in indeg.items() if d == 0])
        out = []
        while stack:
            v = stack.pop()
            out.append(v)
            for a in self.quiver.arrows_from[v]:
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    stack.append(a.target)
        if len(out) != len(self.quiver.vertices):
            raise RefutationError("window is not acyclic")
        return out

    def is_convex(self, vertices: Iterable[str]) -> Optional[Tuple[str, str, str]]:
        """None when convex, else a witness (a, through, b)."""
        vs = set(vertices)
        reach = self._reachability()
        for a in vs:
            for mid in reach[a]:
                if mid in vs:
                    continue
                for b in reach[mid]:
                    if b in vs and b != mid:
                        return (a, mid, b)
        return None


def full_subquiver(q: BoundQuiver, vertices: Iterable[str]) -> BoundQuiver:
    """The full bound subquiver: induced arrows and every relation whose
    support stays inside."""
    vs = [v for v in q.vertices if v in set(vertices)]
    vset = set(vs)
    arrows = [a for a in q.arrows.values() if a.source in vset and a.target in vset]
    aset = {a.id for a in arrows}
    rels = []
    for r in q.relations:
        ok = True
        for _, p in r.terms:
            if p.source not in vset or p.target not in vset:
                ok = False
                break
            if any(x not in aset for x in p.arrows):
                ok = False
                break
        if ok:
            rels.append(r)
    return BoundQuiver(vs, arrows, rels, name=q.name + ".sub")


def build_window(
    ext: TrivialExtensionPresentation,
    kind: str,
    lo: int,
    hi: int,
    component_of: Optional[str] = None,
    degree_cap: int = 64,
) -> ZWindow:
    """Materialize a window of an unrolled translation quiver.

    kind "zv" unrolls along path degree (every arrow climbs one level); kind
    "zn" unrolls along the returning-arrow grading (levels are copies of the
    base quiver). component_of restricts a zv window to the connected
    component through the given base vertex.
    """
    base = TranslationBase(ext, degree_cap)
    return ZWindow(base, kind, lo, hi, component_of)


def cycle_gcd(q: BoundQuiver) -> int:
    """Greatest common divisor of the directed cycle lengths (0 if acyclic)."""
    import math

    pot: Dict[str, int] = {}
    g = 0
    for start in q.vertices:
        if start in pot:
            continue
        pot[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for a in q.arrows_from[v]:
                w = a.target
                if w in pot:
                    g = math.gcd(g, pot[v] + 1 - pot[w])
                else:
                    pot[w] = pot[v] + 1
                    stack.append(w)
            for a in q.arrows_into[v]:
                w = a.source
                if w in pot:
                    g = math.gcd(g, pot[w] + 1 - pot[v])
                else:
                    pot[w] = pot[v] - 1
                    stack.append(w)
    return g


@dataclass
class ComponentReport:
    count: int
    components: List[BoundQuiver]
    gcd_of_cycles: int
    shift_witnesses: List[Tuple[int, int, int]]  # (a, b, shift) pairwise iso


def connected_components(window: ZWindow) -> ComponentReport:
    """Weak components of a level-unrolled window, checked against the cycle
    gcd of the base, each nicely graded, pairwise isomorphic by level shift."""
    if window.kind != "zv":
        raise RefutationError("component analysis applies to level-unrolled windows")
    d = cycle_gcd(window.base.ext.quiver)
    if d == 0:
        raise RefutationError("base quiver has no cycles; the unrolling has no finite period")
    width = window.hi - window.lo
    if width + 1 < 2 * d:
        raise MarginError(
            f"window of width {width + 1} cannot witness {d} components",
            (window.lo, window.lo + 2 * d - 1),
        )
    seen: Set[str] = set()
    comps: List[Set[str]] = []
    for v in window.quiver.vertices:
        if v in seen:
            continue
        comp = window._component_vertices(v)
        seen |= comp
        comps.append(comp)
    comps.sort(key=lambda c: min(c))
    if len(comps) != d:
        raise MarginError(
            f"window shows {len(comps)} components but the cycle gcd is {d}; widen the window",
            (window.lo, window.lo + 2 * d - 1),
        )
    quivers = [full_subquiver(window.quiver, c) for c in comps]
    for qq in quivers:
        if qq.nicely_graded_map() is None:
            raise RefutationError("component is not nicely graded")
    witnesses = []
    for a in range(len(comps)):
        for b in range(len(comps)):
            if a == b:
                continue
            s = _component_shift(window, comps[a], comps[b])
            if s is None:
                raise RefutationError(f"components {a} and {b} are not shift-isomorphic")
            witnesses.append((a, b, s))
    return ComponentReport(len(comps), quivers, d, witnesses)


def _component_shift(window: ZWindow, ca: Set[str], cb: Set[str]) -> Optional[int]:
    """Smallest positive s with (i,t) -> (i,t+s) matching ca to cb on the
    overlap, arrows included."""
    d = cycle_gcd(window.base.ext.quiver)
    for s in range(1, d + 1):
        image = {vname(i, t + s) for i, t in map(vsplit, ca) if t + s <= window.hi}
        target = {v for v in cb if window.lo + s <= vsplit(v)[1]}
        if image != target or not image:
            continue
        counts_a: Dict[Tuple[str, str], int] = {}
        for a in window.quiver.arrows.values():
            if a.source in ca and a.target in ca:
                i2, t2 = vsplit(a.target)
                if t2 + s > window.hi:
                    continue
                i1, t1 = vsplit(a.source)
                key = (vname(i1, t1 + s), vname(i2, t2 + s))
                counts_a[key] = counts_a.get(key, 0) + 1
        counts_b: Dict[Tuple[str, str], int] = {}
        for a in window.quiver.arrows.values():
            if a.source in target and a.target in target:
                counts_b[(a.source, a.target)] = counts_b.get((a.source, a.target), 0) + 1
        if counts_a == counts_b:
            return s
    return None
