"""Bound quivers: vertices, arrows, paths and homogeneous relations over Q.

Scalars are exact rationals (fractions.Fraction); no floating point enters
any algebraic computation. Paths store their arrows in traversal order
(first arrow traversed first) and print right-to-left, so the printed form
"b2*a1" is the path that walks a1 and then b2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .linalg import Vec, span_of


class QuiverError(ValueError):
    """Structurally invalid quiver data."""


class RefutationError(ValueError):
    """A mathematical precondition fails (e.g. input not quadratic)."""


class BoundsExceededError(RuntimeError):
    """A configured resource bound (path cap, degree cap) was hit."""


@dataclass(frozen=True)
class Arrow:
    id: str
    source: str
    target: str
    bidegree: Tuple[int, int] = (1, 0)

    def __post_init__(self):
        if self.bidegree[0] != 1 or self.bidegree[1] not in (0, 1):
            raise QuiverError(f"arrow {self.id}: bidegree must be (1, 0) or (1, 1)")


@dataclass(frozen=True)
class Path:
    """A composable sequence of arrow ids; the empty path is a vertex idempotent."""

    arrows: Tuple[str, ...]
    source: str
    target: str

    @property
    def length(self) -> int:
        return len(self.arrows)

    def key(self) -> Tuple:
        return (self.length, self.source, self.arrows)

    def __str__(self) -> str:
        if not self.arrows:
            return f"e_{self.source}"
        return "*".join(reversed(self.arrows))


def idempotent(v: str) -> Path:
    return Path((), v, v)


def compose(first: Path, then: Path) -> Optional[Path]:
    """Walk `first`, then `then`; None if the endpoints do not match."""
    if first.target != then.source:
        return None
    return Path(first.arrows + then.arrows, first.source, then.target)


@dataclass(frozen=True)
class RelationElement:
    """A linear combination of equal-length co-terminal paths."""

    terms: Tuple[Tuple[Fraction, Path], ...]

    def __post_init__(self):
        if not self.terms:
            raise QuiverError("relation with no terms")
        if any(c == 0 for c, _ in self.terms):
            raise QuiverError("relation with a zero coefficient")
        p0 = self.terms[0][1]
        for _, p in self.terms:
            if (p.length, p.source, p.target) != (p0.length, p0.source, p0.target):
                raise QuiverError(
                    "relation terms must share length, source and target: "
                    f"{p0} vs {p}"
                )

    @property
    def degree(self) -> int:
        return self.terms[0][1].length

    @property
    def source(self) -> str:
        return self.terms[0][1].source

    @property
    def target(self) -> str:
        return self.terms[0][1].target

    def __str__(self) -> str:
        bits = []
        for c, p in self.terms:
            if c == 1:
                bits.append(f"+{p}")
            elif c == -1:
                bits.append(f"-{p}")
            else:
                bits.append(f"+({c})*{p}")
        s = " ".join(bits)
        return s[1:] if s.startswith("+") else s


def relation(terms: Iterable[Tuple[Fraction, Path]]) -> RelationElement:
    canon = sorted(((Fraction(c), p) for c, p in terms if c != 0), key=lambda t: t[1].key())
    return RelationElement(tuple(canon))


class BoundQuiver:
    """A finite quiver with a set of normalized homogeneous relations.

    Immutable after construction; derived structure (path tables, graded
    bases) lives in GradedAlgebraView, which caches idempotently.
    """

    def __init__(
        self,
        vertices: Sequence[str],
        arrows: Sequence[Arrow],
        relations: Sequence[RelationElement] = (),
        name: str = "",
    ) -> None:
        if len(set(vertices)) != len(vertices):
            raise QuiverError("duplicate vertex ids")
        self.vertices: Tuple[str, ...] = tuple(vertices)
        vset = set(self.vertices)
        seen = set()
        for a in arrows:
            if a.id in seen:
                raise QuiverError(f"duplicate arrow id {a.id}")
            seen.add(a.id)
            if a.source not in vset or a.target not in vset:
                raise QuiverError(f"arrow {a.id}: endpoint not a vertex")
        self.arrows: Dict[str, Arrow] = {a.id: a for a in arrows}
        for r in relations:
            if r.degree < 2:
                raise QuiverError("relations must have degree >= 2")
            for _, p in r.terms:
                self._check_path(p)
        self.relations: Tuple[RelationElement, ...] = tuple(relations)
        self.name = name
        self.arrows_from: Dict[str, List[Arrow]] = {v: [] for v in self.vertices}
        self.arrows_into: Dict[str, List[Arrow]] = {v: [] for v in self.vertices}
        for a in sorted(self.arrows.values(), key=lambda a: a.id):
            self.arrows_from[a.source].append(a)
            self.arrows_into[a.target].append(a)

    def _check_path(self, p: Path) -> None:
        at = p.source
        for aid in p.arrows:
            a = self.arrows.get(aid)
            if a is None:
                raise QuiverError(f"path uses unknown arrow {aid}")
            if a.source != at:
                raise QuiverError(f"path {p} is not composable at {aid}")
            at = a.target
        if at != p.target:
            raise QuiverError(f"path target mismatch in {p}")

    def path(self, arrow_ids: Sequence[str], source: Optional[str] = None) -> Path:
        """Build a path from arrow ids in traversal order."""
        if not arrow_ids:
            if source is None:
                raise QuiverError("empty path needs a vertex")
            return idempotent(source)
        first = self.arrows[arrow_ids[0]]
        p = Path(tuple(arrow_ids), first.source, self.arrows[arrow_ids[-1]].target)
        self._check_path(p)
        return p

    @property
    def is_quadratic(self) -> bool:
        return all(r.degree == 2 for r in self.relations)

    def second_degree(self, p: Path) -> int:
        return sum(self.arrows[a].bidegree[1] for a in p.arrows)

    def is_acyclic(self) -> bool:
        state: Dict[str, int] = {}

        def visit(v: str) -> bool:
            state[v] = 1
            for a in self.arrows_from[v]:
                s = state.get(a.target, 0)
                if s == 1:
                    return False
                if s == 0 and not visit(a.target):
                    return False
            state[v] = 2
            return True

        return all(visit(v) for v in self.vertices if state.get(v, 0) == 0)

    def nicely_graded_map(self) -> Optional[Dict[str, int]]:
        """A map d with d(target) = d(source) + 1 on every arrow, min value 0;
        None if no such map exists."""
        d: Dict[str, int] = {}
        for start in self.vertices:
            if start in d:
                continue
            d[start] = 0
            stack = [start]
            while stack:
                v = stack.pop()
                for a in self.arrows_from[v]:
                    want = d[v] + 1
                    if a.target in d:
                        if d[a.target] != want:
                            return None
                    else:
                        d[a.target] = want
                        stack.append(a.target)
                for a in self.arrows_into[v]:
                    want = d[v] - 1
                    if a.source in d:
                        if d[a.source] != want:
                            return None
                    else:
                        d[a.source] = want
                        stack.append(a.source)
        if not d:
            return {}
        lo = min(d.values())
        return {v: x - lo for v, x in d.items()}

    def relabelled(self, vertex_map: Dict[str, str], arrow_map: Dict[str, str]) -> "BoundQuiver":
        arrows = [
            Arrow(arrow_map[a.id], vertex_map[a.source], vertex_map[a.target], a.bidegree)
            for a in self.arrows.values()
        ]
        rels = []
        for r in self.relations:
            terms = []
            for c, p in r.terms:
                q = Path(tuple(arrow_map[x] for x in p.arrows), vertex_map[p.source], vertex_map[p.target])
                terms.append((c, q))
            rels.append(relation(terms))
        return BoundQuiver([vertex_map[v] for v in self.vertices], arrows, rels, name=self.name)

    def opposite(self) -> "BoundQuiver":
        """Reverse every arrow; relation paths reverse their traversal order."""
        arrows = [Arrow(a.id, a.target, a.source, a.bidegree) for a in self.arrows.values()]
        rels = []
        for r in self.relations:
            terms = []
            for c, p in r.terms:
                terms.append((c, Path(tuple(reversed(p.arrows)), p.target, p.source)))
            rels.append(relation(terms))
        return BoundQuiver(self.vertices, arrows, rels, name=self.name + ".op" if self.name else "")

    def __repr__(self) -> str:
        return (
            f"BoundQuiver({self.name or 'unnamed'}: {len(self.vertices)} vertices, "
            f"{len(self.arrows)} arrows, {len(self.relations)} relations)"
        )


def check_acyclic(q: BoundQuiver) -> bool:
    return q.is_acyclic()


def check_nicely_graded(q: BoundQuiver) -> Optional[Dict[str, int]]:
    return q.nicely_graded_map()


class GradedAutomorphism:
    """A degree-preserving automorphism given blockwise on parallel arrows.

    blocks[(i, j)] is a matrix over the ordered arrows i -> j: the image of
    arrow a is sum_b M[b][a] * b. Idempotents are fixed. Validation checks
    each block is invertible and that the relation span is preserved.
    """

    def __init__(self, quiver: BoundQuiver, blocks: Dict[Tuple[str, str], List[List[Fraction]]]):
        self.quiver = quiver
        self.blocks = blocks
        self._images: Dict[str, List[Tuple[Fraction, str]]] = {}
        for (i, j), mat in blocks.items():
            ids = [a.id for a in quiver.arrows_from[i] if a.target == j]
            if len(mat) != len(ids) or any(len(row) != len(ids) for row in mat):
                raise QuiverError(f"automorphism block ({i},{j}) has wrong shape")
            for col, aid in enumerate(ids):
                img = [(mat[row][col], ids[row]) for row in range(len(ids)) if mat[row][col] != 0]
                if not img:
                    raise QuiverError(f"automorphism kills arrow {aid}")
                self._images[aid] = img
        for a in quiver.arrows.values():
            self._images.setdefault(a.id, [(Fraction(1), a.id)])

    @classmethod
    def from_images(
        cls, quiver: BoundQuiver, images: Dict[str, List[Tuple[Fraction, str]]]
    ) -> "GradedAutomorphism":
        """Assemble blocks from per-arrow images (parallel arrows only)."""
        pairs: Dict[Tuple[str, str], List[str]] = {}
        for a in sorted(quiver.arrows.values(), key=lambda a: a.id):
            pairs.setdefault((a.source, a.target), []).append(a.id)
        blocks: Dict[Tuple[str, str], List[List[Fraction]]] = {}
        for key, ids in pairs.items():
            pos = {aid: k for k, aid in enumerate(ids)}
            mat = [[Fraction(0)] * len(ids) for _ in ids]
            for col, aid in enumerate(ids):
                for c, bid in images.get(aid, [(Fraction(1), aid)]):
                    if bid not in pos:
                        raise QuiverError(f"image of {aid} leaves its arrow block")
                    mat[pos[bid]][col] = c
            blocks[key] = mat
        return cls(quiver, blocks)

    @classmethod
    def identity(cls, quiver: BoundQuiver) -> "GradedAutomorphism":
        return cls.diagonal(quiver, {a: Fraction(1) for a in quiver.arrows})

    @classmethod
    def eps(cls, quiver: BoundQuiver, m: int) -> "GradedAutomorphism":
        """Scale every arrow by (-1)^m."""
        c = Fraction(-1) ** (m % 2)
        return cls.diagonal(quiver, {a: c for a in quiver.arrows})

    @classmethod
    def nu(cls, quiver: BoundQuiver, n: int) -> "GradedAutomorphism":
        """The sign twist scaling every arrow by (-1)^n."""
        return cls.eps(quiver, n)

    @classmethod
    def diagonal(cls, quiver: BoundQuiver, scale: Dict[str, Fraction]) -> "GradedAutomorphism":
        blocks: Dict[Tuple[str, str], List[List[Fraction]]] = {}
        pairs: Dict[Tuple[str, str], List[str]] = {}
        for a in sorted(quiver.arrows.values(), key=lambda a: a.id):
            pairs.setdefault((a.source, a.target), []).append(a.id)
        for key, ids in pairs.items():
            blocks[key] = [
                [scale[ids[r]] if r == c else Fraction(0) for c in range(len(ids))]
                for r in range(len(ids))
            ]
        return cls(quiver, blocks)

    def apply_arrow(self, arrow_id: str) -> List[Tuple[Fraction, str]]:
        return self._images[arrow_id]

    def apply_path(self, p: Path) -> List[Tuple[Fraction, Path]]:
        """Expand the image of a path as a combination of parallel paths."""
        out: List[Tuple[Fraction, Tuple[str, ...]]] = [(Fraction(1), ())]
        for aid in p.arrows:
            img = self._images[aid]
            out = [(c * c2, pre + (bid,)) for c, pre in out for c2, bid in img]
        return [(c, Path(arrs, p.source, p.target)) for c, arrs in out]

    def apply_relation(self, r: RelationElement) -> List[Tuple[Fraction, Path]]:
        acc: Dict[Path, Fraction] = {}
        for c, p in r.terms:
            for c2, q in self.apply_path(p):
                acc[q] = acc.get(q, Fraction(0)) + c * c2
        return [(c, p) for p, c in acc.items() if c != 0]

    def is_diagonal(self) -> bool:
        return all(len(img) == 1 for img in self._images.values())

    def scale_of(self, arrow_id: str) -> Fraction:
        img = self._images[arrow_id]
        if len(img) != 1 or img[0][1] != arrow_id:
            raise QuiverError(f"automorphism is not diagonal at {arrow_id}")
        return img[0][0]

    def inverse(self) -> "GradedAutomorphism":
        from .linalg import invert_matrix

        inv_blocks = {}
        for key, mat in self.blocks.items():
            inv = invert_matrix([list(map(Fraction, row)) for row in mat])
            if inv is None:
                raise QuiverError(f"automorphism block {key} is singular")
            inv_blocks[key] = inv
        return GradedAutomorphism(self.quiver, inv_blocks)

    def validate(self) -> None:
        """Check blocks are invertible and the relation span is preserved."""
        from .linalg import invert_matrix

        for key, mat in self.blocks.items():
            if invert_matrix([list(map(Fraction, row)) for row in mat]) is None:
                raise QuiverError(f"automorphism block {key} is singular")
        by_block: Dict[Tuple[int, str, str], List[RelationElement]] = {}
        for r in self.quiver.relations:
            by_block.setdefault((r.degree, r.source, r.target), []).append(r)
        for (deg, i, j), rels in by_block.items():
            paths = sorted({p for r in rels for _, p in r.terms} |
                           {q for r in rels for _, p in r.terms for _, q in self.apply_path(p)},
                           key=lambda p: p.key())
            index = {p: k for k, p in enumerate(paths)}
            span = span_of(
                [{index[p]: c for c, p in r.terms} for r in rels]
            )
            for r in rels:
                img: Vec = {}
                for c, p in self.apply_relation(r):
                    img[index[p]] = c
                if not span.contains(img):
                    raise RefutationError(
                        f"automorphism does not preserve the relation span at "
                        f"({i} -> {j}, degree {deg})"
                    )
