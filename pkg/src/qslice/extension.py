"""Twisted trivial extensions presented by returning-arrow quivers.

For an acyclic algebra L = kQ/(rho) whose maximal bound paths all have
length n, the extension of L by its twisted dual bimodule is presented on
the quiver Q~ = Q plus one returning arrow per top-degree basis class,
running from the class's target back to its source. The degree-two kernel
of the multiplication map k(Q~)_2 -> extension is taken as the relation
set, and quadraticity is certified by comparing dimensions degree by
degree.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (
    GradedAlgebraView,
    MaximalPath,
    check_properly_graded,
    maximal_bound_paths,
)
from .core import (
    Arrow,
    BoundQuiver,
    GradedAutomorphism,
    Path,
    RefutationError,
    compose,
    relation,
)
from .linalg import Vec, kernel_basis, rank_dense, spans_equal

# explicit basis tags: ("a", path) spans the algebra part, ("d", path) the
# dual part (functional dual to the basis path)
Elt = Dict[Tuple[str, Path], Fraction]


class NonQuadraticExtension(RefutationError):
    def __init__(self, degree: int, expected: int, got: int):
        self.degree = degree
        super().__init__(
            f"extension is not quadratic: dimension {got} != {expected} at degree {degree}"
        )


def _returning_arrow_ids(ms: Sequence[MaximalPath], taken: Sequence[str]) -> List[str]:
    """Deterministic returning-arrow names: g<target-of-path> when that pins
    the class down, otherwise the class label itself."""
    targets = [m.target for m in ms]
    taken_set = set(taken)
    ids = []
    for m in ms:
        cand = f"g{m.target}"
        if targets.count(m.target) == 1 and cand not in taken_set:
            ids.append(cand)
        else:
            ids.append(f"b[{m.path}]")
    if len(set(ids)) != len(ids):
        raise RefutationError("returning-arrow labels collide")
    return ids


class TrivialExtensionPresentation:
    """The extension algebra with its returning-arrow presentation.

    Carries: the presented quiver (old arrows bidegree (1,0), returning
    arrows (1,1)), the relation set, a graded view of the presented quotient,
    the explicit two-sided basis with bidegrees, and the twist.
    """

    def __init__(
        self,
        lam_view: GradedAlgebraView,
        sigma: GradedAutomorphism,
        quiver: BoundQuiver,
        returning: Dict[str, MaximalPath],
        n: int,
        is_quadratic: bool,
        quadratic_failure: Optional[Tuple[int, int, int]],
    ):
        self.lam_view = lam_view
        self.lam = lam_view.quiver
        self.sigma = sigma
        self.quiver = quiver
        self.returning = returning
        self.n = n
        self.is_quadratic = is_quadratic
        self.quadratic_failure = quadratic_failure
        self.view = GradedAlgebraView(quiver)
        self._maximal: Dict[str, MaximalPath] = {m.path: m for m in returning.values()}

    # -- dimensions ----------------------------------------------------------

    def expected_dim(self, t: int) -> int:
        """dim of the degree-t part: L_t plus the dual of L_{n+1-t}."""
        a = self.lam_view.dims(t) if t <= self.n else 0
        b = self.lam_view.dims(self.n + 1 - t) if 0 <= self.n + 1 - t <= self.n else 0
        return a + b

    def dim(self) -> int:
        return 2 * self.lam_view.total_dim()

    def basis(self) -> List[Path]:
        self._need_quadratic()
        out: List[Path] = []
        for t in range(self.n + 2):
            out.extend(self.view.degree(t).basis)
        return out

    def bigraded_dimensions(self) -> Dict[Tuple[int, int], int]:
        """Table (first degree, second degree) -> dim, checked against the
        two defining identities of the bigrading."""
        self._need_quadratic()
        table: Dict[Tuple[int, int], int] = {}
        for t in range(self.n + 2):
            for p in self.view.degree(t).basis:
                key = (t, self.quiver.second_degree(p))
                table[key] = table.get(key, 0) + 1
        for t in range(self.n + 2):
            lam_t = self.lam_view.dims(t) if t <= self.n else 0
            dual_t = self.lam_view.dims(self.n + 1 - t) if 0 <= self.n + 1 - t <= self.n else 0
            if table.get((t, 0), 0) != lam_t or table.get((t, 1), 0) != dual_t:
                raise RuntimeError(f"bigraded dimension identity fails at degree {t}")
        return table

    def _need_quadratic(self) -> None:
        if not self.is_quadratic:
            deg, want, got = self.quadratic_failure
            raise NonQuadraticExtension(deg, want, got)

    # -- the trace-like functional and the bilinear form ----------------------

    def mu_path(self, q: Path) -> Fraction:
        """Coefficient functional: rotate the unique returning arrow of a
        cyclic path to the end and read off its class's dual coordinate.

        On presented paths the twist sits in the relations, so the segment
        walked before the returning arrow passes through the twist on its
        way to the untwisted normal form; with the identity twist this is
        the plain rotation. Equivalently: evaluate the dual part of the
        element at the identity."""
        ret_positions = [k for k, a in enumerate(q.arrows) if a in self.returning]
        if len(ret_positions) != 1 or q.source != q.target:
            return Fraction(0)
        k = ret_positions[0]
        m = self.returning[q.arrows[k]]
        head_ids, tail_ids = q.arrows[:k], q.arrows[k + 1:]
        if len(head_ids) + len(tail_ids) != self.n:
            return Fraction(0)
        head = Path(head_ids, q.source, m.target)
        out = Fraction(0)
        for c, h in self.sigma.apply_path(head):
            rotated = Path(tail_ids + h.arrows, m.source, m.target)
            out += c * self.lam_view.reduce_path(rotated).get(m.path, Fraction(0))
        return out

    def mu(self, x: Dict[Path, Fraction]) -> Fraction:
        return sum((c * self.mu_path(p) for p, c in x.items()), Fraction(0))

    def mu_table(self, x: Dict[Path, Fraction]) -> Dict[Path, Fraction]:
        """Per-basis-path contributions of mu on a class (diagnostic form)."""
        return {p: c * self.mu_path(p) for p, c in x.items() if self.mu_path(p) != 0}

    def form(self, x: Dict[Path, Fraction], y: Dict[Path, Fraction]) -> Fraction:
        """(x, y) = mu(x * y) in the presented quotient."""
        self._need_quadratic()
        return self.mu(self.view.multiply(x, y))

    def form_paths(self, x: Path, y: Path) -> Fraction:
        return self.form({x: Fraction(1)}, {y: Fraction(1)})

    def gram_blocks(self) -> List[Tuple[int, List[List[Fraction]]]]:
        """Pairing matrices between degrees t and n+1-t."""
        self._need_quadratic()
        out = []
        for t in range(self.n + 2):
            left = self.view.degree(t).basis
            right = self.view.degree(self.n + 1 - t).basis
            out.append((t, [[self.form_paths(x, y) for y in right] for x in left]))
        return out

    def gram_nondegenerate(self) -> bool:
        if not self.is_quadratic:
            return False
        for t, mat in self.gram_blocks():
            left = self.view.dims(t)
            right = self.view.dims(self.n + 1 - t)
            if left != right:
                return False
            if left and rank_dense(mat) != left:
                return False
        return True

    # -- Nakayama automorphism -------------------------------------------------

    def nakayama_automorphism(self, verify: bool = True) -> GradedAutomorphism:
        """The automorphism w with (a, b) = (b, w(a)): the inverse twist on
        old arrows and the twisted dual-coordinate matrix on returning ones."""
        self._need_quadratic()
        inv = self.sigma.inverse()
        images: Dict[str, List[Tuple[Fraction, str]]] = {}
        for aid in self.quiver.arrows:
            if aid in self.returning:
                # the image of beta_p is sum over parallel classes m of the
                # p-dual coordinate of sigma(m), on beta_m
                p = self.returning[aid]
                img: List[Tuple[Fraction, str]] = []
                for bid, m in self.returning.items():
                    if (m.source, m.target) != (p.source, p.target):
                        continue
                    cls = self.lam_view.reduce_combo(self.sigma.apply_path(m.path))
                    c = cls.get(p.path, Fraction(0))
                    if c:
                        img.append((c, bid))
                images[aid] = img
            else:
                images[aid] = inv.apply_arrow(aid)
        omega = GradedAutomorphism.from_images(self.quiver, images)
        if verify:
            basis = self.basis()
            for a in basis:
                wa = self.view.reduce_combo(omega.apply_path(a))
                for b in basis:
                    if a.length + b.length != self.n + 1:
                        continue
                    lhs = self.form_paths(a, b)
                    rhs = self.form({b: Fraction(1)}, wa)
                    if lhs != rhs:
                        raise RuntimeError(
                            f"Nakayama identity fails on ({a}, {b}): {lhs} != {rhs}"
                        )
        return omega


def _mult_aa(lam_view: GradedAlgebraView, p: Path, q: Path) -> Elt:
    """Product of algebra-part classes: walk q then p."""
    z = compose(q, p)
    if z is None:
        return {}
    return {("a", b): c for b, c in lam_view.reduce_path(z).items()}


def _mult_ad(lam_view: GradedAlgebraView, p: Path, b: Path) -> Elt:
    """Algebra part times a dual basis element b^*."""
    out: Elt = {}
    deg = b.length - p.length
    if deg < 0:
        return out
    for z in lam_view.degree(deg).basis:
        zp = compose(p, z)
        if zp is None:
            continue
        coeff = lam_view.reduce_path(zp).get(b, Fraction(0))
        if coeff:
            out[("d", z)] = out.get(("d", z), Fraction(0)) + coeff
    return out


def _mult_da(
    lam_view: GradedAlgebraView, sigma: GradedAutomorphism, b: Path, p: Path
) -> Elt:
    """Dual basis element b^* times an algebra part, twisted on the right."""
    out: Elt = {}
    deg = b.length - p.length
    if deg < 0:
        return out
    sp = sigma.apply_path(p)
    for z in lam_view.degree(deg).basis:
        coeff = Fraction(0)
        for c, pp in sp:
            az = compose(z, pp)
            if az is None:
                continue
            coeff += c * lam_view.reduce_path(az).get(b, Fraction(0))
        if coeff:
            out[("d", z)] = out.get(("d", z), Fraction(0)) + coeff
    return out


def build_trivial_extension(
    lam_view: GradedAlgebraView,
    sigma: Optional[GradedAutomorphism] = None,
    strict: bool = True,
    validate_sigma: bool = True,
) -> TrivialExtensionPresentation:
    """Present the twisted trivial extension on the returning-arrow quiver.

    The relation set is the full degree-two kernel of the multiplication map
    from the presented path space onto the extension; quadraticity is then
    verified through degree n+2 and, when it fails and strict is set, the
    offending degree is reported.
    """
    lam = lam_view.quiver
    if not lam.is_acyclic():
        raise RefutationError("trivial extension presentation needs an acyclic quiver")
    if sigma is None:
        sigma = GradedAutomorphism.identity(lam)
    if validate_sigma:
        sigma.validate()
    n = check_properly_graded(lam_view)
    ms = maximal_bound_paths(lam_view)
    ret_ids = _returning_arrow_ids(ms, list(lam.arrows))
    returning = dict(zip(ret_ids, ms))

    arrows = [Arrow(a.id, a.source, a.target, (1, 0)) for a in lam.arrows.values()]
    arrows += [Arrow(rid, m.target, m.source, (1, 1)) for rid, m in returning.items()]
    bare = BoundQuiver(lam.vertices, arrows, (), name=(lam.name + "~") if lam.name else "")

    def gen(aid: str) -> Elt:
        if aid in returning:
            return {("d", returning[aid].path): Fraction(1)}
        a = lam.arrows[aid]
        return {("a", Path((aid,), a.source, a.target)): Fraction(1)}

    def mult(x: Elt, y: Elt) -> Elt:
        out: Elt = {}
        for (tx, px), cx in x.items():
            for (ty, py), cy in y.items():
                if tx == "a" and ty == "a":
                    part = _mult_aa(lam_view, px, py)
                elif tx == "a" and ty == "d":
                    part = _mult_ad(lam_view, px, py)
                elif tx == "d" and ty == "a":
                    part = _mult_da(lam_view, sigma, px, py)
                else:
                    part = {}
                for k, c in part.items():
                    v = out.get(k, Fraction(0)) + cx * cy * c
                    if v == 0:
                        out.pop(k, None)
                    else:
                        out[k] = v
        return out

    # explicit basis index for kernel computation
    explicit: List[Tuple[str, Path]] = []
    for t in range(n + 1):
        explicit.extend(("a", p) for p in lam_view.degree(t).basis)
    for t in range(n + 1):
        explicit.extend(("d", p) for p in lam_view.degree(t).basis)
    eindex = {k: i for i, k in enumerate(explicit)}

    bare_view = GradedAlgebraView(bare)
    blocks: Dict[Tuple[str, str], List[Path]] = {}
    for p in bare_view.degree(2).paths:
        blocks.setdefault((p.source, p.target), []).append(p)
    rels = []
    for key in sorted(blocks):
        cols = blocks[key]
        images: List[Vec] = []
        for p in cols:
            a1, a2 = p.arrows
            elt = mult(gen(a2), gen(a1))
            images.append({eindex[k]: c for k, c in elt.items()})
        for v in kernel_basis(images):
            rels.append(relation([(c, cols[j]) for j, c in sorted(v.items())]))

    quiver = BoundQuiver(bare.vertices, arrows, rels, name=bare.name)
    pres_view = GradedAlgebraView(quiver)
    is_quadratic = True
    failure = None
    for t in range(n + 3):
        want = (
            (lam_view.dims(t) if t <= n else 0)
            + (lam_view.dims(n + 1 - t) if 0 <= n + 1 - t <= n else 0)
        )
        got = pres_view.dims(t)
        if got != want:
            is_quadratic = False
            failure = (t, want, got)
            break
    if strict and not is_quadratic:
        raise NonQuadraticExtension(*failure)
    return TrivialExtensionPresentation(
        lam_view, sigma, quiver, returning, n, is_quadratic, failure
    )


def bigraded_dimension_table(
    quiver: BoundQuiver, bound: int, view: Optional[GradedAlgebraView] = None
) -> Dict[Tuple[int, int], int]:
    """Dimension table over both gradings for any bidegreed presentation
    (e.g. the dual of an extension), truncated at the first-degree bound."""
    view = view or GradedAlgebraView(quiver)
    table: Dict[Tuple[int, int], int] = {}
    for t in range(bound + 1):
        for p in view.degree(t).basis:
            key = (t, quiver.second_degree(p))
            table[key] = table.get(key, 0) + 1
    return table


def preprojective_algebra(
    gamma: BoundQuiver, n: Optional[int] = None
) -> Tuple[BoundQuiver, TrivialExtensionPresentation]:
    """The higher preprojective presentation of an acyclic quadratic algebra:
    dualize, take the sign-twisted trivial extension, and dualize its
    degree-two relations back. Returns the presented quiver together with
    the extension used. The second-degree-zero part is checked to equal the
    input presentation."""
    from .duality import quadratic_dual

    if not gamma.is_quadratic:
        raise RefutationError("preprojective presentation needs a quadratic quiver")
    if not gamma.is_acyclic():
        raise RefutationError("preprojective presentation needs an acyclic quiver")
    lam = quadratic_dual(gamma)
    lam_view = GradedAlgebraView(lam)
    got_n = check_properly_graded(lam_view)
    if n is not None and n != got_n:
        raise RefutationError(f"dual is {got_n}-properly-graded, not {n}")
    ext = build_trivial_extension(
        lam_view, GradedAutomorphism.nu(lam, got_n), strict=False
    )
    pi = quadratic_dual(ext.quiver)
    pi = BoundQuiver(
        pi.vertices,
        list(pi.arrows.values()),
        pi.relations,
        name=(gamma.name + ".pi") if gamma.name else "pi",
    )
    _check_second_degree_zero_part(pi, gamma)
    return pi, ext


def _check_second_degree_zero_part(pi: BoundQuiver, gamma: BoundQuiver) -> None:
    """Relations of second degree zero must span exactly gamma's relations."""
    paths = sorted(
        {p for r in pi.relations for _, p in r.terms if pi.second_degree(p) == 0}
        | {p for r in gamma.relations for _, p in r.terms},
        key=lambda p: p.key(),
    )
    index = {p: i for i, p in enumerate(paths)}
    old = [
        {index[p]: c for c, p in r.terms}
        for r in pi.relations
        if all(pi.second_degree(p) == 0 for _, p in r.terms)
    ]
    new = [{index[p]: c for c, p in r.terms} for r in gamma.relations]
    if not spans_equal(old, new):
        raise RuntimeError("second-degree-zero part does not reproduce the input")
