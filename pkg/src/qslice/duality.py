"""Quadratic duals: orthogonal complements under the path dual-basis pairing.

Paths of length two are an orthonormal basis of each (source, target) block,
so the dual relations of a block are the kernel of the matrix whose rows are
the block's relations. The dual quiver keeps vertices and arrows; only the
relation spans are complemented.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .algebra import GradedAlgebraView, check_properly_graded
from .core import BoundQuiver, Path, RefutationError, relation
from .linalg import Vec, complement_basis


@dataclass
class PairingWitness:
    source: str
    target: str
    paths: List[Path]
    pairing: List[List[Fraction]]  # rows: relations of the block, cols: paths


def _blocks_of_paths(view: GradedAlgebraView) -> Dict[Tuple[str, str], List[Path]]:
    blocks: Dict[Tuple[str, str], List[Path]] = {}
    for p in view.degree(2).paths:
        blocks.setdefault((p.source, p.target), []).append(p)
    return blocks


def quadratic_dual(q: BoundQuiver, witnesses: Optional[List[PairingWitness]] = None) -> BoundQuiver:
    """Same vertices and arrows; relations span the orthogonal complement of
    the relation span in every length-two block."""
    if not q.is_quadratic:
        raise RefutationError("quadratic dual needs a quadratic quiver")
    view = GradedAlgebraView(q)
    blocks = _blocks_of_paths(view)
    rel_rows: Dict[Tuple[str, str], List[Vec]] = {k: [] for k in blocks}
    for r in q.relations:
        key = (r.source, r.target)
        idx = {p: i for i, p in enumerate(blocks[key])}
        rel_rows[key].append({idx[p]: c for c, p in r.terms})
    dual_rels = []
    for key in sorted(blocks):
        paths = blocks[key]
        rows = rel_rows[key]
        comp = complement_basis(rows, len(paths))
        if witnesses is not None:
            witnesses.append(
                PairingWitness(
                    key[0], key[1], paths,
                    [[row.get(j, Fraction(0)) for j in range(len(paths))] for row in rows],
                )
            )
        for v in comp:
            dual_rels.append(relation([(c, paths[j]) for j, c in sorted(v.items())]))
    return BoundQuiver(
        q.vertices,
        list(q.arrows.values()),
        dual_rels,
        name=(q.name + ".dual") if q.name else "",
    )


@dataclass
class SliceCertificate:
    """Bounded-degree evidence that an algebra is an n-slice algebra.

    coxeter_index is q+1 when the extension's resolution type was pinned at a
    finite step; None means linear through the bound (never asserted
    infinite). `strict` additionally requires the extension quadratic and
    q >= 1.
    """

    n: int
    koszul: Tuple[int, Optional[int]]          # (p, q) with q None = ">= bound"
    hom_bound: int
    degree_bound: int
    self_injective: bool
    extension_quadratic: bool
    verdict: str                               # "finite", "linear-through-bound"
    strict: bool
    notes: List[str] = field(default_factory=list)

    @property
    def coxeter_index(self) -> Optional[int]:
        p, q = self.koszul
        return q if self.verdict == "finite" else None


def n_slice_certify(gamma: BoundQuiver, degree_bound: int = 24, hom_bound: int = 12) -> SliceCertificate:
    """Certify gamma as an n-slice algebra up to the given bounds.

    Builds the quadratic dual, checks it properly graded of some degree n,
    forms its sign-twisted trivial extension and certifies the extension's
    resolution type and self-injectivity. Bounded-degree only: a report of
    "linear through B" never claims the resolution stays linear.
    """
    from .extension import build_trivial_extension
    from .homology import koszul_type

    if not gamma.is_quadratic:
        raise RefutationError("n-slice certification needs a quadratic quiver")
    if not gamma.is_acyclic():
        raise RefutationError("n-slice certification needs an acyclic quiver")
    lam = quadratic_dual(gamma)
    lam_view = GradedAlgebraView(lam)
    n = check_properly_graded(lam_view)
    from .core import GradedAutomorphism

    ext = build_trivial_extension(lam_view, GradedAutomorphism.nu(lam, n))
    report = koszul_type(ext.view, hom_bound=hom_bound, degree_bound=degree_bound)
    selfinj = ext.gram_nondegenerate()
    notes: List[str] = []
    if report.p != n + 1:
        notes.append(f"extension top degree {report.p} != n+1 = {n + 1}")
    if report.q_finite is not None:
        verdict = "finite"
        koszul = (report.p, report.q_finite)
        strict = selfinj and ext.is_quadratic and report.q_finite >= 2
    elif report.linear_through >= hom_bound:
        verdict = "linear-through-bound"
        koszul = (report.p, None)
        strict = selfinj and ext.is_quadratic
    else:
        raise RefutationError(
            f"extension is not almost-Koszul: nonlinearity at step "
            f"{report.linear_through + 1} without top-degree concentration"
        )
    return SliceCertificate(
        n=n,
        koszul=koszul,
        hom_bound=hom_bound,
        degree_bound=degree_bound,
        self_injective=selfinj,
        extension_quadratic=ext.is_quadratic,
        verdict=verdict,
        strict=strict,
        notes=notes,
    )
