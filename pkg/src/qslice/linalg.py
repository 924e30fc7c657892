"""Exact linear algebra over the rationals.

Vectors are sparse dicts {column index: Fraction}. Row spans are kept in
reduced echelon form with pivots chosen at the smallest column index, so a
fixed column ordering (the path ordering, elsewhere) makes every basis and
every coset representative reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional

Vec = Dict[int, Fraction]


def vec_scale(v: Vec, c: Fraction) -> Vec:
    if c == 0:
        return {}
    return {j: c * x for j, x in v.items()}


def vec_addmul(v: Vec, w: Vec, c: Fraction) -> Vec:
    """v + c*w, dropping exact zeros."""
    out = dict(v)
    for j, x in w.items():
        y = out.get(j, Fraction(0)) + c * x
        if y == 0:
            out.pop(j, None)
        else:
            out[j] = y
    return out


def vec_is_zero(v: Vec) -> bool:
    return not v


class RowSpan:
    """A subspace held as reduced row-echelon rows over ordered columns.

    Rows are normalized (pivot entry 1) and fully reduced against each
    other; pivot columns are the leftmost nonzero entries. Insertion order
    does not affect the final basis, only the work done.
    """

    __slots__ = ("rows", "pivot_of_row", "row_of_pivot")

    def __init__(self) -> None:
        self.rows: List[Vec] = []
        self.pivot_of_row: List[int] = []
        self.row_of_pivot: Dict[int, int] = {}

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: Vec) -> Vec:
        """Residue of v modulo the span (pivot entries eliminated)."""
        v = dict(v)
        while True:
            hit = None
            for j in v:
                r = self.row_of_pivot.get(j)
                if r is not None:
                    hit = (j, r)
                    break
            if hit is None:
                return v
            j, r = hit
            v = vec_addmul(v, self.rows[r], -v[j])

    def add(self, v: Vec) -> bool:
        """Insert v; returns True if the span grew."""
        v = self.reduce(v)
        if vec_is_zero(v):
            return False
        piv = min(v)
        v = vec_scale(v, Fraction(1) / v[piv])
        # eliminate the new pivot from existing rows
        for i, row in enumerate(self.rows):
            if piv in row:
                self.rows[i] = vec_addmul(row, v, -row[piv])
        self.rows.append(v)
        self.pivot_of_row.append(piv)
        self.row_of_pivot[piv] = len(self.rows) - 1
        return True

    def contains(self, v: Vec) -> bool:
        return vec_is_zero(self.reduce(v))

    def pivots(self) -> List[int]:
        return sorted(self.pivot_of_row)

    def sorted_rows(self) -> List[Vec]:
        """Rows ordered by pivot column (the canonical echelon basis)."""
        order = sorted(range(len(self.rows)), key=lambda i: self.pivot_of_row[i])
        return [self.rows[i] for i in order]

    def equals(self, other: "RowSpan") -> bool:
        if self.dim != other.dim:
            return False
        return all(other.contains(r) for r in self.rows)


def span_of(vectors: Iterable[Vec]) -> RowSpan:
    s = RowSpan()
    for v in vectors:
        s.add(v)
    return s


def kernel_basis(images: List[Vec]) -> List[Vec]:
    """Kernel of the linear map sending domain basis vector j to images[j].

    Returns echelon kernel vectors over the domain indices, deterministic in
    the given domain order (later indices reduce against earlier ones).
    """
    span = RowSpan()
    # augmented rows: image part on real columns, domain tag on offset columns
    tags: List[Vec] = []
    kernel: List[Vec] = []
    for j, img in enumerate(images):
        v = dict(img)
        tag = {j: Fraction(1)}
        # manual reduction so the tag follows the eliminations
        while True:
            hit = None
            for col in v:
                r = span.row_of_pivot.get(col)
                if r is not None:
                    hit = (col, r)
                    break
            if hit is None:
                break
            col, r = hit
            c = -v[col]
            v = vec_addmul(v, span.rows[r], c)
            tag = vec_addmul(tag, tags[r], c)
        if vec_is_zero(v):
            kernel.append(tag)
            continue
        piv = min(v)
        inv = Fraction(1) / v[piv]
        v = vec_scale(v, inv)
        tag = vec_scale(tag, inv)
        for i, row in enumerate(span.rows):
            if piv in row:
                c = -row[piv]
                span.rows[i] = vec_addmul(row, v, c)
                tags[i] = vec_addmul(tags[i], tag, c)
        span.rows.append(v)
        span.pivot_of_row.append(piv)
        span.row_of_pivot[piv] = len(span.rows) - 1
        tags.append(tag)
    # canonicalize the kernel itself
    out = span_of(kernel)
    return out.sorted_rows()


def complement_basis(rows: Iterable[Vec], ncols: int) -> List[Vec]:
    """Orthogonal complement of span(rows) inside Q^ncols for the dot product
    that makes the standard coordinates orthonormal.
    """
    span = span_of(rows)
    mat = span.sorted_rows()
    images: List[Vec] = []
    for j in range(ncols):
        img = {i: row[j] for i, row in enumerate(mat) if j in row}
        images.append(img)
    return kernel_basis(images)


def invert_matrix(rows: List[List[Fraction]]) -> Optional[List[List[Fraction]]]:
    """Dense exact inverse; None if singular."""
    n = len(rows)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                c = aug[i][col]
                aug[i] = [x - c * y for x, y in zip(aug[i], aug[col])]
    return [r[n:] for r in aug]


def spans_equal(a: Iterable[Vec], b: Iterable[Vec]) -> bool:
    sa, sb = span_of(a), span_of(b)
    return sa.equals(sb)


def rank_dense(rows: List[List[Fraction]]) -> int:
    s = RowSpan()
    for r in rows:
        s.add({j: x for j, x in enumerate(r) if x != 0})
    return s.dim
