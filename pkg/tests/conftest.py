from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path as FsPath

import pytest

sys.path.insert(0, str(FsPath(__file__).parent))

from qslice.core import Arrow, BoundQuiver, relation


def _rel(q: BoundQuiver, *terms):
    return relation([(Fraction(c), q.path(ids)) for c, ids in terms])


def build_aus_a4(dualize: bool = False) -> BoundQuiver:
    """The Auslander-style quiver on six vertices: 1->2->3, 2->4->5, 3->5,
    5->6, with the commuting/zero relation set or its complementary one."""
    arrows = [
        Arrow("a1", "1", "2"),
        Arrow("a2", "2", "3"),
        Arrow("b2", "2", "4"),
        Arrow("b3", "3", "5"),
        Arrow("a4", "4", "5"),
        Arrow("b5", "5", "6"),
    ]
    q = BoundQuiver(["1", "2", "3", "4", "5", "6"], arrows, name="aus-a4")
    if not dualize:
        rels = [
            _rel(q, (1, ["a1", "a2"])),                      # two horizontals
            _rel(q, (1, ["b3", "b5"])),                      # two verticals
            _rel(q, (1, ["b2", "a4"]), (-1, ["a2", "b3"])),  # rhombus commutes
        ]
    else:
        rels = [
            _rel(q, (1, ["b2", "a4"]), (1, ["a2", "b3"])),   # rhombus anticommutes
            _rel(q, (1, ["a1", "b2"])),
            _rel(q, (1, ["a4", "b5"])),
        ]
    return BoundQuiver(q.vertices, arrows, rels, name="aus-a4" + (".dual" if dualize else ""))


def build_linear_a(n: int, rad_square: bool = False) -> BoundQuiver:
    """Linear A_n quiver 1 -> 2 -> ... -> n, optionally with all length-two
    paths set to zero."""
    verts = [str(i) for i in range(1, n + 1)]
    arrows = [Arrow(f"a{i}", str(i), str(i + 1)) for i in range(1, n)]
    q = BoundQuiver(verts, arrows, name=f"a{n}")
    rels = []
    if rad_square:
        rels = [_rel(q, (1, [f"a{i}", f"a{i+1}"])) for i in range(1, n - 1)]
    return BoundQuiver(verts, arrows, rels, name=f"a{n}" + (".rad2" if rad_square else ""))


def build_kronecker(k: int = 2) -> BoundQuiver:
    arrows = [Arrow(chr(ord("a") + i), "1", "2") for i in range(k)]
    return BoundQuiver(["1", "2"], arrows, name=f"kronecker{k}")


@pytest.fixture
def aus_lambda() -> BoundQuiver:
    return build_aus_a4(dualize=False)


@pytest.fixture
def aus_gamma() -> BoundQuiver:
    return build_aus_a4(dualize=True)


@pytest.fixture
def a3() -> BoundQuiver:
    return build_linear_a(3)


@pytest.fixture
def a4() -> BoundQuiver:
    return build_linear_a(4)


@pytest.fixture
def kronecker() -> BoundQuiver:
    return build_kronecker(2)
