from __future__ import annotations

from fractions import Fraction

import pytest

from qslice.core import Arrow, BoundQuiver, RefutationError, relation
from qslice.algebra import (
    GradedAlgebraView,
    check_properly_graded,
    maximal_bound_paths,
)

import oracles
from conftest import build_aus_a4, build_kronecker, build_linear_a


def test_degree_zero_is_identity(aus_lambda):
    view = GradedAlgebraView(aus_lambda)
    basis, dims = view.degree_basis(0)
    assert [str(p) for p in basis] == [f"e_{v}" for v in sorted(aus_lambda.vertices)]
    assert dims == {(v, v): 1 for v in aus_lambda.vertices}


def test_aus_a4_degree_two_dimension(aus_lambda):
    # frozen from the brute-force path enumeration oracle: three classes
    view = GradedAlgebraView(aus_lambda)
    basis, dims = view.degree_basis(2)
    assert len(basis) == 3
    assert oracles.quotient_dims(aus_lambda, 2) == 3
    keys = {(p.source, p.target) for p in basis}
    assert keys == {("1", "4"), ("2", "5"), ("4", "6")}


def test_a3_no_relations_degree_two(a3):
    view = GradedAlgebraView(a3)
    assert view.dims(2) == 1


def test_dims_match_oracle_over_degrees(aus_lambda, a4):
    for q in (aus_lambda, a4, build_kronecker(3)):
        view = GradedAlgebraView(q)
        for t in range(5):
            assert view.dims(t) == oracles.quotient_dims(q, t), (q.name, t)


def test_rank_nullity_per_degree(aus_lambda):
    view = GradedAlgebraView(aus_lambda)
    for t in range(4):
        d = view.degree(t)
        assert len(d.paths) == d.ideal.dim + len(d.basis)


def test_dim_matrix_zero_beyond_top(aus_lambda):
    view = GradedAlgebraView(aus_lambda)
    assert view.top_degree() == 2
    assert view.dims(3) == 0
    assert view.dims(4) == 0


def test_deterministic_bases(aus_lambda):
    v1 = GradedAlgebraView(aus_lambda)
    v2 = GradedAlgebraView(aus_lambda)
    for t in range(4):
        assert v1.degree_basis(t) == v2.degree_basis(t)


def test_maximal_bound_paths_aus(aus_lambda):
    view = GradedAlgebraView(aus_lambda)
    assert check_properly_graded(view) == 2
    ms = maximal_bound_paths(view)
    assert len(ms) == 3
    ends = {(m.source, m.target) for m in ms}
    assert ends == {("1", "4"), ("2", "5"), ("4", "6")}


def test_maximal_bound_paths_linear_a3(a3):
    view = GradedAlgebraView(a3)
    ms = maximal_bound_paths(view)
    assert len(ms) == 1 and ms[0].path.length == 2


def test_maximal_bound_paths_kronecker(kronecker):
    # no length-two paths exist, so the arrows themselves are maximal
    view = GradedAlgebraView(kronecker)
    ms = maximal_bound_paths(view)
    assert [str(m) for m in ms] == ["a", "b"]
    assert check_properly_graded(view) == 1


def test_single_vertex_no_arrows():
    q = BoundQuiver(["1"], [])
    view = GradedAlgebraView(q)
    assert check_properly_graded(view) == 0


def test_mixed_maximal_lengths_detected():
    arrows = [Arrow("x", "a", "b"), Arrow("y", "a", "c"), Arrow("z", "c", "d")]
    q = BoundQuiver(["a", "b", "c", "d"], arrows)
    view = GradedAlgebraView(q)
    with pytest.raises(RefutationError) as e:
        check_properly_graded(view)
    assert "1" in str(e.value) and "2" in str(e.value)


def test_reduce_path_rewrites_pivot(aus_lambda):
    view = GradedAlgebraView(aus_lambda)
    # the rhombus relation identifies the two 2 -> 5 paths
    p = aus_lambda.path(["a2", "b3"])
    q = aus_lambda.path(["b2", "a4"])
    rp, rq = view.reduce_path(p), view.reduce_path(q)
    assert rp == rq and len(rp) == 1


def test_multiply_associative_sample(aus_lambda):
    view = GradedAlgebraView(aus_lambda)
    one = {aus_lambda.path([], "1"): Fraction(1)}
    a1 = {aus_lambda.path(["a1"]): Fraction(1)}
    b2 = {aus_lambda.path(["b2"]): Fraction(1)}
    left = view.multiply(b2, view.multiply(a1, one))
    right = view.multiply(view.multiply(b2, a1), one)
    assert left == right and len(left) == 1


def test_acyclic_and_nicely_graded(aus_lambda, kronecker):
    assert aus_lambda.is_acyclic()
    d = aus_lambda.nicely_graded_map()
    assert d is not None
    for a in aus_lambda.arrows.values():
        assert d[a.target] == d[a.source] + 1
    assert min(d.values()) == 0
    assert kronecker.nicely_graded_map() is not None


def test_not_nicely_graded():
    arrows = [Arrow("x", "a", "b"), Arrow("y", "a", "c"), Arrow("z", "c", "b")]
    q = BoundQuiver(["a", "b", "c"], arrows)
    assert q.nicely_graded_map() is None
