"""Acceptance gate: every primary criterion at its stated tolerance.

Run with `pytest -s tests/test_acceptance.py` to see one PASS line per
criterion; a failing criterion fails its test with the stated check.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from qslice.core import BoundQuiver, GradedAutomorphism, relation
from qslice.algebra import GradedAlgebraView
from qslice.duality import n_slice_certify, quadratic_dual
from qslice.extension import build_trivial_extension, preprojective_algebra
from qslice.homology import classify, koszul_type, loewy_matrix, spectral_radius
from qslice.slices import (
    bound_quiver_isomorphic,
    double_slice,
    is_complete_tau_slice,
    level_slice,
    mutate_double_slice,
    mutate_slice,
    slice_sources,
)
from qslice.zquiver import MarginError, build_window, connected_components, vname

import oracles
import test_properties as props
from conftest import build_aus_a4, build_kronecker, build_linear_a


def ok(name: str):
    print(f"ACCEPTANCE PASS: {name}")


def span_rows(q: BoundQuiver, rels):
    paths = oracles.all_paths(q, 2)
    index = {p[0]: i for i, p in enumerate(paths)}
    rows = []
    for r in rels:
        row = [Fraction(0)] * len(paths)
        for c, p in r.terms:
            row[index[p.arrows]] += c
        rows.append(row)
    return rows


def aus_window():
    lam = build_aus_a4()
    ext = build_trivial_extension(GradedAlgebraView(lam), GradedAutomorphism.nu(lam, 2))
    return build_window(ext, "zv", -6, 11, component_of="1")


def test_acceptance_example_dual():
    """Worked example, quadratic dual: exact span equality."""
    lam = build_aus_a4()
    dual = quadratic_dual(lam)
    q = dual
    expected = [
        relation([(Fraction(1), q.path(["b2", "a4"])), (Fraction(1), q.path(["a2", "b3"]))]),
        relation([(Fraction(1), q.path(["a1", "b2"]))]),
        relation([(Fraction(1), q.path(["a4", "b5"]))]),
    ]
    assert oracles.spans_equal_dense(span_rows(q, q.relations), span_rows(q, expected))
    ok("example dual relations (exact span equality)")


def test_acceptance_example_preprojective():
    """Worked example, higher preprojective presentation span."""
    gamma = build_aus_a4(dualize=True)
    pi, _ = preprojective_algebra(gamma)
    q = pi
    expected = [
        relation([(Fraction(1), q.path(["b2", "a4"])), (Fraction(1), q.path(["a2", "b3"]))]),
        relation([(Fraction(1), q.path(["g4", "a1"])), (Fraction(1), q.path(["a4", "g5"]))]),
        relation([(Fraction(1), q.path(["g5", "b2"])), (Fraction(1), q.path(["b5", "g6"]))]),
        relation([(Fraction(1), q.path(["a1", "b2"]))]),
        relation([(Fraction(1), q.path(["a4", "b5"]))]),
        relation([(Fraction(1), q.path(["b2", "g4"]))]),
        relation([(Fraction(1), q.path(["b3", "g5"]))]),
        relation([(Fraction(1), q.path(["g5", "a2"]))]),
        relation([(Fraction(1), q.path(["g6", "a4"]))]),
    ]
    assert oracles.spans_equal_dense(span_rows(q, q.relations), span_rows(q, expected))
    ok("example preprojective relations (exact span equality)")


def test_acceptance_example_koszul_classification():
    """Extension certified (3,2) at bounds (12,24); verdict Finite(2)."""
    lam = build_aus_a4()
    ext = build_trivial_extension(GradedAlgebraView(lam), GradedAutomorphism.nu(lam, 2))
    report = koszul_type(ext.view, hom_bound=12, degree_bound=24)
    assert (report.p, report.q_finite) == (3, 2) and report.concentrated
    verdict = classify(build_aus_a4(dualize=True), hom_bound=12, degree_bound=24)
    assert verdict.verdict == "finite" and verdict.coxeter_index == 2
    ok("example (3,2)-Koszul certification and Finite(2) verdict")


def test_acceptance_tau_perp_table():
    """Dual translation table on the returning-arrow quiver."""
    w = aus_window()
    assert w.base.tau_perp_perm == {"1": "6", "2": "4", "3": "1", "4": "5", "5": "2", "6": "3"}
    ok("dual translation table 1->6, 2->4, 3->1, 4->5, 5->2, 6->3")


def test_acceptance_zv_components():
    """Exactly 3 pairwise-isomorphic nicely graded components."""
    lam = build_aus_a4()
    ext = build_trivial_extension(GradedAlgebraView(lam), GradedAutomorphism.nu(lam, 2))
    report = connected_components(build_window(ext, "zv", 0, 8))
    assert report.count == 3
    assert all(c.nicely_graded_map() is not None for c in report.components)
    assert len(report.shift_witnesses) == 6
    ok("level unrolling splits into 3 pairwise-isomorphic nicely graded components")


S1 = frozenset({"1@0", "2@1", "3@2", "4@2", "5@0", "6@1"})
S4 = frozenset({"1@0", "2@1", "3@2", "4@2", "5@3", "6@1"})
T1 = frozenset({"1@0", "2@1", "5@0", "6@1"})
T4 = frozenset({"2@1", "3@2", "5@0", "6@1"})
T5 = frozenset({"1@0", "2@1", "4@2", "6@1"})
DS1 = frozenset({"1@0", "2@1", "3@2", "1@3", "2@4", "5@0", "4@2", "5@3", "6@1", "6@4"})


def test_acceptance_double_slices_and_mutations():
    """Figure vertex sets and mutation compatibility on 10 random mutations."""
    w = aus_window()
    ds = double_slice(w, S1, "S+")
    assert ds.vertices == DS1
    assert mutate_slice(w, S1, "5@0", "+", "tau") == S4
    assert mutate_slice(w, T1, "1@0", "+", "tau_perp") == T4
    assert mutate_slice(w, T1, "5@0", "+", "tau_perp") == T5
    rng = random.Random(2024)
    done = 0
    cur = S1
    while done < 10:
        v = rng.choice(sorted(slice_sources(w, set(cur))))
        try:
            nxt = mutate_slice(w, cur, v, "+", "tau")
            lhs = mutate_double_slice(w, double_slice(w, cur, "S+"), v, "+")
            rhs = double_slice(w, nxt, "S+")
        except MarginError:
            cur = S1
            continue
        assert lhs.vertices == rhs.vertices
        cur = nxt
        done += 1
    ok("double slice figure set, slice mutations, and 10 mutation compatibilities")


def test_acceptance_companion():
    """Companion is a certified finite-type slice of Coxeter index 3 and the
    pairing is involutive up to isomorphism."""
    from qslice.slices import companion

    gamma = build_aus_a4(dualize=True)
    res = companion(gamma)
    cert = n_slice_certify(res.quiver)
    assert cert.verdict == "finite" and cert.n == 1 and cert.koszul == (2, 3)
    verdict = classify(res.quiver)
    assert verdict.verdict == "finite" and verdict.coxeter_index == 3
    back = companion(res.quiver)
    assert bound_quiver_isomorphic(back.quiver, gamma) is not None
    ok("companion: certified 1-slice, finite type, Coxeter index 3, involutive")


def test_acceptance_hereditary_sanity():
    """Coxeter-number consistency for the two linear fixtures (exact)."""
    for m, want in ((3, (2, 2)), (4, (2, 3))):
        lam = build_linear_a(m, rad_square=True)
        ext = build_trivial_extension(GradedAlgebraView(lam), GradedAutomorphism.nu(lam, 1))
        report = koszul_type(ext.view, hom_bound=12, degree_bound=24)
        assert (report.p, report.q_finite) == want and report.concentrated
    ok("hereditary sanity: extensions are (2,2) and (2,3), matching Coxeter numbers")


def test_acceptance_trichotomy_spectral():
    """Tame/wild fixtures with radii within 1e-6 of the exact roots."""
    tame = classify(build_kronecker(2), hom_bound=8, degree_bound=16)
    assert tame.verdict == "tame"
    assert abs(tame.radius - 1.0) <= 1e-6
    wild = classify(build_kronecker(3), hom_bound=4, degree_bound=8)
    assert wild.verdict == "wild"
    assert abs(wild.radius - (3 + math.sqrt(5)) / 2) <= 1e-6
    ok("trichotomy: 2-Kronecker tame at radius 1, 3-Kronecker wild at (3+sqrt5)/2")


def test_acceptance_property_suites():
    """Each randomized suite (>=100 cases) in exact arithmetic."""
    props.test_form_symmetric_and_nondegenerate_untwisted()
    props.test_nakayama_identity_random_twists()
    props.test_twisted_relations_have_untwisted_dimensions()
    props.test_preprojective_zero_part_random()
    props.test_bigraded_dimension_identities_random()
    props.test_tau_commutation_random_vertices()
    props.test_slice_mutation_round_trips_random()
    # dual involution and dimension complementarity (120 cases)
    import test_duality as duals

    duals.test_involution_and_complementarity_randomized()
    ok("property suites: involution, complementarity, form, Nakayama, "
       "zero-part, bigrading, commutation, mutation round trips")
