"""Randomized property suites at the acceptance scale: each property runs on
at least 100 cases over quivers with at most six vertices, all in exact
arithmetic (assertions are equalities, never tolerances)."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from qslice.core import Arrow, BoundQuiver, GradedAutomorphism, relation
from qslice.algebra import GradedAlgebraView, check_properly_graded
from qslice.duality import quadratic_dual
from qslice.extension import NonQuadraticExtension, build_trivial_extension, preprojective_algebra
from qslice.slices import is_complete_tau_slice, level_slice, mutate_slice, slice_sinks, slice_sources
from qslice.zquiver import MarginError, ZWindow, build_window

import oracles
from conftest import build_aus_a4, build_linear_a


def random_layered_lambda(rng: random.Random):
    """A random acyclic algebra whose maximal bound paths share one length:
    layered quiver, every vertex on a bottom-to-top path, optional relations
    filtered through the proper-gradedness check."""
    for _ in range(40):
        n = rng.randint(1, 3)
        widths = [rng.randint(1, 2) for _ in range(n + 1)]
        while sum(widths) > 6:
            widths[rng.randrange(len(widths))] = 1
        layers = []
        v = 0
        for w in widths:
            layers.append([str(v + i) for i in range(w)])
            v += w
        verts = [x for layer in layers for x in layer]
        arrows = []
        k = 0
        seen = set()

        def add(s, t):
            nonlocal k
            if (s, t) in seen and rng.random() < 0.5:
                return
            arrows.append(Arrow(f"x{k}", s, t))
            seen.add((s, t))
            k += 1

        for a, b in zip(layers, layers[1:]):
            for s in a:
                add(s, rng.choice(b))
            for t in b:
                if not any(x.target == t for x in arrows):
                    add(rng.choice(a), t)
        for _ in range(rng.randint(0, 3)):
            i = rng.randrange(n)
            add(rng.choice(layers[i]), rng.choice(layers[i + 1]))
        if len(arrows) > 10:
            continue
        q0 = BoundQuiver(verts, arrows)
        rels = []
        if rng.random() < 0.5:
            paths = oracles.all_paths(q0, 2)
            blocks = {}
            for ids, s, t in paths:
                blocks.setdefault((s, t), []).append(ids)
            for ids_list in blocks.values():
                if len(ids_list) >= 2 and rng.random() < 0.5:
                    coeffs = [
                        Fraction(rng.randint(-2, 2), rng.choice([1, 1, 2, 3]))
                        for _ in ids_list
                    ]
                    terms = [(c, q0.path(ids)) for c, ids in zip(coeffs, ids_list) if c != 0]
                    if len(terms) >= 2:
                        rels.append(relation(terms))
        q = BoundQuiver(verts, arrows, rels)
        view = GradedAlgebraView(q)
        try:
            if check_properly_graded(view) != n:
                continue
        except Exception:
            continue
        return q, view, n
    raise AssertionError("generator failed to produce a properly graded case")


def extensions(seed: int, count: int):
    """Yield `count` strict extension presentations of random algebras."""
    rng = random.Random(seed)
    made = 0
    attempts = 0
    while made < count:
        attempts += 1
        assert attempts < 40 * count, "too many rejected samples"
        q, view, n = random_layered_lambda(rng)
        try:
            ext = build_trivial_extension(view, GradedAutomorphism.identity(q))
        except NonQuadraticExtension:
            continue
        made += 1
        yield q, view, n, ext


def test_form_symmetric_and_nondegenerate_untwisted():
    done = 0
    for q, view, n, ext in extensions(101, 100):
        basis = ext.basis()
        assert len(basis) == 2 * view.total_dim()
        for x in basis:
            for y in basis:
                if x.length + y.length == n + 1:
                    assert ext.form_paths(x, y) == ext.form_paths(y, x)
        assert ext.gram_nondegenerate()
        done += 1
    assert done == 100


def random_sigma(rng: random.Random, q: BoundQuiver) -> GradedAutomorphism:
    """A random layer-diagonal rescaling: arrows out of the same grading
    level share a scalar, so relation spans are preserved."""
    d = q.nicely_graded_map()
    if d is None:
        return GradedAutomorphism.eps(q, rng.randint(0, 1))
    levels = sorted(set(d.values()))
    scale_of_level = {l: Fraction(rng.choice([1, -1, 2, 3, -2])) for l in levels}
    return GradedAutomorphism.diagonal(
        q, {a.id: scale_of_level[d[a.source]] for a in q.arrows.values()}
    )


def test_nakayama_identity_random_twists():
    rng = random.Random(202)
    done = 0
    attempts = 0
    while done < 100:
        attempts += 1
        assert attempts < 4000
        q, view, n = random_layered_lambda(rng)
        sigma = random_sigma(rng, q)
        try:
            sigma.validate()
            ext = build_trivial_extension(view, sigma)
        except NonQuadraticExtension:
            continue
        ext.nakayama_automorphism(verify=True)  # raises on failure
        assert ext.gram_nondegenerate()
        done += 1


def test_twisted_relations_have_untwisted_dimensions():
    # applying a graded automorphism preserves per-block relation span dims
    rng = random.Random(303)
    for _ in range(100):
        q, view, n = random_layered_lambda(rng)
        sigma = random_sigma(rng, q)
        sigma.validate()
        dims = {}
        for r in q.relations:
            key = (r.source, r.target, r.degree)
            dims.setdefault(key, []).append(r)
        for key, rels in dims.items():
            imgs = [sigma.apply_relation(r) for r in rels]
            paths = sorted({p for r in rels for _, p in r.terms}
                           | {p for img in imgs for _, p in img}, key=lambda p: p.key())
            index = {p: i for i, p in enumerate(paths)}
            a = [[Fraction(0)] * len(paths) for _ in rels]
            b = [[Fraction(0)] * len(paths) for _ in imgs]
            for i, r in enumerate(rels):
                for c, p in r.terms:
                    a[i][index[p]] += c
            for i, img in enumerate(imgs):
                for c, p in img:
                    b[i][index[p]] += c
            assert len(oracles.dense_rref(a)) == len(oracles.dense_rref(b))


def test_preprojective_zero_part_random():
    done = 0
    for q, view, n, ext in extensions(404, 100):
        gamma = quadratic_dual(q)
        pi, _ = preprojective_algebra(gamma)  # internal span check raises
        zero_rels = [
            r for r in pi.relations if all(pi.second_degree(p) == 0 for _, p in r.terms)
        ]
        paths = oracles.all_paths(gamma, 2)
        index = {p[0]: i for i, p in enumerate(paths)}

        def rows(rels):
            out = []
            for r in rels:
                row = [Fraction(0)] * len(paths)
                for c, p in r.terms:
                    row[index[p.arrows]] += c
                out.append(row)
            return out

        assert oracles.spans_equal_dense(rows(zero_rels), rows(gamma.relations))
        done += 1
    assert done == 100


def test_bigraded_dimension_identities_random():
    done = 0
    for q, view, n, ext in extensions(505, 100):
        table = ext.bigraded_dimensions()  # asserts the graded identities
        assert sum(table.values()) == 2 * view.total_dim()
        # dual part sits entirely in second degree one
        assert all(s in (0, 1) for (_, s) in table)
        done += 1
    assert done == 100


FINITE_BASES = None


def finite_windows():
    global FINITE_BASES
    if FINITE_BASES is None:
        bases = []
        for lam, n in ((build_aus_a4(), 2), (build_linear_a(3, True), 1), (build_linear_a(4, True), 1)):
            ext = build_trivial_extension(GradedAlgebraView(lam), GradedAutomorphism.nu(lam, n))
            bases.append(build_window(ext, "zn", -6, 8))
        FINITE_BASES = bases
    return FINITE_BASES


def test_tau_commutation_random_vertices():
    rng = random.Random(606)
    done = 0
    while done < 120:
        w = rng.choice(finite_windows())
        v = rng.choice(list(w.quiver.vertices))
        try:
            a = w.translate(w.translate(v, "tau", 1), "tau_perp", 1)
            b = w.translate(w.translate(v, "tau_perp", 1), "tau", 1)
        except MarginError:
            continue
        assert a == b
        done += 1


def test_slice_mutation_round_trips_random():
    rng = random.Random(707)
    done = 0
    windows = finite_windows()
    current = {id(w): level_slice(w, 0, 0) for w in windows}
    while done < 120:
        w = rng.choice(windows)
        cur = current[id(w)]
        side = rng.choice(["tau", "tau_perp"]) if cur else "tau"
        # tau_perp slices: restart from a homogeneous one of the right side
        if side == "tau_perp":
            base_slice = level_slice(w, 0, 0)
            try:
                cur2 = frozenset(w.translate(v, "tau", 0) for v in base_slice)
                sl = cur2
                # build a dual-side slice: the copy-zero slice is one only
                # when it meets every dual orbit once, so fall back to tau
                if not is_complete_tau_slice(w, sl, "tau_perp").ok:
                    side = "tau"
                    sl = cur
            except MarginError:
                side = "tau"
                sl = cur
        else:
            sl = cur
        pool = sorted(slice_sources(w, set(sl))) if rng.random() < 0.5 else []
        direction = "+"
        if not pool:
            pool = sorted(slice_sinks(w, set(sl)))
            direction = "-"
        v = rng.choice(pool)
        try:
            nxt = mutate_slice(w, sl, v, direction, side)
            moved = w.translate(v, side, -1 if direction == "+" else 1)
            back = mutate_slice(w, nxt, moved, "-" if direction == "+" else "+", side)
        except MarginError:
            current[id(w)] = level_slice(w, 0, 0)
            continue
        assert back == sl
        if side == "tau":
            current[id(w)] = nxt
        done += 1
