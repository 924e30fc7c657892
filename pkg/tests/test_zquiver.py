from __future__ import annotations

import pytest

from qslice.core import BoundQuiver, GradedAutomorphism, RefutationError
from qslice.algebra import GradedAlgebraView
from qslice.extension import build_trivial_extension
from qslice.zquiver import (
    MarginError,
    TranslationBase,
    ZWindow,
    build_window,
    connected_components,
    cycle_gcd,
    full_subquiver,
    vname,
    vsplit,
)

from conftest import build_aus_a4, build_linear_a


def aus_ext():
    lam = build_aus_a4()
    return build_trivial_extension(GradedAlgebraView(lam), GradedAutomorphism.nu(lam, 2))


def a3_ext():
    lam = build_linear_a(3, rad_square=True)
    return build_trivial_extension(GradedAlgebraView(lam), GradedAutomorphism.nu(lam, 1))


@pytest.fixture(scope="module")
def zn_window():
    return build_window(aus_ext(), "zn", -1, 4)


@pytest.fixture(scope="module")
def zv_window():
    return build_window(aus_ext(), "zv", 0, 8)


def test_tau_perp_table_on_base(zn_window):
    # the dual translation permutation of the returning-arrow quiver
    want = {"1": "6", "2": "4", "3": "1", "4": "5", "5": "2", "6": "3"}
    assert zn_window.base.tau_perp_perm == want
    assert zn_window.base.dual_top == 2
    assert zn_window.base.tau_perp_delta == {"1": 2, "2": 1, "3": 0, "4": 1, "5": 0, "6": 0}


def test_tau_action_zn(zn_window):
    assert zn_window.translate(vname("1", 1), "tau", 1) == vname("1", 0)
    assert zn_window.translate(vname("1", 0), "tau", -1) == vname("1", 1)
    with pytest.raises(MarginError):
        zn_window.translate(vname("1", -1), "tau", 1)


def test_tau_perp_action_zn(zn_window):
    # levels move by the returning-arrow count of the dual top class
    assert zn_window.translate(vname("1", 2), "tau_perp", 1) == vname("6", 0)
    assert zn_window.translate(vname("3", 2), "tau_perp", 1) == vname("1", 2)
    assert zn_window.translate(vname("4", 0), "tau_perp", -1) == vname("2", 1)
    assert zn_window.translate(vname("6", 0), "tau_perp", -1) == vname("1", 2)


def test_tau_tau_perp_commute_zn(zn_window):
    for i in "123456":
        v = vname(i, 2)
        a = zn_window.translate(zn_window.translate(v, "tau", 1), "tau_perp", 1)
        b = zn_window.translate(zn_window.translate(v, "tau_perp", 1), "tau", 1)
        assert a == b


def test_window_zero_copy_is_base(zn_window):
    lam = build_aus_a4()
    sub = full_subquiver(zn_window.quiver, {vname(i, 0) for i in lam.vertices})
    # the level-zero copy is the base quiver plus nothing
    assert len(sub.vertices) == 6
    assert len(sub.arrows) == 6
    assert len(sub.relations) == 3


def test_zn_window_arrow_counts(zn_window):
    # per full level: six internal arrows; three returning arrows rise
    internal = [a for a in zn_window.quiver.arrows.values()
                if vsplit(a.source)[1] == vsplit(a.target)[1] == 0]
    rising = [a for a in zn_window.quiver.arrows.values()
              if vsplit(a.source)[1] == 0 and vsplit(a.target)[1] == 1]
    assert len(internal) == 6 and len(rising) == 3


def test_zv_window_levels_and_relations(zv_window):
    # every arrow climbs exactly one level
    for a in zv_window.quiver.arrows.values():
        assert vsplit(a.target)[1] == vsplit(a.source)[1] + 1
    # relations are level-shifted copies of the base's six
    per_level = {}
    for r in zv_window.quiver.relations:
        t = vsplit(r.source)[1]
        per_level[t] = per_level.get(t, 0) + 1
    assert all(c == 6 for t, c in per_level.items() if 0 <= t <= 6)


def test_zv_components(zv_window):
    report = connected_components(zv_window)
    assert report.count == 3
    assert report.gcd_of_cycles == 3
    for comp in report.components:
        assert comp.nicely_graded_map() is not None
    # every ordered pair carries a shift witness
    assert len(report.shift_witnesses) == 6


def test_zv_component_too_small():
    w = build_window(aus_ext(), "zv", 0, 2)
    with pytest.raises(MarginError):
        connected_components(w)


def test_cycle_gcd_examples():
    assert cycle_gcd(aus_ext().quiver) == 3
    assert cycle_gcd(a3_ext().quiver) == 2
    assert cycle_gcd(build_linear_a(3)) == 0


def test_component_restriction():
    w = build_window(aus_ext(), "zv", 0, 8, component_of="1")
    # one third of the full window's vertices
    assert len(w.quiver.vertices) == 18
    assert vname("1", 0) in w.quiver.vertices
    assert vname("1", 1) not in w.quiver.vertices


def test_zn_of_a3_is_translation_mesh():
    w = build_window(a3_ext(), "zn", 0, 3)
    b = w.base
    assert b.dual_top == 2
    assert b.tau_perp_perm == {"1": "3", "2": "2", "3": "1"}
    assert b.tau_perp_delta == {"1": 2, "2": 1, "3": 0}


def test_empty_range_rejected():
    with pytest.raises(RefutationError):
        build_window(aus_ext(), "zn", 2, 1)


def test_orbit_keys_window_independent(zn_window):
    w2 = ZWindow(zn_window.base, "zn", 0, 6)
    for i in "123456":
        for t in (0, 1):
            v = vname(i, t)
            assert zn_window.orbit_key(v, "tau_perp") == w2.orbit_key(v, "tau_perp")
    # tau orbits are the base columns
    assert len({str(zn_window.orbit_key(vname(i, t), "tau")) for i in "123456" for t in (0, 1)}) == 6
    # dual orbits: four of them
    keys = {str(zn_window.orbit_key(vname(i, t), "tau_perp")) for i in "123456" for t in range(2)}
    assert len(zn_window.all_orbit_keys("tau_perp")) == 4


def test_single_copy_window_is_base_alone():
    # the [0,0] copy window is the base quiver with no rising arrows
    w = build_window(aus_ext(), "zn", 0, 0)
    assert len(w.quiver.vertices) == 6
    assert len(w.quiver.arrows) == 6
    assert all(a.bidegree[1] == 0 for a in w.quiver.arrows.values())
    assert len(w.quiver.relations) == 3


def test_two_cycle_base_gives_two_components():
    # the double two-chain has cycle gcd 2, so its level unrolling splits in two
    w = build_window(a3_ext(), "zv", 0, 6)
    report = connected_components(w)
    assert report.count == 2 and report.gcd_of_cycles == 2


def test_two_vertex_degenerate_base_components():
    from qslice.extension import build_trivial_extension as bte

    lam = build_linear_a(2)
    ext = bte(GradedAlgebraView(lam), GradedAutomorphism.nu(lam, 1), strict=False)
    w = build_window(ext, "zv", 0, 5)
    report = connected_components(w)
    assert report.count == 2


def test_infinite_type_window_primal_only():
    # windows over an infinite-type base still serve the primal side; the
    # dual translation refuses cleanly
    from conftest import build_kronecker
    from qslice.duality import quadratic_dual
    from qslice.extension import build_trivial_extension as bte

    lam = quadratic_dual(build_kronecker(3))
    ext = bte(GradedAlgebraView(lam), GradedAutomorphism.nu(lam, 1))
    w = build_window(ext, "zn", 0, 3)
    assert not w.base.has_dual_translation
    assert w.translate(vname("1", 1), "tau", 1) == vname("1", 0)
    with pytest.raises(RefutationError):
        w.translate(vname("1", 1), "tau_perp", 1)
    # slice combinatorics on the primal side still work
    from qslice.slices import is_complete_tau_slice

    copy0 = frozenset(vname(i, 0) for i in "12")
    assert is_complete_tau_slice(w, copy0, "tau").ok
