"""Windows, slices, mutations, hammocks, double slices, companions.

Walks the worked example through the slice calculus: materialize a window
of the level unrolling, take the homogeneous slice, mutate it, overlay
hammocks and the double slice, and read off the companion algebra and the
combinatorial Auslander-Reiten quiver.
"""

from importlib import import_module

from qslice import GradedAlgebraView, GradedAutomorphism, build_trivial_extension
from qslice.dot import emit_dot
from qslice.slices import (
    ar_quiver_preprojective,
    companion,
    double_slice,
    hammock,
    is_complete_tau_slice,
    level_slice,
    mutate_slice,
)
from qslice.zquiver import build_window
from qslice.duality import quadratic_dual

build = import_module("01_quadratic_duals").build


def main():
    lam = build()
    ext = build_trivial_extension(GradedAlgebraView(lam), GradedAutomorphism.nu(lam, 2))
    w = build_window(ext, "zv", -6, 11, component_of="1")
    print("dual translation:", w.base.tau_perp_perm)

    s1 = level_slice(w, 0, 2)
    print("homogeneous slice:", sorted(s1))
    print("complete:", is_complete_tau_slice(w, s1, "tau").ok)

    s4 = mutate_slice(w, s1, "5@0", "+", "tau")
    print("after mutating at the source 5@0:", sorted(s4))

    h = hammock(w, "4@2", "forward")
    print("forward hammock at 4@2:", h.multiplicities, "ends at", h.terminal)

    ds = double_slice(w, s1, "S+")
    print(f"double slice: {len(ds.vertices)} vertices "
          f"({len(ds.s_part)} slice + {len(ds.complement)} complement)")

    gamma = quadratic_dual(lam)
    res = companion(gamma)
    print("companion quiver:")
    for a in res.quiver.arrows.values():
        print(f"   {a.id}: {a.source} -> {a.target}")
    print("companion relations:", [str(r) for r in res.quiver.relations] or "none")

    ar = ar_quiver_preprojective(gamma)
    print(f"AR quiver of the preprojective part: {len(ar.quiver.vertices)} vertices, "
          f"{len(ar.quiver.arrows)} arrows")
    with open("arquiver.dot", "w") as f:
        f.write(emit_dot(ar.quiver, ar.projective_part, ar.companion_part,
                         name="arquiver"))
    print("wrote arquiver.dot (render with: dot -Tsvg arquiver.dot)")


if __name__ == "__main__":
    main()
