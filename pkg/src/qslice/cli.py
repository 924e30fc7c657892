"""Command-line driver.

Exit codes: 0 success, 1 usage error, 2 mathematical refutation (bad input
algebra, failed precondition, margin violation, schema violation).
QSLICE_BOUNDS="hom,deg" overrides the default certification bounds.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Tuple

from .algebra import GradedAlgebraView, check_properly_graded
from .core import BoundQuiver, BoundsExceededError, GradedAutomorphism, RefutationError
from .dot import emit_dot
from .duality import quadratic_dual
from .extension import build_trivial_extension, preprojective_algebra
from .homology import DEFAULT_DEG_BOUND, DEFAULT_HOM_BOUND, classify, koszul_type
from .io import DocumentError, load_quiver, quiver_to_document, validate_document
from .slices import (
    ar_quiver_preprojective,
    companion,
    double_slice,
    hammock,
    is_complete_tau_slice,
    mutate_slice,
)
from .zquiver import build_window


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def default_bounds() -> Tuple[int, int]:
    env = os.environ.get("QSLICE_BOUNDS")
    if env:
        try:
            hom, deg = (int(x) for x in env.split(","))
            return hom, deg
        except ValueError:
            raise SystemExit(1)
    return DEFAULT_HOM_BOUND, DEFAULT_DEG_BOUND


def _emit(payload, out: Optional[str]):
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2) + "\n"
    if out and out != "-":
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _twist_of(name: str, quiver: BoundQuiver, n: int) -> GradedAutomorphism:
    if name == "id":
        return GradedAutomorphism.identity(quiver)
    if name == "nu":
        return GradedAutomorphism.nu(quiver, n)
    if name.startswith("eps^"):
        return GradedAutomorphism.eps(quiver, int(name[4:]))
    if name == "eps":
        return GradedAutomorphism.eps(quiver, 1)
    raise SystemExit(1)


def _base_extension(args) -> Tuple[BoundQuiver, "object"]:
    gamma = load_quiver(args.input)
    lam = quadratic_dual(gamma) if args.input_is == "gamma" else gamma
    view = GradedAlgebraView(lam)
    n = check_properly_graded(view)
    twist = _twist_of(getattr(args, "twist", "nu"), lam, n)
    ext = build_trivial_extension(view, twist, strict=False)
    return gamma, ext


def _range_of(args) -> Tuple[int, int]:
    lo, _, hi = args.range.partition("..")
    try:
        return int(lo), int(hi)
    except ValueError:
        raise SystemExit(1)


def _window_of(args):
    _, ext = _base_extension(args)
    lo, hi = _range_of(args)
    return build_window(ext, args.kind, lo, hi, component_of=args.component)


def _slice_of(args) -> frozenset:
    return frozenset(x.strip() for x in args.slice.split(",") if x.strip())


def _side_of(name: str) -> str:
    return {"tau": "tau", "tauperp": "tau_perp", "tau_perp": "tau_perp"}[name]


def _add_window_args(p, with_slice=False):
    p.add_argument("--kind", choices=["zv", "zn"], required=True)
    p.add_argument("--range", required=True, help="level range lo..hi")
    p.add_argument("--component", default=None, help="restrict zv windows to the component of this base vertex")
    p.add_argument("--twist", default="nu", help="id | nu | eps^m")
    p.add_argument("--input-is", dest="input_is", choices=["gamma", "lambda"], default="gamma",
                   help="whether the document presents the slice algebra (gamma) or its dual (lambda)")
    if with_slice:
        p.add_argument("--slice", required=True, help="comma-separated window vertices i@t")
        p.add_argument("--side", default="tau", choices=["tau", "tauperp", "tau_perp"])


def build_parser() -> _Parser:
    ap = _Parser(prog="qslice", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        p = sub.add_parser(name, **kw)
        p.add_argument("input", help="quiver document path, or - for stdin")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        return p

    add("validate", help="check a document against the schema")
    add("dual", help="quadratic dual presentation")
    p = add("tilde", help="returning-arrow presentation of the trivial extension")
    p.add_argument("--twist", default="id", help="id | nu | eps^m")
    p.add_argument("--input-is", dest="input_is", choices=["gamma", "lambda"], default="lambda")
    add("pi", help="higher preprojective presentation")
    p = add("resolve", help="almost-Koszul certification of the presented algebra")
    p.add_argument("--hom-bound", type=int, default=None)
    p.add_argument("--deg-bound", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p = add("classify", help="finite/tame/wild verdict of a slice algebra")
    p.add_argument("--hom-bound", type=int, default=None)
    p.add_argument("--deg-bound", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.add_argument("--transpose-loewy", action="store_true")
    p = add("zwindow", help="materialize a translation-quiver window")
    _add_window_args(p)
    p = add("slice-check", help="complete slice predicate with witnesses")
    _add_window_args(p, with_slice=True)
    p = add("mutate", help="slice mutation at a source (+) or sink (-)")
    _add_window_args(p, with_slice=True)
    p.add_argument("--vertex", required=True)
    p.add_argument("--dir", required=True, choices=["+", "-"])
    p = add("hammock", help="dual-side hammock at a window vertex")
    _add_window_args(p)
    p.add_argument("--vertex", required=True)
    p.add_argument("--dir", default="forward", choices=["forward", "backward"])
    p = add("double-slice", help="double slice spanned by a complete slice")
    _add_window_args(p, with_slice=True)
    p.add_argument("--dir", default="S+", choices=["S+", "-S"])
    p = add("companion", help="paired finite-type slice algebra")
    p.add_argument("--left", action="store_true")
    add("ar-quiver", help="combinatorial AR quiver of the preprojective part")
    p = add("dot", help="DOT rendering of a document or window")
    p.add_argument("--kind", choices=["zv", "zn"], default=None)
    p.add_argument("--range", default=None)
    p.add_argument("--component", default=None)
    p.add_argument("--twist", default="nu")
    p.add_argument("--input-is", dest="input_is", choices=["gamma", "lambda"], default="gamma")
    p.add_argument("--slice", default=None)
    p.add_argument("--hammock-vertex", default=None)
    p.add_argument("--double-slice-dir", default=None, choices=["S+", "-S"])
    p = add("serve", help="HTTP session API for the explorer UI")
    p.add_argument("--port", type=int, default=8764)
    p.add_argument("--host", default="127.0.0.1")
    return ap


def run(args) -> int:
    hom0, deg0 = default_bounds()
    cmd = args.command
    if cmd == "validate":
        if args.input == "-":
            doc = json.load(sys.stdin)
        else:
            with open(args.input, encoding="utf-8") as f:
                doc = json.load(f)
        problems = validate_document(doc)
        if problems:
            for p in problems:
                print(p, file=sys.stderr)
            return 2
        _emit("ok\n", args.out)
        return 0
    if cmd == "dual":
        q = load_quiver(args.input)
        _emit(quiver_to_document(quadratic_dual(q)), args.out)
        return 0
    if cmd == "tilde":
        q = load_quiver(args.input)
        lam = quadratic_dual(q) if args.input_is == "gamma" else q
        view = GradedAlgebraView(lam)
        n = check_properly_graded(view)
        ext = build_trivial_extension(view, _twist_of(args.twist, lam, n))
        meta = {
            "n": n,
            "twist": args.twist,
            "dims": [ext.view.dims(t) for t in range(n + 2)],
            "returning_arrows": {rid: str(m) for rid, m in ext.returning.items()},
        }
        _emit(quiver_to_document(ext.quiver, meta), args.out)
        return 0
    if cmd == "pi":
        q = load_quiver(args.input)
        pi, ext = preprojective_algebra(q)
        _emit(quiver_to_document(pi, {"n": ext.n}), args.out)
        return 0
    if cmd == "resolve":
        q = load_quiver(args.input)
        report = koszul_type(
            GradedAlgebraView(q),
            hom_bound=args.hom_bound or hom0,
            degree_bound=args.deg_bound or deg0,
        )
        if args.json:
            payload = {
                "p": report.p,
                "q": report.q_finite,
                "linear_through": report.linear_through,
                "concentrated": report.concentrated,
                "terminated": report.terminated,
                "steps": [
                    {"index": s.index, "generators": [[v, d, m] for (v, d), m in sorted(s.generators.items())]}
                    for s in report.steps
                ],
            }
            _emit(payload, args.out)
        else:
            lines = [report.describe()]
            for s in report.steps:
                gens = ", ".join(f"{v}(deg {d})x{m}" for (v, d), m in sorted(s.generators.items()))
                lines.append(f"  step {s.index}: {gens or 'zero'}")
            _emit("\n".join(lines) + "\n", args.out)
        return 0
    if cmd == "classify":
        q = load_quiver(args.input)
        report = classify(
            q,
            hom_bound=args.hom_bound or hom0,
            degree_bound=args.deg_bound or deg0,
            transpose=args.transpose_loewy,
        )
        if args.json:
            payload = {
                "verdict": report.verdict,
                "coxeter_index": report.coxeter_index,
                "q_estimate": report.q_estimate,
                "radius": report.radius,
                "radius_bound": report.radius_bound,
                "evidence": report.evidence,
            }
            _emit(payload, args.out)
        else:
            _emit(report.describe() + "\n", args.out)
        return 0
    if cmd == "zwindow":
        w = _window_of(args)
        meta = {"kind": w.kind, "range": [w.lo, w.hi], "tau_perm": w.base.tau_perm}
        if w.base.has_dual_translation:
            meta.update(
                tau_perp_perm=w.base.tau_perp_perm,
                tau_perp_delta=w.base.tau_perp_delta,
                dual_top=w.base.dual_top,
            )
        _emit(quiver_to_document(w.quiver, meta), args.out)
        return 0
    if cmd == "slice-check":
        w = _window_of(args)
        check = is_complete_tau_slice(w, _slice_of(args), _side_of(args.side))
        _emit({"complete": check.ok, "side": check.side, "witness": check.witness}, args.out)
        return 0
    if cmd == "mutate":
        w = _window_of(args)
        out = mutate_slice(w, _slice_of(args), args.vertex, args.dir, _side_of(args.side))
        _emit({"slice": sorted(out)}, args.out)
        return 0
    if cmd == "hammock":
        w = _window_of(args)
        h = hammock(w, args.vertex, args.dir)
        _emit(
            {
                "anchor": h.anchor,
                "direction": h.direction,
                "terminal": h.terminal,
                "multiplicities": {v: m for v, m in sorted(h.multiplicities.items())},
            },
            args.out,
        )
        return 0
    if cmd == "double-slice":
        w = _window_of(args)
        ds = double_slice(w, _slice_of(args), args.dir)
        _emit(
            {
                "vertices": sorted(ds.vertices),
                "slice": sorted(ds.s_part),
                "complement": sorted(ds.complement),
                "direction": ds.direction,
            },
            args.out,
        )
        return 0
    if cmd == "companion":
        q = load_quiver(args.input)
        res = companion(q, left=args.left, hom_bound=hom0, degree_bound=deg0)
        _emit(quiver_to_document(res.quiver, {"side": res.side}), args.out)
        return 0
    if cmd == "ar-quiver":
        q = load_quiver(args.input)
        ar = ar_quiver_preprojective(q)
        meta = {
            "projective_part": sorted(ar.projective_part),
            "companion_part": sorted(ar.companion_part),
        }
        _emit(quiver_to_document(ar.quiver, meta), args.out)
        return 0
    if cmd == "dot":
        if args.kind:
            w = _window_of(args)
            slice_set = frozenset(x for x in (args.slice or "").split(",") if x)
            mult = None
            second = None
            if args.hammock_vertex:
                mult = hammock(w, args.hammock_vertex, "forward").multiplicities
            if args.double_slice_dir:
                ds = double_slice(w, slice_set, args.double_slice_dir)
                second = ds.complement
            _emit(emit_dot(w.quiver, slice_set, second, mult, name=w.quiver.name), args.out)
        else:
            q = load_quiver(args.input)
            _emit(emit_dot(q, name=q.name or "quiver"), args.out)
        return 0
    if cmd == "serve":
        from .server import serve

        serve(args.input, host=args.host, port=args.port)
        return 0
    raise SystemExit(1)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except (RefutationError, DocumentError, BoundsExceededError) as e:
        print(f"refuted: {e}", file=sys.stderr)
        return 2
    except FileNotFoundError as e:
        print(str(e), file=sys.stderr)
        return 1
    except json.JSONDecodeError as e:
        print(f"refuted: bad JSON: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
