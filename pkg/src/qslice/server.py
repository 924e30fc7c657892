"""HTTP session API for the interactive explorer.

One server holds one base document; sessions materialize a window, keep a
current slice plus a replayable mutation history, and serve hammock /
double-slice / classification queries. Mutations are serialized per session
by a lock; reads snapshot state under the same lock.
"""

from __future__ import annotations

import threading
import uuid
from typing import Dict, List, Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .algebra import GradedAlgebraView, check_properly_graded
from .core import GradedAutomorphism, RefutationError
from .duality import quadratic_dual
from .extension import build_trivial_extension
from .homology import classify
from .io import load_quiver, quiver_to_document
from .slices import (
    double_slice,
    hammock,
    is_complete_tau_slice,
    level_slice,
    mutate_slice,
    slice_sinks,
    slice_sources,
)
from .zquiver import MarginError, ZWindow, build_window, vsplit


class CreateSession(BaseModel):
    kind: str = "zv"
    lo: Optional[int] = None
    hi: Optional[int] = None
    twist: str = "nu"
    side: str = "tau"


class MutateBody(BaseModel):
    vertex: str
    dir: str
    side: str = "tau"


class Session:
    def __init__(self, sid: str, window: ZWindow, slice0: frozenset, side: str):
        self.id = sid
        self.window = window
        self.initial = slice0
        self.slice = slice0
        self.side = side
        self.history: List[Dict] = []
        self.lock = threading.Lock()

    def legal_mutations(self) -> List[Dict]:
        out = []
        vs = set(self.slice)
        for v in sorted(slice_sources(self.window, vs)):
            try:
                self.window.translate(v, self.side, -1)
                out.append({"vertex": v, "dir": "+"})
            except MarginError:
                pass
        for v in sorted(slice_sinks(self.window, vs)):
            try:
                self.window.translate(v, self.side, 1)
                out.append({"vertex": v, "dir": "-"})
            except MarginError:
                pass
        return out

    def state(self) -> Dict:
        return {
            "id": self.id,
            "kind": self.window.kind,
            "range": [self.window.lo, self.window.hi],
            "side": self.side,
            "slice": sorted(self.slice),
            "legal_mutations": self.legal_mutations(),
            "history_length": len(self.history),
            "n": self.window.base.n,
            "dual_top": self.window.base.dual_top
            if self.window.base.has_dual_translation
            else None,
        }


def create_app(source) -> FastAPI:
    """source: a document path or a BoundQuiver presenting the slice algebra."""
    gamma = load_quiver(source) if isinstance(source, str) else source
    lam = quadratic_dual(gamma)
    lam_view = GradedAlgebraView(lam)
    n = check_properly_graded(lam_view)

    app = FastAPI(title="qslice explorer API")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    sessions: Dict[str, Session] = {}
    classification_cache: Dict[str, Dict] = {}
    global_lock = threading.Lock()

    def get_session(sid: str) -> Session:
        s = sessions.get(sid)
        if s is None:
            raise HTTPException(status_code=404, detail=f"unknown session {sid}")
        return s

    @app.post("/session")
    def create_session(body: CreateSession):
        twist = (
            GradedAutomorphism.identity(lam)
            if body.twist == "id"
            else GradedAutomorphism.nu(lam, n)
        )
        try:
            ext = build_trivial_extension(lam_view, twist, strict=False)
            probe = build_window(ext, "zn", 0, 0)
            pad = n + (probe.base.dual_top if probe.base.has_dual_translation else 1) + 2
            if body.kind == "zv":
                lo = body.lo if body.lo is not None else -pad
                hi = body.hi if body.hi is not None else n + pad
                window = ZWindow(probe.base, "zv", lo, hi, component_of=sorted(lam.vertices)[0])
                slice0 = level_slice(window, 0, n)
            else:
                lo = body.lo if body.lo is not None else -2
                hi = body.hi if body.hi is not None else probe.base.dual_top + 2
                window = ZWindow(probe.base, "zn", lo, hi)
                slice0 = level_slice(window, 0, 0)
            check = is_complete_tau_slice(window, slice0, "tau")
            if not check.ok:
                raise RefutationError(check.witness)
        except MarginError as e:
            raise HTTPException(status_code=422, detail=str(e))
        except RefutationError as e:
            raise HTTPException(status_code=422, detail=str(e))
        sid = uuid.uuid4().hex[:12]
        with global_lock:
            sessions[sid] = Session(sid, window, slice0, body.side)
        return sessions[sid].state()

    @app.get("/session/{sid}/state")
    def state(sid: str):
        s = get_session(sid)
        with s.lock:
            return s.state()

    @app.get("/session/{sid}/window")
    def window(sid: str, lo: Optional[int] = None, hi: Optional[int] = None):
        s = get_session(sid)
        w = s.window
        lo = w.lo if lo is None else max(lo, w.lo)
        hi = w.hi if hi is None else min(hi, w.hi)
        verts = [
            {"id": v, "base": vsplit(v)[0], "level": vsplit(v)[1]}
            for v in w.quiver.vertices
            if lo <= vsplit(v)[1] <= hi
        ]
        keep = {v["id"] for v in verts}
        arrows = [
            {
                "id": a.id,
                "from": a.source,
                "to": a.target,
                "second_degree": a.bidegree[1],
            }
            for a in w.quiver.arrows.values()
            if a.source in keep and a.target in keep
        ]
        return {"range": [lo, hi], "vertices": verts, "arrows": arrows}

    @app.post("/session/{sid}/mutate")
    def mutate(sid: str, body: MutateBody):
        s = get_session(sid)
        side = "tau_perp" if body.side in ("tauperp", "tau_perp") else "tau"
        if side != s.side:
            raise HTTPException(status_code=409, detail=f"session slice lives on side {s.side}")
        with s.lock:
            try:
                new = mutate_slice(s.window, s.slice, body.vertex, body.dir, side)
            except MarginError as e:
                raise HTTPException(status_code=422, detail=str(e))
            except RefutationError as e:
                raise HTTPException(status_code=409, detail=str(e))
            s.history.append({"vertex": body.vertex, "dir": body.dir, "prev": sorted(s.slice)})
            s.slice = new
            return s.state()

    @app.post("/session/{sid}/undo")
    def undo(sid: str):
        s = get_session(sid)
        with s.lock:
            if not s.history:
                raise HTTPException(status_code=409, detail="nothing to undo")
            last = s.history.pop()
            s.slice = frozenset(last["prev"])
            return s.state()

    @app.get("/session/{sid}/hammock")
    def get_hammock(sid: str, vertex: str, dir: str = "forward"):
        s = get_session(sid)
        if not s.window.has_vertex(vertex):
            raise HTTPException(status_code=404, detail=f"unknown vertex {vertex}")
        try:
            h = hammock(s.window, vertex, dir)
        except MarginError as e:
            raise HTTPException(status_code=422, detail=str(e))
        return {
            "anchor": h.anchor,
            "direction": h.direction,
            "terminal": h.terminal,
            "multiplicities": {v: m for v, m in sorted(h.multiplicities.items())},
        }

    @app.get("/session/{sid}/double-slice")
    def get_double_slice(sid: str, dir: str = "S+"):
        s = get_session(sid)
        if dir not in ("S+", "-S"):
            raise HTTPException(status_code=422, detail="dir must be S+ or -S")
        with s.lock:
            try:
                ds = double_slice(s.window, s.slice, dir)
            except MarginError as e:
                raise HTTPException(status_code=422, detail=str(e))
        return {
            "vertices": sorted(ds.vertices),
            "slice": sorted(ds.s_part),
            "complement": sorted(ds.complement),
            "direction": ds.direction,
        }

    @app.get("/session/{sid}/classification")
    def get_classification(sid: str):
        get_session(sid)
        with global_lock:
            if "report" not in classification_cache:
                try:
                    report = classify(gamma)
                except RefutationError as e:
                    raise HTTPException(status_code=422, detail=str(e))
                classification_cache["report"] = {
                    "verdict": report.verdict,
                    "coxeter_index": report.coxeter_index,
                    "q_estimate": report.q_estimate,
                    "radius": report.radius,
                    "evidence": report.evidence,
                    "describe": report.describe(),
                }
            return classification_cache["report"]

    @app.get("/base")
    def base():
        return quiver_to_document(gamma)

    return app


def serve(source, host: str = "127.0.0.1", port: int = 8764) -> None:
    import uvicorn

    uvicorn.run(create_app(source), host=host, port=port, log_level="warning")
