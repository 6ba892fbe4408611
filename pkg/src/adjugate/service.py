"""Local JSON-over-HTTP facade for scenario exploration.

Endpoints (all under /v1): POST /scenario loads a polycon and returns the
initial derived data; POST /scenario/{id}/deform applies a rational shear or
a general basis change, composing with the scenario's current transform;
GET /scenario/{id}/geometry returns float polylines for rendering (tagged
"render", never used in certificates); GET /scenario/{id}/report returns the
full exact certificates.  Scenario state is in-memory; mutations serialize
per scenario id.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from typing import Optional

from fastapi import FastAPI, HTTPException, Query, Request

from . import jsonio
from .adjoint import compute_adjoint, wachspress_witness
from .detrep import (
    BasisChange,
    LDRPair,
    check_res_preservation,
    deform,
    ldr_from_polycon,
)
from .errors import AdjugateError, DeformationLeavesChartError, InputParseError
from .jsonio import format_rat, parse_rat
from .linalg import Matrix
from .poly import proportional
from .polycon import Polycon, check_regularity, residual_arrangement, validate
from .render import RenderSpec, default_viewport, side_polylines, trace_curve


@dataclass
class Scenario:
    id: str
    base_polycon: Polycon
    base_pair: Optional[LDRPair]
    current_t: Matrix
    current_polycon: Polycon
    current_pair: Optional[LDRPair]
    derived: dict = field(default_factory=dict)
    history: list = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)


def _derive(p: Polycon, pair: Optional[LDRPair]) -> dict:
    out: dict = {}
    val = validate(p, permissive=True)
    out["validation"] = {
        "valid": val.valid,
        "nodal": val.nodal,
        "issues": val.issues,
        "relaxations": val.relaxations,
    }
    try:
        adj = compute_adjoint(p, permissive=True)
        out["adjoint"] = jsonio.adjoint_to_json(adj)
        out["_adjoint_obj"] = adj
    except AdjugateError as e:
        out["adjoint"] = {"error": str(e)}
        out["_adjoint_obj"] = None
    try:
        arr = residual_arrangement(p, val)
        out["residual"] = {
            "count": arr.count(),
            "rational-points": [
                jsonio.point_to_json(pt) for pt, _, _ in arr.rational_points()
            ],
            "blocks": [jsonio.block_to_json(b) for b, _ in arr.blocks()],
        }
    except AdjugateError as e:
        out["residual"] = {"error": str(e)}
    try:
        reg = check_regularity(p, validation=val if val.valid else None)
        out["regularity"] = {
            "verdict": reg.verdict,
            "sign-vector": reg.sign_vector,
            "detail": reg.detail,
        }
        out["_regularity_obj"] = reg
    except AdjugateError as e:
        out["regularity"] = {"verdict": "undecided", "detail": str(e)}
        out["_regularity_obj"] = None
    return out


def _public(derived: dict) -> dict:
    return {k: v for k, v in derived.items() if not k.startswith("_")}


def create_app(ui_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="adjugate service", version="1.0")
    scenarios: dict[str, Scenario] = {}
    counter = itertools.count(1)
    store_lock = threading.Lock()

    @app.get("/counterexample.json")
    def bundled_fixture():
        import json
        from importlib import resources

        ref = resources.files("adjugate").joinpath("fixtures/counterexample.json")
        return json.loads(ref.read_text())

    def get_scenario(sid: str) -> Scenario:
        sc = scenarios.get(sid)
        if sc is None:
            raise HTTPException(status_code=404, detail=f"unknown scenario {sid!r}")
        return sc

    @app.post("/v1/scenario", status_code=201)
    async def create_scenario(request: Request):
        body = await request.json()
        try:
            p = jsonio.polycon_from_json(body.get("polycon", body))
        except (InputParseError, AdjugateError, KeyError, TypeError, ValueError) as e:
            raise HTTPException(status_code=400, detail=f"bad polycon: {e}")
        pair = None
        try:
            pair = ldr_from_polycon(p)
        except AdjugateError:
            pair = None
        with store_lock:
            sid = f"s{next(counter)}"
            sc = Scenario(
                id=sid,
                base_polycon=p,
                base_pair=pair,
                current_t=Matrix.identity(3),
                current_polycon=p,
                current_pair=pair,
            )
            scenarios[sid] = sc
        sc.derived = _derive(p, pair)
        return {
            "id": sid,
            "deformable": pair is not None,
            "derived": _public(sc.derived),
        }

    @app.post("/v1/scenario/{sid}/deform")
    async def deform_scenario(sid: str, request: Request):
        sc = get_scenario(sid)
        body = await request.json()
        try:
            if "gamma" in body:
                T = BasisChange.shear(parse_rat(body["gamma"]))
            elif "matrix" in body:
                T = BasisChange(jsonio.matrix_from_json(body["matrix"]))
            else:
                raise HTTPException(status_code=400, detail="need 'gamma' or 'matrix'")
        except (InputParseError, ValueError) as e:
            raise HTTPException(status_code=400, detail=str(e))
        with sc.lock:
            if sc.current_pair is None:
                raise HTTPException(
                    status_code=400,
                    detail="scenario is not deformable (needs a nodal 3-conic polycon)",
                )
            try:
                res = deform(sc.current_pair, T)
            except DeformationLeavesChartError as e:
                raise HTTPException(
                    status_code=409,
                    detail={"error": "deformation leaves the valid chart",
                            "certificate": str(e)},
                )
            except AdjugateError as e:
                raise HTTPException(status_code=409, detail=str(e))
            prev_pair = sc.current_pair
            prev_polycon = sc.current_polycon
            new_p = res.polycon_info.polycon
            report: dict = {
                "polycon": jsonio.polycon_to_json(new_p),
                "exact": True,
            }
            prev_adj = sc.derived.get("_adjoint_obj")
            new_derived = _derive(new_p, res.pair)
            new_adj = new_derived.get("_adjoint_obj")
            if prev_adj is not None and new_adj is not None:
                lam = proportional(prev_adj.poly, new_adj.poly)
                report["adjoint-unchanged"] = {
                    "pass": lam is not None and lam != 0,
                    "proportionality": format_rat(lam) if lam else None,
                }
            if T.gamma is not None:
                pres = check_res_preservation(
                    prev_pair.adj, res.pair.adj, T.gamma, prev_polycon, new_p
                )
                report["preserved-objects"] = {
                    "pass": pres.all_ok,
                    "matrix-identities": pres.matrix_identities,
                    "fixed-intersections": pres.fixed_intersection,
                    "fixed-line": pres.fixed_line,
                    "details": pres.details,
                }
            sc.current_pair = res.pair
            sc.current_polycon = new_p
            sc.current_t = T.matrix * sc.current_t
            sc.derived = new_derived
            sc.history.append(
                {"gamma": format_rat(T.gamma)} if T.gamma is not None
                else {"matrix": jsonio.matrix_to_json(T.matrix)}
            )
            report["derived"] = _public(sc.derived)
            report["current-t"] = jsonio.matrix_to_json(sc.current_t)
            return report

    @app.get("/v1/scenario/{sid}/geometry")
    def geometry(
        sid: str,
        viewport: Optional[str] = Query(default=None),
        resolution: int = Query(default=48),
    ):
        sc = get_scenario(sid)
        with sc.lock:
            p = sc.current_polycon
            derived = sc.derived
        if viewport:
            try:
                vp = tuple(parse_rat(v) for v in viewport.split(","))
                if len(vp) != 4:
                    raise ValueError("viewport needs 4 entries")
            except (InputParseError, ValueError) as e:
                raise HTTPException(status_code=400, detail=str(e))
        else:
            vp = default_viewport(p)
        spec = RenderSpec(viewport=vp, resolution=(resolution, resolution),
                          layers=("boundary", "adjoint"))
        out: dict = {"tag": "render", "viewport": [float(v) for v in vp]}
        out["boundary"] = [
            [[list(a), list(b)] for a, b in trace_curve(c.poly, spec)]
            for c in p.components
        ]
        adj = derived.get("_adjoint_obj")
        out["adjoint"] = (
            [[list(a), list(b)] for a, b in trace_curve(adj.poly, spec)]
            if adj is not None
            else []
        )
        try:
            from .polycon import select_sides

            sides = select_sides(p)
            out["sides"] = side_polylines(sides)
        except AdjugateError:
            out["sides"] = []
        out["vertices"] = [
            [float(c) for c in v.affine_xy()]
            for v in p.vertices
            if v.is_rational() and v.is_affine()
        ]
        res = derived.get("residual", {})
        pts = []
        for d in res.get("rational-points", []):
            cs = [parse_rat(c) for c in d["coords"]]
            if cs[2] != 0:
                pts.append([float(cs[0] / cs[2]), float(cs[1] / cs[2])])
        out["residual-points"] = pts
        return out

    @app.get("/v1/scenario/{sid}/report")
    def report(sid: str):
        sc = get_scenario(sid)
        with sc.lock:
            p = sc.current_polycon
            derived = _public(sc.derived)
            hist = list(sc.history)
            tmat = jsonio.matrix_to_json(sc.current_t)
        adj = sc.derived.get("_adjoint_obj")
        reg = sc.derived.get("_regularity_obj")
        if "_witness" in sc.derived:
            witness = sc.derived["_witness"]
        else:
            witness = None
            if adj is not None and reg is not None and reg.verdict == "regular":
                w = wachspress_witness(p, adj, regularity=reg)
                if w is not None:
                    witness = {
                        "segment": [jsonio.point_to_json(w.point_a), jsonio.point_to_json(w.point_b)],
                        "values": [format_rat(w.value_a), format_rat(w.value_b)],
                        "product-negative": w.product_negative,
                    }
            sc.derived["_witness"] = witness
        return {
            "tag": "exact",
            "id": sid,
            "polycon": jsonio.polycon_to_json(p),
            "current-t": tmat,
            "history": hist,
            "derived": derived,
            "interior-witness": witness,
        }

    @app.get("/v1/scenario/{sid}/snapshot")
    def snapshot(sid: str):
        sc = get_scenario(sid)
        with sc.lock:
            return {
                "polycon": jsonio.polycon_to_json(sc.base_polycon),
                "history": list(sc.history),
            }

    @app.post("/v1/scenario/{sid}/restore", status_code=201)
    async def restore(sid: str, request: Request):
        """Rebuild a scenario from a snapshot by replaying its history."""
        body = await request.json()
        try:
            p = jsonio.polycon_from_json(body["polycon"])
        except (InputParseError, KeyError) as e:
            raise HTTPException(status_code=400, detail=str(e))
        pair = None
        try:
            pair = ldr_from_polycon(p)
        except AdjugateError:
            pair = None
        with store_lock:
            new_id = f"s{next(counter)}"
            sc = Scenario(
                id=new_id,
                base_polycon=p,
                base_pair=pair,
                current_t=Matrix.identity(3),
                current_polycon=p,
                current_pair=pair,
            )
            scenarios[new_id] = sc
        sc.derived = _derive(p, pair)
        for ev in body.get("history", []):
            if sc.current_pair is None:
                raise HTTPException(status_code=409, detail="snapshot not deformable")
            T = (
                BasisChange.shear(parse_rat(ev["gamma"]))
                if "gamma" in ev
                else BasisChange(jsonio.matrix_from_json(ev["matrix"]))
            )
            res = deform(sc.current_pair, T)
            sc.current_pair = res.pair
            sc.current_polycon = res.polycon_info.polycon
            sc.current_t = T.matrix * sc.current_t
            sc.history.append(ev)
        sc.derived = _derive(sc.current_polycon, sc.current_pair)
        return {"id": new_id, "derived": _public(sc.derived)}

    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
