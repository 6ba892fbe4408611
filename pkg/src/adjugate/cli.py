"""Command-line entry point.

Subcommands: verify-counterexample, adjoint, reduce, contact, dixon, ldr,
polycon-from-ldr, deform, render, serve.  All computational outputs are exact
JSON; SVG rendering is presentation only and never affects the exit status.
Exit status 0 iff every certificate in the requested pipeline verifies.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from . import jsonio
from .adjoint import (
    common_residual,
    compute_adjoint,
    contact_check,
    triangulation_identity,
    verify_off_boundary,
    wachspress_witness,
)
from .detrep import (
    BasisChange,
    check_res_preservation,
    deform,
    dixon,
    ldr_from_polycon,
    polycon_from_ldr,
)
from .errors import AdjugateError, InputParseError
from .jsonio import (
    dump,
    format_rat,
    load_polycon,
    parse_rat,
    point_from_json,
    point_to_json,
    poly_from_json,
    poly_to_json,
)
from .plane import ProjPoint
from .poly import AFF, proportional
from .polycon import check_regularity, reduce_component, residual_arrangement, validate
from .render import ALL_LAYERS, RenderSpec, default_viewport, render_svg


def _out(report: dict, args) -> None:
    text = dump(report, getattr(args, "json_out", None))
    print(text)


def _fixture_path() -> str:
    ref = resources.files("adjugate").joinpath("fixtures/counterexample.json")
    return str(ref)


def cmd_verify_counterexample(args) -> int:
    with open(_fixture_path()) as fh:
        fixture = json.load(fh)
    p = jsonio.polycon_from_json(fixture)
    ref = fixture["reference"]
    report: dict = {"fixture": "counterexample", "certificates": {}}
    ok = True

    val = validate(p)
    report["certificates"]["nodal"] = {"pass": bool(val.valid and val.nodal)}
    ok &= val.valid and val.nodal

    arr = residual_arrangement(p, val)
    want_pts = [ProjPoint.affine(parse_rat(a), parse_rat(b)) for a, b in ref["residual-rational"]]
    got_pts = [pt for pt, _, _ in arr.rational_points()]
    pts_ok = len(got_pts) == 3 and all(w in got_pts for w in want_pts)
    count_ok = arr.count() == 9
    conj_ok = all(b.real_count() == 0 for b, _ in arr.blocks())
    report["certificates"]["residual"] = {
        "pass": bool(pts_ok and count_ok and conj_ok),
        "count": arr.count(),
        "rational-points": [point_to_json(pt) for pt in got_pts],
    }
    ok &= pts_ok and count_ok and conj_ok

    samples = tuple(
        ProjPoint.affine(parse_rat(a), parse_rat(b)) for a, b in ref["regularity-samples"]
    )
    reg = check_regularity(p, samples=samples, validation=val)
    sign_ok = reg.verdict == "regular" and reg.sign_vector == list(ref["sign-set"])
    report["certificates"]["regularity"] = {
        "pass": bool(sign_ok),
        "verdict": reg.verdict,
        "sign-vector": reg.sign_vector,
    }
    ok &= sign_ok

    adj = compute_adjoint(p)
    want_alpha = poly_from_json(ref["adjoint"]["terms"])
    want_alpha = want_alpha.homogenize() if want_alpha.vars == AFF else want_alpha
    lam = proportional(want_alpha, adj.poly)
    adj_ok = lam is not None and lam != 0
    report["certificates"]["adjoint"] = {
        "pass": bool(adj_ok),
        "terms": poly_to_json(adj.poly),
        "proportionality": format_rat(lam) if adj_ok else None,
    }
    ok &= adj_ok

    # the bundled reference pair, evaluated honestly
    (pa, pb) = ref["witness-pair"]
    A_pt = ProjPoint.affine(parse_rat(pa[0]), parse_rat(pa[1]))
    B_pt = ProjPoint.affine(parse_rat(pb[0]), parse_rat(pb[1]))
    va = adj.poly.evaluate(A_pt.affine_coords())
    vb = adj.poly.evaluate(B_pt.affine_coords())
    pair_negative = va * vb < 0
    report["certificates"]["reference-pair"] = {
        "pass": bool(pair_negative),
        "values": [format_rat(va), format_rat(vb)],
        "note": (
            "reference pair has a positive product; see the automatic witness"
            if not pair_negative
            else "product negative"
        ),
    }

    w = wachspress_witness(p, adj, regularity=reg)
    w_ok = w is not None and w.product_negative and w.segment_certified
    report["certificates"]["interior-witness"] = {
        "pass": bool(w_ok),
        "segment": [point_to_json(w.point_a), point_to_json(w.point_b)] if w else None,
        "values": [format_rat(w.value_a), format_rat(w.value_b)] if w else None,
    }
    ok &= w_ok

    off = verify_off_boundary(p, adj, validation=val)
    report["certificates"]["off-boundary"] = {
        "pass": bool(off.all_ok),
        "details": off.details,
    }
    ok &= off.all_ok

    report["pass"] = bool(ok)
    _out(report, args)
    return 0 if ok else 1


def cmd_adjoint(args) -> int:
    p = load_polycon(args.polycon)
    adj = compute_adjoint(p, permissive=args.permissive)
    report = jsonio.adjoint_to_json(adj)
    if args.chart == "affine":
        report["terms-affine"] = poly_to_json(adj.poly.dehomogenize())
    _out(report, args)
    return 0


def cmd_reduce(args) -> int:
    p = load_polycon(args.polycon)
    q = reduce_component(p, args.component)
    report = jsonio.polycon_to_json(q)
    report["validation"] = _validation_json(validate(q, permissive=True))
    _out(report, args)
    return 0


def _validation_json(v) -> dict:
    return {
        "valid": v.valid,
        "nodal": v.nodal,
        "issues": v.issues,
        "relaxations": v.relaxations,
    }


def cmd_contact(args) -> int:
    p = load_polycon(args.polycon)
    adj = compute_adjoint(p)
    q = reduce_component(p, args.component)
    adj2 = compute_adjoint(q)
    cert = contact_check(adj, adj2, common_residual(p, args.component))
    tri = triangulation_identity(p, args.component, adj, adj2)
    report = {
        "contact": {
            "verified": cert.verified,
            "total": cert.total,
            "expected-total": cert.expected_total,
            "multiplicities": [m for _, m in cert.points],
            "detail": cert.detail,
        },
        "triangulation": {
            "verified": tri.verified,
            "b": format_rat(tri.b),
            "b-prime": format_rat(tri.b_prime),
            "b-zero": format_rat(tri.b_zero),
        },
        "reduced-adjoint": poly_to_json(adj2.poly),
    }
    _out(report, args)
    return 0 if cert.verified and tri.verified else 1


def cmd_dixon(args) -> int:
    with open(args.cubic) as fh:
        cubic = poly_from_json(json.load(fh)["terms"])
    with open(args.conic) as fh:
        conic = poly_from_json(json.load(fh)["terms"])
    cubic = cubic.homogenize() if cubic.vars == AFF else cubic
    conic = conic.homogenize() if conic.vars == AFF else conic
    if not args.points:
        raise InputParseError("dixon requires --points with the contact support")
    with open(args.points) as fh:
        pts = []
        for d in json.load(fh):
            if "shape" in d and ("xmap" in d or "maps" in d):
                pts.append(jsonio.block_from_json(d))
            else:
                pts.append(point_from_json(d))
    pair = dixon(cubic, conic, pts)
    report = {
        "symldr": jsonio.symldr_to_json(pair.sym),
        "adjugate": jsonio.adjugate_to_json(pair.adj),
        "det-prop-cubic": format_rat(pair.sym.det_scale),
    }
    _out(report, args)
    return 0


def cmd_ldr(args) -> int:
    p = load_polycon(args.polycon)
    pair = ldr_from_polycon(p)
    report = {
        "symldr": jsonio.symldr_to_json(pair.sym),
        "adjugate": jsonio.adjugate_to_json(pair.adj),
    }
    _out(report, args)
    return 0


def cmd_polycon_from_ldr(args) -> int:
    with open(args.ldr) as fh:
        sym = jsonio.symldr_from_json(json.load(fh))
    info = polycon_from_ldr(sym)
    report = {
        "polycon": jsonio.polycon_to_json(info.polycon),
        "validation": _validation_json(info.validation),
        "adjoint-reference": poly_to_json(info.adjoint_reference),
        "rank-one-support": [
            point_to_json(pt) if isinstance(pt, ProjPoint) else jsonio.block_to_json(pt)
            for pt in (info.rank_one_points or [])
        ],
        "degenerate-vertices": info.degenerate_vertices or [],
    }
    _out(report, args)
    return 0


def cmd_deform(args) -> int:
    p = load_polycon(args.polycon)
    pair = ldr_from_polycon(p)
    if args.gamma is not None:
        T = BasisChange.shear(parse_rat(args.gamma))
    else:
        with open(args.matrix) as fh:
            T = BasisChange(jsonio.matrix_from_json(json.load(fh)))
    res = deform(pair, T)
    new_p = res.polycon_info.polycon
    report = {
        "polycon": jsonio.polycon_to_json(new_p),
        "validation": _validation_json(res.polycon_info.validation),
        "adjugate": jsonio.adjugate_to_json(res.pair.adj),
    }
    ok = True
    if args.check_fiber:
        adj_before = compute_adjoint(p)
        adj_after = compute_adjoint(new_p, permissive=True)
        lam = proportional(adj_before.poly, adj_after.poly)
        fiber_ok = lam is not None and lam != 0
        report["adjoint-unchanged"] = {
            "pass": bool(fiber_ok),
            "proportionality": format_rat(lam) if fiber_ok else None,
        }
        ok &= fiber_ok
        if T.gamma is not None:
            pres = check_res_preservation(pair.adj, res.pair.adj, T.gamma, p, new_p)
            report["preserved-objects"] = {
                "pass": pres.all_ok,
                "matrix-identities": pres.matrix_identities,
                "fixed-intersections": pres.fixed_intersection,
                "fixed-line": pres.fixed_line,
                "details": pres.details,
            }
            ok &= pres.all_ok
    report["pass"] = bool(ok)
    _out(report, args)
    return 0 if ok else 1


def cmd_render(args) -> int:
    p = load_polycon(args.polycon)
    layers = tuple(args.layers.split(",")) if args.layers else (
        "boundary", "sides", "adjoint", "residual-points", "vertices",
    )
    viewport = (
        tuple(parse_rat(v) for v in args.viewport.split(","))
        if args.viewport
        else default_viewport(p)
    )
    spec = RenderSpec(viewport=viewport, resolution=(args.resolution, args.resolution),
                      layers=layers)
    adj_poly = None
    sides = None
    residuals = []
    reduced_line = reduced_adjoint = None
    try:
        adj = compute_adjoint(p, permissive=True)
        adj_poly = adj.poly
    except AdjugateError:
        pass
    try:
        val = validate(p)
        arr = residual_arrangement(p, val)
        residuals = [pt for pt, _, _ in arr.rational_points()]
        from .polycon import select_sides

        sides = select_sides(p, arr)
    except AdjugateError:
        pass
    if "reduced-line" in layers or "reduced-adjoint" in layers:
        try:
            q = reduce_component(p, args.component or 0)
            reduced_line = q.components[args.component or 0].poly
            reduced_adjoint = compute_adjoint(q).poly
        except AdjugateError:
            pass
    svg = render_svg(
        p, spec, adjoint_poly=adj_poly, sides=sides, residual_points=residuals,
        reduced_line=reduced_line, reduced_adjoint=reduced_adjoint,
    )
    with open(args.out, "w") as fh:
        fh.write(svg)
    print(f"wrote {args.out}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(
        create_app(ui_dir=args.ui), host=args.host, port=args.port, log_level="warning"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="adjugate",
        description="Exact adjoint curves of polycons, determinantal representations, "
        "and adjoint-preserving deformations",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json-out", help="also write the JSON report to this path")
        sp.add_argument("--chart", choices=("affine", "projective"), default="projective")
        sp.add_argument("--permissive", action="store_true",
                        help="accept the supported degenerate configurations")

    sp = sub.add_parser("verify-counterexample", help="run the bundled end-to-end verification")
    common(sp)
    sp.set_defaults(fn=cmd_verify_counterexample)

    sp = sub.add_parser("adjoint", help="compute the adjoint curve of a polycon")
    sp.add_argument("polycon")
    common(sp)
    sp.set_defaults(fn=cmd_adjoint)

    sp = sub.add_parser("reduce", help="replace a conic component with its vertex chord")
    sp.add_argument("polycon")
    sp.add_argument("--component", type=int, required=True)
    common(sp)
    sp.set_defaults(fn=cmd_reduce)

    sp = sub.add_parser("contact", help="verify the contact certificate for a reduction")
    sp.add_argument("polycon")
    sp.add_argument("--component", type=int, required=True)
    common(sp)
    sp.set_defaults(fn=cmd_contact)

    sp = sub.add_parser("dixon", help="symmetric determinantal representation from a contact conic")
    sp.add_argument("cubic")
    sp.add_argument("conic")
    sp.add_argument("--points", help="JSON file with the contact support points")
    common(sp)
    sp.set_defaults(fn=cmd_dixon)

    sp = sub.add_parser("ldr", help="determinantal representation of a 3-conic polycon's adjoint")
    sp.add_argument("polycon")
    common(sp)
    sp.set_defaults(fn=cmd_ldr)

    sp = sub.add_parser("polycon-from-ldr", help="read a polycon off a symmetric LDR")
    sp.add_argument("ldr")
    common(sp)
    sp.set_defaults(fn=cmd_polycon_from_ldr)

    sp = sub.add_parser("deform", help="adjoint-preserving deformation")
    sp.add_argument("polycon")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--gamma", help="rational shear parameter p/q")
    g.add_argument("--matrix", help="JSON file with a 3x3 rational basis change")
    sp.add_argument("--check-fiber", action="store_true",
                    help="verify the adjoint is unchanged and the preservation claims")
    common(sp)
    sp.set_defaults(fn=cmd_deform)

    sp = sub.add_parser("render", help="render a polycon scene as SVG")
    sp.add_argument("polycon")
    sp.add_argument("--out", required=True)
    sp.add_argument("--viewport", help="x0,y0,x1,y1 as rationals")
    sp.add_argument("--resolution", type=int, default=64)
    sp.add_argument("--layers", help=f"comma list from {','.join(ALL_LAYERS)}")
    sp.add_argument("--component", type=int, help="component for the reduced layers")
    common(sp)
    sp.set_defaults(fn=cmd_render)

    sp = sub.add_parser("serve", help="run the local JSON-over-HTTP service")
    sp.add_argument("--port", type=int, default=8787)
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--ui", help="also serve this directory statically (the browser explorer)")
    common(sp)
    sp.set_defaults(fn=cmd_serve)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except InputParseError as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    except AdjugateError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
