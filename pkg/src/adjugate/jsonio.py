"""JSON (de)serialization for every exchange format.

Rational literals are decimal strings "p/q" or "p"; floats are rejected in
exact fields.  Polynomials are term lists [{"exponents": [e0,e1,e2],
"coeff": "p/q"}]; univariate polynomials (shapes, coordinate maps) are lists
of coefficient strings in ascending degree.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional

from . import unipoly
from .errors import InputParseError
from .linalg import Matrix
from .plane import AlgebraicBlock, Curve, ProjPoint
from .poly import AFF, PROJ, Poly
from .polycon import Polycon
from .unipoly import UPoly


_RAT_RE = __import__("re").compile(r"^[+-]?\d+(/\d+)?$")


def parse_rat(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, float):
        raise InputParseError(f"floating literal {s!r} in an exact field")
    if not isinstance(s, str):
        raise InputParseError(f"expected a rational string, got {type(s).__name__}")
    if not _RAT_RE.match(s.strip()):
        raise InputParseError(f"bad rational literal {s!r} (use 'p' or 'p/q')")
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise InputParseError(f"bad rational literal {s!r}: {e}")


def format_rat(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# -- polynomials -------------------------------------------------------------


def poly_to_json(p: Poly) -> list[dict]:
    out = []
    for e in sorted(p.terms, key=lambda e: (-(sum(e)), tuple(-k for k in e))):
        out.append({"exponents": list(e), "coeff": format_rat(p.terms[e])})
    return out


def poly_from_json(terms, chart: str = "projective") -> Poly:
    if not isinstance(terms, list):
        raise InputParseError("polynomial must be a list of terms")
    d: dict = {}
    arity = None
    for i, t in enumerate(terms):
        try:
            e = tuple(int(k) for k in t["exponents"])
            c = parse_rat(t["coeff"])
        except (KeyError, TypeError) as err:
            raise InputParseError(f"term {i}: {err}")
        if arity is None:
            arity = len(e)
        elif len(e) != arity:
            raise InputParseError(f"term {i}: inconsistent exponent arity")
        d[e] = d.get(e, Fraction(0)) + c
    if arity == 2:
        return Poly(AFF, d)
    if arity == 3:
        p = Poly(PROJ, d)
        return p
    raise InputParseError(f"unsupported exponent arity {arity}")


def upoly_to_json(p: UPoly) -> list[str]:
    return [format_rat(c) for c in p]


def upoly_from_json(lst) -> UPoly:
    return unipoly.upoly([parse_rat(c) for c in lst])


# -- curves / points ---------------------------------------------------------


def curve_to_json(c: Curve) -> dict:
    return {"degree": c.degree, "terms": poly_to_json(c.poly)}


def curve_from_json(d) -> Curve:
    p = poly_from_json(d["terms"])
    if p.vars == AFF:
        p = p.homogenize()
    c = Curve(p)
    if "degree" in d and c.degree != int(d["degree"]):
        raise InputParseError(f"declared degree {d['degree']} != actual {c.degree}")
    return c


def point_to_json(p: ProjPoint) -> dict:
    if p.is_rational():
        return {"coords": [format_rat(c) for c in p.coords]}
    field = next(c.field for c in p.coords if hasattr(c, "field"))
    lifted = []
    for c in p.coords:
        lifted.append(upoly_to_json(c.lift() if hasattr(c, "lift") else unipoly.upoly([c])))
    return {"shape": upoly_to_json(field.modulus), "coords-mod-shape": lifted}


def point_from_json(d) -> ProjPoint:
    if "coords" in d:
        cs = [parse_rat(c) for c in d["coords"]]
        if len(cs) == 2:
            cs.append(Fraction(1))
        return ProjPoint(cs)
    if "shape" in d:
        from .numberfield import NumberField

        nf = NumberField(unipoly.monic(upoly_from_json(d["shape"])))
        cs = [nf.element(upoly_from_json(c)) for c in d["coords-mod-shape"]]
        return ProjPoint(cs)
    raise InputParseError("point needs 'coords' or 'shape' data")


def block_to_json(b: AlgebraicBlock) -> dict:
    out = {
        "shape": upoly_to_json(b.shape),
        "multiplicity": b.multiplicity,
        "real-roots": b.real_count(),
    }
    if b.chart == 2:
        out["xmap"] = upoly_to_json(b.maps[0])
        out["ymap"] = upoly_to_json(b.maps[1])
    else:
        out["chart"] = b.chart
        out["maps"] = [upoly_to_json(m) for m in b.maps]
    return out


def block_from_json(d) -> AlgebraicBlock:
    shape = unipoly.monic(upoly_from_json(d["shape"]))
    if "maps" in d:
        chart = int(d.get("chart", 2))
        maps = tuple(unipoly.rem(upoly_from_json(m), shape) for m in d["maps"])
    else:
        chart = 2
        maps = (
            unipoly.rem(upoly_from_json(d["xmap"]), shape),
            unipoly.rem(upoly_from_json(d["ymap"]), shape),
            unipoly.ONE,
        )
    deg = unipoly.degree(shape)
    return AlgebraicBlock(
        shape=shape,
        maps=maps,  # type: ignore[arg-type]
        chart=chart,
        multiplicity=int(d.get("multiplicity", 1)),
        irreducible=unipoly.is_irreducible(shape) if deg <= 4 else False,
    )


# -- polycons ----------------------------------------------------------------


def polycon_to_json(p: Polycon, chart: str = "projective") -> dict:
    return {
        "chart": chart,
        "components": [curve_to_json(c) for c in p.components],
        "vertices": [point_to_json(v) for v in p.vertices],
    }


def polycon_from_json(d) -> Polycon:
    try:
        comps = tuple(curve_from_json(c) for c in d["components"])
        verts = tuple(point_from_json(v) for v in d["vertices"])
    except (KeyError, TypeError) as e:
        raise InputParseError(f"polycon JSON: {e}")
    return Polycon(comps, verts)


def load_polycon(path: str) -> Polycon:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise InputParseError(f"{path}:{e.lineno}:{e.colno}: {e.msg}")
    return polycon_from_json(data)


# -- matrices ----------------------------------------------------------------


def matrix_to_json(m: Matrix) -> list[list[str]]:
    return [[format_rat(v) for v in row] for row in m.data]


def matrix_from_json(rows) -> Matrix:
    return Matrix([[parse_rat(v) for v in row] for row in rows])


def polymat_to_json(entries) -> list[list[list[dict]]]:
    return [[poly_to_json(entries[i][j]) for j in range(3)] for i in range(3)]


def polymat_from_json(rows):
    out = []
    for row in rows:
        out.append(tuple(_proj(poly_from_json(t)) for t in row))
    return tuple(out)


def _proj(p: Poly) -> Poly:
    return p.homogenize() if p.vars == AFF else p


def symldr_to_json(sym) -> dict:
    return {
        "entries": polymat_to_json(sym.entries),
        "det-scale": format_rat(sym.det_scale),
    }


def symldr_from_json(d):
    from .detrep import SymLDR, poly_det3

    entries = polymat_from_json(d["entries"])
    scale = parse_rat(d["det-scale"])
    det = poly_det3(entries)
    reference = det * (Fraction(1) / scale)
    return SymLDR(entries, reference, scale)


def adjugate_to_json(adj) -> dict:
    return {"entries": polymat_to_json(adj.entries)}


def adjugate_from_json(d):
    from .detrep import AdjugateMatrix

    return AdjugateMatrix(polymat_from_json(d["entries"]))


def adjoint_to_json(adj) -> dict:
    return {
        "degree": adj.degree,
        "terms": poly_to_json(adj.poly),
        "provenance": {
            "polycon-hash": adj.polycon_hash,
            "condition-count": adj.condition_count,
            "kernel-dim": adj.kernel_dim,
        },
    }


def scheme_to_json(s) -> dict:
    return {
        "rational-points": [
            {"point": point_to_json(pt), "multiplicity": m} for pt, m in s.rational_points
        ],
        "blocks": [block_to_json(b) for b in s.blocks],
        "deflated": [
            {"point": point_to_json(pt), "multiplicity": m} for pt, m in s.deflated
        ],
        "bezout": s.bezout,
    }


def dump(obj: Any, path: Optional[str]) -> str:
    text = json.dumps(obj, indent=2, sort_keys=False)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text
