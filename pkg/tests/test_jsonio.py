import json
from fractions import Fraction as F

import pytest

from adjugate import unipoly as up
from adjugate.errors import InputParseError
from adjugate.jsonio import (
    curve_from_json,
    curve_to_json,
    format_rat,
    matrix_from_json,
    matrix_to_json,
    parse_rat,
    point_from_json,
    point_to_json,
    poly_from_json,
    poly_to_json,
    polycon_from_json,
    polycon_to_json,
    symldr_from_json,
    symldr_to_json,
)
from adjugate.linalg import Matrix
from adjugate.plane import ProjPoint
from adjugate.poly import AFF, parse_poly


def test_rational_literals():
    assert parse_rat("3/4") == F(3, 4)
    assert parse_rat("-7") == -7
    assert format_rat(F(22, 7)) == "22/7"
    assert format_rat(F(5)) == "5"


def test_floats_rejected():
    with pytest.raises(InputParseError):
        parse_rat(0.5)
    with pytest.raises(InputParseError):
        parse_rat("0.5")


def test_poly_roundtrip():
    p = parse_poly("20*x^2+27*y^2-120*x+108*y-864", AFF)
    assert poly_from_json(poly_to_json(p)) == p


def test_curve_degree_mismatch():
    p = parse_poly("x^2+y^2-1", AFF)
    d = curve_to_json(curve_from_json({"degree": 2, "terms": poly_to_json(p)}))
    assert d["degree"] == 2
    with pytest.raises(InputParseError):
        curve_from_json({"degree": 3, "terms": poly_to_json(p)})


def test_point_roundtrip_rational_and_algebraic():
    pt = ProjPoint.affine(F(2, 5), -7)
    assert point_from_json(point_to_json(pt)) == pt
    from adjugate.numberfield import NumberField

    nf = NumberField(up.upoly([-2, 0, 1]))
    ept = ProjPoint((nf.generator(), nf.one(), nf.one()))
    assert point_from_json(point_to_json(ept)) == ept


def test_polycon_roundtrip(counterexample):
    d = polycon_to_json(counterexample)
    q = polycon_from_json(d)
    assert q.components == counterexample.components
    assert q.vertices == counterexample.vertices


def test_polycon_malformed():
    with pytest.raises(InputParseError):
        polycon_from_json({"components": [], "nonsense": 1})


def test_symldr_roundtrip(counterexample):
    from adjugate.detrep import ldr_from_polycon

    pair = ldr_from_polycon(counterexample)
    d = symldr_to_json(pair.sym)
    back = symldr_from_json(d)
    assert back.entries == pair.sym.entries
    assert back.det_scale == pair.sym.det_scale


def test_matrix_roundtrip():
    m = Matrix([[1, F(1, 2), 0], [0, 1, 0], [0, 0, 1]])
    assert matrix_from_json(matrix_to_json(m)) == m
