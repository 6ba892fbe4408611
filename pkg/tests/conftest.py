import json
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from adjugate.jsonio import polycon_from_json
from adjugate.plane import ProjPoint, curve_from_affine
from adjugate.poly import AFF, parse_poly
from adjugate.polycon import Polycon

FIXTURE = Path(__file__).resolve().parents[1] / "src" / "adjugate" / "fixtures" / "counterexample.json"

C1 = "20*x^2+27*y^2-120*x+108*y-864"
C2 = "80*x^2+102*x*y+57*y^2-400*x-96*y"
C3 = "32*x^2-26*x*y+9*y^2-96*x+72*y"
ALPHA = (
    "3440*x^3-8400*x^2*y-762*x*y^2+1971*y^3"
    "+20720*x^2+51168*x*y-1620*y^2-193248*x-96336*y+342144"
)


@pytest.fixture(scope="session")
def counterexample() -> Polycon:
    with open(FIXTURE) as fh:
        return polycon_from_json(json.load(fh))


@pytest.fixture(scope="session")
def cex_curves():
    return tuple(curve_from_affine(parse_poly(s, AFF)) for s in (C1, C2, C3))


@pytest.fixture(scope="session")
def alpha_poly():
    return parse_poly(ALPHA, AFF).homogenize()


@pytest.fixture(scope="session")
def cex_vertices():
    return (
        ProjPoint.affine(9, -6),
        ProjPoint.affine(0, 0),
        ProjPoint.affine(-3, -6),
    )


@pytest.fixture(scope="session")
def cex_residual_points():
    return (
        ProjPoint.affine(6, -8),
        ProjPoint.affine(2, -4),
        ProjPoint.affine(0, -8),
    )


@pytest.fixture(scope="session")
def paper_samples():
    return (
        ProjPoint.affine(0, 4),
        ProjPoint.affine(Fraction(1, 5), 2),
        ProjPoint.affine(Fraction(-10, 7), Fraction(-16, 7)),
    )


@pytest.fixture(scope="session")
def cex_adjoint(counterexample):
    from adjugate.adjoint import compute_adjoint

    return compute_adjoint(counterexample)


@pytest.fixture(scope="session")
def cex_regularity(counterexample, paper_samples):
    from adjugate.polycon import check_regularity

    return check_regularity(counterexample, samples=paper_samples)


@pytest.fixture(scope="session")
def unit_square() -> Polycon:
    comps = tuple(
        curve_from_affine(parse_poly(s, AFF)) for s in ("x-1", "y-1", "x+1", "y+1")
    )
    verts = (
        ProjPoint.affine(1, 1),
        ProjPoint.affine(-1, 1),
        ProjPoint.affine(-1, -1),
        ProjPoint.affine(1, -1),
    )
    return Polycon(comps, verts)


@pytest.fixture(scope="session")
def triangle() -> Polycon:
    comps = tuple(curve_from_affine(parse_poly(s, AFF)) for s in ("x", "y", "x+y-1"))
    verts = (
        ProjPoint.affine(0, 0),
        ProjPoint.affine(1, 0),
        ProjPoint.affine(0, 1),
    )
    return Polycon(comps, verts)


@pytest.fixture(scope="session")
def generated_batch():
    from adjugate.generators import polycon_stream

    return polycon_stream(1, 8, require_reducible=True)
