import random
from fractions import Fraction as F

import pytest

from adjugate.errors import AmbiguousArcError, NoResidualFreeArcError, PreconditionViolation
from adjugate.linalg import Matrix
from adjugate.plane import ProjPoint, curve_from_affine
from adjugate.poly import AFF, PROJ, Poly, parse_poly, proportional
from adjugate.polycon import (
    Polycon,
    check_regularity,
    reduce_component,
    residual_arrangement,
    select_sides,
    validate,
)

X = Poly.var(AFF, "x")
Y = Poly.var(AFF, "y")


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def test_counterexample_valid_nodal(counterexample):
    rep = validate(counterexample)
    assert rep.valid and rep.nodal and not rep.issues


def test_concentric_circles_invalid():
    c1 = curve_from_affine(X**2 + Y**2 - 1)
    c2 = curve_from_affine(X**2 + Y**2 - 4)
    p = Polycon((c1, c2), (ProjPoint.affine(1, 0), ProjPoint.affine(-1, 0)))
    rep = validate(p)
    assert not rep.valid
    assert any("does not lie on both" in s for s in rep.issues)


def test_vertex_on_third_component_invalid():
    # three conics through one common point declared a vertex
    c1 = curve_from_affine(X**2 + Y**2 - 1)
    c2 = curve_from_affine(X**2 + 2 * Y**2 - 1)
    c3 = curve_from_affine(2 * X**2 + Y**2 - 1)
    # all three pass through (+-1, 0)? c3(1,0) = 2-1 != 0; use (1,0) common to c1,c2
    # and make c3 pass through it too
    c3 = curve_from_affine(2 * X**2 + Y**2 - 2)
    v = ProjPoint.affine(1, 0)
    p = Polycon((c1, c2, c3), (v, ProjPoint.affine(-1, 0), ProjPoint.affine(0, 1)))
    rep = validate(p)
    assert not rep.valid
    assert any("extra component" in s for s in rep.issues)


def test_double_line_component_rejected():
    dl = curve_from_affine((X + Y) ** 2)
    c = curve_from_affine(X**2 + Y**2 - 1)
    p = Polycon((dl, c), (ProjPoint.affine(0, 0), ProjPoint.affine(1, 0)))
    rep = validate(p)
    assert not rep.valid


def test_validate_projective_invariance(counterexample):
    rng = random.Random(9)
    for _ in range(3):
        while True:
            g = Matrix([[F(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)])
            if g.det() != 0:
                break
        ginv = g.inverse()
        comps = tuple(
            curve_from_affine(c.poly.linear_change(g.data).dehomogenize())
            for c in counterexample.components
        )
        verts = tuple(ProjPoint(ginv.apply(v.coords)) for v in counterexample.vertices)
        q = Polycon(comps, verts)
        rep = validate(q)
        assert rep.valid and rep.nodal


# ---------------------------------------------------------------------------
# residual arrangement
# ---------------------------------------------------------------------------


def test_counterexample_residual(counterexample, cex_residual_points):
    arr = residual_arrangement(counterexample)
    assert arr.count() == 9
    rats = [pt for pt, _, _ in arr.rational_points()]
    assert len(rats) == 3
    for want in cex_residual_points:
        assert want in rats
    assert all(b.real_count() == 0 for b, _ in arr.blocks())


def test_unit_square_residual(unit_square):
    arr = residual_arrangement(unit_square)
    pts = [pt for pt, _, _ in arr.rational_points()]
    assert arr.count() == 2
    assert ProjPoint((0, 1, 0)) in pts and ProjPoint((1, 0, 0)) in pts


def test_triangle_residual_empty(triangle):
    arr = residual_arrangement(triangle)
    assert arr.count() == 0


def test_residual_count_formula(generated_batch):
    for _, p in generated_batch:
        arr = residual_arrangement(p)
        n = p.n
        want = sum(
            p.components[i].degree * p.components[j].degree
            for i in range(n)
            for j in range(i + 1, n)
        ) - n
        assert arr.count() == want == 9


# ---------------------------------------------------------------------------
# sides
# ---------------------------------------------------------------------------


def test_paper_sides(counterexample, paper_samples):
    sel = select_sides(counterexample)
    for sample, side in zip(paper_samples, sel.sides):
        assert side.arc.contains_open(side.param.forward(sample))


def test_square_sides_are_finite_edges(unit_square):
    sel = select_sides(unit_square)
    for side in sel.sides:
        pt = side.sample_point(avoid=unit_square.vertices)
        assert pt.is_affine()
        x, y = pt.affine_xy()
        assert -1 <= x <= 1 and -1 <= y <= 1


def test_triangle_sides_ambiguous(triangle):
    with pytest.raises(AmbiguousArcError):
        select_sides(triangle)


def test_triangle_sides_with_hints(triangle):
    hints = (
        ProjPoint.affine(0, F(1, 2)),
        ProjPoint.affine(F(1, 2), 0),
        ProjPoint.affine(F(1, 2), F(1, 2)),
    )
    sel = select_sides(triangle, hints=hints)
    assert len(sel.sides) == 3


def test_no_residual_free_arc():
    """Two conics crossing in four real points with diagonal vertices: each
    arc between the vertices carries one residual point."""
    c1 = curve_from_affine(X**2 + Y**2 - 25)
    c2 = curve_from_affine(X**2 + 2 * Y**2 - 41)
    p = Polycon(
        (c1, c2),
        (ProjPoint.affine(3, 4), ProjPoint.affine(-3, -4)),
    )
    rep = validate(p)
    assert rep.valid and rep.nodal
    with pytest.raises(NoResidualFreeArcError):
        select_sides(p)


# ---------------------------------------------------------------------------
# regularity
# ---------------------------------------------------------------------------


def test_counterexample_regular(cex_regularity):
    assert cex_regularity.verdict == "regular"
    assert cex_regularity.nodal and cex_regularity.sides_found
    assert cex_regularity.sign_vector == [-1, 1, 1]


def test_regularity_auto_samples(counterexample):
    reg = check_regularity(counterexample)
    assert reg.verdict == "regular"
    assert reg.sign_vector == [-1, 1, 1]


def test_square_regular(unit_square):
    mid = (
        ProjPoint.affine(1, 0),
        ProjPoint.affine(0, 1),
        ProjPoint.affine(-1, 0),
        ProjPoint.affine(0, -1),
    )
    reg = check_regularity(unit_square, samples=mid)
    assert reg.verdict == "regular"
    # edges of the square: x-1 <= 0, y-1 <= 0, x+1 >= 0, y+1 >= 0
    assert reg.sign_vector == [-1, -1, 1, 1]


def test_flipped_sample_not_regular(counterexample, paper_samples):
    bad = (ProjPoint.affine(0, 4), ProjPoint.affine(F(1, 5), 2), ProjPoint.affine(9, 0))
    reg = check_regularity(counterexample, samples=bad)
    assert reg.verdict in ("not-regular", "undecided")


def test_flipped_sign_vector_not_regular(counterexample, paper_samples):
    reg = check_regularity(
        counterexample, samples=paper_samples, expected_signs=[1, 1, 1]
    )
    assert reg.verdict == "not-regular"
    assert "contradicts" in reg.detail


def test_sample_off_component_rejected(counterexample):
    bad = (ProjPoint.affine(0, 0), None, None)
    reg = check_regularity(counterexample, samples=bad)
    assert reg.verdict == "undecided"


# ---------------------------------------------------------------------------
# reduction
# ---------------------------------------------------------------------------


def test_reduce_examples(counterexample):
    p1 = reduce_component(counterexample, 0)
    want = Poly(PROJ, {(0, 1, 0): F(1), (0, 0, 1): F(6)})  # y + 6
    assert proportional(want, p1.components[0].poly) is not None
    p2 = reduce_component(counterexample, 1)
    want2 = Poly(PROJ, {(1, 0, 0): F(2), (0, 1, 0): F(3)})  # 2x + 3y
    assert proportional(want2, p2.components[1].poly) is not None


def test_reduce_line_component_error(triangle):
    with pytest.raises(PreconditionViolation):
        reduce_component(triangle, 0)


def test_reduce_preserves_vertices(counterexample):
    q = reduce_component(counterexample, 2)
    assert q.vertices == counterexample.vertices
    rep = validate(q)
    assert rep.valid and rep.nodal
