"""The supported non-nodal condition kinds: two-component tangency at a
residual point, three transversal components through a residual point, a
tangential vertex, and a vertex on a third transversal component.  Each case
is built explicitly and the extra vanishing conditions are asserted on the
unique adjoint."""

import pytest

from adjugate.adjoint import compute_adjoint
from adjugate.errors import PreconditionViolation
from adjugate.generators import conic_through
from adjugate.plane import ProjPoint, curve_from_affine, intersection_multiplicity
from adjugate.poly import AFF, Poly
from adjugate.polycon import Polycon, validate

X = Poly.var(AFF, "x")
Y = Poly.var(AFF, "y")

# circle of radius 5 and its tangent partner at (5,0): the pencil member
# E1 + (x-5)(x-3) crosses E1 at (3,+-4) and touches it at (5,0)
E1 = curve_from_affine(X**2 + Y**2 - 25)
E2 = curve_from_affine(2 * X**2 + Y**2 - 8 * X - 10)
C3 = conic_through([(1, 4), (-5, 0), (1, -4), (0, 5), (0, -6)])


def _grad_cross(poly, curve, pt):
    ga = [poly.derivative(v).evaluate(pt.coords) for v in ("x0", "x1", "x2")]
    gc = curve.gradient(pt)
    return (
        ga[1] * gc[2] - ga[2] * gc[1],
        ga[2] * gc[0] - ga[0] * gc[2],
        ga[0] * gc[1] - ga[1] * gc[0],
    )


def test_tangent_residual_point():
    touch = ProjPoint.affine(5, 0)
    assert intersection_multiplicity(E1.poly, E2.poly, touch) == 2
    p = Polycon(
        (E1, E2, C3),
        (ProjPoint.affine(3, 4), ProjPoint.affine(1, 4), ProjPoint.affine(-5, 0)),
    )
    rep = validate(p, permissive=True)
    assert rep.valid and not rep.nodal
    with pytest.raises(PreconditionViolation):
        compute_adjoint(p)  # non-nodal input needs permissive mode
    adj = compute_adjoint(p, permissive=True)
    assert adj.kernel_dim == 1
    assert adj.poly.evaluate(touch.coords) == 0
    # the adjoint's tangent direction at the touch point matches the boundary
    assert all(c == 0 for c in _grad_cross(adj.poly, E1, touch))


def test_triple_residual_point_doubles_the_adjoint():
    q = (0, 0)
    v12, v23, v31 = (4, 0), (0, 6), (-4, -2)
    c1 = conic_through([v31, v12, q, (1, 1), (2, -3)])
    c2 = conic_through([v12, v23, q, (-1, 2), (3, 5)])
    c3 = conic_through([v23, v31, q, (-2, 1), (-1, -3)])
    p = Polycon((c1, c2, c3), tuple(ProjPoint.affine(*v) for v in (v12, v23, v31)))
    rep = validate(p, permissive=True)
    assert rep.valid and not rep.nodal
    qp = ProjPoint.affine(*q)
    for i, j in ((0, 1), (1, 2), (0, 2)):
        assert intersection_multiplicity(p.components[i].poly, p.components[j].poly, qp) == 1
    adj = compute_adjoint(p, permissive=True)
    assert adj.kernel_dim == 1
    assert adj.poly.evaluate(qp.coords) == 0
    grads = [adj.poly.derivative(v).evaluate(qp.coords) for v in ("x0", "x1", "x2")]
    assert all(g == 0 for g in grads)


def test_tangential_vertex_forces_adjoint_through_it():
    touch = ProjPoint.affine(5, 0)
    p = Polycon(
        (E1, E2, C3),
        (touch, ProjPoint.affine(1, 4), ProjPoint.affine(-5, 0)),
    )
    rep = validate(p, permissive=True)
    assert rep.valid
    assert any("not transversal" in r for r in rep.relaxations)
    adj = compute_adjoint(p, permissive=True)
    assert adj.kernel_dim == 1
    assert adj.poly.evaluate(touch.coords) == 0


def test_vertex_on_third_component():
    v12, v23, v31 = (4, 0), (0, 6), (-4, -2)
    c1 = conic_through([v31, v12, (1, 1), (2, -3), (0, -4)])
    c2 = conic_through([v12, v23, (-1, 2), (3, 5), (1, -1)])
    c3 = conic_through([v23, v31, v12, (-2, 1), (-1, -3)])  # also through v12
    p = Polycon((c1, c2, c3), tuple(ProjPoint.affine(*v) for v in (v12, v23, v31)))
    rep = validate(p, permissive=True)
    assert rep.valid
    assert any("extra component" in r for r in rep.relaxations)
    adj = compute_adjoint(p, permissive=True)
    assert adj.kernel_dim == 1
    vp = ProjPoint.affine(*v12)
    assert adj.poly.evaluate(vp.coords) == 0
    assert all(c == 0 for c in _grad_cross(adj.poly, c3, vp))
