from fractions import Fraction as F

import pytest

from adjugate.adjoint import common_residual, compute_adjoint
from adjugate.detrep import (
    AdjugateMatrix,
    BasisChange,
    LDRPair,
    SymLDR,
    check_res_preservation,
    deform,
    dixon,
    ldr_from_polycon,
    pair_from_sym,
    poly_adjugate3,
    poly_det3,
    polycon_from_ldr,
    scaling_rigidity,
)
from adjugate.errors import (
    Condition2Violation,
    DeformationLeavesChartError,
    PreconditionViolation,
    RankZeroViolation,
)
from adjugate.linalg import Matrix
from adjugate.plane import ProjPoint, intersection_multiplicity
from adjugate.poly import PROJ, Poly, parse_poly, proportional
from adjugate.polycon import reduce_component

def pp(s):
    return parse_poly(s, PROJ)


Z = Poly.zero(PROJ)

TRIPLE_M = (
    (pp("x2"), pp("x1"), pp("x0")),
    (pp("x1"), Z - pp("x0"), Z),
    (pp("x0"), Z, Z),
)
X0CUBE = pp("x0^3")


@pytest.fixture(scope="module")
def cex_pair(counterexample):
    return ldr_from_polycon(counterexample)


# ---------------------------------------------------------------------------
# polycon -> LDR
# ---------------------------------------------------------------------------


def test_ldr_from_polycon_structure(counterexample, cex_pair, cex_adjoint):
    pair = cex_pair
    det = poly_det3(pair.sym.entries)
    lam = proportional(cex_adjoint.poly, det)
    assert lam is not None and lam != 0
    offs = pair.adj.off_diagonal_conics()
    for off, comp in zip(offs, counterexample.components):
        assert proportional(comp.poly, off) is not None
    for i in range(3):
        ai = compute_adjoint(reduce_component(counterexample, i)).poly
        assert proportional(ai, pair.adj.diagonals()[i]) is not None


def test_adjugate_identity_exact(cex_pair):
    # LDRPair construction verifies M * M^adj = det(M) * Id exactly; survive a
    # reconstruction to be explicit
    LDRPair(cex_pair.sym, cex_pair.adj)


def test_non_nodal_rejected(triangle):
    with pytest.raises(PreconditionViolation):
        ldr_from_polycon(triangle)


# ---------------------------------------------------------------------------
# LDR -> polycon
# ---------------------------------------------------------------------------


def test_round_trip(counterexample, cex_pair):
    back = polycon_from_ldr(cex_pair.sym)
    q = back.polycon
    for i in range(3):
        assert proportional(counterexample.components[i].poly, q.components[i].poly) is not None
        assert counterexample.vertices[i] == q.vertices[i]
    assert proportional(back.adjoint_reference, compute_adjoint(counterexample).poly) is not None


def test_round_trip_generated(generated_batch):
    for seed, p in generated_batch[:4]:
        pair = ldr_from_polycon(p)
        adj = compute_adjoint(p)
        assert proportional(adj.poly, poly_det3(pair.sym.entries)) is not None, seed
        back = polycon_from_ldr(pair.sym)
        for i in range(3):
            assert proportional(
                p.components[i].poly, back.polycon.components[i].poly
            ) is not None, seed
            assert p.vertices[i] == back.polycon.vertices[i], seed


def test_rank_zero_violation():
    # all entries share the common zero (0:0:1)
    M = (
        (pp("x0"), pp("x1"), Z),
        (pp("x1"), pp("x0"), pp("x0")),
        (Z, pp("x0"), pp("x1")),
    )
    det = poly_det3(M)
    assert not det.is_zero()
    sym = SymLDR(M, det, F(1))
    with pytest.raises(RankZeroViolation):
        polycon_from_ldr(sym)


# ---------------------------------------------------------------------------
# dixon
# ---------------------------------------------------------------------------


def test_dixon_counterexample(counterexample, cex_adjoint):
    a1 = compute_adjoint(reduce_component(counterexample, 0))
    pts = common_residual(counterexample, 0)
    pair = dixon(cex_adjoint.poly, a1.poly, pts)
    assert proportional(cex_adjoint.poly, poly_det3(pair.sym.entries)) is not None
    assert proportional(a1.poly, pair.adj.entries[0][0]) is not None


def test_dixon_divisor_bookkeeping(counterexample, cex_adjoint):
    """Each first-row entry is a conic meeting the cubic in 6 = 2*3 points
    counted with multiplicity; the off-(1,1) entries carry D + D_i."""
    a1 = compute_adjoint(reduce_component(counterexample, 0))
    pts = common_residual(counterexample, 0)
    pair = dixon(cex_adjoint.poly, a1.poly, pts)
    # the (1,1) contact multiplicities are even at every divisor point
    for item in pts:
        target = item if hasattr(item, "coords") else item.ext_point()
        m11 = intersection_multiplicity(cex_adjoint.poly, pair.adj.entries[0][0], target)
        assert m11 >= 2 and m11 % 2 == 0
        # A_{1i}.C = D + D_i: the divisor D appears with multiplicity >= 1
        for i in (1, 2):
            m1i = intersection_multiplicity(
                cex_adjoint.poly, pair.adj.entries[0][i], target
            )
            assert m1i >= 1


def test_dixon_collinear_rejected(counterexample, cex_adjoint):
    # a conic that is a product of two lines through collinear-ish points is
    # not a legal contact input: fabricate collinear divisor support
    l1 = pp("x1")  # y = 0
    contact = l1 * l1  # double line
    pts = [ProjPoint.affine(0, 0), ProjPoint.affine(1, 0), ProjPoint.affine(2, 0)]
    with pytest.raises(PreconditionViolation):
        dixon(pp("x1^3") + pp("x0^3") + pp("x2^3"), contact, pts)


def test_dixon_shared_component_rejected(cex_adjoint):
    f = pp("x0") * pp("x1") * pp("x2")
    contact = pp("x0") * pp("x1")
    with pytest.raises(PreconditionViolation):
        dixon(f, contact, [])


# ---------------------------------------------------------------------------
# triple-line golden case
# ---------------------------------------------------------------------------


def test_triple_line_adjugate_golden():
    pair = pair_from_sym(TRIPLE_M, X0CUBE)
    assert poly_det3(TRIPLE_M) == X0CUBE
    want = (
        (Z, Z, pp("x0^2")),
        (Z, Z - pp("x0^2"), pp("x0*x1")),
        (pp("x0^2"), pp("x0*x1"), Z - pp("x1^2") - pp("x0*x2")),
    )
    for i in range(3):
        for j in range(3):
            assert pair.adj.entries[i][j] == want[i][j]


def test_triple_line_deform_golden():
    pair = pair_from_sym(TRIPLE_M, X0CUBE)
    T = BasisChange(Matrix([[1, 0, 1], [0, 1, 1], [0, 0, 1]]))
    res = deform(pair, T)
    N = res.pair.adj.entries
    want = {
        (0, 0): pp("2*x0^2") - pp("x1^2") - pp("x0*x2"),
        (0, 1): pp("x0^2") + pp("x0*x1") - pp("x1^2") - pp("x0*x2"),
        (0, 2): pp("x0^2") - pp("x1^2") - pp("x0*x2"),
        (1, 1): Z - pp("x0^2") + pp("2*x0*x1") - pp("x1^2") - pp("x0*x2"),
        (1, 2): pp("x0*x1") - pp("x1^2") - pp("x0*x2"),
        (2, 2): Z - pp("x1^2") - pp("x0*x2"),
    }
    for (i, j), w in want.items():
        assert N[i][j] == w, (i, j)


def test_triple_line_polycon_residual():
    pair = pair_from_sym(TRIPLE_M, X0CUBE)
    T = BasisChange(Matrix([[1, 0, 1], [0, 1, 1], [0, 0, 1]]))
    res = deform(pair, T)
    info = res.polycon_info
    origin = ProjPoint((0, 0, 1))
    assert info.rank_one_points == [origin]
    p = info.polycon
    mults = sorted(
        intersection_multiplicity(p.components[i].poly, p.components[j].poly, origin)
        for (i, j) in ((0, 1), (1, 2), (2, 0))
    )
    # two pairs meet the residual point with multiplicity exactly 3; the third
    # carries its (degenerate) vertex on top of it: 3 + 1
    assert mults == [3, 3, 4]
    assert info.degenerate_vertices == [2]
    assert proportional(info.adjoint_reference, X0CUBE) is not None


# ---------------------------------------------------------------------------
# deformation family
# ---------------------------------------------------------------------------


def test_deform_identity(cex_pair):
    res = deform(cex_pair, BasisChange(Matrix.identity(3)))
    assert res.pair.adj.entries == cex_pair.adj.entries
    assert res.pair.sym.entries == cex_pair.sym.entries


def test_deform_chart_exit():
    """The untransformed triple-line representation has vanishing off-diagonal
    quadrics, so reading a polycon off it fails; the deformation reports the
    chart exit with the failing certificate."""
    pair = pair_from_sym(TRIPLE_M, X0CUBE)
    with pytest.raises(DeformationLeavesChartError):
        deform(pair, BasisChange(Matrix.identity(3)))


def test_deform_gamma_family(counterexample, cex_pair, cex_adjoint):
    for g in (F(1, 10), F(-1, 10), F(1, 3)):
        res = deform(cex_pair, BasisChange.shear(g))
        q = res.polycon_info.polycon
        aq = compute_adjoint(q, permissive=True)
        assert proportional(cex_adjoint.poly, aq.poly) is not None
        rep = check_res_preservation(cex_pair.adj, res.pair.adj, g, counterexample, q)
        assert rep.all_ok, rep.details


def test_preservation_corrupted_entry(cex_pair):
    g = F(1, 10)
    res = deform(cex_pair, BasisChange.shear(g))
    entries = [list(row) for row in res.pair.adj.entries]
    entries[0][2] = entries[0][2] + pp("x0^2")
    entries[2][0] = entries[0][2]
    bad = AdjugateMatrix(tuple(tuple(r) for r in entries))
    rep = check_res_preservation(cex_pair.adj, bad, g)
    assert not rep.matrix_identities


def test_preservation_gamma_zero(cex_pair):
    rep = check_res_preservation(cex_pair.adj, cex_pair.adj, F(0))
    assert rep.matrix_identities and rep.fixed_intersection


# ---------------------------------------------------------------------------
# scaling rigidity
# ---------------------------------------------------------------------------


def test_rigidity_identical(cex_pair, cex_adjoint):
    v = scaling_rigidity(cex_pair.adj, cex_pair.adj, cubic=cex_adjoint.poly)
    assert v.verdict == "identical"


def test_rigidity_diagonal_conjugation(cex_pair, cex_adjoint):
    D = Matrix([[1, 0, 0], [0, 2, 0], [0, 0, 1]])
    from adjugate.detrep import _mat_mul_scalar_T

    scaled = AdjugateMatrix(_mat_mul_scalar_T(D, cex_pair.adj.entries))
    v = scaling_rigidity(cex_pair.adj, scaled, cubic=cex_adjoint.poly)
    assert v.verdict == "equivalent-by-diagonal-conjugation"


def test_rigidity_minor_identity_fails(cex_pair, cex_adjoint):
    entries = [list(r) for r in cex_pair.adj.entries]
    entries[1][1] = entries[1][1] * 2
    bad = AdjugateMatrix(tuple(tuple(r) for r in entries))
    v = scaling_rigidity(cex_pair.adj, bad, cubic=cex_adjoint.poly)
    assert v.verdict == "minor-identity-fails"
    assert v.evaluation_point is not None


def test_rigidity_undecided_without_search_data(cex_pair):
    entries = [list(r) for r in cex_pair.adj.entries]
    entries[1][1] = entries[1][1] * 2
    bad = AdjugateMatrix(tuple(tuple(r) for r in entries))
    v = scaling_rigidity(cex_pair.adj, bad)  # no cubic: no point search possible
    assert v.verdict == "undecided"
