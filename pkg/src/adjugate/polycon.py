"""Polycons: validation, residual arrangement, side selection, regularity.

A polycon is an ordered cyclic list of boundary components of degree 1 or 2
with designated transversal vertices between consecutive components.  The
checks here mirror the certification obligations of the regularity argument:
nodality through exact pairwise multiplicities, residual-free side arcs
through Sturm tests, and sign certificates on rational samples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import unipoly
from .errors import (
    AmbiguousArcError,
    NoResidualFreeArcError,
    PreconditionViolation,
)
from .plane import (
    AlgebraicBlock,
    Arc,
    ConicParam,
    Curve,
    LineParam,
    ProjPoint,
    ResidualScheme,
    classify_conic,
    intersect_conics,
    intersection_multiplicity,
    param_eq,
    parametrize_conic,
)
from .poly import PROJ, Poly, gcd_poly
from .realroots import sign_at


@dataclass(frozen=True)
class Polycon:
    components: tuple[Curve, ...]
    vertices: tuple[ProjPoint, ...]  # vertices[i] joins components[i] and [i+1 mod n]

    def __post_init__(self):
        n = len(self.components)
        if n < 2:
            raise ValueError("a polycon needs at least two boundary components")
        if len(self.vertices) != n:
            raise ValueError("expected one vertex per adjacent component pair")
        for c in self.components:
            if c.degree not in (1, 2):
                raise ValueError("boundary components must have degree 1 or 2")

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def degree(self) -> int:
        return sum(c.degree for c in self.components)

    def vertex_between(self, i: int) -> ProjPoint:
        """Vertex joining components i and i+1 (cyclic)."""
        return self.vertices[i % self.n]

    def vertices_of_component(self, i: int) -> tuple[ProjPoint, ProjPoint]:
        """(v_{i-1,i}, v_{i,i+1}) for component i."""
        return self.vertices[(i - 1) % self.n], self.vertices[i % self.n]

    def boundary_poly(self) -> Poly:
        p = Poly.const(PROJ, 1)
        for c in self.components:
            p = p * c.poly
        return p


@dataclass
class ValidationReport:
    valid: bool
    nodal: bool
    issues: list[str]
    pair_schemes: dict[tuple[int, int], ResidualScheme]
    relaxations: list[str] = field(default_factory=list)


def _pair_known_vertices(p: Polycon, i: int, j: int) -> list[ProjPoint]:
    known = []
    n = p.n
    for k in range(n):
        a, b = k, (k + 1) % n
        if {a, b} == {i, j}:
            known.append(p.vertices[k])
    return known


def validate(p: Polycon, permissive: bool = False) -> ValidationReport:
    """Check the polycon invariants and nodality.  Reports, never raises."""
    issues: list[str] = []
    relaxations: list[str] = []
    n = p.n
    # reduced components, pairwise no shared component
    for i, c in enumerate(p.components):
        if c.degree == 2 and classify_conic(c).kind == "double-line":
            issues.append(f"component {i} is a double line (not reduced)")
    for i in range(n):
        for j in range(i + 1, n):
            g = gcd_poly(p.components[i].poly, p.components[j].poly)
            if not g.is_constant():
                issues.append(f"components {i} and {j} share a component")
    if issues:
        return ValidationReport(False, False, issues, {})
    # vertex conditions
    for k in range(n):
        v = p.vertices[k]
        ci, cj = p.components[k], p.components[(k + 1) % n]
        if not ci.contains(v) or not cj.contains(v):
            issues.append(f"vertex {k} does not lie on both adjacent components")
            continue
        m = intersection_multiplicity(ci.poly, cj.poly, v)
        if m != 1:
            msg = f"vertex {k} is not transversal (multiplicity {m})"
            if permissive:
                relaxations.append(msg)
            else:
                issues.append(msg)
        for t in range(n):
            if t not in (k, (k + 1) % n) and p.components[t].contains(v):
                msg = f"vertex {k} lies on extra component {t}"
                if permissive:
                    relaxations.append(msg)
                else:
                    issues.append(msg)
    if len(set(map(_point_key, p.vertices))) != n:
        issues.append("vertices are not pairwise distinct")
    valid = not issues
    # pairwise schemes and nodality
    pair_schemes: dict[tuple[int, int], ResidualScheme] = {}
    nodal = valid
    if valid:
        for i in range(n):
            for j in range(i + 1, n):
                known = _pair_known_vertices(p, i, j)
                try:
                    sch = intersect_conics(p.components[i], p.components[j], known=known)
                except Exception as e:  # pragma: no cover - propagated data errors
                    issues.append(f"pair ({i},{j}) intersection failed: {e}")
                    nodal = False
                    continue
                pair_schemes[(i, j)] = sch
                for pt, m in sch.rational_points:
                    if m != 1:
                        nodal = False
                        relaxations.append(
                            f"pair ({i},{j}) meets with multiplicity {m} at {pt}"
                        )
                    for t in range(n):
                        if t not in (i, j) and p.components[t].contains(pt):
                            nodal = False
                            relaxations.append(
                                f"residual point {pt} of pair ({i},{j}) lies on component {t}"
                            )
                for b in sch.blocks:
                    if b.multiplicity != 1:
                        nodal = False
                        relaxations.append(
                            f"pair ({i},{j}) has a tangential conjugate block"
                        )
                    else:
                        for t in range(n):
                            if t not in (i, j) and _block_on_curve(b, p.components[t]):
                                nodal = False
                                relaxations.append(
                                    f"block of pair ({i},{j}) meets component {t}"
                                )
        # singular conic components: implicit vertex must stay clear
        for i, c in enumerate(p.components):
            if c.degree == 2:
                cl = classify_conic(c)
                if cl.kind in ("real-line-pair", "conjugate-line-pair"):
                    sv = cl.singular_point
                    for t in range(n):
                        if t != i and p.components[t].contains(sv):
                            nodal = False
                            relaxations.append(
                                f"implicit vertex of component {i} lies on component {t}"
                            )
    valid = not issues
    return ValidationReport(valid, valid and nodal, issues, pair_schemes, relaxations)


def _point_key(p: ProjPoint):
    return p.coords


def _block_on_curve(b: AlgebraicBlock, c: Curve) -> bool:
    """True if some point of the block lies on the curve."""
    acc = unipoly.ZERO
    q = b.shape
    for e, co in c.poly.terms.items():
        term = unipoly.upoly([co])
        for i, k in enumerate(e):
            for _ in range(k):
                term = unipoly.rem(unipoly.mul(term, b.maps[i]), q)
        acc = unipoly.add(acc, term)
    acc = unipoly.rem(acc, q)
    if not acc:
        return True
    return unipoly.degree(unipoly.gcd(acc, q)) > 0


@dataclass(frozen=True)
class ResidualArrangement:
    """All pairwise intersections minus the vertices, with pair provenance."""

    schemes: dict[tuple[int, int], ResidualScheme]
    nodal: bool

    def rational_points(self) -> list[tuple[ProjPoint, int, tuple[int, int]]]:
        out = []
        for pair, sch in sorted(self.schemes.items()):
            for pt, m in sch.rational_points:
                out.append((pt, m, pair))
        return out

    def blocks(self) -> list[tuple[AlgebraicBlock, tuple[int, int]]]:
        out = []
        for pair, sch in sorted(self.schemes.items()):
            for b in sch.blocks:
                out.append((b, pair))
        return out

    def count(self) -> int:
        """Number of residual points, conjugates counted individually."""
        t = 0
        for _, sch in self.schemes.items():
            t += sum(m for _, m in sch.rational_points)
            t += sum(b.multiplicity * b.degree for b in sch.blocks)
        return t

    def points_on_component(self, p: Polycon, i: int):
        """Rational residual points and blocks that lie on component i."""
        pts, blocks = [], []
        for (a, b), sch in sorted(self.schemes.items()):
            if i not in (a, b):
                continue
            pts.extend(pt for pt, _ in sch.rational_points)
            blocks.extend(sch.blocks)
        return pts, blocks


def residual_arrangement(
    p: Polycon, report: Optional[ValidationReport] = None
) -> ResidualArrangement:
    if report is None:
        report = validate(p, permissive=True)
    if not report.valid:
        raise PreconditionViolation("; ".join(report.issues))
    return ResidualArrangement(schemes=report.pair_schemes, nodal=report.nodal)


# ---------------------------------------------------------------------------
# sides
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Side:
    component: int
    param: Union[ConicParam, LineParam]
    arc: Arc

    def sample_point(self, avoid: Sequence[ProjPoint] = ()) -> ProjPoint:
        """A rational affine non-vertex point in the open arc."""
        for par in self.arc.interior_rationals():
            pt = self.param.backward(par)
            if not pt.is_affine():
                continue
            if any(pt == a for a in avoid):
                continue
            return pt
        raise ArithmeticError("no rational sample found on the side arc")


@dataclass(frozen=True)
class SideSelection:
    sides: tuple[Side, ...]


def _component_param(p: Polycon, i: int) -> Union[ConicParam, LineParam]:
    va, vb = p.vertices_of_component(i)
    c = p.components[i]
    if c.degree == 1:
        return LineParam(c, va, vb)
    return parametrize_conic(c, va)


def _residual_params_real(
    p: Polycon, arr: ResidualArrangement, i: int, par: Union[ConicParam, LineParam]
):
    """Parameters of the real residual points on component i: a list of
    rational parameters plus (block, root, S, W) quadruples for algebraic ones."""
    pts, blocks = arr.points_on_component(p, i)
    rational = []
    for pt in pts:
        if pt.is_rational():
            rational.append(par.forward(pt))
    algebraic = []
    for b in blocks:
        if b.real_count() == 0:
            continue
        S, W = par.forward_block_polys(b)
        for root in b.real_roots():
            algebraic.append((b, root, S, W))
    return rational, algebraic


def _param_side_sign(arc_a, arc_b, S, W, root) -> int:
    """Sign of cross(a,(S:W)) * cross(b,(S:W)) at the isolated root."""
    # cross((s,t),(S,W)) = s*W - t*S as a polynomial in the root variable
    c1 = unipoly.sub(unipoly.scale(W, arc_a[0]), unipoly.scale(S, arc_a[1]))
    c2 = unipoly.sub(unipoly.scale(W, arc_b[0]), unipoly.scale(S, arc_b[1]))
    s1 = sign_at(c1, root)
    s2 = sign_at(c2, root)
    return s1 * s2


def select_sides(
    p: Polycon,
    arr: Optional[ResidualArrangement] = None,
    hints: Optional[Sequence[Optional[ProjPoint]]] = None,
) -> SideSelection:
    """For each component, the arc between the adjacent vertex parameters whose
    interior contains no real residual parameter.

    `hints` may give one point per component (or None) to resolve the choice
    when a component carries no real residual points at all.
    """
    if arr is None:
        arr = residual_arrangement(p)
    sides = []
    for i in range(p.n):
        par = _component_param(p, i)
        va, vb = p.vertices_of_component(i)
        pa = par.forward(va)
        pb = par.forward(vb)
        if param_eq(pa, pb):
            raise PreconditionViolation(
                f"adjacent vertex parameters coincide on component {i}"
            )
        rational, algebraic = _residual_params_real(p, arr, i, par)
        labels = set()
        for rp in rational:
            v = _cross(pa, rp) * _cross(pb, rp)
            if v == 0:
                raise PreconditionViolation(
                    f"residual parameter equals a vertex parameter on component {i}"
                )
            labels.add(1 if v > 0 else -1)
        for (b, root, S, W) in algebraic:
            s = _param_side_sign(pa, pb, S, W, root)
            if s == 0:
                raise PreconditionViolation(
                    f"algebraic residual parameter hits a vertex on component {i}"
                )
            labels.add(s)
        if labels == {1, -1}:
            raise NoResidualFreeArcError(
                f"both arcs of component {i} contain real residual points"
            )
        if not labels:
            hint = hints[i] if hints and hints[i] is not None else None
            if hint is None:
                raise AmbiguousArcError(
                    f"component {i} has no real residual points; side is ambiguous "
                    "(provide a sample hint)"
                )
            ph = par.forward(hint)
            v = _cross(pa, ph) * _cross(pb, ph)
            if v == 0:
                raise AmbiguousArcError("hint lies at a vertex parameter")
            witness = ph
        else:
            target = -labels.pop()
            witness = _find_witness(pa, pb, target)
        sides.append(Side(component=i, param=par, arc=Arc(pa, pb, witness)))
    return SideSelection(tuple(sides))


def _cross(a, b) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def _find_witness(pa, pb, target_sign: int):
    cands = [
        (Fraction(k), Fraction(1))
        for k in (0, 1, -1, 2, -2, 3, -3, 5, -5, 10, -10, 100, -100)
    ]
    cands += [
        (Fraction(n, d), Fraction(1))
        for n in (1, -1, 3, -3, 7, -7, 21, -21)
        for d in (2, 3, 5, 7, 9)
    ]
    cands.append((Fraction(1), Fraction(0)))
    if pa[1] != 0 and pb[1] != 0:
        mid = (pa[0] + pb[0]) / 2
        cands = [(mid, Fraction(1)), (pa[0] + 1, Fraction(1)), (pa[0] - 1, Fraction(1))] + cands
    for c in cands:
        v = _cross(pa, c) * _cross(pb, c)
        if v != 0 and (1 if v > 0 else -1) == target_sign:
            return c
    raise ArithmeticError("no witness parameter found")


# ---------------------------------------------------------------------------
# regularity
# ---------------------------------------------------------------------------


@dataclass
class RegularityReport:
    nodal: bool
    sides_found: bool
    sign_vector: Optional[list[int]]  # +1 for c_i >= 0, -1 for c_i <= 0
    sample_certificates: list[dict]
    vertex_certificates: list[dict]
    verdict: str  # regular | not-regular | undecided
    detail: str = ""


def check_regularity(
    p: Polycon,
    samples: Optional[Sequence[ProjPoint]] = None,
    validation: Optional[ValidationReport] = None,
    expected_signs: Optional[Sequence[int]] = None,
) -> RegularityReport:
    """Certify the proof obligations for regularity: residual-free sides, one
    exact sample per side lying in the semi-algebraic set, and the local
    vertex-crossing test.  A claimed sign vector, if given, is verified
    against the derived one; a mismatch is an exact not-regular certificate."""
    validation = validation or validate(p)
    if not validation.valid:
        return RegularityReport(False, False, None, [], [], "undecided", "invalid polycon")
    arr = residual_arrangement(p, validation)
    try:
        sel = select_sides(p, arr, hints=samples)
    except (NoResidualFreeArcError, AmbiguousArcError, PreconditionViolation) as e:
        return RegularityReport(validation.nodal, False, None, [], [], "undecided", str(e))
    # samples: provided ones must lie on their side arc; otherwise generate
    pts: list[ProjPoint] = []
    for i, side in enumerate(sel.sides):
        if samples is not None and i < len(samples) and samples[i] is not None:
            cand = samples[i]
            if not p.components[i].contains(cand):
                return RegularityReport(
                    validation.nodal, True, None, [], [], "undecided",
                    f"sample {i} does not lie on component {i}",
                )
            if not side.arc.contains_open(side.param.forward(cand)):
                return RegularityReport(
                    validation.nodal, True, None, [], [], "undecided",
                    f"sample {i} does not lie on the selected side arc",
                )
            pts.append(cand)
        else:
            pts.append(side.sample_point(avoid=p.vertices))
    # sign vector from the samples
    n = p.n
    sign_vec: list[Optional[int]] = [None] * n
    cert = []
    ok = True
    for i, pt in enumerate(pts):
        if not pt.is_affine() or not pt.is_rational():
            return RegularityReport(
                validation.nodal, True, None, cert, [], "undecided",
                f"sample {i} must be rational and affine for sign evaluation",
            )
        vals = []
        for j, c in enumerate(p.components):
            v = c.poly.evaluate(pt.affine_coords())
            vals.append(v)
            if j == i:
                if v != 0:
                    ok = False
            else:
                if v == 0:
                    ok = False
                s = 1 if v > 0 else -1
                if sign_vec[j] is None:
                    sign_vec[j] = s
                elif sign_vec[j] != s:
                    return RegularityReport(
                        validation.nodal, True, None, cert, [], "not-regular",
                        f"samples disagree on the sign of component {j}",
                    )
        cert.append({"point": pt, "component": i, "values": vals})
    if not ok:
        return RegularityReport(
            validation.nodal, True, None, cert, [], "not-regular",
            "a sample violates the sign conditions",
        )
    for j in range(n):
        if sign_vec[j] is None:
            # component sign never witnessed (n = 2); default by a side sample of itself
            return RegularityReport(
                validation.nodal, True, None, cert, [], "undecided",
                f"no sample witnesses the sign of component {j}",
            )
    if expected_signs is not None and list(expected_signs) != sign_vec:
        return RegularityReport(
            validation.nodal, True, sign_vec, cert, [], "not-regular",
            f"claimed sign vector {list(expected_signs)} contradicts the "
            f"sample-certified one {sign_vec}",
        )
    # vertex-neighborhood test: both adjacent components cross transversally
    # along a rational probe line through the vertex
    vcert = []
    for k in range(n):
        v = p.vertices[k]
        ci = p.components[k]
        cj = p.components[(k + 1) % n]
        probe = _transversal_direction(ci, cj, v)
        if probe is None:
            return RegularityReport(
                validation.nodal, True, sign_vec, cert, vcert, "undecided",
                f"no transversal probe direction at vertex {k}",
            )
        vcert.append({"vertex": v, "direction": probe})
    return RegularityReport(validation.nodal, True, sign_vec, cert, vcert, "regular")


def _transversal_direction(ci: Curve, cj: Curve, v: ProjPoint):
    """Rational direction d with nonzero directional derivative of both curves
    at v: certifies that both boundary branches cross the probe line simply."""
    gi = ci.gradient(v)
    gj = cj.gradient(v)
    for d in ((1, 0, 0), (0, 1, 0), (1, 1, 0), (1, -1, 0), (1, 2, 0), (2, 1, 0), (0, 0, 1)):
        di = sum(Fraction(a) * b for a, b in zip(d, gi))
        dj = sum(Fraction(a) * b for a, b in zip(d, gj))
        if di != 0 and dj != 0:
            return d
    return None


def region_contains(p: Polycon, sign_vector: Sequence[int], pt: ProjPoint) -> bool:
    """Exact membership of an affine rational point in the closed region
    {sign_i * c_i >= 0}; signs are taken in the affine chart."""
    if not pt.is_affine() or not pt.is_rational():
        return False
    coords = pt.affine_coords()
    for s, c in zip(sign_vector, p.components):
        if s * c.poly.evaluate(coords) < 0:
            return False
    return True


# ---------------------------------------------------------------------------
# reduction (replace a conic with the chord through its vertices)
# ---------------------------------------------------------------------------


def reduce_component(p: Polycon, i: int) -> Polycon:
    """Replace conic component i by the line through its two adjacent vertices."""
    c = p.components[i]
    if c.degree != 2:
        raise PreconditionViolation("component is already a line")
    va, vb = p.vertices_of_component(i)
    if va == vb:
        raise PreconditionViolation("adjacent vertices coincide")
    line = line_through(va, vb)
    comps = list(p.components)
    comps[i] = line
    return Polycon(tuple(comps), p.vertices)


def line_through(a: ProjPoint, b: ProjPoint) -> Curve:
    ax, ay, az = a.coords
    bx, by, bz = b.coords
    coeffs = (ay * bz - az * by, az * bx - ax * bz, ax * by - ay * bx)
    poly = Poly(PROJ, {(1, 0, 0): coeffs[0], (0, 1, 0): coeffs[1], (0, 0, 1): coeffs[2]})
    return Curve(poly.normalized())
