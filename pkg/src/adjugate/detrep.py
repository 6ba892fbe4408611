"""Symmetric linear determinantal representations of cubic adjoints.

Contains the constructive algorithm building a symmetric matrix of linear
forms from a contact conic of a cubic, the dictionary between 3-conic
polycons and such matrices, adjoint-preserving deformations by congruence,
and the preservation/rigidity certificates.  All identities are verified as
exact polynomial equalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import unipoly
from .errors import (
    AlgorithmFailure,
    Condition2Violation,
    DeformationLeavesChartError,
    DivisibilityError,
    InconsistencyError,
    PreconditionViolation,
    RankZeroViolation,
)
from .linalg import Matrix, nullspace, rank, solve
from .plane import (
    AlgebraicBlock,
    Curve,
    ProjPoint,
    intersect_conics,
    intersection_multiplicity,
)
from .poly import PROJ, Poly, divexact, gcd_poly, normal_form, proportional
from .polycon import Polycon, ValidationReport, line_through, reduce_component, validate
from .adjoint import compute_adjoint, monomials_of_degree
from .realroots import isolate_real_roots

PolyMat = tuple[tuple[Poly, ...], ...]


def _mat(entries) -> PolyMat:
    return tuple(tuple(row) for row in entries)


def _mat_mul_scalar_T(T: Matrix, A: PolyMat, transpose_right: bool = True) -> PolyMat:
    """T * A * T^t for a rational matrix T and polynomial matrix A."""
    n = 3
    out = [[Poly.zero(PROJ) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = Poly.zero(PROJ)
            for a in range(n):
                ta = T[i, a]
                if ta == 0:
                    continue
                for b in range(n):
                    tb = T[j, b]
                    if tb == 0:
                        continue
                    acc = acc + A[a][b] * (ta * tb)
            out[i][j] = acc
    return _mat(out)


def poly_det3(A: PolyMat) -> Poly:
    return (
        A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
        - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
        + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0])
    )


def poly_adjugate3(A: PolyMat) -> PolyMat:
    def minor(r, c):
        rows = [i for i in range(3) if i != r]
        cols = [j for j in range(3) if j != c]
        return (
            A[rows[0]][cols[0]] * A[rows[1]][cols[1]]
            - A[rows[0]][cols[1]] * A[rows[1]][cols[0]]
        )

    out = [[Poly.zero(PROJ)] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            s = 1 if (i + j) % 2 == 0 else -1
            out[j][i] = minor(i, j) * s
    return _mat(out)


def _mat_eq(A: PolyMat, B: PolyMat) -> bool:
    return all(A[i][j] == B[i][j] for i in range(3) for j in range(3))


def _mat_scale(A: PolyMat, c: Fraction) -> PolyMat:
    return _mat([[A[i][j] * c for j in range(3)] for i in range(3)])


@dataclass(frozen=True)
class SymLDR:
    """Symmetric matrix of linear forms with det(M) = det_scale * reference."""

    entries: PolyMat
    reference: Poly
    det_scale: Fraction

    def __post_init__(self):
        for i in range(3):
            for j in range(3):
                e = self.entries[i][j]
                if not e.is_zero() and (not e.is_homogeneous() or e.total_degree() != 1):
                    raise ValueError("entries must be linear forms")
                if e != self.entries[j][i]:
                    raise ValueError("matrix must be symmetric")
        d = poly_det3(self.entries)
        if d.is_zero():
            raise ValueError("determinant vanishes identically")
        if d != self.reference * self.det_scale:
            raise ValueError("det(M) is not det_scale * reference")

    def adjugate(self) -> "AdjugateMatrix":
        return AdjugateMatrix(poly_adjugate3(self.entries))

    def at_point(self, p: ProjPoint) -> Matrix:
        return Matrix(
            [[self.entries[i][j].evaluate(p.coords) for j in range(3)] for i in range(3)]
        )


@dataclass(frozen=True)
class AdjugateMatrix:
    """Symmetric matrix of quadrics; off-diagonals carry the boundary conics,
    diagonals the reduced adjoints."""

    entries: PolyMat

    def __post_init__(self):
        for i in range(3):
            for j in range(3):
                e = self.entries[i][j]
                if not e.is_zero() and (not e.is_homogeneous() or e.total_degree() != 2):
                    raise ValueError("entries must be quadratic forms")
                if e != self.entries[j][i]:
                    raise ValueError("matrix must be symmetric")

    def entry(self, i: int, j: int) -> Poly:
        return self.entries[i][j]

    def off_diagonal_conics(self) -> tuple[Poly, Poly, Poly]:
        """(c_1, c_2, c_3) in the component order: c_k sits opposite the k-th
        diagonal, i.e. c_1 = entry(2,3), c_2 = entry(1,3), c_3 = entry(1,2)."""
        return (self.entries[1][2], self.entries[0][2], self.entries[0][1])

    def diagonals(self) -> tuple[Poly, Poly, Poly]:
        return (self.entries[0][0], self.entries[1][1], self.entries[2][2])


@dataclass(frozen=True)
class BasisChange:
    matrix: Matrix
    gamma: Optional[Fraction] = None

    def __post_init__(self):
        if (self.matrix.rows, self.matrix.cols) != (3, 3):
            raise ValueError("basis change must be a 3x3 matrix")
        if self.matrix.det() == 0:
            raise ValueError("basis change must be invertible")

    @classmethod
    def shear(cls, gamma) -> "BasisChange":
        g = Fraction(gamma)
        return cls(Matrix([[1, g, 0], [0, 1, 0], [0, 0, 1]]), gamma=g)


@dataclass(frozen=True)
class LDRPair:
    """A symmetric LDR together with its exact adjugate: sym.entries *
    adj.entries = det * Id as polynomial matrices."""

    sym: SymLDR
    adj: AdjugateMatrix

    def __post_init__(self):
        det = self.sym.reference * self.sym.det_scale
        prod = _matmul_poly(self.sym.entries, self.adj.entries)
        for i in range(3):
            for j in range(3):
                want = det if i == j else Poly.zero(PROJ)
                if prod[i][j] != want:
                    raise ValueError("adjugate identity M * M^adj = det(M) Id fails")


def _matmul_poly(A: PolyMat, B: PolyMat) -> PolyMat:
    out = [[Poly.zero(PROJ) for _ in range(3)] for _ in range(3)]
    for i in range(3):
        for j in range(3):
            acc = Poly.zero(PROJ)
            for k in range(3):
                acc = acc + A[i][k] * B[k][j]
            out[i][j] = acc
    return _mat(out)


def pair_from_sym(M: PolyMat, reference: Poly) -> LDRPair:
    det = poly_det3(M)
    scale = proportional(reference, det)
    if scale is None or scale == 0:
        raise PreconditionViolation("determinant is not proportional to the reference cubic")
    sym = SymLDR(M, reference, scale)
    return LDRPair(sym, sym.adjugate())


# ---------------------------------------------------------------------------
# the contact-conic construction (cubic case)
# ---------------------------------------------------------------------------


def _conic_coeff_vector(p: Poly) -> list[Fraction]:
    return [p.coefficient(e) for e in monomials_of_degree(2)]


def _poly_from_conic_vector(v) -> Poly:
    return Poly(PROJ, {e: c for e, c in zip(monomials_of_degree(2), v)})


def _line_rows_through(points) -> list[list[Fraction]]:
    """Rows expressing 'a line vanishes on the divisor': used by the
    not-cut-by-a-line precondition."""
    rows: list[list[Fraction]] = []
    for item, mult, tangent in points:
        if isinstance(item, ProjPoint):
            rows.append(list(item.coords))
            if mult >= 2 and tangent is not None:
                rows.append([Fraction(t) for t in tangent])
        else:
            q = item.shape
            dq = unipoly.degree(q)
            cols = []
            for i in range(3):
                cols.append(item.maps[i])
            for r in range(dq):
                rows.append([m[r] if r < len(m) else Fraction(0) for m in cols])
    return rows


def _divisor_conic_rows(points) -> list[list[Fraction]]:
    """Linear conditions on conic coefficients: vanish on the divisor (with
    tangency conditions at doubled points)."""
    monos = monomials_of_degree(2)
    rows: list[list[Fraction]] = []
    for item, mult, tangent in points:
        if isinstance(item, ProjPoint):
            x, y, z = item.coords
            rows.append([x**a * y**b * z**c for (a, b, c) in monos])
            if mult >= 2:
                tx, ty, tz = tangent

                def partial(e, i):
                    a = list(e)
                    if a[i] == 0:
                        return Fraction(0)
                    k = a[i]
                    a[i] -= 1
                    return k * x ** a[0] * y ** a[1] * z ** a[2]

                rows.append(
                    [
                        Fraction(tx) * partial(e, 0)
                        + Fraction(ty) * partial(e, 1)
                        + Fraction(tz) * partial(e, 2)
                        for e in monos
                    ]
                )
        else:
            q = item.shape
            dq = unipoly.degree(q)
            if mult >= 2:
                raise PreconditionViolation(
                    "tangency conditions at irrational divisor points are unsupported"
                )
            maxes = [max(e[i] for e in monos) for i in range(3)]
            pows = []
            for i in range(3):
                pl = [unipoly.ONE]
                for _ in range(maxes[i]):
                    pl.append(unipoly.rem(unipoly.mul(pl[-1], item.maps[i]), q))
                pows.append(pl)
            block_rows = [[Fraction(0)] * len(monos) for _ in range(dq)]
            for col, e in enumerate(monos):
                term = unipoly.rem(unipoly.mul(unipoly.mul(pows[0][e[0]], pows[1][e[1]]), pows[2][e[2]]), q)
                # note: the double product needs one more reduction for safety
                for r in range(dq):
                    block_rows[r][col] = term[r] if r < len(term) else Fraction(0)
            rows.extend(block_rows)
    return rows


def _contact_divisor(f: Poly, contact: Poly, contact_points) -> list:
    """Normalize the divisor description: [(point_or_block, half_multiplicity,
    tangent_or_None)], verifying even contact along the way."""
    out = []
    total = 0
    fc = Curve(f)
    for item in contact_points:
        if isinstance(item, ProjPoint):
            if not item.is_rational():
                raise PreconditionViolation(
                    "conjugate divisor points must be passed as blocks, not "
                    "extension-coordinate points"
                )
            m = intersection_multiplicity(f, contact, item)
            if m <= 0 or m % 2:
                raise PreconditionViolation(
                    f"contact multiplicity at {item} is {m}, not even positive"
                )
            tangent = None
            if m // 2 >= 2:
                g = fc.gradient(item)
                b = item.coords
                tangent = (
                    g[1] * b[2] - g[2] * b[1],
                    g[2] * b[0] - g[0] * b[2],
                    g[0] * b[1] - g[1] * b[0],
                )
            out.append((item, m // 2, tangent))
            total += m // 2
        elif isinstance(item, AlgebraicBlock):
            if item.degree > 3 or not item.irreducible:
                raise PreconditionViolation("divisor blocks must be irreducible of degree <= 3")
            m = intersection_multiplicity(f, contact, item.ext_point())
            if m <= 0 or m % 2:
                raise PreconditionViolation("odd contact multiplicity at a conjugate block")
            if m // 2 >= 2:
                raise PreconditionViolation(
                    "doubled divisor points must be rational in this implementation"
                )
            out.append((item, m // 2, None))
            total += (m // 2) * item.degree
        else:
            raise TypeError("contact points must be ProjPoint or AlgebraicBlock")
    if total != 3:
        raise PreconditionViolation(f"contact divisor has degree {total}, expected 3")
    return out


def dixon(f: Poly, contact: Poly, contact_points: Sequence) -> LDRPair:
    """Build a symmetric LDR of the cubic f from a contact conic.

    The conic must meet the cubic with even multiplicity exactly at the given
    points (total 6); the half-divisor must not be cut out by a single line
    (checked by an exact rank computation, tangency handled by derivative
    conditions at doubled points)."""
    if f.vars != PROJ or f.total_degree() != 3 or not f.is_homogeneous():
        raise PreconditionViolation("f must be a homogeneous cubic")
    if contact.vars != PROJ or contact.total_degree() != 2 or not contact.is_homogeneous():
        raise PreconditionViolation("the contact curve must be a conic")
    if not gcd_poly(f, contact).is_constant():
        raise PreconditionViolation("cubic and contact conic share a component")
    divisor = _contact_divisor(f, contact, contact_points)
    # no line through the half divisor
    line_rows = _line_rows_through(divisor)
    if rank(Matrix(line_rows)) < 3:
        raise PreconditionViolation(
            "contact points are cut out by a single line (collinear divisor)"
        )
    # conics through the divisor: must be a 3-dimensional space
    rows = _divisor_conic_rows(divisor)
    ker = nullspace(Matrix(rows))
    if len(ker) != 3:
        raise AlgorithmFailure(
            f"space of conics through the divisor has dimension {len(ker)}, expected 3"
        )
    # deterministic basis extension starting with the given contact conic
    a11_vec = _conic_coeff_vector(contact)
    basis = _extend_basis(a11_vec, ker)
    a = {(0, 0): contact}
    a[(0, 1)] = _poly_from_conic_vector(basis[1])
    a[(0, 2)] = _poly_from_conic_vector(basis[2])
    # the second-step relations per symmetric pair
    for (i, j) in ((1, 1), (1, 2), (2, 2)):
        a[(i, j)] = _noether_solve(f, a[(0, 0)], a[(0, i)], a[(0, j)])
    madj_raw = _mat(
        [
            [a[(0, 0)], a[(0, 1)], a[(0, 2)]],
            [a[(0, 1)], a[(1, 1)], a[(1, 2)]],
            [a[(0, 2)], a[(1, 2)], a[(2, 2)]],
        ]
    )
    return _pair_from_adjugate_raw(madj_raw, f)


def _pair_from_adjugate_raw(madj_raw: PolyMat, f: Poly) -> LDRPair:
    """From a rank-one-mod-f symmetric quadric matrix, produce the exact pair."""
    adj2 = poly_adjugate3(madj_raw)
    try:
        M = _mat([[divexact(adj2[i][j], f) for j in range(3)] for i in range(3)])
    except DivisibilityError as e:
        raise AlgorithmFailure(f"adjugate-of-adjugate entries are not divisible: {e}")
    det = poly_det3(M)
    if det.is_zero():
        raise AlgorithmFailure("constructed matrix has zero determinant")
    gamma = proportional(f, det)
    if gamma is None:
        raise AlgorithmFailure("determinant is not proportional to the cubic")
    sym = SymLDR(M, f, gamma)
    return LDRPair(sym, sym.adjugate())


def _extend_basis(first, ker) -> list[list[Fraction]]:
    """[first, two kernel vectors] forming a basis of the kernel span; errors
    if `first` is not in the span."""
    if rank(Matrix(ker)) != len(ker):
        raise AlgorithmFailure("kernel basis is degenerate")
    coords = solve(Matrix([[ker[r][c] for r in range(len(ker))] for c in range(len(first))]), first)
    if coords is None:
        raise PreconditionViolation("the contact conic does not vanish on the divisor")
    basis = [list(map(Fraction, first))]
    for k in ker:
        cand = basis + [list(k)]
        if rank(Matrix(cand)) == len(cand):
            basis.append(list(k))
        if len(basis) == 3:
            break
    if len(basis) != 3:
        raise AlgorithmFailure("could not extend the contact conic to a basis")
    return basis


def _noether_solve(f: Poly, a11: Poly, a1i: Poly, a1j: Poly) -> Poly:
    """Solve a11 * u - h * f = a1i * a1j for a quadric u and linear h."""
    monos4 = monomials_of_degree(4)
    conic_m = monomials_of_degree(2)
    lin_m = monomials_of_degree(1)
    cols = []
    for e in conic_m:
        cols.append(a11 * Poly(PROJ, {e: Fraction(1)}))
    for e in lin_m:
        cols.append(f * Poly(PROJ, {e: Fraction(-1)}))
    rhs_poly = a1i * a1j
    mat = Matrix([[c.coefficient(e) for c in cols] for e in monos4])
    rhs = [rhs_poly.coefficient(e) for e in monos4]
    sol = solve(mat, rhs)
    if sol is None:
        raise AlgorithmFailure("inconsistent linear system in the second step")
    u = Poly(PROJ, {e: c for e, c in zip(conic_m, sol[:6])})
    h = Poly(PROJ, {e: c for e, c in zip(lin_m, sol[6:])})
    if a11 * u - h * f != rhs_poly:
        raise AlgorithmFailure("second-step relation failed exact verification")
    return u


# ---------------------------------------------------------------------------
# polycon -> LDR (the dictionary, forward direction)
# ---------------------------------------------------------------------------


def ldr_from_polycon(p: Polycon, adjoints: Optional[dict] = None) -> LDRPair:
    """Scalars lambda_i making the matrix with diagonal lambda_i*alpha_i and
    off-diagonal c_k rank one modulo the cubic adjoint; returns the exact pair."""
    if p.n != 3 or any(c.degree != 2 for c in p.components):
        raise PreconditionViolation("the dictionary needs a 3-conic polycon")
    val = validate(p)
    if not val.nodal:
        raise PreconditionViolation("the dictionary needs a nodal polycon")
    adjoints = adjoints or {}
    f = adjoints.get("main") or compute_adjoint(p).poly
    reduced = []
    for i in range(3):
        key = ("reduced", i)
        if key in adjoints:
            reduced.append(adjoints[key])
        else:
            reduced.append(compute_adjoint(reduce_component(p, i)).poly)
    c = [comp.poly for comp in p.components]
    # mixed minor conditions determine the diagonal scalars in the gauge where
    # the off-diagonals are exactly the c_k as given
    lam = []
    for i in range(3):
        j, k = [t for t in range(3) if t != i]
        lhs = normal_form(reduced[i] * c[i], f)
        rhs = normal_form(c[j] * c[k], f)
        if lhs.is_zero():
            raise InconsistencyError("reduced adjoint times its conic vanishes mod f")
        ratio = proportional(lhs, rhs)
        if ratio is None:
            raise InconsistencyError(
                f"minor condition for diagonal {i} admits no scalar solution"
            )
        lam.append(ratio)
    madj_raw = _mat(
        [
            [reduced[0] * lam[0], c[2], c[1]],
            [c[2], reduced[1] * lam[1], c[0]],
            [c[1], c[0], reduced[2] * lam[2]],
        ]
    )
    # verify every 2x2 minor vanishes modulo f
    for i in range(3):
        for j in range(3):
            rows = [r for r in range(3) if r != i]
            cols_ = [s for s in range(3) if s != j]
            minor = (
                madj_raw[rows[0]][cols_[0]] * madj_raw[rows[1]][cols_[1]]
                - madj_raw[rows[0]][cols_[1]] * madj_raw[rows[1]][cols_[0]]
            )
            if not normal_form(minor, f).is_zero():
                raise InconsistencyError(f"2x2 minor ({i},{j}) is nonzero modulo the adjoint")
    return _pair_from_adjugate_raw(madj_raw, f)


# ---------------------------------------------------------------------------
# LDR -> polycon (the dictionary, backward direction)
# ---------------------------------------------------------------------------


@dataclass
class PolyconFromLDR:
    polycon: Polycon
    validation: ValidationReport
    adjoint_reference: Poly  # det(M), whose zero set the polycon's adjoint cuts
    vertex_real_roots: dict  # vertex index -> chosen real-root bracket, for
    #                          vertices living in an extension
    rank_one_points: list = None  # support of the rank-1 locus (deep residual set)
    degenerate_vertices: list = None  # indices where the vertex carries the
    #                                   whole pairwise intersection


def polycon_from_ldr(M: SymLDR) -> PolyconFromLDR:
    """Read the boundary conics and vertices off the adjugate of M.

    Requires rank >= 1 everywhere (no common zero of the entries) and the
    rank-one locus condition; the vertex between two conics is the unique
    intersection point off the complementary diagonal quadric."""
    coeff_rows = []
    for i in range(3):
        for j in range(3):
            e = M.entries[i][j]
            coeff_rows.append([e.coefficient((1, 0, 0)), e.coefficient((0, 1, 0)), e.coefficient((0, 0, 1))])
    cm = Matrix(coeff_rows)
    if rank(cm) < 3:
        ker = nullspace(cm.transpose())
        raise RankZeroViolation(
            "all matrix entries vanish at a common point; rank drops to zero there"
        )
    madj = poly_adjugate3(M.entries)
    c1, c2, c3 = madj[1][2], madj[0][2], madj[0][1]
    a1, a2, a3 = madj[0][0], madj[1][1], madj[2][2]
    for name, q in (("c1", c1), ("c2", c2), ("c3", c3)):
        if q.is_zero() or q.total_degree() != 2:
            raise Condition2Violation(f"off-diagonal {name} is not a conic")
    comps = (Curve(c1), Curve(c2), Curve(c3))
    diags = (a1, a2, a3)
    # condition (2): every common point of the three conics kills the diagonals
    rank_one = _check_rank_one_locus(comps, diags)
    # vertices: vertices[k] joins components k and k+1; the complementary
    # diagonal index is the remaining one
    vertices = []
    vertex_roots = {}
    degenerate = []
    for k in range(3):
        i, j = k, (k + 1) % 3
        o = [t for t in range(3) if t not in (i, j)][0]
        sch = intersect_conics(comps[i], comps[j])
        off: list = []
        for pt, m in sch.rational_points:
            if not _is_zero_value(diags[o].evaluate(pt.coords)):
                off.append((pt, m))
        off_blocks = []
        for b in sch.blocks:
            red = _reduce_on_block(diags[o], b)
            if not red:
                continue  # block entirely on the diagonal quadric
            g = unipoly.gcd(red, b.shape)
            if unipoly.degree(g) > 0:
                raise Condition2Violation(
                    "diagonal quadric splits an irreducible intersection block"
                )
            off_blocks.append(b)
        if len(off) == 1 and not off_blocks:
            vertices.append(off[0][0])
        elif not off and len(off_blocks) == 1:
            b = off_blocks[0]
            if b.degree > 3 or not b.irreducible:
                raise Condition2Violation(
                    "vertex lies in an unsupported extension (degree > 3)"
                )
            roots = isolate_real_roots(b.shape)
            if not roots:
                raise Condition2Violation(
                    "vertex block has no real embedding; no real vertex exists"
                )
            vertices.append(b.ext_point())
            vertex_roots[k] = roots[0]
        elif (
            not off
            and not off_blocks
            and len(sch.rational_points) == 1
            and not sch.blocks
            and sch.rational_points[0][1] == sch.bezout
        ):
            # fully degenerate pair: the whole intersection sits at one point,
            # and the scheme-theoretic vertex collides with it
            vertices.append(sch.rational_points[0][0])
            degenerate.append(k)
        else:
            raise Condition2Violation(
                f"vertex between components {i} and {j} is not unique/identifiable; "
                "apply a shear basis change"
            )
    poly = Polycon(comps, tuple(vertices))
    val = validate(poly, permissive=True)
    return PolyconFromLDR(
        polycon=poly,
        validation=val,
        adjoint_reference=(M.reference * M.det_scale).normalized(),
        vertex_real_roots=vertex_roots,
        rank_one_points=rank_one,
        degenerate_vertices=degenerate,
    )


def _is_zero_value(v) -> bool:
    if isinstance(v, Fraction):
        return v == 0
    return v.is_zero()


def _reduce_on_block(poly: Poly, b: AlgebraicBlock):
    q = b.shape
    acc = unipoly.ZERO
    for e, co in poly.terms.items():
        term = unipoly.upoly([co])
        for i, k in enumerate(e):
            for _ in range(k):
                term = unipoly.rem(unipoly.mul(term, b.maps[i]), q)
        acc = unipoly.add(acc, term)
    return unipoly.rem(acc, q)


def _check_rank_one_locus(comps, diags) -> list:
    """Common zeros of the three off-diagonal conics must kill the diagonals;
    returns the support of the rank-one locus."""
    support: list = []
    sch = intersect_conics(comps[0], comps[1])
    for pt, _ in sch.rational_points:
        if comps[2].contains(pt):
            for d in diags:
                if not _is_zero_value(d.evaluate(pt.coords)):
                    raise Condition2Violation(
                        f"rank equals two at the common boundary point {pt}; "
                        "apply a shear basis change"
                    )
            support.append(pt)
    for b in sch.blocks:
        on_c3 = _reduce_on_block(comps[2].poly, b)
        if on_c3 and unipoly.degree(unipoly.gcd(on_c3, b.shape)) == 0:
            continue
        if on_c3:
            raise Condition2Violation("partial block on the third conic")
        for d in diags:
            red = _reduce_on_block(d, b)
            if red and unipoly.degree(unipoly.gcd(red, b.shape)) == 0:
                raise Condition2Violation(
                    "rank equals two at a conjugate common boundary point"
                )
        support.append(b)
    return support


# ---------------------------------------------------------------------------
# deformation
# ---------------------------------------------------------------------------


@dataclass
class DeformResult:
    pair: LDRPair
    polycon_info: PolyconFromLDR
    basis_change: BasisChange


def deform(pair: LDRPair, T: BasisChange) -> DeformResult:
    """Congruence action on the adjugate: new M^adj = T M^adj T^t; the
    determinant class (hence the adjoint) is unchanged up to det(T)^2."""
    N = _mat_mul_scalar_T(T.matrix, pair.adj.entries)
    adjT = T.matrix.adjugate()
    M2 = _mat_mul_scalar_T(adjT.transpose(), pair.sym.entries)
    detT = T.matrix.det()
    # exact consistency: adj(M2) == det(T)^2 * N
    if not _mat_eq(poly_adjugate3(M2), _mat_scale(N, detT * detT)):
        raise AlgorithmFailure("congruence bookkeeping failed the exact adjugate identity")
    det2 = poly_det3(M2)
    scale = proportional(pair.sym.reference, det2)
    if scale is None or scale == 0:
        raise AlgorithmFailure("deformed determinant left the pencil of the reference cubic")
    sym2 = SymLDR(M2, pair.sym.reference, scale)
    pair2 = LDRPair(sym2, sym2.adjugate())
    try:
        info = polycon_from_ldr(sym2)
    except (RankZeroViolation, Condition2Violation) as e:
        raise DeformationLeavesChartError(str(e)) from e
    return DeformResult(pair2, info, T)


# ---------------------------------------------------------------------------
# preservation certificates for the shear family
# ---------------------------------------------------------------------------


@dataclass
class PreservationReport:
    matrix_identities: bool
    fixed_intersection: bool
    fixed_line: bool
    details: list[str]

    @property
    def all_ok(self) -> bool:
        return self.matrix_identities and self.fixed_intersection and self.fixed_line


def check_res_preservation(
    before: AdjugateMatrix,
    after: AdjugateMatrix,
    gamma: Fraction,
    before_polycon: Optional[Polycon] = None,
    after_polycon: Optional[Polycon] = None,
) -> PreservationReport:
    """Exact verification of the three preservation claims of the shear family:
    (1) the first component and both complementary reduced adjoints are fixed,
    via the pencil identities on the matrix entries; (2) the intersection of the
    fixed component with its pencil partner is fixed; (3) the chord between the
    two moving vertices is fixed."""
    g = Fraction(gamma)
    details = []
    b, a = before.entries, after.entries
    idents = [
        (a[1][1] == b[1][1], "diagonal (2,2) changed"),
        (a[2][2] == b[2][2], "diagonal (3,3) changed"),
        (a[1][2] == b[1][2], "entry (2,3) changed"),
        (a[0][1] == b[0][1] + b[1][1] * g, "pencil identity for entry (1,2) failed"),
        (a[0][2] == b[0][2] + b[1][2] * g, "pencil identity for entry (1,3) failed"),
        (a[0][0] == b[0][0] + b[0][1] * (2 * g) + b[1][1] * (g * g),
         "pencil identity for entry (1,1) failed"),
    ]
    matrix_ok = True
    for ok, msg in idents:
        if not ok:
            matrix_ok = False
            details.append(msg)
    # claim (2): the fixed component's intersections: C1 = V(b[1][2]),
    # C2 = V(b[0][2]); C1 cap C2 is preserved since c2^gamma = c2 + gamma*c1
    fixed_int = True
    try:
        C1 = Curve(b[1][2])
        C2 = Curve(b[0][2])
        C2g = Curve(a[0][2])
        s_before = intersect_conics(C1, C2)
        s_after = intersect_conics(C1, C2g)
        if not _schemes_equal(s_before, s_after):
            fixed_int = False
            details.append("intersection of the fixed conic with its pencil partner moved")
        # C1 cap C3 cap R(P): the pair-(C1,C3) residual points lie on A2 and stay
        # on the deformed c3^gamma = c3 + gamma*alpha2
        C3 = Curve(b[0][1])
        s13 = intersect_conics(C1, C3)
        c3g = a[0][1]
        for pt, _ in s13.rational_points:
            if b[1][1].evaluate(pt.coords) == 0 and c3g.evaluate(pt.coords) != 0:
                fixed_int = False
                details.append(f"residual point {pt} left the deformed conic")
        for blk in s13.blocks:
            on_a2 = _reduce_on_block(b[1][1], blk)
            if not on_a2:
                if _reduce_on_block(c3g, blk):
                    fixed_int = False
                    details.append("conjugate residual block left the deformed conic")
    except Exception as e:
        fixed_int = False
        details.append(f"intersection comparison failed: {e}")
    # claim (3): the chord between the two moving vertices
    fixed_line = True
    if before_polycon is not None and after_polycon is not None:
        try:
            lb = line_through(before_polycon.vertices[0], before_polycon.vertices[1]).poly
            la = line_through(after_polycon.vertices[0], after_polycon.vertices[1]).poly
            if proportional(lb, la) is None:
                fixed_line = False
                details.append("the chord between the moving vertices moved")
        except Exception as e:
            fixed_line = False
            details.append(f"chord comparison failed: {e}")
    return PreservationReport(matrix_ok, fixed_int, fixed_line, details)


def _schemes_equal(s1, s2) -> bool:
    if sorted((tuple(map(str, pt.coords)), m) for pt, m in s1.rational_points) != sorted(
        (tuple(map(str, pt.coords)), m) for pt, m in s2.rational_points
    ):
        return False
    b1 = sorted((tuple(b.shape), b.chart, b.multiplicity) for b in s1.blocks)
    b2 = sorted((tuple(b.shape), b.chart, b.multiplicity) for b in s2.blocks)
    return b1 == b2


# ---------------------------------------------------------------------------
# scaling rigidity
# ---------------------------------------------------------------------------


@dataclass
class RigidityVerdict:
    verdict: str  # identical | trivial-scaling | equivalent-by-diagonal-conjugation |
    #               minor-identity-fails | undecided
    detail: str = ""
    evaluation_point: Optional[ProjPoint] = None


def scaling_rigidity(
    madj: AdjugateMatrix, madj2: AdjugateMatrix, cubic: Optional[Poly] = None
) -> RigidityVerdict:
    """Decide whether two adjugates differ by an entrywise scaling: by the
    rigidity argument the only possibility is the trivial one, certified by
    evaluating the vanishing 2x2 minors at a rational point of the cubic where
    no entry vanishes."""
    A, B = madj.entries, madj2.entries
    ratios: list[list[Optional[Fraction]]] = [[None] * 3 for _ in range(3)]
    all_prop = True
    for i in range(3):
        for j in range(3):
            r = proportional(A[i][j], B[i][j])
            ratios[i][j] = r
            if r is None or r == 0:
                all_prop = False
    if all_prop:
        vals = {ratios[i][j] for i in range(3) for j in range(3)}
        if vals == {Fraction(1)}:
            return RigidityVerdict("identical")
        if len(vals) == 1:
            return RigidityVerdict("trivial-scaling", detail=f"global factor {vals.pop()}")
        # diagonal conjugation pattern r_ij = t_i * t_j
        conj = all(
            ratios[i][j] ** 2 == ratios[i][i] * ratios[j][j]
            for i in range(3)
            for j in range(3)
        )
        if conj:
            return RigidityVerdict(
                "equivalent-by-diagonal-conjugation",
                detail=f"diagonal ratios {[str(ratios[i][i]) for i in range(3)]}",
            )
    # fall back to the minor evaluation at a suitable rational point of the cubic
    f = cubic
    if f is None:
        return RigidityVerdict("undecided", detail="no cubic supplied for the point search")
    pt = _rational_point_on_cubic_with_nonvanishing_entries(f, B)
    if pt is None:
        return RigidityVerdict("undecided", detail="no suitable evaluation point found")
    m = B[0][0].evaluate(pt.coords) * B[1][1].evaluate(pt.coords) - B[0][1].evaluate(pt.coords) ** 2
    if m != 0:
        return RigidityVerdict(
            "minor-identity-fails",
            detail="the (1,2)x(1,2) minor does not vanish on the cubic",
            evaluation_point=pt,
        )
    return RigidityVerdict("undecided", detail="minors vanish; no scaling obstruction found",
                           evaluation_point=pt)


def _rational_point_on_cubic_with_nonvanishing_entries(f: Poly, B: PolyMat):
    aff = f.dehomogenize()
    found: list[ProjPoint] = []

    def good(pt: ProjPoint) -> bool:
        return all(
            not _is_zero_value(B[i][j].evaluate(pt.coords))
            for i in range(3)
            for j in range(3)
        )

    xs = [Fraction(n, d) for d in (1, 2, 3) for n in range(-12, 13)]
    for x0 in xs:
        uni = aff.substitute("x", Poly.const(aff.vars, x0))
        try:
            u = uni.to_unipoly()
        except ValueError:
            continue
        if unipoly.degree(u) < 1:
            continue
        for y0 in unipoly.rational_roots(u):
            pt = ProjPoint.affine(x0, y0)
            if good(pt):
                return pt
            found.append(pt)
    # chord construction: a line through two rational points of the cubic
    # meets it in a third rational point
    for i in range(len(found)):
        for j in range(i + 1, len(found)):
            a, b = found[i], found[j]
            ax, ay = a.affine_xy()
            bx, by = b.affine_xy()
            xs_u = unipoly.upoly([ax, bx - ax])
            ys_u = unipoly.upoly([ay, by - ay])
            acc = unipoly.ZERO
            for (ex, ey), co in aff.terms.items():
                term = unipoly.upoly([co])
                for _ in range(ex):
                    term = unipoly.mul(term, xs_u)
                for _ in range(ey):
                    term = unipoly.mul(term, ys_u)
                acc = unipoly.add(acc, term)
            for t0 in unipoly.rational_roots(acc):
                pt = ProjPoint.affine(ax + t0 * (bx - ax), ay + t0 * (by - ay))
                if good(pt):
                    return pt
    return None
