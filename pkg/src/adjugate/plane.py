"""Projective plane geometry: points, curves, conic classification,
exact intersection with residual-scheme output, stereographic
parametrization, and local intersection multiplicity.

Intersections are computed by elimination in a deterministically chosen
"good position" (no common points at infinity, distinct fiber coordinates,
recoverable second coordinate) and transformed back; non-rational points are
kept as rational-univariate blocks (squarefree shape polynomial plus
coordinate maps), never as floating approximations.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import unipoly
from .errors import (
    InfiniteMultiplicityError,
    PreconditionViolation,
    SharedComponentError,
)
from .linalg import Matrix
from .numberfield import ExtElem, NumberField
from .poly import AFF, PROJ, Poly, divexact, gcd_poly, resultant, subresultant_prs
from .realroots import RealRoot, count_real_roots, isolate_real_roots
from .unipoly import UPoly

Coord = Union[Fraction, ExtElem]


# ---------------------------------------------------------------------------
# points and curves
# ---------------------------------------------------------------------------


class ProjPoint:
    """Point of the projective plane, normalized so the first nonzero
    coordinate is 1.  Coordinates are rational or live in one shared
    extension field."""

    __slots__ = ("coords",)

    def __init__(self, coords: Sequence):
        cs = list(coords)
        if len(cs) != 3:
            raise ValueError("projective points have three coordinates")
        fields = {c.field.modulus for c in cs if isinstance(c, ExtElem)}
        if len(fields) > 1:
            raise ValueError("coordinates live in different extension fields")
        if fields:
            mod = next(iter(fields))
            nf = next(c.field for c in cs if isinstance(c, ExtElem))
            cs = [c if isinstance(c, ExtElem) else nf.element([Fraction(c)]) for c in cs]
        else:
            cs = [Fraction(c) for c in cs]
        pivot = next((c for c in cs if not _is_zero(c)), None)
        if pivot is None:
            raise ValueError("(0:0:0) is not a projective point")
        inv = _inv(pivot)
        cs = [c * inv for c in cs]
        # rational-valued extension coords collapse back to fractions
        if fields and all(isinstance(c, ExtElem) and c.is_rational() for c in cs):
            cs = [c.as_fraction() for c in cs]
        object.__setattr__(self, "coords", tuple(cs))

    @classmethod
    def affine(cls, x, y) -> "ProjPoint":
        return cls((x, y, Fraction(1)))

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coords)

    def is_affine(self) -> bool:
        return not _is_zero(self.coords[2])

    def affine_xy(self) -> tuple[Coord, Coord]:
        if not self.is_affine():
            raise ValueError("point at infinity has no affine coordinates")
        inv = _inv(self.coords[2])
        return self.coords[0] * inv, self.coords[1] * inv

    def affine_coords(self) -> tuple[Coord, Coord, Coord]:
        """The representative (x, y, 1); required whenever signs of odd-degree
        forms matter."""
        x, y = self.affine_xy()
        return (x, y, Fraction(1))

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        a, b = self.coords, other.coords
        for i in range(3):
            for j in range(i + 1, 3):
                if not _is_zero(a[i] * b[j] - a[j] * b[i]):
                    return False
        return True

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"({' : '.join(str(c) for c in self.coords)})"


def _is_zero(c) -> bool:
    if isinstance(c, ExtElem):
        return c.is_zero()
    return c == 0


def _inv(c):
    if isinstance(c, ExtElem):
        return c.inverse()
    return Fraction(1) / c


@dataclass(frozen=True)
class Curve:
    """Plane curve cut out by a nonzero homogeneous polynomial."""

    poly: Poly

    def __post_init__(self):
        p = self.poly
        if p.vars == AFF:
            p = p.homogenize()
            object.__setattr__(self, "poly", p)
        if p.vars != PROJ or p.is_zero() or not p.is_homogeneous():
            raise ValueError("curve needs a nonzero homogeneous polynomial")

    @property
    def degree(self) -> int:
        return self.poly.total_degree()

    def affine(self) -> Poly:
        return self.poly.dehomogenize()

    def contains(self, p: ProjPoint) -> bool:
        return _is_zero(self.poly.evaluate(p.coords))

    def gradient(self, p: ProjPoint):
        return tuple(self.poly.derivative(v).evaluate(p.coords) for v in PROJ)

    def __repr__(self):
        return f"Curve({self.poly})"


def curve_from_affine(p: Poly) -> Curve:
    return Curve(p.homogenize() if p.vars == AFF else p)


# ---------------------------------------------------------------------------
# conic classification
# ---------------------------------------------------------------------------


def conic_matrix(c: Curve) -> Matrix:
    if c.degree != 2:
        raise ValueError("not a conic")
    m = [[Fraction(0)] * 3 for _ in range(3)]
    for e, co in c.poly.terms.items():
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        i, j = idx[0], idx[1]
        if i == j:
            m[i][i] = co
        else:
            m[i][j] = m[j][i] = co / 2
    return Matrix(m)


def _signature(m: Matrix) -> tuple[int, int]:
    """(positives, negatives) of a symmetric rational matrix by congruence
    (Schur-complement pivoting)."""
    a = [row[:] for row in m.data]
    n = len(a)
    pos = neg = 0
    done = [False] * n
    for _ in range(n):
        piv = next((i for i in range(n) if not done[i] and a[i][i] != 0), None)
        if piv is None:
            pair = next(
                (
                    (i, j)
                    for i in range(n)
                    for j in range(n)
                    if not done[i] and not done[j] and i != j and a[i][j] != 0
                ),
                None,
            )
            if pair is None:
                break
            i, j = pair
            # congruence row_i += row_j, col_i += col_j makes a[i][i] = 2 a[i][j]
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        d = a[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        col = [a[i][piv] for i in range(n)]
        for i in range(n):
            if i == piv or done[i]:
                continue
            for k in range(n):
                if k == piv or done[k]:
                    continue
                a[i][k] -= col[i] * col[k] / d
        for i in range(n):
            a[i][piv] = Fraction(0)
            a[piv][i] = Fraction(0)
        done[piv] = True
    return pos, neg


@dataclass(frozen=True)
class ConicClass:
    kind: str  # smooth-real-nonempty | smooth-real-empty | real-line-pair |
    #            conjugate-line-pair | double-line
    singular_point: Optional[ProjPoint] = None
    repeated_line: Optional[Poly] = None


def classify_conic(c: Curve) -> ConicClass:
    """Classification is invariant under scaling the equation by any nonzero
    rational (the signature flips sign but the empty/nonempty verdict does not)."""
    if c.degree != 2:
        raise ValueError("classify_conic expects a degree-2 curve")
    m = conic_matrix(c)
    pos, neg = _signature(m)
    rank = pos + neg
    if rank == 3:
        if min(pos, neg) == 0:
            return ConicClass("smooth-real-empty")
        return ConicClass("smooth-real-nonempty")
    from .linalg import nullspace

    ker = nullspace(m)
    if rank == 2:
        sp = ProjPoint(ker[0])
        kind = "real-line-pair" if pos == neg else "conjugate-line-pair"
        return ConicClass(kind, singular_point=sp)
    # rank 1: the conic is a scalar times the square of a linear form
    coefs = next(row for row in m.data if any(row))
    line = Poly(PROJ, {(1, 0, 0): coefs[0], (0, 1, 0): coefs[1], (0, 0, 1): coefs[2]})
    return ConicClass("double-line", repeated_line=line)


# ---------------------------------------------------------------------------
# residual schemes (intersection data)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraicBlock:
    """Galois-stable packet of intersection points: for each root t of the
    squarefree shape, the point has homogeneous coordinates with the `chart`
    coordinate equal to 1 and the other two given by the maps (reduced mod
    shape).  maps are indexed by projective coordinate, maps[chart] == 1."""

    shape: UPoly
    maps: tuple[UPoly, UPoly, UPoly]
    chart: int
    multiplicity: int
    irreducible: bool

    @property
    def degree(self) -> int:
        return unipoly.degree(self.shape)

    def real_count(self) -> int:
        return count_real_roots(self.shape)

    def real_roots(self) -> list[RealRoot]:
        return isolate_real_roots(self.shape)

    def number_field(self) -> NumberField:
        if not self.irreducible:
            raise PreconditionViolation("block shape is not certified irreducible")
        return NumberField(unipoly.monic(self.shape))

    def ext_point(self) -> ProjPoint:
        """The block's point with coordinates in Q[t]/(shape)."""
        nf = self.number_field()
        cs = [nf.element(m) for m in self.maps]
        return ProjPoint(cs)

    def point_at(self, root: RealRoot) -> tuple[Fraction, Fraction, Fraction]:
        raise NotImplementedError("exact coordinates at a specific real root stay symbolic")

    def __repr__(self):
        return (
            f"Block(deg={self.degree}, mult={self.multiplicity}, chart={self.chart}, "
            f"shape={list(self.shape)})"
        )


@dataclass(frozen=True)
class ResidualScheme:
    """Zero-dimensional intersection data of a curve pair, known points deflated."""

    rational_points: tuple[tuple[ProjPoint, int], ...]
    blocks: tuple[AlgebraicBlock, ...]
    deflated: tuple[tuple[ProjPoint, int], ...]
    bezout: int
    transform: Optional[tuple[tuple[int, ...], ...]] = None

    def total(self) -> int:
        t = sum(m for _, m in self.rational_points)
        t += sum(b.multiplicity * b.degree for b in self.blocks)
        return t

    def audit(self) -> bool:
        return self.total() + sum(m for _, m in self.deflated) == self.bezout

    def all_points_with_mult(self) -> list[tuple[ProjPoint, int]]:
        """Rational points plus one ext point per irreducible block."""
        out = list(self.rational_points)
        for b in self.blocks:
            out.append((b.ext_point(), b.multiplicity))
        return out


_TRANSFORM_POOL: list[tuple[tuple[int, ...], ...]] = []


def _transform_candidates():
    if not _TRANSFORM_POOL:
        eye = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
        _TRANSFORM_POOL.append(eye)
        basics = [
            ((1, 0, 0), (1, 1, 0), (0, 0, 1)),   # y' = y - x flavor
            ((1, 0, 0), (-1, 1, 0), (0, 0, 1)),
            ((1, 0, 0), (2, 1, 0), (0, 0, 1)),
            ((1, 1, 0), (0, 1, 0), (0, 0, 1)),
            ((0, 0, 1), (0, 1, 0), (1, 0, 0)),   # swap x <-> z
            ((1, 0, 0), (0, 0, 1), (0, 1, 0)),   # swap y <-> z
            ((1, 0, 0), (0, 1, 0), (1, 0, 1)),   # move the infinity line
            ((1, 0, 0), (0, 1, 0), (0, 1, 1)),
            ((1, 0, 0), (0, 1, 0), (1, 1, 1)),
            ((1, 0, 0), (3, 1, 0), (0, 0, 1)),
            ((1, 0, 0), (-2, 1, 0), (0, 0, 1)),
            ((1, 0, 0), (5, 1, 0), (1, 0, 1)),
        ]
        _TRANSFORM_POOL.extend(basics)
        rng = random.Random(0xADA)
        while len(_TRANSFORM_POOL) < 64:
            m = tuple(tuple(rng.randint(-4, 4) for _ in range(3)) for _ in range(3))
            if Matrix(m).det() != 0:
                _TRANSFORM_POOL.append(m)
    return list(_TRANSFORM_POOL)


def intersect_conics(
    c1: Curve, c2: Curve, known: Sequence[ProjPoint] = ()
) -> ResidualScheme:
    """Intersection of two curves of degree <= 2, with `known` rational points
    deflated out.  All coordinates stay exact; conjugate points are grouped in
    algebraic blocks with squarefree shapes."""
    f1, f2 = c1.poly, c2.poly
    if f1.total_degree() > 2 or f2.total_degree() > 2:
        raise ValueError("intersect_conics supports boundary degrees 1 and 2")
    g = gcd_poly(f1, f2)
    if not g.is_constant():
        raise SharedComponentError(f"curves share the component {g}")
    for p in known:
        if not (c1.contains(p) and c2.contains(p)):
            raise PreconditionViolation(f"known point {p} does not lie on both curves")
        if not p.is_rational():
            raise PreconditionViolation("known points must be rational")
    d1, d2 = c1.degree, c2.degree
    bez = d1 * d2
    last_err = None
    for T in _transform_candidates():
        try:
            return _intersect_in_position(f1, f2, d1, d2, bez, known, T)
        except _BadPosition as e:
            last_err = e
            continue
    raise ArithmeticError(f"no usable coordinate position found: {last_err}")


class _BadPosition(Exception):
    pass


def _intersect_in_position(f1, f2, d1, d2, bez, known, T) -> ResidualScheme:
    M = Matrix(T)
    Minv = M.inverse()
    g1 = f1.linear_change(T)
    g2 = f2.linear_change(T)
    if g1.coefficient((d1, 0, 0)) == 0 or g2.coefficient((d2, 0, 0)) == 0:
        raise _BadPosition("leading coefficient vanished")
    # no common intersection on the new line at infinity
    b1 = _binary_form_at_infinity(g1)
    b2 = _binary_form_at_infinity(g2)
    if unipoly.degree(unipoly.gcd(b1, b2)) > 0:
        raise _BadPosition("intersection at infinity")
    F = g1.dehomogenize()
    G = g2.dehomogenize()
    R = resultant(F, G, "x").to_unipoly()
    if unipoly.degree(R) != bez:
        raise _BadPosition("resultant degree deficit")
    # degree-1 element of the PRS recovers x as a function of y
    s1 = s0 = None
    if min(d1, d2) >= 1:
        for el in subresultant_prs(F, G, "x"):
            if el.degree_in("x") == 1:
                cs = el.coeffs_in("x")
                s0 = cs[0].to_unipoly()
                s1 = cs[1].to_unipoly()
                break
    rational_pts: list[tuple[ProjPoint, int]] = []
    blocks: list[AlgebraicBlock] = []
    for S, m in unipoly.squarefree_decomposition(R):
        S_rem = S
        for y0 in unipoly.rational_roots(S):
            x0 = _fiber_x(F, G, y0)
            pt_new = (x0, y0, Fraction(1))
            pt_old = ProjPoint(M.apply(pt_new))
            rational_pts.append((pt_old, m))
            S_rem = unipoly.divexact(S_rem, unipoly.upoly([-y0, Fraction(1)]))
        if unipoly.degree(S_rem) > 0:
            if s1 is None:
                raise _BadPosition("no degree-1 subresultant for irrational fibers")
            for q in unipoly.factor_squarefree(S_rem):
                if unipoly.degree(unipoly.gcd(s1, q)) > 0:
                    raise _BadPosition("fiber coordinate not recoverable")
                X = unipoly.rem(unipoly.mul(unipoly.neg(s0), unipoly.invert_mod(s1, q)), q)
                _assert_on_curves(F, G, X, q)
                blocks.extend(_block_to_old_coords(q, X, m, M))
    # deflate known points
    deflated: list[tuple[ProjPoint, int]] = []
    for p in known:
        hit = next((i for i, (pp, _) in enumerate(rational_pts) if pp == p), None)
        if hit is None:
            raise PreconditionViolation(f"known point {p} is not in the intersection")
        deflated.append(rational_pts[hit])
        rational_pts.pop(hit)
    scheme = ResidualScheme(
        rational_points=tuple(rational_pts),
        blocks=tuple(blocks),
        deflated=tuple(deflated),
        bezout=bez,
        transform=None if T == ((1, 0, 0), (0, 1, 0), (0, 0, 1)) else T,
    )
    if not scheme.audit():
        raise _BadPosition("Bezout audit failed")
    return scheme


def _binary_form_at_infinity(g: Poly) -> UPoly:
    """g(x0, x1, 0) dehomogenized by x1 = 1, as a polynomial in x0."""
    d = g.total_degree()
    cs = [Fraction(0)] * (d + 1)
    for (i, j, k), c in g.terms.items():
        if k == 0:
            cs[i] += c
    return unipoly.upoly(cs)


def _fiber_x(F: Poly, G: Poly, y0: Fraction) -> Fraction:
    """The unique x with F(x,y0) = G(x,y0) = 0; bad position if not unique."""
    yv = Poly.const(AFF, y0)
    fu = F.substitute("y", yv).to_unipoly()
    gu = G.substitute("y", yv).to_unipoly()
    g = unipoly.gcd(fu, gu)
    if unipoly.degree(g) != 1:
        raise _BadPosition("fiber over a rational root is not a single point")
    return -g[0] / g[1]


def _assert_on_curves(F: Poly, G: Poly, X: UPoly, q: UPoly) -> None:
    for H in (F, G):
        acc = unipoly.ZERO
        for (i, j), c in H.terms.items():
            term = unipoly.upoly([c])
            for _ in range(i):
                term = unipoly.rem(unipoly.mul(term, X), q)
            if j:
                term = unipoly.rem(unipoly.mul(term, unipoly.shift_deg(unipoly.ONE, j)), q)
            acc = unipoly.add(acc, term)
        if unipoly.rem(acc, q):
            raise _BadPosition("recovered fiber does not satisfy the curves")


def _block_to_old_coords(q: UPoly, X: UPoly, mult: int, M: Matrix) -> list[AlgebraicBlock]:
    """Map the block (X(t), t, 1) through M and normalize charts, splitting
    the shape if parts of it land on different charts."""
    tpoly = unipoly.upoly([0, 1])
    one = unipoly.ONE
    new_maps = [X, tpoly, one]
    A = [unipoly.ZERO, unipoly.ZERO, unipoly.ZERO]
    for i in range(3):
        acc = unipoly.ZERO
        for j in range(3):
            c = M[i, j]
            if c:
                acc = unipoly.add(acc, unipoly.scale(new_maps[j], c))
        A[i] = unipoly.rem(acc, q)
    out = []
    for piece in _split_by_chart(q, A):
        out.append(
            AlgebraicBlock(
                shape=piece[0],
                maps=piece[1],
                chart=piece[2],
                multiplicity=mult,
                irreducible=unipoly.is_irreducible(piece[0]) if unipoly.degree(piece[0]) <= 4 else False,
            )
        )
    return out


def _split_by_chart(q: UPoly, A: list[UPoly]) -> list[tuple[UPoly, tuple[UPoly, UPoly, UPoly], int]]:
    """Split the shape so that on each piece one fixed homogeneous coordinate
    is invertible, and normalize that coordinate to 1.  Preference order:
    affine chart x2, then x0, then x1."""
    pieces = []
    remaining = unipoly.monic(q)
    for chart in (2, 0, 1):
        if unipoly.degree(remaining) <= 0:
            break
        ac = unipoly.rem(A[chart], remaining)
        g = unipoly.gcd(remaining, ac) if ac else remaining  # locus where A[chart] = 0
        qq = unipoly.divexact(remaining, g) if unipoly.degree(g) > 0 else remaining
        if unipoly.degree(qq) > 0:
            inv = unipoly.invert_mod(unipoly.rem(A[chart], qq), qq)
            maps = tuple(
                unipoly.ONE if i == chart else unipoly.rem(unipoly.mul(unipoly.rem(A[i], qq), inv), qq)
                for i in range(3)
            )
            pieces.append((unipoly.monic(qq), maps, chart))
        remaining = unipoly.monic(g) if unipoly.degree(g) > 0 else unipoly.ONE
    if unipoly.degree(remaining) > 0:
        raise _BadPosition("block has no usable chart (degenerate data)")
    return pieces


# ---------------------------------------------------------------------------
# conic / line parametrization
# ---------------------------------------------------------------------------


def _normalize_param(s, t) -> tuple[Fraction, Fraction]:
    s, t = Fraction(s), Fraction(t)
    if s == 0 and t == 0:
        raise ValueError("(0:0) is not a parameter")
    if t != 0:
        return (s / t, Fraction(1))
    return (Fraction(1), Fraction(0))


def param_eq(p: tuple[Fraction, Fraction], q: tuple[Fraction, Fraction]) -> bool:
    return p[0] * q[1] - p[1] * q[0] == 0


def _cross2(p, q):
    return p[0] * q[1] - p[1] * q[0]


@dataclass(frozen=True)
class Arc:
    """Open arc of RP^1: the connected component of RP1 minus {a, b} that
    contains the witness."""

    a: tuple[Fraction, Fraction]
    b: tuple[Fraction, Fraction]
    witness: tuple[Fraction, Fraction]

    def side_of(self, p: tuple[Fraction, Fraction]) -> int:
        v = _cross2(self.a, p) * _cross2(self.b, p)
        return (v > 0) - (v < 0)

    def contains_open(self, p: tuple[Fraction, Fraction]) -> bool:
        s = self.side_of(p)
        return s != 0 and s == self.side_of(self.witness)

    def interior_rationals(self):
        """Deterministic stream of parameters in the open arc."""
        cands = []
        for p in (self.witness,):
            cands.append(p)
        av = None if self.a[1] == 0 else self.a[0]
        bv = None if self.b[1] == 0 else self.b[0]
        extra = []
        if av is not None and bv is not None:
            extra += [(av + bv) / 2, (2 * av + bv) / 3, (av + 2 * bv) / 3, av + 1, bv - 1, av - 1, bv + 1]
        base = [Fraction(k) for k in (0, 1, -1, 2, -2, 3, -3, 5, -5, 10, -10)]
        den = [Fraction(1, d) for d in (2, 3, 4, 5, 7)]
        for e in extra + base + [b + d for b in base for d in den]:
            cands.append((Fraction(e), Fraction(1)))
        cands.append((Fraction(1), Fraction(0)))
        seen = set()
        for c in cands:
            c = _normalize_param(c[0], c[1])
            if c in seen:
                continue
            seen.add(c)
            if self.contains_open(c):
                yield c


class ConicParam:
    """Stereographic projection of a smooth conic from a rational base point.

    forward maps a point on the conic to (L1 : L2) where L1, L2 are the two
    canonical linear forms vanishing at the base; at the base itself the value
    is the tangent-direction limit.  backward is its exact inverse."""

    def __init__(self, conic: Curve, base: ProjPoint):
        if classify_conic(conic).kind not in ("smooth-real-nonempty", "smooth-real-empty"):
            raise PreconditionViolation("parametrization needs a smooth conic")
        if not base.is_rational():
            raise PreconditionViolation("base point must be rational")
        if not conic.contains(base):
            raise PreconditionViolation("base point does not lie on the conic")
        self.conic = conic
        self.base = base
        self.matrix = conic_matrix(conic)
        b = base.coords
        if b[2] != 0:
            # affine base: L1 = x1 - y_b x2, L2 = -(x0 - x_b x2)
            self.l1 = (Fraction(0), b[2], -b[1])
            self.l2 = (-b[2], Fraction(0), b[0])
        elif b[0] != 0:
            self.l1 = (b[1], -b[0], Fraction(0))
            self.l2 = (Fraction(0), Fraction(0), b[0])
        else:
            self.l1 = (b[1], Fraction(0), Fraction(0))
            self.l2 = (Fraction(0), Fraction(0), b[1])

    def _l(self, coeffs, pt):
        return coeffs[0] * pt[0] + coeffs[1] * pt[1] + coeffs[2] * pt[2]

    def tangent_param(self) -> tuple[Fraction, Fraction]:
        g = self.conic.gradient(self.base)
        b = self.base.coords
        tau = (
            g[1] * b[2] - g[2] * b[1],
            g[2] * b[0] - g[0] * b[2],
            g[0] * b[1] - g[1] * b[0],
        )
        return _normalize_param(self._l(self.l1, tau), self._l(self.l2, tau))

    def forward(self, p: ProjPoint) -> tuple[Fraction, Fraction]:
        if p == self.base:
            return self.tangent_param()
        s = self._l(self.l1, p.coords)
        t = self._l(self.l2, p.coords)
        return _normalize_param(s, t)

    def forward_block_polys(self, block: AlgebraicBlock) -> tuple[UPoly, UPoly]:
        """(S(t), W(t)) with the block's parameter (S : W) mod shape."""
        q = block.shape
        S = unipoly.ZERO
        W = unipoly.ZERO
        for i in range(3):
            if self.l1[i]:
                S = unipoly.add(S, unipoly.scale(block.maps[i], self.l1[i]))
            if self.l2[i]:
                W = unipoly.add(W, unipoly.scale(block.maps[i], self.l2[i]))
        return unipoly.rem(S, q), unipoly.rem(W, q)

    def backward(self, param: tuple[Fraction, Fraction]) -> ProjPoint:
        s, t = param
        lam = tuple(t * a - s * b for a, b in zip(self.l1, self.l2))
        b = self.base.coords
        # a second point on the line lam (not the base)
        w = None
        for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
            cand = (
                lam[1] * e[2] - lam[2] * e[1],
                lam[2] * e[0] - lam[0] * e[2],
                lam[0] * e[1] - lam[1] * e[0],
            )
            if any(cand):
                pc = ProjPoint(cand)
                if pc != self.base:
                    w = pc.coords
                    break
        if w is None:
            raise ArithmeticError("degenerate parameter line")
        # conic restricted to base + u*w: h(w) u^2 + 2 B^T M w u (+ 0)
        Mw = self.matrix.apply(w)
        hw = sum(wi * mi for wi, mi in zip(w, Mw))
        bw = sum(bi * mi for bi, mi in zip(b, Mw))
        if hw == 0:
            return ProjPoint(w)
        u = -2 * bw / hw
        if u == 0:
            return ProjPoint(b)
        return ProjPoint(tuple(bi + u * wi for bi, wi in zip(b, w)))


class LineParam:
    """Parametrization of a line through two rational anchor points:
    (u : v) -> u*A + v*B."""

    def __init__(self, line: Curve, anchor_a: ProjPoint, anchor_b: ProjPoint):
        if line.degree != 1:
            raise ValueError("LineParam expects a line")
        if not (line.contains(anchor_a) and line.contains(anchor_b)):
            raise PreconditionViolation("anchors must lie on the line")
        if anchor_a == anchor_b:
            raise PreconditionViolation("anchors must be distinct")
        self.line = line
        self.a = anchor_a
        self.b = anchor_b
        # index pair for solving u*A + v*B = P
        self._rows = None
        for i, j in itertools.combinations(range(3), 2):
            det = anchor_a.coords[i] * anchor_b.coords[j] - anchor_a.coords[j] * anchor_b.coords[i]
            if det != 0:
                self._rows = (i, j, det)
                break

    def forward(self, p: ProjPoint) -> tuple[Fraction, Fraction]:
        i, j, det = self._rows
        u = (p.coords[i] * self.b.coords[j] - p.coords[j] * self.b.coords[i]) / det
        v = (self.a.coords[i] * p.coords[j] - self.a.coords[j] * p.coords[i]) / det
        return _normalize_param(u, v)

    def forward_block_polys(self, block: AlgebraicBlock) -> tuple[UPoly, UPoly]:
        i, j, det = self._rows
        pi, pj = block.maps[i], block.maps[j]
        U = unipoly.scale(
            unipoly.sub(unipoly.scale(pi, self.b.coords[j]), unipoly.scale(pj, self.b.coords[i])),
            Fraction(1) / det,
        )
        V = unipoly.scale(
            unipoly.sub(unipoly.scale(pj, self.a.coords[i]), unipoly.scale(pi, self.a.coords[j])),
            Fraction(1) / det,
        )
        q = block.shape
        return unipoly.rem(U, q), unipoly.rem(V, q)

    def backward(self, param: tuple[Fraction, Fraction]) -> ProjPoint:
        u, v = param
        return ProjPoint(tuple(u * a + v * b for a, b in zip(self.a.coords, self.b.coords)))


def parametrize_conic(conic: Curve, base: ProjPoint) -> ConicParam:
    return ConicParam(conic, base)


# ---------------------------------------------------------------------------
# local intersection multiplicity (recursive reduction over a field)
# ---------------------------------------------------------------------------


def intersection_multiplicity(f: Poly, g: Poly, p: ProjPoint) -> int:
    """Local intersection number of two curves at a point, by the classical
    recursive reduction; works at rational points and at points with
    coordinates in one extension field of degree <= 3."""
    fh = f.homogenize() if f.vars == AFF else f
    gh = g.homogenize() if g.vars == AFF else g
    # choose a chart containing the point
    chart = next(i for i in (2, 0, 1) if not _is_zero(p.coords[i]))
    order = {2: (0, 1), 0: (1, 2), 1: (0, 2)}[chart]
    inv = _inv(p.coords[chart])
    px = p.coords[order[0]] * inv
    py = p.coords[order[1]] * inv
    F = _dehom_to_bipoly(fh, chart, order)
    G = _dehom_to_bipoly(gh, chart, order)
    F = _bp_translate(F, px, py)
    G = _bp_translate(G, px, py)
    return _fulton(F, G)


def _dehom_to_bipoly(h: Poly, chart: int, order: tuple[int, int]) -> dict:
    out: dict[tuple[int, int], Coord] = {}
    for e, c in h.terms.items():
        key = (e[order[0]], e[order[1]])
        out[key] = out.get(key, Fraction(0)) + c
    return {k: v for k, v in out.items() if not _is_zero(v)}


def _bp_translate(F: dict, px, py) -> dict:
    """Substitute x -> x + px, y -> y + py."""
    from math import comb

    out: dict[tuple[int, int], Coord] = {}
    for (i, j), c in F.items():
        for a in range(i + 1):
            pxp = _pow(px, i - a)
            for b in range(j + 1):
                coef = c * comb(i, a) * comb(j, b) * pxp * _pow(py, j - b)
                if not _is_zero(coef):
                    out[(a, b)] = out.get((a, b), Fraction(0)) + coef
    return {k: v for k, v in out.items() if not _is_zero(v)}


def _pow(v, n: int):
    r = Fraction(1)
    for _ in range(n):
        r = r * v
    return r


def _bp_eval00(F: dict):
    return F.get((0, 0), Fraction(0))


def _bp_restrict_y0(F: dict) -> dict[int, Coord]:
    return {i: c for (i, j), c in F.items() if j == 0}


def _bp_div_y(F: dict) -> dict:
    if any(j == 0 for (_, j) in F):
        raise ValueError("not divisible by y")
    return {(i, j - 1): c for (i, j), c in F.items()}


def _bp_is_zero(F: dict) -> bool:
    return not F


def _bp_scale(F: dict, c) -> dict:
    return {k: v * c for k, v in F.items() if not _is_zero(v * c)}


def _bp_sub(F: dict, G: dict) -> dict:
    out = dict(F)
    for k, v in G.items():
        nv = out.get(k, Fraction(0)) - v
        if _is_zero(nv):
            out.pop(k, None)
        else:
            out[k] = nv
    return out


def _bp_shift_x(F: dict, k: int) -> dict:
    return {(i + k, j): c for (i, j), c in F.items()}


def _fulton(F: dict, G: dict, depth: int = 0) -> int:
    if depth > 512:
        raise InfiniteMultiplicityError("reduction did not terminate (common component?)")
    if _bp_is_zero(F) or _bp_is_zero(G):
        raise InfiniteMultiplicityError("curve vanishes identically (common component)")
    if not _is_zero(_bp_eval00(F)) or not _is_zero(_bp_eval00(G)):
        return 0
    f0 = _bp_restrict_y0(F)
    g0 = _bp_restrict_y0(G)
    if not f0 and not g0:
        raise InfiniteMultiplicityError("both curves contain the line y = 0 locally")
    if not f0:
        H = _bp_div_y(F)
        ordg = min(i for i in g0) if g0 else None
        return ordg + _fulton(H, G, depth + 1)
    if not g0:
        return _fulton(G, F, depth + 1)
    # both restrictions nonzero: kill the leading x-term of the larger one
    df = max(f0)
    dg = max(g0)
    if df > dg:
        return _fulton(G, F, depth + 1)
    Gn = _bp_sub(_bp_scale(G, f0[df]), _bp_shift_x(_bp_scale(F, g0[dg]), dg - df))
    return _fulton(F, Gn, depth + 1)
