"""Random nodal 3-conic polycons with rational residual data.

Recipe: choose rational vertices, designated rational residual points and one
interpolation point per conic, then take each boundary conic as the unique
conic through its five assigned points.  This guarantees one rational
residual point per pair, keeping all golden checks exact.  Candidates that
fail validation, nodality or smoothness are discarded and retried.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .linalg import Matrix, nullspace
from .plane import Curve, ProjPoint, classify_conic
from .poly import PROJ, Poly
from .polycon import Polycon, validate
from .adjoint import monomials_of_degree


def conic_through(points) -> Optional[Curve]:
    """The unique conic through five points, or None if they are degenerate."""
    monos = monomials_of_degree(2)
    rows = []
    for p in points:
        x, y = Fraction(p[0]), Fraction(p[1])
        rows.append([x**a * y**b for (a, b, _) in monos])
    ker = nullspace(Matrix(rows))
    if len(ker) != 1:
        return None
    poly = Poly(PROJ, {e: c for e, c in zip(monos, ker[0])}).normalized()
    if poly.total_degree() != 2:
        return None
    return Curve(poly)


def random_nodal_polycon(
    seed: int,
    max_tries: int = 400,
    require_regular: bool = False,
    require_reducible: bool = False,
    coord_range: int = 8,
) -> Optional[Polycon]:
    """A nodal 3-conic polycon with rational vertices and one rational
    residual point per pair.  `require_reducible` additionally demands that
    replacing any conic with its vertex chord yields a valid nodal polycon
    (in particular, non-collinear vertices); `require_regular` retries until
    the regularity checker certifies the instance."""
    from .polycon import check_regularity, reduce_component

    rng = random.Random(seed)
    for _ in range(max_tries):
        pts = set()
        while len(pts) < 9:
            pts.add(
                (
                    Fraction(rng.randint(-coord_range, coord_range), rng.choice((1, 1, 2))),
                    Fraction(rng.randint(-coord_range, coord_range), rng.choice((1, 1, 2))),
                )
            )
        v12, v23, v31, r12, r23, r31, p1, p2, p3 = sorted(pts)[:9]
        c1 = conic_through([v31, v12, r31, r12, p1])
        c2 = conic_through([v12, v23, r12, r23, p2])
        c3 = conic_through([v23, v31, r23, r31, p3])
        if not (c1 and c2 and c3):
            continue
        if any(
            classify_conic(c).kind != "smooth-real-nonempty" for c in (c1, c2, c3)
        ):
            continue
        poly = Polycon(
            (c1, c2, c3),
            (
                ProjPoint.affine(*v12),
                ProjPoint.affine(*v23),
                ProjPoint.affine(*v31),
            ),
        )
        rep = validate(poly)
        if not (rep.valid and rep.nodal):
            continue
        if require_reducible:
            try:
                bad = False
                for i in range(3):
                    red = validate(reduce_component(poly, i))
                    if not (red.valid and red.nodal):
                        bad = True
                        break
                if bad:
                    continue
            except Exception:
                continue
        if require_regular:
            reg = check_regularity(poly, validation=rep)
            if reg.verdict != "regular":
                continue
        return poly
    return None


def polycon_stream(start_seed: int, count: int, **kw):
    """Deterministic stream of generated polycons (seeds start_seed, ...)."""
    out = []
    seed = start_seed
    while len(out) < count:
        p = random_nodal_polycon(seed, **kw)
        if p is not None:
            out.append((seed, p))
        seed += 1
    return out
