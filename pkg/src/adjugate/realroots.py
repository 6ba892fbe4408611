"""Certified real-root machinery: Sturm sequences, isolation, algebraic signs.

All decisions are exact.  An algebraic number is carried as (squarefree shape
polynomial, isolating rational interval]; signs of polynomial expressions at
such numbers are decided by gcd tests plus interval refinement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import unipoly
from .unipoly import UPoly


def sturm_sequence(p: UPoly) -> list[UPoly]:
    """Sturm sequence of the squarefree part of p."""
    p = unipoly.squarefree_part(p)
    seq = [p, unipoly.derivative(p)]
    while seq[-1] and unipoly.degree(seq[-1]) > 0:
        r = unipoly.rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append(unipoly.neg(r))
    if not seq[-1]:
        seq.pop()
    return seq


def _sign_changes(vals: list[Fraction]) -> int:
    signs = [1 if v > 0 else -1 for v in vals if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_at_inf(p: UPoly, positive: bool) -> Fraction:
    if not p:
        return Fraction(0)
    c = unipoly.lc(p)
    if positive or unipoly.degree(p) % 2 == 0:
        return c
    return -c


def count_real_roots(p: UPoly, lo: Optional[Fraction] = None, hi: Optional[Fraction] = None) -> int:
    """Number of distinct real roots in (lo, hi]; None bounds mean +-infinity."""
    seq = sturm_sequence(p)
    if len(seq) == 1 and unipoly.degree(seq[0]) <= 0:
        return 0
    lo_vals = [
        unipoly.evaluate(q, lo) if lo is not None else _sign_at_inf(q, positive=False)
        for q in seq
    ]
    hi_vals = [
        unipoly.evaluate(q, hi) if hi is not None else _sign_at_inf(q, positive=True)
        for q in seq
    ]
    return _sign_changes(lo_vals) - _sign_changes(hi_vals)


def root_bound(p: UPoly) -> Fraction:
    """Cauchy bound: all real roots lie in (-B, B)."""
    if unipoly.degree(p) < 1:
        return Fraction(1)
    an = abs(unipoly.lc(p))
    return 1 + max(abs(c) / an for c in p[:-1]) if len(p) > 1 else Fraction(1)


@dataclass(frozen=True)
class RealRoot:
    """A real root of a squarefree polynomial, isolated in (lo, hi]."""

    shape: UPoly
    lo: Fraction
    hi: Fraction

    def refine(self, times: int = 1) -> "RealRoot":
        lo, hi = self.lo, self.hi
        for _ in range(times):
            mid = (lo + hi) / 2
            if unipoly.evaluate(self.shape, mid) == 0:
                # nudge the bracket so the root stays in the open-closed interval
                q = (mid + hi) / 2
                lo, hi = (mid + lo) / 2, mid
                if count_real_roots(self.shape, lo, hi) != 1:
                    lo, hi = mid, q
                continue
            if count_real_roots(self.shape, lo, mid) == 1:
                hi = mid
            else:
                lo = mid
        return RealRoot(self.shape, lo, hi)

    def as_fraction(self) -> Optional[Fraction]:
        """Exact value if the root is rational (shape has a linear factor here)."""
        if unipoly.degree(self.shape) == 1:
            return -self.shape[0] / self.shape[1]
        return None


def isolate_real_roots(p: UPoly) -> list[RealRoot]:
    """Disjoint isolating intervals for all distinct real roots, in increasing order."""
    p = unipoly.squarefree_part(p)
    if unipoly.degree(p) < 1:
        return []
    b = root_bound(p)
    out: list[RealRoot] = []

    def recurse(lo: Fraction, hi: Fraction, n: int) -> None:
        if n == 0:
            return
        if n == 1:
            out.append(RealRoot(p, lo, hi))
            return
        mid = (lo + hi) / 2
        if unipoly.evaluate(p, mid) == 0:
            eps = (hi - lo) / 64
            while unipoly.evaluate(p, mid - eps) == 0 or count_real_roots(p, mid - eps, mid) != 1:
                eps /= 2
            recurse(lo, mid - eps, count_real_roots(p, lo, mid - eps))
            out.append(RealRoot(p, mid - eps, mid))
            recurse(mid, hi, count_real_roots(p, mid, hi))
            return
        nl = count_real_roots(p, lo, mid)
        recurse(lo, mid, nl)
        recurse(mid, hi, n - nl)

    total = count_real_roots(p, -b, b)
    recurse(-b, b, total)
    return out


def sign_at(expr: UPoly, root: RealRoot) -> int:
    """Exact sign of expr(theta) for theta the isolated root. 0 iff it vanishes."""
    q = unipoly.squarefree_part(root.shape)
    r = unipoly.rem(expr, q)
    if not r:
        return 0
    g = unipoly.gcd(r, q)
    if unipoly.degree(g) > 0 and count_real_roots(g, root.lo, root.hi) > 0:
        # theta is a root of g, hence of expr
        return 0
    cur = root
    for _ in range(256):
        s = _interval_sign(r, cur.lo, cur.hi)
        if s is not None:
            return s
        cur = cur.refine()
    raise ArithmeticError("interval refinement failed to separate sign")


def _interval_sign(p: UPoly, lo: Fraction, hi: Fraction) -> Optional[int]:
    """Sign of p on [lo, hi] by exact interval arithmetic, None if undetermined."""
    lo_v, hi_v = _interval_eval(p, lo, hi)
    if lo_v > 0:
        return 1
    if hi_v < 0:
        return -1
    return None


def _interval_eval(p: UPoly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Exact interval Horner evaluation of p over [lo, hi]."""
    alo, ahi = Fraction(0), Fraction(0)
    for c in reversed(p):
        # interval multiply by [lo, hi]
        cands = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(cands) + c, max(cands) + c
    return alo, ahi


def sign_of_fraction_at(num: UPoly, den: UPoly, root: RealRoot) -> tuple[int, int]:
    """(sign num(theta), sign den(theta))."""
    return sign_at(num, root), sign_at(den, root)
