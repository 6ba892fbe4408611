"""Dense univariate polynomials over the rationals.

A polynomial is a tuple of Fractions in ascending degree order with no trailing
zeros; () is the zero polynomial.  This is the shared substrate for Sturm
sequences, extension-field arithmetic and shape polynomials of algebraic
points.  Everything here is exact.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Iterable, Optional

UPoly = tuple[Fraction, ...]


def upoly(coeffs: Iterable) -> UPoly:
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


ZERO: UPoly = ()
ONE: UPoly = (Fraction(1),)


def degree(p: UPoly) -> int:
    """Degree, with deg 0 = -1 by convention."""
    return len(p) - 1


def is_zero(p: UPoly) -> bool:
    return not p


def lc(p: UPoly) -> Fraction:
    if not p:
        raise ValueError("zero polynomial has no leading coefficient")
    return p[-1]


def add(p: UPoly, q: UPoly) -> UPoly:
    n = max(len(p), len(q))
    return upoly([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def neg(p: UPoly) -> UPoly:
    return tuple(-c for c in p)


def sub(p: UPoly, q: UPoly) -> UPoly:
    return add(p, neg(q))


def mul(p: UPoly, q: UPoly) -> UPoly:
    if not p or not q:
        return ZERO
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return upoly(out)


def scale(p: UPoly, c) -> UPoly:
    c = Fraction(c)
    if c == 0:
        return ZERO
    return tuple(a * c for a in p)


def shift_deg(p: UPoly, k: int) -> UPoly:
    """Multiply by t^k."""
    if not p:
        return ZERO
    return (Fraction(0),) * k + p


def divmod_poly(p: UPoly, q: UPoly) -> tuple[UPoly, UPoly]:
    if not q:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(p)
    d = degree(q)
    qlc = lc(q)
    out = [Fraction(0)] * max(0, len(p) - d)
    while len(r) - 1 >= d and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < d:
            break
        k = len(r) - 1 - d
        c = r[-1] / qlc
        out[k] = c
        for i, b in enumerate(q):
            r[k + i] -= c * b
        r.pop()
    return upoly(out), upoly(r)


def rem(p: UPoly, q: UPoly) -> UPoly:
    return divmod_poly(p, q)[1]


def quo(p: UPoly, q: UPoly) -> UPoly:
    return divmod_poly(p, q)[0]


def divexact(p: UPoly, q: UPoly) -> UPoly:
    qq, rr = divmod_poly(p, q)
    if rr:
        raise ValueError("non-exact univariate division")
    return qq


def monic(p: UPoly) -> UPoly:
    if not p:
        return ZERO
    return scale(p, 1 / lc(p))


def gcd(p: UPoly, q: UPoly) -> UPoly:
    """Monic gcd over the rationals."""
    a, b = p, q
    while b:
        a, b = b, rem(a, b)
        b = monic(b) if b else b
    return monic(a)


def xgcd(p: UPoly, q: UPoly) -> tuple[UPoly, UPoly, UPoly]:
    """Extended gcd: returns (g, u, v) with u*p + v*q = g, g monic (or zero)."""
    r0, r1 = p, q
    s0, s1 = ONE, ZERO
    t0, t1 = ZERO, ONE
    while r1:
        qq, rr = divmod_poly(r0, r1)
        r0, r1 = r1, rr
        s0, s1 = s1, sub(s0, mul(qq, s1))
        t0, t1 = t1, sub(t0, mul(qq, t1))
    if r0:
        c = lc(r0)
        r0, s0, t0 = monic(r0), scale(s0, 1 / c), scale(t0, 1 / c)
    return r0, s0, t0


def invert_mod(p: UPoly, modulus: UPoly) -> UPoly:
    """Inverse of p modulo `modulus`; raises if not coprime."""
    g, u, _ = xgcd(p, modulus)
    if degree(g) != 0:
        raise ValueError("element not invertible modulo the given polynomial")
    return rem(scale(u, 1 / g[0]), modulus)


def evaluate(p: UPoly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: UPoly) -> UPoly:
    return upoly([i * c for i, c in enumerate(p)][1:])


def compose(p: UPoly, q: UPoly) -> UPoly:
    """p(q(t))."""
    acc: UPoly = ZERO
    for c in reversed(p):
        acc = add(mul(acc, q), upoly([c]))
    return acc


def content_int(p: UPoly) -> Fraction:
    """Positive rational c with p/c integer-primitive."""
    if not p:
        return Fraction(1)
    num = 0
    den = 1
    for c in p:
        num = math.gcd(num, c.numerator)
        den = den * c.denominator // math.gcd(den, c.denominator)
    return Fraction(num, den)


def primitive(p: UPoly) -> UPoly:
    """Integer-primitive part with positive leading coefficient."""
    if not p:
        return ZERO
    q = scale(p, 1 / content_int(p))
    if lc(q) < 0:
        q = neg(q)
    return q


def squarefree_part(p: UPoly) -> UPoly:
    if degree(p) <= 0:
        return monic(p) if p else ZERO
    return monic(divexact(p, gcd(p, derivative(p))))


def squarefree_decomposition(p: UPoly) -> list[tuple[UPoly, int]]:
    """Yun's algorithm: returns [(s_i, m_i)] with p = lc * prod s_i^{m_i}, s_i monic
    squarefree pairwise coprime, deg s_i > 0."""
    if degree(p) <= 0:
        return []
    p = monic(p)
    dp = derivative(p)
    a = gcd(p, dp)
    b = divexact(p, a)
    c = sub(divexact(dp, a), derivative(b))
    out = []
    m = 1
    while degree(b) > 0:
        d = gcd(b, c)
        if degree(d) > 0:
            out.append((d, m))
        b2 = divexact(b, d)
        c = sub(divexact(c, d), derivative(b2))
        b = b2
        m += 1
    return out


# ---------------------------------------------------------------------------
# Rational root finding, certified for arbitrarily large coefficients.
#
# Strategy: reduce to an integer-primitive polynomial, compute root bounds
# (numerator divides a0's contribution, denominator divides lc), pick a prime
# product exceeding twice the bound product, find roots modulo each prime with
# Cantor-Zassenhaus splitting, and lift by CRT + rational reconstruction.  Any
# rational root reduces to a root modulo every good prime and is recovered
# uniquely by the reconstruction, so exhausting the modular candidates is a
# certificate of completeness.
# ---------------------------------------------------------------------------

_PRIMES64 = [
    2305843009213693951,  # 2^61 - 1
    2305843009213693921,
    2305843009213693907,
    2305843009213693723,
    2305843009213693693,
    2305843009213693669,
]


def _poly_mod_p(p: UPoly, q: int) -> list[int]:
    out = []
    for c in p:
        if c.denominator % q == 0:
            raise ZeroDivisionError
        out.append(c.numerator * pow(c.denominator, -1, q) % q)
    while out and out[-1] == 0:
        out.pop()
    return out


def _mod_rem(a: list[int], b: list[int], q: int) -> list[int]:
    a = a[:]
    inv = pow(b[-1], -1, q)
    while len(a) >= len(b):
        c = a[-1] * inv % q
        k = len(a) - len(b)
        for i, bc in enumerate(b):
            a[k + i] = (a[k + i] - c * bc) % q
        while a and a[-1] == 0:
            a.pop()
        if not a:
            break
    return a


def _mod_gcd(a: list[int], b: list[int], q: int) -> list[int]:
    while b:
        a, b = b, _mod_rem(a, b, q)
    if a:
        inv = pow(a[-1], -1, q)
        a = [c * inv % q for c in a]
    return a


def _mod_mulmod(a: list[int], b: list[int], f: list[int], q: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % q
    while out and out[-1] == 0:
        out.pop()
    return _mod_rem(out, f, q) if len(out) >= len(f) else out


def _mod_powmod(base: list[int], e: int, f: list[int], q: int) -> list[int]:
    result = [1]
    b = _mod_rem(base[:], f, q) if len(base) >= len(f) else base[:]
    while e:
        if e & 1:
            result = _mod_mulmod(result, b, f, q)
        b = _mod_mulmod(b, b, f, q)
        e >>= 1
    return result


def _mod_quo(a: list[int], b: list[int], q: int) -> list[int]:
    a = a[:]
    out = [0] * (len(a) - len(b) + 1)
    inv = pow(b[-1], -1, q)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % q
        k = len(a) - len(b)
        out[k] = c
        for i, bc in enumerate(b):
            a[k + i] = (a[k + i] - c * bc) % q
        while a and a[-1] == 0:
            a.pop()
    return out


def _roots_mod_p(p: UPoly, q: int, rng: random.Random) -> Optional[list[int]]:
    """All roots of p in F_q, or None if the prime is unusable."""
    try:
        f = _poly_mod_p(p, q)
    except ZeroDivisionError:
        return None
    if not f or len(f) - 1 != degree(p):
        return None  # leading coefficient vanished mod q
    inv = pow(f[-1], -1, q)
    f = [c * inv % q for c in f]
    # linear-factor part: gcd(x^q - x, f)
    xq = _mod_powmod([0, 1], q, f, q)
    lin = _mod_gcd(f, sub_mod(xq, [0, 1], q), q)
    roots: list[int] = []

    def split(g: list[int]) -> None:
        d = len(g) - 1
        if d == 0:
            return
        if d == 1:
            roots.append(-g[0] * pow(g[1], -1, q) % q)
            return
        while True:
            a = rng.randrange(q)
            h = _mod_powmod([a, 1], (q - 1) // 2, g, q)
            h = sub_mod(h, [1], q)
            d1 = _mod_gcd(g, h, q)
            if 0 < len(d1) - 1 < d:
                split(d1)
                split(_mod_quo(g, d1, q))
                return

    if lin:
        split(lin)
    return sorted(roots)


def sub_mod(a: list[int], b: list[int], q: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % q for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def _rational_reconstruct(r: int, m: int, nbound: int, dbound: int) -> Optional[Fraction]:
    """Unique n/d with n = d*r mod m, |n| <= nbound, 0 < d <= dbound, if it exists."""
    r0, r1 = m, r % m
    s0, s1 = 0, 1
    while r1 > nbound:
        qq = r0 // r1
        r0, r1 = r1, r0 - qq * r1
        s0, s1 = s1, s0 - qq * s1
    d = abs(s1)
    if d == 0 or d > dbound:
        return None
    n = r1 if s1 > 0 else -r1
    if math.gcd(abs(n), d) != 1:
        return None
    return Fraction(n, d)


def rational_roots(p: UPoly) -> list[Fraction]:
    """All rational roots (without multiplicity), certified complete."""
    if degree(p) <= 0:
        return []
    p = primitive(p)
    # strip t = 0 root
    roots: list[Fraction] = []
    nz = 0
    while nz < len(p) and p[nz] == 0:
        nz += 1
    if nz:
        roots.append(Fraction(0))
        p = p[nz:]
    if degree(p) == 0:
        return roots
    if degree(p) == 1:
        roots.append(-p[0] / p[1])
        return sorted(set(roots))
    a0 = abs(int(p[0]))
    an = abs(int(lc(p)))
    # any rational root n/d has |n| <= |a0|, d <= |an|
    nbound, dbound = a0, an
    rng = random.Random(0x5EED)
    primes = []
    mprod = 1
    for q in _PRIMES64:
        primes.append(q)
        mprod *= q
        if mprod > 2 * max(1, nbound) * max(1, dbound):
            break
    per_prime: list[tuple[int, list[int]]] = []
    for q in primes:
        rt = _roots_mod_p(p, q, rng)
        if rt is None:
            continue
        per_prime.append((q, rt))
        if not rt:
            return sorted(set(roots))  # no roots mod a good prime: none over Q
    if not per_prime:
        raise ArithmeticError("no usable primes for rational root search")
    # recombine: CRT over all primes actually used
    m = 1
    residue_sets: list[list[int]] = [[]]
    for q, rts in per_prime:
        new: list[list[int]] = []
        for combo in residue_sets:
            for r in rts:
                new.append(combo + [r])
        residue_sets = new
        m *= q
        if len(residue_sets) > 4096:
            break  # more combos than can be real roots; bail to direct CRT on fewer primes
    used = per_prime[: len(residue_sets[0])] if residue_sets and residue_sets[0] else per_prime
    m = 1
    for q, _ in used:
        m *= q
    for combo in residue_sets:
        r = 0
        mm = 1
        for (q, _), rq in zip(used, combo):
            # CRT merge
            inv = pow(mm % q, -1, q)
            r = r + mm * ((rq - r) % q * inv % q)
            mm *= q
        cand = _rational_reconstruct(r % mm, mm, nbound, dbound)
        if cand is not None and evaluate(p, cand) == 0:
            roots.append(cand)
    return sorted(set(roots))


def is_square_fraction(x: Fraction) -> Optional[Fraction]:
    """sqrt(x) if x is a square of a rational, else None."""
    if x < 0:
        return None
    ns = math.isqrt(x.numerator)
    ds = math.isqrt(x.denominator)
    if ns * ns == x.numerator and ds * ds == x.denominator:
        return Fraction(ns, ds)
    return None


def _irreducible_mod_p_certificate(p: UPoly, tries: int = 12) -> bool:
    """True if p is certified irreducible via an irreducible reduction mod some prime."""
    d = degree(p)
    rng = random.Random(0xC0FFEE)
    small = [101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157]
    for q in small[:tries]:
        try:
            f = _poly_mod_p(p, q)
        except ZeroDivisionError:
            continue
        if len(f) - 1 != d:
            continue
        inv = pow(f[-1], -1, q)
        f = [c * inv % q for c in f]
        # irreducible over F_q iff gcd(x^{q^k} - x, f) = 1 for k <= d/2
        ok = True
        xp = _mod_powmod([0, 1], q, f, q)
        cur = xp
        for k in range(1, d // 2 + 1):
            g = _mod_gcd(f, sub_mod(cur, [0, 1], q), q)
            if len(g) - 1 != 0:
                ok = False
                break
            # next Frobenius power via composition x^{q^{k+1}} = (x^{q^k}) o (x^q)
            cur = _compose_mod(cur, xp, f, q)
        if ok:
            return True
    return False


def _compose_mod(a: list[int], b: list[int], f: list[int], q: int) -> list[int]:
    """a(b(x)) mod (f, q)."""
    acc: list[int] = []
    for c in reversed(a):
        acc = _mod_mulmod(acc, b, f, q)
        if c % q:
            if acc:
                acc[0] = (acc[0] + c) % q
                while acc and acc[-1] == 0:
                    acc.pop()
            else:
                acc = [c % q]
    return acc


def factor_squarefree(p: UPoly) -> list[UPoly]:
    """Factor a squarefree polynomial of degree <= 4 into monic irreducibles.

    Degrees beyond 4 are out of scope and raise.  Factorization is exact and
    complete: rational linear factors via the certified root search, quartics
    additionally via the resolvent cubic for quadratic-pair splits.
    """
    d = degree(p)
    if d <= 0:
        return []
    p = monic(p)
    if d == 1:
        return [p]
    if d > 4:
        raise ValueError("factorization beyond degree 4 is unsupported")
    factors: list[UPoly] = []
    rest = p
    for r in rational_roots(p):
        lin = upoly([-r, Fraction(1)])
        while True:
            qq, rr = divmod_poly(rest, lin)
            if rr:
                break
            factors.append(lin)
            rest = qq
    d = degree(rest)
    if d <= 0:
        return sorted(factors)
    if d == 1:
        factors.append(monic(rest))
        return sorted(factors)
    if d == 2:
        factors.append(rest)  # no rational roots: irreducible quadratic
        return sorted(factors)
    if d == 3:
        factors.append(rest)  # cubic without rational roots is irreducible
        return sorted(factors)
    # quartic without rational roots: either irreducible or two quadratics
    split = _split_quartic(rest)
    if split is None:
        factors.append(rest)
    else:
        factors.extend(split)
    return sorted(factors)


def _split_quartic(p: UPoly) -> Optional[list[UPoly]]:
    """Split a monic rational-root-free quartic into two monic quadratics over Q, or None."""
    a3, a2, a1, a0 = p[3], p[2], p[1], p[0]
    # depress: t = s - a3/4
    sft = upoly([-a3 / 4, Fraction(1)])
    dep = compose(p, sft)
    P, Q, R = dep[2], dep[1], dep[0]
    # (s^2+es+f)(s^2-es+g): f+g-e^2=P, e(g-f)=Q, fg=R
    # e^2 is a rational root z of z^3+2P z^2+(P^2-4R)z - Q^2
    resolvent = upoly([-Q * Q, P * P - 4 * R, 2 * P, Fraction(1)])
    for z in rational_roots(resolvent):
        if z < 0:
            continue
        e = is_square_fraction(z)
        if e is None:
            continue
        if e == 0:
            # s^4+Ps^2+R = (s^2+f)(s^2+g): needs Q == 0 and P^2-4R square
            if Q != 0:
                continue
            sq = is_square_fraction(P * P - 4 * R)
            if sq is None:
                continue
            f = (P - sq) / 2
            g = (P + sq) / 2
        else:
            gmf = Q / e
            gpf = P + z
            g = (gpf + gmf) / 2
            f = (gpf - gmf) / 2
            if f * g != R:
                continue
        q1 = compose(upoly([f, e, Fraction(1)]), upoly([a3 / 4, Fraction(1)]))
        q2 = compose(upoly([g, -e, Fraction(1)]), upoly([a3 / 4, Fraction(1)]))
        if mul(q1, q2) == p:
            return [monic(q1), monic(q2)]
    return None


def is_irreducible(p: UPoly) -> bool:
    """Exact irreducibility decision for squarefree p of degree <= 4."""
    d = degree(p)
    if d <= 0:
        return False
    if d == 1:
        return True
    if _irreducible_mod_p_certificate(p):
        return True
    fs = factor_squarefree(p)
    return len(fs) == 1 and degree(fs[0]) == d
