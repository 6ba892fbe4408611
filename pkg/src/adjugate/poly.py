"""Sparse multivariate polynomials over the rationals.

The whole pipeline funnels through this type: boundary conics, adjoints,
matrix entries, elimination.  Coefficients are Fractions, exponent vectors are
tuples matching an ordered variable tuple of length <= 3.  Globally fixed
variable systems: ("x0","x1","x2") projective, ("x","y") affine chart x2 = 1,
("t",) univariate.  Instances are immutable.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from . import unipoly
from .errors import DegenerateEliminationError, DivisibilityError, InputParseError
from .unipoly import UPoly

PROJ = ("x0", "x1", "x2")
AFF = ("x", "y")
UNI = ("t",)

Exp = tuple[int, ...]


class Poly:
    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exp, Fraction]):
        vs = tuple(variables)
        if len(vs) > 3:
            raise ValueError("at most three variables are supported")
        cleaned: dict[Exp, Fraction] = {}
        for e, c in terms.items():
            c = Fraction(c)
            if c:
                e = tuple(int(k) for k in e)
                if len(e) != len(vs):
                    raise ValueError("exponent arity does not match variables")
                cleaned[e] = cleaned.get(e, Fraction(0)) + c
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "terms", {e: c for e, c in cleaned.items() if c})

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "Poly":
        return cls(variables, {})

    @classmethod
    def const(cls, variables: Sequence[str], c) -> "Poly":
        return cls(variables, {(0,) * len(tuple(variables)): Fraction(c)})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "Poly":
        vs = tuple(variables)
        e = [0] * len(vs)
        e[vs.index(name)] = 1
        return cls(vs, {tuple(e): Fraction(1)})

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        if not self.terms:
            return -1
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.vars, other)
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, Fraction(0)) + c
        return Poly(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Poly(self.vars, {e: v * c for e, v in self.terms.items()})
        self._check(other)
        out: dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Poly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = Poly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return divexact(self, other)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- structure ----------------------------------------------------------

    def leading_grlex(self) -> tuple[Exp, Fraction]:
        """Leading (exponent, coefficient) in graded lexicographic order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=lambda e: (sum(e), e))
        return e, self.terms[e]

    def coefficient(self, exponents: Exp) -> Fraction:
        return self.terms.get(tuple(exponents), Fraction(0))

    def content(self) -> Fraction:
        """Positive rational c such that self/c has coprime integer coefficients."""
        if not self.terms:
            return Fraction(1)
        num = 0
        den = 1
        for c in self.terms.values():
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def normalized(self) -> "Poly":
        """Scale to coprime integer coefficients with positive leading grlex coefficient."""
        if not self.terms:
            return self
        q = self * (1 / self.content())
        if q.leading_grlex()[1] < 0:
            q = -q
        return q

    # -- calculus / maps ----------------------------------------------------

    def derivative(self, name: str) -> "Poly":
        i = self.vars.index(name)
        out: dict[Exp, Fraction] = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = out.get(tuple(e2), Fraction(0)) + c * e[i]
        return Poly(self.vars, out)

    def evaluate(self, values: Sequence):
        """Evaluate at a point; works for Fractions and any commutative ring
        elements supporting + and * with Fractions."""
        if len(values) != len(self.vars):
            raise ValueError("wrong number of coordinates")
        total = None
        for e, c in sorted(self.terms.items()):
            term = c
            for v, k in zip(values, e):
                for _ in range(k):
                    term = term * v
            total = term if total is None else total + term
        return Fraction(0) if total is None else total

    def substitute(self, name: str, replacement: "Poly") -> "Poly":
        """Substitute a polynomial (same variable system) for one variable."""
        if replacement.vars != self.vars:
            raise ValueError("substitution must stay in one variable system")
        i = self.vars.index(name)
        # Horner in variable i
        by_deg: dict[int, dict[Exp, Fraction]] = {}
        for e, c in self.terms.items():
            e2 = list(e)
            k = e2[i]
            e2[i] = 0
            by_deg.setdefault(k, {})[tuple(e2)] = c
        result = Poly.zero(self.vars)
        for k in range(max(by_deg, default=0), -1, -1):
            result = result * replacement + Poly(self.vars, by_deg.get(k, {}))
        return result

    def linear_change(self, matrix: Sequence[Sequence]) -> "Poly":
        """Compose with the linear substitution x_i -> sum_j M[i][j] * x_j'."""
        n = len(self.vars)
        forms = []
        for i in range(n):
            t: dict[Exp, Fraction] = {}
            for j in range(n):
                c = Fraction(matrix[i][j])
                if c:
                    e = [0] * n
                    e[j] = 1
                    t[tuple(e)] = c
            forms.append(Poly(self.vars, t))
        result = Poly.zero(self.vars)
        for e, c in self.terms.items():
            term = Poly.const(self.vars, c)
            for i, k in enumerate(e):
                for _ in range(k):
                    term = term * forms[i]
            result = result + term
        return result

    def homogenize(self) -> "Poly":
        """Affine (x,y) -> projective (x0,x1,x2) with x2 the homogenizing variable."""
        if self.vars == PROJ:
            if not self.is_homogeneous():
                raise ValueError("projective polynomial is not homogeneous")
            return self
        if self.vars != AFF:
            raise ValueError("homogenize expects the affine chart (x, y)")
        d = max(self.total_degree(), 0)
        out = {}
        for (i, j), c in self.terms.items():
            out[(i, j, d - i - j)] = c
        return Poly(PROJ, out)

    def dehomogenize(self) -> "Poly":
        """Projective (x0,x1,x2) -> affine chart x2 = 1."""
        if self.vars == AFF:
            return self
        if self.vars != PROJ:
            raise ValueError("dehomogenize expects projective coordinates")
        out: dict[Exp, Fraction] = {}
        for (i, j, _k), c in self.terms.items():
            out[(i, j)] = out.get((i, j), Fraction(0)) + c
        return Poly(AFF, out)

    # -- univariate views ---------------------------------------------------

    def coeffs_in(self, name: str) -> list["Poly"]:
        """Coefficients (ascending) as polynomials in the remaining variables,
        still expressed in the full variable system."""
        i = self.vars.index(name)
        d = self.degree_in(name)
        out = [dict() for _ in range(max(d, 0) + 1)]
        for e, c in self.terms.items():
            e2 = list(e)
            k = e2[i]
            e2[i] = 0
            out[k][tuple(e2)] = c
        return [Poly(self.vars, t) for t in out]

    def to_unipoly(self) -> UPoly:
        """A polynomial that uses at most one variable, as a dense coefficient list."""
        used = [i for i in range(len(self.vars)) if any(e[i] for e in self.terms)]
        if len(used) > 1:
            raise ValueError("polynomial is not univariate")
        if not used:
            return unipoly.upoly([self.constant_value()] if self.terms else [])
        i = used[0]
        d = max(e[i] for e in self.terms)
        cs = [Fraction(0)] * (d + 1)
        for e, c in self.terms.items():
            cs[e[i]] = c
        return unipoly.upoly(cs)

    @classmethod
    def from_unipoly(cls, p: UPoly, variables: Sequence[str], name: str) -> "Poly":
        vs = tuple(variables)
        i = vs.index(name)
        out = {}
        for k, c in enumerate(p):
            e = [0] * len(vs)
            e[i] = k
            out[tuple(e)] = c
        return cls(vs, out)

    # -- misc ---------------------------------------------------------------

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


# ---------------------------------------------------------------------------
# division, reduction, gcd
# ---------------------------------------------------------------------------


def divexact(f: Poly, g: Poly) -> Poly:
    """Exact quotient f/g; raises DivisibilityError if g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if g.is_constant():
        return f * (1 / g.constant_value())
    f._check(g)
    rem = f
    out: dict[Exp, Fraction] = {}
    ge, gc = g.leading_grlex()
    while not rem.is_zero():
        re, rc = rem.leading_grlex()
        qe = tuple(a - b for a, b in zip(re, ge))
        if any(k < 0 for k in qe):
            raise DivisibilityError(f"{format_poly(g)} does not divide exactly")
        qc = rc / gc
        out[qe] = out.get(qe, Fraction(0)) + qc
        rem = rem - Poly(f.vars, {qe: qc}) * g
    return Poly(f.vars, out)


def divides(g: Poly, f: Poly) -> bool:
    try:
        divexact(f, g)
        return True
    except DivisibilityError:
        return False


def normal_form(p: Poly, f: Poly) -> Poly:
    """Canonical remainder of p modulo the principal ideal (f), graded-lex."""
    if f.is_zero():
        return p
    p._check(f)
    fe, fc = f.leading_grlex()
    r = p
    while True:
        cand = [e for e in r.terms if all(a >= b for a, b in zip(e, fe))]
        if not cand:
            return r
        e = max(cand, key=lambda e: (sum(e), e))
        qe = tuple(a - b for a, b in zip(e, fe))
        r = r - Poly(p.vars, {qe: r.terms[e] / fc}) * f


def proportional(f: Poly, g: Poly) -> Optional[Fraction]:
    """lambda with g = lambda * f, or None; lambda = 0 only if both zero."""
    if f.is_zero():
        return Fraction(0) if g.is_zero() else None
    if g.is_zero():
        return None
    e, c = f.leading_grlex()
    if e not in g.terms:
        return None
    lam = g.terms[e] / c
    return lam if g == f * lam else None


def gcd_poly(f: Poly, g: Poly) -> Poly:
    """Multivariate gcd over Q via primitive PRS; result normalized."""
    if f.is_zero():
        return g.normalized()
    if g.is_zero():
        return f.normalized()
    f._check(g)
    shared = [v for v in f.vars if f.degree_in(v) > 0 and g.degree_in(v) > 0]
    fv = [v for v in f.vars if f.degree_in(v) > 0]
    gv = [v for v in g.vars if g.degree_in(v) > 0]
    if not fv or not gv:
        return Poly.const(f.vars, 1)
    if not shared:
        return Poly.const(f.vars, 1)
    x = shared[0]
    cf, pf = _content_primitive(f, x)
    cg, pg = _content_primitive(g, x)
    cont = gcd_poly(cf, cg)
    a, b = pf, pg
    while True:
        db = b.degree_in(x)
        if db < 0:
            break
        if a.degree_in(x) < db:
            a, b = b, a
            continue
        r = _prem(a, b, x)
        if r.is_zero():
            a = b
            b = Poly.zero(f.vars)
            break
        a, b = b, _content_primitive(r, x)[1]
    if not b.is_zero() and b.degree_in(x) < 0:
        # degree-zero remainder: primitive parts are coprime in x
        return cont.normalized()
    res = (cont * _content_primitive(a, x)[1]).normalized()
    return res


def _content_primitive(f: Poly, x: str) -> tuple[Poly, Poly]:
    cs = [c for c in f.coeffs_in(x) if not c.is_zero()]
    cont = cs[0]
    for c in cs[1:]:
        cont = gcd_poly(cont, c)
        if cont.is_constant():
            cont = Poly.const(f.vars, 1)
            break
    return cont, divexact(f, cont)


def _prem(a: Poly, b: Poly, x: str) -> Poly:
    """Pseudo-remainder of a by b in variable x."""
    da, db = a.degree_in(x), b.degree_in(x)
    if da < db:
        return a
    blc = b.coeffs_in(x)[db]
    xv = Poly.var(a.vars, x)
    r = a
    for _ in range(da - db + 1):
        dr = r.degree_in(x)
        if dr < db:
            r = r * blc
            continue
        rlc = r.coeffs_in(x)[dr]
        r = r * blc - rlc * xv ** (dr - db) * b
    return r


# ---------------------------------------------------------------------------
# resultants (fraction-free subresultant PRS)
# ---------------------------------------------------------------------------


def subresultant_prs(f: Poly, g: Poly, x: str) -> list[Poly]:
    """The subresultant polynomial remainder sequence in x, starting with f, g.

    Coefficient growth is controlled by the standard g/h corrections; every
    element is an exact polynomial combination of f and g, so it vanishes on
    their common zeros.
    """
    if f.is_zero() or g.is_zero():
        raise ValueError("PRS of a zero polynomial")
    if f.degree_in(x) < g.degree_in(x):
        f, g = g, f
    seq = [f, g]
    a, b = f, g
    gg = Poly.const(f.vars, 1)
    h = Poly.const(f.vars, 1)
    while True:
        da, db = a.degree_in(x), b.degree_in(x)
        if db < 0:
            break
        delta = da - db
        r = _prem(a, b, x)
        if r.is_zero():
            break
        denom = gg * h ** delta
        b_next = divexact(r, denom)
        a, b = b, b_next
        seq.append(b)
        gg = a.coeffs_in(x)[a.degree_in(x)]
        if delta == 0:
            pass
        elif delta == 1:
            h = gg
        else:
            h = divexact(gg ** delta, h ** (delta - 1))
        if b.degree_in(x) <= 0:
            break
    return seq


def resultant(f: Poly, g: Poly, x: str) -> Poly:
    """Sylvester resultant eliminating x, exact including sign."""
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of a zero polynomial")
    f._check(g)
    df, dg = f.degree_in(x), g.degree_in(x)
    if df <= 0 and dg <= 0:
        raise DegenerateEliminationError(f"variable {x} absent from both inputs")
    if df <= 0:
        return f ** dg
    if dg <= 0:
        return g ** df
    mag = _resultant_prs_magnitude(f, g, x)
    if mag.is_zero():
        return mag
    sign = _resultant_sign_probe(f, g, x, mag)
    return mag * sign


def _resultant_prs_magnitude(f: Poly, g: Poly, x: str) -> Poly:
    """Resultant up to a global sign, via the subresultant PRS."""
    swapped = False
    if f.degree_in(x) < g.degree_in(x):
        f, g = g, f
        swapped = True
    a, b = f, g
    gg = Poly.const(f.vars, 1)
    h = Poly.const(f.vars, 1)
    while True:
        da, db = a.degree_in(x), b.degree_in(x)
        delta = da - db
        r = _prem(a, b, x)
        if r.is_zero():
            # common factor of positive degree -> resultant 0; db == 0 handled below
            if db > 0:
                return Poly.zero(f.vars)
            # b is the last nonzero, degree 0
            pass
        if db == 0:
            blc = b.coeffs_in(x)[0]
            if da == 0:
                return Poly.const(f.vars, 1)
            # res = blc^da / h^(da-1)
            if da == 1:
                return blc
            return divexact(blc ** da, h ** (da - 1))
        if r.is_zero():
            return Poly.zero(f.vars)
        b_next = divexact(r, gg * h ** delta)
        a, b = b, b_next
        gg = a.coeffs_in(x)[a.degree_in(x)]
        if delta == 1:
            h = gg
        elif delta > 1:
            h = divexact(gg ** delta, h ** (delta - 1))
        if b.degree_in(x) < 0:
            return Poly.zero(f.vars)


def _resultant_sign_probe(f: Poly, g: Poly, x: str, mag: Poly) -> int:
    """Fix the global sign of the PRS magnitude by a univariate evaluation."""
    others = [v for v in f.vars if v != x]
    # choose a specialization of the other variables keeping degrees and a
    # nonzero value of mag
    probe = 0
    while True:
        vals = {}
        k = probe
        for v in others:
            vals[v] = Fraction(k % 19 - 9, 1 + (k // 19) % 5)
            k //= 95
        fs = _specialize(f, x, vals)
        gs = _specialize(g, x, vals)
        m = mag if mag.is_constant() else _specialize_full(mag, vals)
        mval = m.constant_value() if isinstance(m, Poly) else m
        if (
            unipoly.degree(fs) == f.degree_in(x)
            and unipoly.degree(gs) == g.degree_in(x)
            and mval != 0
        ):
            true_val = _resultant_univariate(fs, gs)
            if true_val != 0:
                q = true_val / mval
                if q > 0:
                    return 1
                if q < 0:
                    return -1
        probe += 1
        if probe > 10000:
            raise ArithmeticError("could not calibrate resultant sign")


def _specialize(f: Poly, x: str, vals: dict) -> UPoly:
    cs = []
    for c in f.coeffs_in(x):
        cs.append(c.evaluate([vals.get(v, Fraction(0)) if v != x else Fraction(0) for v in f.vars]))
    return unipoly.upoly(cs)


def _specialize_full(f: Poly, vals: dict) -> Poly:
    out = f
    for v, val in vals.items():
        if v in out.vars:
            out = out.substitute(v, Poly.const(out.vars, val))
    return out


def _resultant_univariate(a: UPoly, b: UPoly) -> Fraction:
    """Exact univariate resultant over Q, with the Euclidean sign rules."""
    da, db = unipoly.degree(a), unipoly.degree(b)
    if da < 0 or db < 0:
        return Fraction(0)
    if da == 0:
        return a[0] ** db
    if db == 0:
        return b[0] ** da
    r = unipoly.rem(a, b)
    dr = unipoly.degree(r)
    if dr < 0:
        return Fraction(0)
    sign = Fraction(-1) ** (da * db)
    return sign * unipoly.lc(b) ** (da - dr) * _resultant_univariate(b, r)


def discriminant(f: Poly, x: str) -> Poly:
    d = f.degree_in(x)
    lcf = f.coeffs_in(x)[d]
    res = resultant(f, f.derivative(x), x)
    sign = Fraction(-1) ** (d * (d - 1) // 2)
    return divexact(res, lcf) * sign


# ---------------------------------------------------------------------------
# parsing / formatting (development and CLI convenience; JSON uses term lists)
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*([+-]|\d+/\d+|\d+|[A-Za-z_][A-Za-z_0-9]*|\^|\*)")


def parse_poly(text: str, variables: Sequence[str]) -> Poly:
    """Parse expressions like '20*x^2 + 27*y^2 - 120*x + 108*y - 864'."""
    vs = tuple(variables)
    pos = 0
    tokens: list[str] = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise InputParseError(f"cannot tokenize polynomial near {text[pos:pos+16]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    i = 0
    result = Poly.zero(vs)
    sign = Fraction(1)
    expecting_term = True
    coeff = Fraction(1)
    exps = [0] * len(vs)
    have_any = False

    def flush():
        nonlocal result, coeff, exps, have_any, sign
        if have_any:
            e = tuple(exps)
            result = result + Poly(vs, {e: sign * coeff})
        coeff = Fraction(1)
        exps = [0] * len(vs)
        have_any = False

    while i < len(tokens):
        tok = tokens[i]
        if tok in "+-":
            flush()
            sign = Fraction(1) if tok == "+" else Fraction(-1)
            expecting_term = True
            i += 1
            continue
        if tok == "*":
            i += 1
            continue
        if re.fullmatch(r"\d+(/\d+)?", tok):
            coeff *= Fraction(tok)
            have_any = True
            i += 1
            continue
        if tok in vs:
            k = 1
            if i + 2 < len(tokens) and tokens[i + 1] == "^":
                k = int(tokens[i + 2])
                i += 2
            exps[vs.index(tok)] += k
            have_any = True
            i += 1
            continue
        raise InputParseError(f"unexpected token {tok!r} (variables are {vs})")
    flush()
    return result


def format_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e in sorted(p.terms, key=lambda e: (-(sum(e)), tuple(-k for k in e))):
        c = p.terms[e]
        mono = "*".join(
            f"{v}^{k}" if k > 1 else v for v, k in zip(p.vars, e) if k
        )
        if not mono:
            frag = str(c)
        elif abs(c) == 1:
            frag = mono if c > 0 else f"-{mono}"
        else:
            frag = f"{c}*{mono}"
        if parts and not frag.startswith("-"):
            parts.append("+ " + frag)
        elif parts:
            parts.append("- " + frag[1:])
        else:
            parts.append(frag)
    return " ".join(parts)
