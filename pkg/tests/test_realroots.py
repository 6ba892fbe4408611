from fractions import Fraction as F

from adjugate import unipoly as up
from adjugate.realroots import (
    count_real_roots,
    isolate_real_roots,
    sign_at,
    sturm_sequence,
)


def test_count_real_roots():
    p = up.upoly([-2, 0, 1])
    assert count_real_roots(p) == 2
    assert count_real_roots(p, F(0), F(2)) == 1
    assert count_real_roots(up.upoly([4820, -2295, 289])) == 0
    assert count_real_roots(up.upoly([63360, -67780, 18287])) == 0
    assert count_real_roots(up.upoly([5568, -2316, 241])) == 0


def test_isolation_separates_roots():
    p = up.mul(up.mul(up.upoly([-2, 0, 1]), up.upoly([-5, 1])), up.upoly([F(1, 3), 1]))
    roots = isolate_real_roots(p)
    assert len(roots) == 4
    for a, b in zip(roots, roots[1:]):
        assert a.hi <= b.lo or a.hi <= b.hi  # ordered, disjoint brackets
    for r in roots:
        assert count_real_roots(p, r.lo, r.hi) == 1


def test_sign_at_algebraic():
    p = up.upoly([-2, 0, 1])
    pos = [r for r in isolate_real_roots(p) if r.hi > 0][0].refine(10)
    assert sign_at(up.upoly([0, 0, 0, 1]), pos) == 1  # t^3 > 0 at sqrt2
    assert sign_at(up.upoly([-2, 0, 1]), pos) == 0
    assert sign_at(up.upoly([3, 0, -1]), pos) == 1  # 3 - t^2 = 1
    assert sign_at(up.upoly([-3, 0, 1]), pos) == -1


def test_sturm_sequence_ends_constant():
    p = up.upoly([-1, 0, 0, 0, 1])
    seq = sturm_sequence(p)
    assert up.degree(seq[-1]) <= 0


def test_rational_root_exact_bracket():
    p = up.upoly([F(-1, 2), 1])  # t = 1/2
    roots = isolate_real_roots(p)
    assert len(roots) == 1 and roots[0].as_fraction() == F(1, 2)
