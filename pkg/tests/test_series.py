"""Exact series arithmetic: ring laws, inversion, fractions, interpolation."""

import random
from fractions import Fraction

import pytest

from toricell.series import (
    ExpLattice,
    FracPoly,
    InterpolationInconsistent,
    LaurentPoly,
    NotDivisibleError,
    QSeries,
    S,
    fit_laurent,
    interpolate_laurent,
    qseries_fractions,
    render_poly,
)

SEED = 20260823


def _random_poly(rng, nterms=4, span=3):
    p = LaurentPoly()
    for _ in range(nterms):
        exps = tuple(rng.randint(-span, span) for _ in range(3))
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        p = p + LaurentPoly.monomial(c, exps) if c else p
    return p


def _random_qseries(rng, order=3):
    return QSeries(order, [_random_poly(rng) for _ in range(order + 1)])


def _q_poly(coeffs, order):
    """QSeries with constant coefficients from a plain integer list."""
    cs = list(coeffs) + [0] * (order + 1 - len(coeffs))
    return QSeries(order, [LaurentPoly.const(c) for c in cs[:order + 1]])


def test_mul_telescoping():
    a = _q_poly([1, -1], 4)
    b = _q_poly([1, 1], 4)
    assert a * b == _q_poly([1, 0, -1], 4)


def test_mul_identity():
    rng = random.Random(SEED)
    a = _random_qseries(rng)
    assert a * QSeries.one(a.order) == a


def test_mul_truncates_at_order():
    geom = _q_poly([1, 1, 1, 1, 1], 4)
    assert geom * _q_poly([1, -1], 4) == QSeries.one(4)


def test_inv_geometric():
    assert _q_poly([1, -1], 3).inv() == _q_poly([1, 1, 1, 1], 3)


def test_inv_monomial_coefficient():
    m = QSeries.from_poly(LaurentPoly.monomial(1, (0, 2, 0)), 2)
    assert m.inv().coeffs[0] == LaurentPoly.monomial(1, (0, -2, 0))


def _two_colored_partitions(order):
    """Coefficients of 1 / prod_n (1-q^n)^2 by direct dynamic programming."""
    counts = [1] + [0] * order
    for part in range(1, order + 1):
        for color in range(2):
            for total in range(part, order + 1):
                counts[total] += counts[total - part]
    return counts


def test_inv_double_euler_product():
    order = 8
    prod = QSeries.one(order)
    for n in range(1, order + 1):
        factor = QSeries(order, [LaurentPoly.const(1 if k == 0 else 0)
                                 for k in range(order + 1)])
        factor.coeffs[n] = LaurentPoly.const(-1)
        prod = prod * factor * factor
    inv = prod.inv()
    expected = _two_colored_partitions(order)
    assert expected[:4] == [1, 2, 5, 10]
    for k in range(order + 1):
        assert inv.coeffs[k] == LaurentPoly.const(expected[k])


def test_ring_laws_randomized():
    rng = random.Random(SEED)
    for _ in range(25):
        a, b, c = (_random_qseries(rng) for _ in range(3))
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a + b == b + a


def test_inv_roundtrip_randomized():
    rng = random.Random(SEED + 1)
    for _ in range(50):
        a = _random_qseries(rng, order=3)
        lead = LaurentPoly.monomial(Fraction(rng.randint(1, 5)),
                                    (0, rng.randint(-2, 2), 0))
        a = QSeries(a.order, [lead] + list(a.coeffs[1:]))
        assert a * a.inv() == QSeries.one(a.order)


def test_exact_div_roundtrip_randomized():
    rng = random.Random(SEED + 2)
    done = 0
    while done < 25:
        a = _random_poly(rng)
        b = _random_poly(rng)
        if b.is_zero():
            continue
        assert (a * b).exact_div(b) == a
        done += 1


def test_exact_div_failure():
    num = LaurentPoly.one() + LaurentPoly.monomial(1, (0, 1, 0))
    den = LaurentPoly.one() + LaurentPoly.monomial(1, (0, 2, 0))
    with pytest.raises(NotDivisibleError):
        num.exact_div(den)


def test_fracpoly_cross_multiplied_equality():
    y = LaurentPoly.monomial(1, (0, 1, 0))
    one = LaurentPoly.one()
    # (1 - y^2) / (1 - y) == (1 + y) / 1 without any reduction.
    lhs = FracPoly(one - y * y, one - y)
    rhs = FracPoly(one + y)
    assert lhs == rhs
    assert lhs.reduced().is_poly()
    assert lhs.reduced().num == one + y


def test_fracpoly_arithmetic():
    y = LaurentPoly.monomial(1, (0, 1, 0))
    one = LaurentPoly.one()
    f = FracPoly(one, one - y)
    g = FracPoly(y, one - y)
    assert f + g == FracPoly(one + y, one - y)
    assert f - f == FracPoly(LaurentPoly.zero())
    assert (f * FracPoly(one - y)).reduced() == FracPoly(one)


def test_qseries_fractions_inverts_products():
    rng = random.Random(SEED + 3)
    for _ in range(10):
        b = _random_qseries(rng, order=3)
        c = _random_qseries(rng, order=3)
        while c.coeffs[0].is_zero():
            c = _random_qseries(rng, order=3)
        quotient = qseries_fractions(b * c, c)
        for k in range(4):
            assert quotient.coeffs[k] == FracPoly(b.coeffs[k])


def _const_values(nums):
    return [LaurentPoly.const(Fraction(x)) for x in nums]


def test_fit_laurent_spec_example():
    pts = [Fraction(2), Fraction(3), Fraction(5), Fraction(7)]
    vals = _const_values([Fraction(3, 2), Fraction(8, 3), Fraction(24, 5),
                          Fraction(48, 7)])
    fitted = fit_laurent(pts, vals, (-1, 1))
    expected = (LaurentPoly.monomial(1, (1, 0, 0))
                + LaurentPoly.monomial(-1, (-1, 0, 0)))
    assert fitted == expected


def test_fit_laurent_constant():
    pts = [Fraction(x) for x in (2, 3, 5, 7)]
    assert fit_laurent(pts, _const_values([4, 4, 4, 4]), (0, 0)) \
        == LaurentPoly.const(4)


def test_fit_laurent_rejects_true_rational_function():
    pts = [Fraction(x) for x in (2, 3, 5, 7)]
    vals = _const_values([Fraction(1, x - 1) for x in (2, 3, 5, 7)])
    with pytest.raises(InterpolationInconsistent):
        fit_laurent(pts, vals, (-1, 1))


def test_fit_laurent_randomized_roundtrip():
    rng = random.Random(SEED + 4)
    primes = [Fraction(p) for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31)]
    for _ in range(25):
        lo = rng.randint(-3, 0)
        hi = lo + rng.randint(0, 4)
        target = LaurentPoly.zero()
        for e in range(lo, hi + 1):
            target = target + LaurentPoly.monomial(
                Fraction(rng.randint(-4, 4)), (e, 0, 0))
        width = hi - lo + 1
        pts = primes[:width + 3]
        vals = [target.subs(S, p) for p in pts]
        fitted = fit_laurent(pts, vals, (lo, hi))
        assert fitted == target


def test_interpolate_laurent_per_q_order():
    target = QSeries(1, [
        LaurentPoly.monomial(1, (1, 0, 0)) + LaurentPoly.monomial(-1, (-1, 0, 0)),
        LaurentPoly.const(4),
    ])
    pts = [Fraction(x) for x in (2, 3, 5, 7, 11, 13)]
    samples = [(p, QSeries(1, [target.coeffs[0].subs(S, p),
                               target.coeffs[1].subs(S, p)])) for p in pts]
    assert interpolate_laurent(samples, (-1, 1)) == target


def test_render_fractional_exponents():
    lattice = ExpLattice(y_den=2, w_den=1)
    p = LaurentPoly.monomial(1, (0, 3, 0)) + LaurentPoly.const(-2)
    assert render_poly(p, lattice) == "-2 + y^{3/4}"
