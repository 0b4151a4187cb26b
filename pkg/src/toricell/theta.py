"""q-expansions of the reduced Jacobi theta block and its derivative.

The engine works with the reduced block

    Theta(X) = (X^(1/2) - X^(-1/2)) * prod_{n>=1} (1 - q^n X)(1 - q^n X^(-1))

and the normalized derivative Theta'(1) = prod_{n>=1} (1 - q^n)^2.  All
v-independent prefactors of the classical theta function cancel in every
ratio formed downstream, so they are never materialized.
"""

from __future__ import annotations

from fractions import Fraction

from .series import (
    ExpLattice,
    LaurentPoly,
    NilTaylor,
    QSeries,
    nil_exp,
)


class ZeroArgumentError(ValueError):
    """Theta of the trivial monomial is identically zero; callers special-case."""


def _theta_from_half(x_half, n_order):
    """Reduced theta block from the monomial X^(1/2), as a QSeries."""
    x = x_half * x_half
    x_inv = x.inv_monomial()
    result = QSeries.from_poly(x_half - x_half.inv_monomial(), n_order)
    for n in range(1, n_order + 1):
        f = QSeries.one(n_order)
        f.coeffs[n] = f.coeffs[n] - x
        g = QSeries.one(n_order)
        g.coeffs[n] = g.coeffs[n] - x_inv
        result = result * f * g
    return result


def theta_monomial(lattice, t_exp=0, y_exp=0, w_exp=0, order=0):
    """Theta(X) for the monomial X = t^t_exp y^y_exp w^w_exp, X != 1."""
    half = lattice.half_exps(t_exp, y_exp, w_exp)
    if half == (0, 0, 0):
        raise ZeroArgumentError("Theta(1) = 0; monomial argument must be nontrivial")
    return _theta_from_half(LaurentPoly.monomial(1, half), order)


def theta_nilpotent(lattice, y_exp=0, w_exp=0, scale=1, nilpotency=0, order=0):
    """Theta(exp(scale*u) * y^y_exp w^w_exp) as a Taylor polynomial in u."""
    if nilpotency < 0:
        raise ValueError("nilpotency must be >= 0")
    half = lattice.half_exps(0, y_exp, w_exp)
    mono_half = LaurentPoly.monomial(1, half)
    exp_half = nil_exp(Fraction(scale) / 2, nilpotency, order)
    exp_half_inv = nil_exp(-Fraction(scale) / 2, nilpotency, order)
    x_half = exp_half * QSeries.from_poly(mono_half, order)
    x_half_inv = exp_half_inv * QSeries.from_poly(mono_half.inv_monomial(), order)
    x = x_half * x_half
    x_inv = x_half_inv * x_half_inv

    result = x_half - x_half_inv
    one = NilTaylor.one(nilpotency, order)
    for n in range(1, order + 1):
        qn_x = NilTaylor(nilpotency,
                         [_shift_q(c, n) for c in x.coeffs])
        qn_x_inv = NilTaylor(nilpotency,
                             [_shift_q(c, n) for c in x_inv.coeffs])
        result = result * (one - qn_x) * (one - qn_x_inv)
    return result


def _shift_q(q, n):
    """Multiply a QSeries by q^n, truncating at the stored order."""
    out = QSeries.zero(q.order)
    for k in range(q.order + 1 - n):
        out.coeffs[k + n] = q.coeffs[k]
    return out


def eta_sq(order):
    """Theta'(1) = prod_{n>=1} (1 - q^n)^2, the squared Euler product."""
    result = QSeries.one(order)
    for n in range(1, order + 1):
        f = QSeries.one(order)
        f.coeffs[n] = f.coeffs[n] - LaurentPoly.one()
        result = result * f * f
    return result


def theta_over_linear(scale, nilpotency, order):
    """g(u) with Theta(exp(scale*u)) = scale * u * g(u); g(0-slice) = Theta'(1).

    The u^0 slice of g is eta_sq, which has unit q^0 coefficient, so g is
    invertible in the plain coefficient ring.
    """
    scale = Fraction(scale)
    if scale == 0:
        raise ZeroArgumentError("scale must be nonzero")
    full = theta_nilpotent(ExpLattice(), scale=scale,
                           nilpotency=nilpotency + 1, order=order)
    return full.shift_down().truncate(nilpotency) * (1 / scale)


def _theta_q_shift_lhs(x_half, order):
    """q^(1/2) * Theta(qX) expanded directly from the triple product.

    Substituting X -> qX and multiplying by q^(1/2) gives

        (q X^(1/2) - X^(-1/2)) * prod_{n>=2}(1 - q^n X) * prod_{n>=0}(1 - q^n X^(-1))

    which has integer q-exponents and can be compared term by term.
    """
    x = x_half * x_half
    x_inv = x.inv_monomial()
    lead = QSeries.from_poly(-x_half.inv_monomial(), order)
    if order >= 1:
        lead.coeffs[1] = lead.coeffs[1] + x_half
    result = lead
    for n in range(2, order + 1):
        f = QSeries.one(order)
        f.coeffs[n] = f.coeffs[n] - x
        result = result * f
    for n in range(0, order + 1):
        g = QSeries.one(order)
        g.coeffs[n] = g.coeffs[n] - x_inv
        result = result * g
    return result


def check_translation(lattice, t_exp=0, y_exp=0, w_exp=0, order=0):
    """Verify the two translation identities of the reduced block.

    oddness:  Theta(X^(-1)) = -Theta(X), exact to the stored order.
    q_shift:  Theta(qX) = -q^(-1/2) X^(-1) Theta(X); the substitution
              re-indexes the truncation, so orders 0..order-1 are compared.
    """
    half = lattice.half_exps(t_exp, y_exp, w_exp)
    if half == (0, 0, 0):
        raise ZeroArgumentError("trivial monomial argument")
    x_half = LaurentPoly.monomial(1, half)

    theta = _theta_from_half(x_half, order)
    theta_inv_arg = _theta_from_half(x_half.inv_monomial(), order)
    oddness = theta_inv_arg == -theta

    lhs = _theta_q_shift_lhs(x_half, order)
    x_inv = (x_half * x_half).inv_monomial()
    rhs = -(theta * x_inv)
    compare_to = max(order - 1, 0)
    q_shift = lhs.coeffs[:compare_to + 1] == rhs.coeffs[:compare_to + 1]

    return {"oddness": oddness, "q_shift": q_shift, "compared_orders": compare_to}
