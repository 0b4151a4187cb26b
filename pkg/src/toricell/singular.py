"""Singular elliptic genus via resolution, and the epsilon-perturbation limit.

The perturbation coefficient a_i + eps*b_i enters the pair genus only through
y^(eps*z)-type exponentials, so a single formal variable w = y^eps captures
all eps-dependence exactly; the eps -> 0 limit becomes the w -> 1 limit and
is analyzed by exact expansion in s_e where w = 1 + s_e.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .series import (
    S,
    WH,
    YH,
    FracPoly,
    LaurentPoly,
    NotDivisibleError,
    QSeries,
    fit_laurent,
    qseries_fractions,
)
from .genus import (
    GenusResult,
    _check_alphas,
    _prefactor,
    _require_smooth_complete,
    ell_pair,
    lattice_for,
    localization_u_coefficients,
)
from .toric import (
    FanError,
    PairCoefficients,
    intersection_number,
    resolve_surface,
    star_subdivide,
    supporting_cone,
    validate_fan,
)


class DegeneratePerturbation(ValueError):
    """Some ray has alpha_i = 0 and b_i = 0: the factor is identically singular."""


@dataclass(frozen=True)
class PerturbationSpec:
    """Per-ray rational coefficients b_i of the perturbing divisor eps*sum b_i D_i."""

    b: tuple

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(Fraction(x) for x in self.b))

    def check_length(self, fan):
        if len(self.b) != len(fan.rays):
            raise FanError("perturbation length %d != ray count %d"
                           % (len(self.b), len(fan.rays)))


def ell_singular_toric(fan, order, check_functoriality=True):
    """Elliptic genus of the (possibly singular) toric variety of the fan.

    Defined through a toric resolution with discrepancy coefficients; with
    check_functoriality the series is recomputed after one extra corner
    blow-up of the smooth model and must be identical.
    """
    report = validate_fan(fan)
    if not report.complete:
        raise FanError("fan is not complete")
    pair = PairCoefficients((0,) * len(fan.rays))
    if report.smooth:
        smooth_fan, smooth_pair, chain = fan, pair, ()
    else:
        smooth_fan, smooth_pair, chain = resolve_surface(fan, pair)
    if any(a <= -1 for a in smooth_pair.a):
        raise FanError("resolution produced a non-log-terminal coefficient")
    result = ell_pair(smooth_fan, smooth_pair, order)
    if check_functoriality:
        cone = smooth_fan.max_cones[0]
        extra_ray = tuple(sum(smooth_fan.rays[i][k] for i in cone)
                          for k in range(smooth_fan.rank))
        blown_fan, blown_pair = star_subdivide(smooth_fan, smooth_pair, extra_ray)
        again = ell_pair(blown_fan, blown_pair, order)
        if again.series != result.series:
            raise ArithmeticError(
                "singular genus depends on the chosen resolution")
    return result


def validate_perturbation(fan, pair, spec):
    """Membership of eps*sum b_i D_i in the perturbation class of (X, D).

    True iff for every ray with coefficient -1 the perturbing divisor has
    zero intersection with that component.
    """
    pair.check_length(fan)
    spec.check_length(fan)
    if fan.rank != 2:
        raise FanError("perturbation classes are defined for rank 2")
    _require_smooth_complete(fan)
    for i, a in enumerate(pair.a):
        if a != -1:
            continue
        total = Fraction(0)
        for j, b in enumerate(spec.b):
            if b:
                total += b * intersection_number(fan, (i, j))
        if total != 0:
            return False
    return True


@dataclass(frozen=True)
class PerturbedGenus:
    """Pair genus with coefficients alpha_i + eps*b_i, exact in w = y^eps.

    Per q-order the value is a rational function of (y, w), stored as an
    exact numerator/denominator pair of Laurent polynomials.
    """

    order: int
    rank: int
    fractions: tuple    # FracPoly per q-order, in the (yh, wh) variables
    lattice: object
    b: tuple


def perturbed_ell(fan, pair, spec, order):
    """Localization pipeline of ell_pair with ray arguments y^-alpha_i w^-b_i."""
    pair.check_length(fan)
    spec.check_length(fan)
    _require_smooth_complete(fan)
    for i, (al, b) in enumerate(zip(pair.alpha, spec.b)):
        if al == 0 and b == 0:
            raise DegeneratePerturbation(
                "ray %d has alpha = 0 and b = 0" % i)
    lattice = lattice_for(pair, spec.b)
    n = fan.rank
    coeffs, denominator = localization_u_coefficients(
        fan, pair, order, lattice=lattice, perturbation=spec.b)
    for k in range(n):
        if not coeffs[k].is_zero():
            raise ArithmeticError("localization cancellation failed at u^%d" % k)
    numerator = _prefactor(lattice, n, order) * coeffs[n]
    fractions = [c.reduced()
                 for c in qseries_fractions(numerator, denominator).coeffs]
    return PerturbedGenus(order=order, rank=n, fractions=tuple(fractions),
                          lattice=lattice, b=spec.b)


@dataclass(frozen=True)
class PoleAtEpsilonZero:
    """Principal part of the perturbed genus at w = 1 (i.e. eps = 0).

    principal maps q-order -> {negative s_e exponent -> FracPoly in y}.
    simple is False when some pole order exceeds 1 (theory violation flag).
    """

    order: int
    principal: tuple
    simple: bool


def _w_expand(p):
    """Expand a (yh, wh)-Laurent polynomial at wh = 1 + s_e.

    Negative wh-exponents are first cleared by a monomial factor (regular
    and nonzero at wh = 1, so pole order and limit are unaffected).  Returns
    a list of yh-Laurent polynomials indexed by s_e degree.
    """
    if p.is_zero():
        return [LaurentPoly()]
    if any(e[S] != 0 for e in p.terms):
        raise ArithmeticError("unexpected t-dependence in a perturbed slice")
    wmin = min(e[WH] for e in p.terms)
    if wmin < 0:
        p = p.shift((0, 0, -wmin))
    wmax = max(e[WH] for e in p.terms)
    out = [LaurentPoly() for _ in range(wmax + 1)]
    for e, c in p.terms.items():
        base = LaurentPoly.monomial(c, (0, e[YH], 0))
        for j in range(e[WH] + 1):
            out[j] = out[j] + base.scale(comb(e[WH], j))
    while len(out) > 1 and out[-1].is_zero():
        out.pop()
    return out


def _order_of(seq):
    for j, c in enumerate(seq):
        if not c.is_zero():
            return j
    return None


def limit_eps(pg):
    """w -> 1 limit of a perturbed genus by exact expansion at w = 1 + s_e.

    Returns a GenusResult when every q-order is regular at w = 1, otherwise
    the PoleAtEpsilonZero principal-part report.
    """
    limits = []
    principal = []
    worst = 0
    for frac in pg.fractions:
        num_exp = _w_expand(frac.num)
        den_exp = _w_expand(frac.den)
        ord_den = _order_of(den_exp)
        if ord_den is None:
            raise ZeroDivisionError("zero denominator in perturbed slice")
        if frac.is_zero():
            limits.append(FracPoly(LaurentPoly()))
            principal.append({})
            continue
        ord_num = _order_of(num_exp)
        pole = ord_den - ord_num
        if pole <= 0:
            principal.append({})
            if pole < 0:
                limits.append(FracPoly(LaurentPoly()))
            else:
                limits.append(
                    FracPoly(num_exp[ord_num], den_exp[ord_den]).reduced())
            continue
        worst = max(worst, pole)
        # Principal part: series quotient of the shifted expansions.
        lead = FracPoly(den_exp[ord_den])
        parts = {}
        quot = []
        for idx in range(pole):
            acc = FracPoly(num_exp[ord_num + idx]
                           if ord_num + idx < len(num_exp) else LaurentPoly())
            for j in range(1, idx + 1):
                dj = (den_exp[ord_den + j]
                      if ord_den + j < len(den_exp) else LaurentPoly())
                if not dj.is_zero():
                    acc = acc - quot[idx - j] * FracPoly(dj)
            q = acc / lead
            quot.append(q)
            if not q.is_zero():
                parts[idx - pole] = q.reduced()
        principal.append(parts)
        limits.append(None)
    if any(parts for parts in principal):
        return PoleAtEpsilonZero(order=pg.order, principal=tuple(principal),
                                 simple=(worst <= 1))
    series = QSeries(pg.order, limits)
    return GenusResult(order=pg.order, rank=pg.rank, series=series,
                       lattice=pg.lattice)


def limit_eps_by_samples(pg, validation_extra=3):
    """Independent w -> 1 limit: rational-function limits at sampled y.

    Per q-order the fraction is restricted to deterministic rational values
    of yh, the univariate w-limit is taken exactly, and the y-dependence is
    recovered by Laurent interpolation.  Cross-validates limit_eps; returns
    None when a pole is met at some sample.
    """
    out = []
    for frac in pg.fractions:
        if frac.is_zero():
            out.append(FracPoly(LaurentPoly()))
            continue
        ymin_n, ymax_n = frac.num.min_exps()[YH], frac.num.max_exps()[YH]
        ymin_d, ymax_d = frac.den.min_exps()[YH], frac.den.max_exps()[YH]
        lo, hi = ymin_n - ymax_d, ymax_n - ymin_d
        width = hi - lo + 1
        points = []
        values = []
        candidate = 2
        while len(points) < width + validation_extra:
            y0 = Fraction(candidate)
            candidate += 1
            num0 = frac.num.subs(YH, y0)
            den0 = frac.den.subs(YH, y0)
            if den0.is_zero():
                continue
            nexp = _w_expand(num0)
            dexp = _w_expand(den0)
            odn = _order_of(nexp)
            odd = _order_of(dexp)
            if odn is None:
                points.append(y0)
                values.append(LaurentPoly())
                continue
            if odd is None or odd > odn:
                return None
            if odd == odn:
                val = nexp[odn].constant_term() / dexp[odd].constant_term()
            else:
                val = Fraction(0)
            points.append(y0)
            values.append(LaurentPoly.const(val))
        fitted = fit_laurent(points, values, (lo, hi))
        # fit_laurent works in the s-slot; move the exponents to yh.
        moved = LaurentPoly({(0, e[S], 0): c for e, c in fitted.terms.items()})
        out.append(FracPoly(moved))
    return QSeries(pg.order, out)


def check_perturbation_independence(fan, pair, b1, b2, order):
    """True iff both perturbations give existing, identical limits."""
    for spec in (b1, b2):
        if not validate_perturbation(fan, pair, spec):
            raise ValueError("perturbation %r is not in the admissible class"
                             % (spec.b,))
    l1 = limit_eps(perturbed_ell(fan, pair, b1, order))
    l2 = limit_eps(perturbed_ell(fan, pair, b2, order))
    if not isinstance(l1, GenusResult) or not isinstance(l2, GenusResult):
        return False
    return l1.series == l2.series


def pullback_perturbation(fan, pair, spec, new_ray):
    """Pull (pair, perturbation) back along the star subdivision at new_ray.

    The a-coefficients follow the discrepancy rule; the eps-linear parts
    follow the same rule with constant term dropped: b_new = sum lambda_i b_i.
    """
    support, lambdas = supporting_cone(fan, new_ray)
    new_fan, new_pair = star_subdivide(fan, pair, new_ray)
    b_new = sum((l * spec.b[i] for l, i in zip(lambdas, support)), Fraction(0))
    return new_fan, new_pair, PerturbationSpec(spec.b + (b_new,))
