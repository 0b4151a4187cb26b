"""Exact truncated q-series arithmetic over multivariable Laurent coefficients.

All coefficients are ``fractions.Fraction``.  Laurent polynomials live on a
fixed three-variable integer exponent lattice (s, yh, wh) where

    s^2  = t        (equivariant circle variable)
    yh^(2*r)  = y   (elliptic variable; r = ExpLattice.y_den)
    wh^(2*rp) = w   (perturbation variable; rp = ExpLattice.w_den)

so that all half-integer and fractional powers appearing in theta blocks
become integer lattice points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

NVARS = 3
S, YH, WH = 0, 1, 2

ZERO_EXP = (0, 0, 0)


class SeriesError(Exception):
    pass


class OrderMismatchError(SeriesError):
    pass


class NonInvertibleLeadingError(SeriesError):
    pass


class NotDivisibleError(SeriesError):
    pass


class InterpolationInconsistent(SeriesError):
    """Validation points disagree with the fitted Laurent polynomial."""


@dataclass(frozen=True)
class ExpLattice:
    """Denominators fixing the internal exponent lattice.

    y_den is the lcm of the denominators of all pair coefficients in play,
    w_den the same for perturbation coefficients.  A rational power y^e is
    stored as yh^(2*y_den*e), which the lattice requires to be an integer.
    """

    y_den: int = 1
    w_den: int = 1

    def exps(self, t_exp=0, y_exp=0, w_exp=0):
        """Internal integer exponents of t^t_exp * y^y_exp * w^w_exp."""
        es = Fraction(t_exp) * 2
        ey = Fraction(y_exp) * 2 * self.y_den
        ew = Fraction(w_exp) * 2 * self.w_den
        for e in (es, ey, ew):
            if e.denominator != 1:
                raise ValueError("exponent %s not on the declared lattice" % (e,))
        return (int(es), int(ey), int(ew))

    def half_exps(self, t_exp=0, y_exp=0, w_exp=0):
        """Exponents of the square root of the monomial, if on the lattice."""
        es = Fraction(t_exp)
        ey = Fraction(y_exp) * self.y_den
        ew = Fraction(w_exp) * self.w_den
        for e in (es, ey, ew):
            if e.denominator != 1:
                raise ValueError("half-exponent %s not on the declared lattice" % (e,))
        return (int(es), int(ey), int(ew))

    def user_exps(self, exps):
        """Map internal exponents back to rational (t, y, w) exponents."""
        return (Fraction(exps[S], 2),
                Fraction(exps[YH], 2 * self.y_den),
                Fraction(exps[WH], 2 * self.w_den))


def _as_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError("coefficient must be exact, got %r" % (c,))


class LaurentPoly:
    """Exact Laurent polynomial: finite map from exponent triples to Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            self.terms = {}
        else:
            self.terms = {e: c for e, c in terms.items() if c != 0}

    @staticmethod
    def zero():
        return LaurentPoly()

    @staticmethod
    def const(c):
        c = _as_fraction(c)
        return LaurentPoly({ZERO_EXP: c}) if c else LaurentPoly()

    @staticmethod
    def one():
        return LaurentPoly({ZERO_EXP: Fraction(1)})

    @staticmethod
    def monomial(c, exps):
        c = _as_fraction(c)
        exps = tuple(int(e) for e in exps)
        if len(exps) != NVARS:
            raise ValueError("exponent arity must be %d" % NVARS)
        return LaurentPoly({exps: c}) if c else LaurentPoly()

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and ZERO_EXP in self.terms)

    def constant_term(self):
        return self.terms.get(ZERO_EXP, Fraction(0))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        res = LaurentPoly.__new__(LaurentPoly)
        res.terms = out
        return res

    def __neg__(self):
        res = LaurentPoly.__new__(LaurentPoly)
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        res = LaurentPoly.__new__(LaurentPoly)
        res.terms = out
        return res

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c):
        c = _as_fraction(c)
        if c == 0:
            return LaurentPoly()
        res = LaurentPoly.__new__(LaurentPoly)
        res.terms = {e: c * v for e, v in self.terms.items()}
        return res

    def shift(self, exps):
        """Multiply by the monomial with the given exponents."""
        res = LaurentPoly.__new__(LaurentPoly)
        res.terms = {(e[0] + exps[0], e[1] + exps[1], e[2] + exps[2]): c
                     for e, c in self.terms.items()}
        return res

    def min_exps(self):
        if not self.terms:
            return ZERO_EXP
        return tuple(min(e[i] for e in self.terms) for i in range(NVARS))

    def max_exps(self):
        if not self.terms:
            return ZERO_EXP
        return tuple(max(e[i] for e in self.terms) for i in range(NVARS))

    def support_of(self, var):
        return sorted({e[var] for e in self.terms})

    def inv_monomial(self):
        """Inverse, defined only for a single nonzero term."""
        if len(self.terms) != 1:
            raise NonInvertibleLeadingError(
                "not a unit monomial: %d terms" % len(self.terms))
        (e, c), = self.terms.items()
        return LaurentPoly({(-e[0], -e[1], -e[2]): 1 / c})

    def exact_div(self, divisor):
        """Exact quotient self / divisor; raises NotDivisibleError otherwise."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero LaurentPoly")
        if self.is_zero():
            return LaurentPoly()
        if len(divisor.terms) == 1:
            return self * divisor.inv_monomial()
        # Shift both to ordinary polynomials, then lex long division.
        ms, md = self.min_exps(), divisor.min_exps()
        num = {(e[0] - ms[0], e[1] - ms[1], e[2] - ms[2]): c
               for e, c in self.terms.items()}
        den = {(e[0] - md[0], e[1] - md[1], e[2] - md[2]): c
               for e, c in divisor.terms.items()}
        lt_d = max(den)
        cd = den[lt_d]
        quot = {}
        while num:
            lt_n = max(num)
            qe = tuple(lt_n[i] - lt_d[i] for i in range(NVARS))
            if any(q < 0 for q in qe):
                raise NotDivisibleError("leading term not divisible")
            qc = num[lt_n] / cd
            quot[qe] = qc
            for e, c in den.items():
                t = (e[0] + qe[0], e[1] + qe[1], e[2] + qe[2])
                s = num.get(t, 0) - qc * c
                if s:
                    num[t] = s
                else:
                    num.pop(t, None)
        shift = tuple(ms[i] - md[i] for i in range(NVARS))
        res = LaurentPoly({(e[0] + shift[0], e[1] + shift[1], e[2] + shift[2]): c
                           for e, c in quot.items()})
        return res

    def subs(self, var, value):
        """Substitute an exact rational value for one internal variable."""
        value = _as_fraction(value)
        if value == 0:
            raise ValueError("cannot substitute 0 into a Laurent variable")
        out = {}
        powers = {}
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[var]
            ne[var] = 0
            ne = tuple(ne)
            p = powers.get(k)
            if p is None:
                p = powers[k] = value ** k
            s = out.get(ne, 0) + c * p
            if s:
                out[ne] = s
            else:
                out.pop(ne, None)
        return LaurentPoly(out)

    def content(self):
        """Positive rational content (gcd of coefficients), 0 for the zero poly."""
        from math import gcd
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = gcd(den, c.denominator) if den != 1 else 1
        # gcd of fractions: gcd(numerators) / lcm(denominators)
        dens = [c.denominator for c in self.terms.values()]
        l = 1
        for d in dens:
            l = l * d // gcd(l, d)
        return Fraction(abs(num), l) if num else Fraction(1, l)

    def __repr__(self):
        return "LaurentPoly(%r)" % (self.terms,)


class QSeries:
    """Truncated q-power-series with LaurentPoly coefficients, exact arithmetic."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs=None):
        self.order = int(order)
        if self.order < 0:
            raise ValueError("order must be non-negative")
        if coeffs is None:
            self.coeffs = [LaurentPoly() for _ in range(self.order + 1)]
        else:
            coeffs = list(coeffs)
            if len(coeffs) != self.order + 1:
                raise ValueError("coefficient list must have length order+1")
            self.coeffs = coeffs

    @staticmethod
    def zero(order):
        return QSeries(order)

    @staticmethod
    def from_poly(p, order):
        c = [LaurentPoly() for _ in range(order + 1)]
        c[0] = p
        return QSeries(order, c)

    @staticmethod
    def one(order):
        return QSeries.from_poly(LaurentPoly.one(), order)

    @staticmethod
    def const(c, order):
        return QSeries.from_poly(LaurentPoly.const(c), order)

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def _check(self, other):
        if self.order != other.order:
            raise OrderMismatchError(
                "order mismatch: %d vs %d" % (self.order, other.order))

    def __add__(self, other):
        self._check(other)
        return QSeries(self.order,
                       [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return QSeries(self.order,
                       [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return QSeries(self.order, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, LaurentPoly):
            return QSeries(self.order, [c * other for c in self.coeffs])
        self._check(other)
        n = self.order
        out = [LaurentPoly() for _ in range(n + 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b.is_zero():
                    continue
                out[i + j] = out[i + j] + a * b
        return QSeries(n, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, LaurentPoly):
            return QSeries(self.order, [other * c for c in self.coeffs])
        return NotImplemented

    def scale(self, c):
        return QSeries(self.order, [a.scale(c) for a in self.coeffs])

    def shift_poly(self, p):
        return QSeries(self.order, [c * p for c in self.coeffs])

    def inv(self):
        """Inverse when the q^0 coefficient is a unit monomial."""
        lead = self.coeffs[0]
        li = lead.inv_monomial()
        n = self.order
        out = [LaurentPoly() for _ in range(n + 1)]
        out[0] = li
        for k in range(1, n + 1):
            acc = LaurentPoly()
            for j in range(1, k + 1):
                if not self.coeffs[j].is_zero() and not out[k - j].is_zero():
                    acc = acc + self.coeffs[j] * out[k - j]
            out[k] = -(li * acc)
        return QSeries(n, out)

    def exact_div(self, other):
        """Exact series quotient; every per-order poly division must be exact."""
        self._check(other)
        if other.coeffs[0].is_zero():
            raise NonInvertibleLeadingError("divisor has zero q^0 coefficient")
        n = self.order
        out = [LaurentPoly() for _ in range(n + 1)]
        for k in range(n + 1):
            acc = self.coeffs[k]
            for j in range(1, k + 1):
                if not other.coeffs[j].is_zero() and not out[k - j].is_zero():
                    acc = acc - other.coeffs[j] * out[k - j]
            out[k] = acc.exact_div(other.coeffs[0])
        return QSeries(n, out)

    def pow(self, k):
        if k < 0:
            return self.inv().pow(-k)
        result = QSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def subs(self, var, value):
        return QSeries(self.order, [c.subs(var, value) for c in self.coeffs])

    def __repr__(self):
        return "QSeries(order=%d, %r)" % (self.order, self.coeffs)


class NilTaylor:
    """Taylor polynomial in a nilpotent variable u with u^(n+1) = 0.

    Coefficients are QSeries of a common truncation order.
    """

    __slots__ = ("nilpotency", "coeffs")

    def __init__(self, nilpotency, coeffs):
        self.nilpotency = int(nilpotency)
        coeffs = list(coeffs)
        if len(coeffs) != self.nilpotency + 1:
            raise ValueError("need nilpotency+1 u-coefficients")
        self.coeffs = coeffs

    @staticmethod
    def from_qseries(q, nilpotency):
        c = [q] + [QSeries.zero(q.order) for _ in range(nilpotency)]
        return NilTaylor(nilpotency, c)

    @staticmethod
    def one(nilpotency, order):
        return NilTaylor.from_qseries(QSeries.one(order), nilpotency)

    def order(self):
        return self.coeffs[0].order

    def __eq__(self, other):
        if not isinstance(other, NilTaylor):
            return NotImplemented
        return (self.nilpotency == other.nilpotency
                and self.coeffs == other.coeffs)

    def __add__(self, other):
        self._check(other)
        return NilTaylor(self.nilpotency,
                         [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return NilTaylor(self.nilpotency,
                         [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return NilTaylor(self.nilpotency, [-c for c in self.coeffs])

    def _check(self, other):
        if self.nilpotency != other.nilpotency:
            raise OrderMismatchError("nilpotency mismatch")

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NilTaylor(self.nilpotency,
                             [c.scale(other) for c in self.coeffs])
        if isinstance(other, QSeries):
            return NilTaylor(self.nilpotency, [c * other for c in self.coeffs])
        self._check(other)
        n = self.nilpotency
        order = self.order()
        out = [QSeries.zero(order) for _ in range(n + 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return NilTaylor(n, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, QSeries)):
            return self.__mul__(other)
        return NotImplemented

    def inv(self):
        """Inverse when the u^0 slice is invertible as a QSeries."""
        a0i = self.coeffs[0].inv()
        n = self.nilpotency
        out = [QSeries.zero(self.order()) for _ in range(n + 1)]
        out[0] = a0i
        for k in range(1, n + 1):
            acc = QSeries.zero(self.order())
            for j in range(1, k + 1):
                if not self.coeffs[j].is_zero():
                    acc = acc + self.coeffs[j] * out[k - j]
        # acc accumulated for this k only
            out[k] = -(a0i * acc)
        return NilTaylor(n, out)

    def shift_down(self):
        """Divide by u, requiring the u^0 slice to vanish; drops the top slot."""
        if not self.coeffs[0].is_zero():
            raise NotDivisibleError("u^0 slice is nonzero")
        return NilTaylor(self.nilpotency - 1, self.coeffs[1:])

    def truncate(self, nilpotency):
        if nilpotency > self.nilpotency:
            raise ValueError("cannot extend nilpotency")
        return NilTaylor(nilpotency, self.coeffs[:nilpotency + 1])

    def slice(self, k):
        return self.coeffs[k]

    def __repr__(self):
        return "NilTaylor(n=%d, %r)" % (self.nilpotency, self.coeffs)


class FracPoly:
    """Fraction of Laurent polynomials with cheap normalization.

    Construction strips common monomial factors and denominator content
    only; the (potentially expensive) exact-division reduction is explicit
    via reduced().  Equality is cross-multiplicative, so unreduced and
    reduced representations of the same fraction compare equal.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = LaurentPoly.one()
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = LaurentPoly()
            self.den = LaurentPoly.one()
            return
        # Strip the common monomial factor and make the denominator content 1.
        mn, md = num.min_exps(), den.min_exps()
        shift = tuple(-min(a, b) for a, b in zip(mn, md))
        if any(shift):
            num = num.shift(shift)
            den = den.shift(shift)
        if den.is_constant():
            if den.constant_term() != 1:
                num = num.scale(1 / den.constant_term())
                den = LaurentPoly.one()
        else:
            c = den.content()
            lead = den.terms[max(den.terms)]
            sign = 1 if lead > 0 else -1
            scale = 1 / (c * sign)
            if scale != 1:
                num = num.scale(scale)
                den = den.scale(scale)
        self.num = num
        self.den = den

    @staticmethod
    def from_poly(p):
        return FracPoly(p)

    def reduced(self):
        """Attempt the exact num/den division; identity if it fails."""
        if self.den.is_constant():
            return self
        try:
            q = self.num.exact_div(self.den)
        except NotDivisibleError:
            return self
        res = FracPoly.__new__(FracPoly)
        res.num = q
        res.den = LaurentPoly.one()
        return res

    def is_zero(self):
        return self.num.is_zero()

    def is_poly(self):
        return self.den == LaurentPoly.one()

    def as_poly(self):
        r = self.reduced()
        if not r.is_poly():
            raise NotDivisibleError("fraction does not reduce to a polynomial")
        return r.num

    def __eq__(self, other):
        if not isinstance(other, FracPoly):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __add__(self, other):
        if self.den == other.den:
            return FracPoly(self.num + other.num, self.den)
        return FracPoly(self.num * other.den + other.num * self.den,
                        self.den * other.den)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        res = FracPoly.__new__(FracPoly)
        res.num = -self.num
        res.den = self.den
        return res

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FracPoly(self.num.scale(other), self.den)
        return FracPoly(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by zero FracPoly")
        return FracPoly(self.num * other.den, self.den * other.num)

    def scale(self, c):
        c = _as_fraction(c)
        if c == 0:
            return FracPoly(LaurentPoly())
        res = FracPoly.__new__(FracPoly)
        res.num = self.num.scale(c)
        res.den = self.den
        return res

    def shift(self, exps):
        """Multiply by the monomial with the given exponents."""
        res = FracPoly.__new__(FracPoly)
        res.num = self.num.shift(exps)
        res.den = self.den
        return res

    def subs(self, var, value):
        return FracPoly(self.num.subs(var, value), self.den.subs(var, value))

    def __repr__(self):
        return "FracPoly(%r / %r)" % (self.num, self.den)


def qseries_fractions(num, den):
    """Exact quotient of q-series as a QSeries with FracPoly coefficients.

    num may have LaurentPoly or FracPoly coefficients; den must have
    LaurentPoly coefficients with den.coeffs[0] nonzero.
    """
    if num.order != den.order:
        raise OrderMismatchError("operands disagree on truncation order")
    if den.coeffs[0].is_zero():
        raise ZeroDivisionError("denominator has zero leading q-coefficient")
    d0 = FracPoly(den.coeffs[0])
    out = []
    for k in range(num.order + 1):
        a = num.coeffs[k]
        acc = a if isinstance(a, FracPoly) else FracPoly(a)
        for j in range(1, k + 1):
            dj = den.coeffs[j]
            if not dj.is_zero() and not out[k - j].is_zero():
                acc = acc - out[k - j] * FracPoly(dj)
        out.append(acc / d0)
    return QSeries(num.order, out)


def nil_exp(scale, nilpotency, order):
    """exp(scale * u) as a NilTaylor with exact rational coefficients."""
    scale = _as_fraction(scale)
    coeffs = []
    c = Fraction(1)
    for k in range(nilpotency + 1):
        coeffs.append(QSeries.const(c, order))
        c = c * scale / (k + 1)
    return NilTaylor(nilpotency, coeffs)


def fit_laurent(points, values, window):
    """Fit a Laurent polynomial in the s-variable through exact sample data.

    points  -- distinct nonzero rationals, none equal to +-1
    values  -- LaurentPoly or FracPoly values (no s-dependence) at the points
    window  -- inclusive (lo, hi) range of allowed s-exponents

    Uses the first hi-lo+1 samples for the fit (Newton divided differences);
    every remaining sample is a validation point and must match exactly.
    """
    lo, hi = window
    if hi < lo:
        raise ValueError("empty window")
    width = hi - lo + 1
    if len(points) < width:
        raise ValueError("need at least %d samples, got %d" % (width, len(points)))
    pts = [_as_fraction(p) for p in points]
    if len(set(pts)) != len(pts):
        raise ValueError("sample points must be pairwise distinct")
    for p in pts:
        if p == 0 or p == 1 or p == -1:
            raise ValueError("sample points must avoid 0 and +-1")
    fractional = values and isinstance(values[0], FracPoly)
    for v in values:
        parts = (v.num, v.den) if fractional else (v,)
        if any(e[S] != 0 for part in parts for e in part.terms):
            raise ValueError("sample values may not involve the fitted variable")

    def zero():
        return FracPoly(LaurentPoly()) if fractional else LaurentPoly()

    xs = pts[:width]
    # Clear the Laurent tail: fit P(x) * x^(-lo), an ordinary polynomial.
    vs = [values[k].scale(xs[k] ** (-lo)) for k in range(width)]

    # Newton divided differences with ring-element values.
    dd = list(vs)
    for level in range(1, width):
        for i in range(width - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]).scale(
                Fraction(1) / (xs[i] - xs[i - level]))
    # Expand Newton form to monomial coefficients in x.
    coeffs = [zero() for _ in range(width)]
    for k in range(width - 1, -1, -1):
        # coeffs <- coeffs * (x - xs[k]) + dd[k]
        new = [zero() for _ in range(width)]
        for j in range(width - 1):
            if not coeffs[j].is_zero():
                new[j + 1] = new[j + 1] + coeffs[j]
                new[j] = new[j] - coeffs[j].scale(xs[k])
        new[0] = new[0] + dd[k]
        coeffs = new

    result = zero()
    for j, c in enumerate(coeffs):
        if not c.is_zero():
            result = result + c.shift((lo + j, 0, 0))

    for p, v in zip(pts[width:], values[width:]):
        if result.subs(S, p) != v:
            raise InterpolationInconsistent(
                "validation point %s disagrees with the fitted polynomial" % (p,))
    return result


def interpolate_laurent(samples, window, min_validation=3):
    """Per-q-order Laurent fit of QSeries samples (spec-level entry point).

    samples -- list of (point, QSeries) pairs, all of the same order
    window  -- inclusive (lo, hi) s-exponent range

    Returns a QSeries whose coefficients carry the fitted s-dependence.
    """
    lo, hi = window
    width = hi - lo + 1
    if len(samples) < width + min_validation:
        raise ValueError("need at least window width + %d samples"
                         % min_validation)
    points = [p for p, _ in samples]
    series = [v for _, v in samples]
    order = series[0].order
    for v in series:
        if v.order != order:
            raise OrderMismatchError("samples disagree on truncation order")
    out = []
    for k in range(order + 1):
        out.append(fit_laurent(points, [v.coeffs[k] for v in series], window))
    return QSeries(order, out)


def _fmt_exponent(e):
    if e.denominator == 1:
        return str(e.numerator)
    return "%d/%d" % (e.numerator, e.denominator)


def render_poly(p, lattice):
    """Canonical text form against the user-facing variables t, y, w."""
    if p.is_zero():
        return "0"
    pieces = []
    for exps in sorted(p.terms):
        c = p.terms[exps]
        te, ye, we = lattice.user_exps(exps)
        vars_part = []
        for name, e in (("t", te), ("y", ye), ("w", we)):
            if e == 0:
                continue
            if e == 1:
                vars_part.append(name)
            else:
                vars_part.append("%s^{%s}" % (name, _fmt_exponent(e)))
        coeff = str(c)
        if vars_part:
            if c == 1:
                body = "*".join(vars_part)
            elif c == -1:
                body = "-" + "*".join(vars_part)
            else:
                body = coeff + "*" + "*".join(vars_part)
        else:
            body = coeff
        pieces.append(body)
    text = pieces[0]
    for piece in pieces[1:]:
        if piece.startswith("-"):
            text += " - " + piece[1:]
        else:
            text += " + " + piece
    return text


def render_frac(f, lattice):
    """Canonical text form of a FracPoly, reduced when possible."""
    f = f.reduced()
    if f.is_poly():
        return render_poly(f.num, lattice)
    return "(%s) / (%s)" % (render_poly(f.num, lattice),
                            render_poly(f.den, lattice))


def render_qseries(q, lattice):
    lines = []
    for k, c in enumerate(q.coeffs):
        if isinstance(c, FracPoly):
            body = render_frac(c, lattice)
        else:
            body = render_poly(c, lattice)
        lines.append("q^%d: %s" % (k, body))
    return "\n".join(lines)


def poly_coeff_map(p, lattice):
    """Exact {monomial-string: rational-string} map for structured output."""
    out = {}
    for exps in sorted(p.terms):
        c = p.terms[exps]
        te, ye, we = lattice.user_exps(exps)
        key_parts = []
        for name, e in (("t", te), ("y", ye), ("w", we)):
            if e != 0:
                key_parts.append("%s^%s" % (name, _fmt_exponent(e)))
        key = " ".join(key_parts) if key_parts else "1"
        out[key] = str(c)
    return out


def frac_coeff_map(f, lattice):
    """Structured form of a FracPoly: flat map when polynomial, num/den pair
    of maps otherwise."""
    f = f.reduced()
    if f.is_poly():
        return poly_coeff_map(f.num, lattice)
    return {"numerator": poly_coeff_map(f.num, lattice),
            "denominator": poly_coeff_map(f.den, lattice)}
