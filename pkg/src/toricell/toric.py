"""Fans, toric divisors, discrepancy calculus, and fixed-point weights.

All linear algebra is exact over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import gcd


class FanError(ValueError):
    pass


class NonGenericSubgroup(RuntimeError):
    """Some tangent weight vanished for the chosen one-parameter subgroup."""


def _primitive(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return g == 1


def _det(m):
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        pivot = None
        for row in range(col, n):
            if a[row][col] != 0:
                pivot = row
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for row in range(col + 1, n):
            f = a[row][col] * inv
            if f:
                a[row] = [x - f * y for x, y in zip(a[row], a[col])]
    return det


def solve_linear(matrix, rhs):
    """Solve matrix * x = rhs exactly; returns None if inconsistent.

    matrix is a list of rows; the system may be over- or under-determined,
    but callers here always pass full-column-rank systems.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])]
         for i, row in enumerate(matrix)]
    pivots = []
    r = 0
    for c in range(cols):
        pivot = None
        for row in range(r, rows):
            if a[row][c] != 0:
                pivot = row
                break
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for row in range(rows):
            if row != r and a[row][c] != 0:
                f = a[row][c]
                a[row] = [x - f * y for x, y in zip(a[row], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    # Inconsistency: a zero row with nonzero rhs.
    for row in range(r, rows):
        if all(a[row][c] == 0 for c in range(cols)) and a[row][cols] != 0:
            return None
    if len(pivots) < cols:
        raise FanError("underdetermined linear system")
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = a[i][cols]
    return x


@dataclass(frozen=True)
class Fan:
    """Complete simplicial fan data: primitive rays and full-dimensional cones."""

    rank: int
    rays: tuple
    max_cones: tuple

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in v) for v in self.rays)
        cones = tuple(tuple(sorted(int(i) for i in c)) for c in self.max_cones)
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)
        for v in rays:
            if len(v) != self.rank:
                raise FanError("ray %r has wrong arity" % (v,))
            if all(x == 0 for x in v):
                raise FanError("zero ray")
            if not _primitive(v):
                raise FanError("non-primitive ray %r" % (v,))
        if len(set(rays)) != len(rays):
            raise FanError("duplicate rays")
        for c in cones:
            if len(c) != self.rank:
                raise FanError("cone %r has wrong size (rank %d)" % (c, self.rank))
            if len(set(c)) != self.rank:
                raise FanError("cone %r repeats a ray" % (c,))
            for i in c:
                if not 0 <= i < len(rays):
                    raise FanError("cone %r references missing ray" % (c,))
            if _det([rays[i] for i in c]) == 0:
                raise FanError("cone %r has dependent rays" % (c,))

    def cone_matrix(self, cone):
        return [self.rays[i] for i in cone]


@dataclass(frozen=True)
class PairCoefficients:
    """Per-ray rational divisor coefficients a_i for the pair (X, sum a_i D_i)."""

    a: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(Fraction(x) for x in self.a))

    @property
    def alpha(self):
        """Discrepancy-shifted coefficients alpha_i = a_i + 1."""
        return tuple(x + 1 for x in self.a)

    def check_length(self, fan):
        if len(self.a) != len(fan.rays):
            raise FanError("coefficient count %d != ray count %d"
                           % (len(self.a), len(fan.rays)))


@dataclass(frozen=True)
class FanReport:
    simplicial: bool
    smooth: bool
    complete: bool


def validate_fan(fan):
    """Smoothness and completeness of a structurally valid simplicial fan."""
    smooth = all(abs(_det(fan.cone_matrix(c))) == 1 for c in fan.max_cones)

    complete = True
    if fan.rank == 0:
        complete = bool(fan.max_cones)
    else:
        facets = {}
        for ci, c in enumerate(fan.max_cones):
            for f in combinations(c, fan.rank - 1):
                facets.setdefault(f, []).append(ci)
        if any(len(owners) != 2 for owners in facets.values()):
            complete = False
        else:
            seen = {0} if fan.max_cones else set()
            frontier = [0]
            while frontier:
                ci = frontier.pop()
                for f in combinations(fan.max_cones[ci], fan.rank - 1):
                    for cj in facets[f]:
                        if cj not in seen:
                            seen.add(cj)
                            frontier.append(cj)
            complete = len(seen) == len(fan.max_cones)
    return FanReport(simplicial=True, smooth=smooth, complete=complete)


def q_trivial(fan, c):
    """True iff the ray values c_i extend to a single global linear functional."""
    c = [Fraction(x) for x in c]
    if len(c) != len(fan.rays):
        raise FanError("coefficient count mismatch")
    return solve_linear(list(fan.rays), c) is not None


def supporting_cone(fan, new_ray):
    """Face of the fan containing new_ray in its relative interior.

    Returns (support_rays, lambdas): the ray indices with strictly positive
    barycentric coordinate and those coordinates, taken from any maximal cone
    containing the ray.
    """
    new_ray = tuple(int(x) for x in new_ray)
    if not _primitive(new_ray):
        raise FanError("new ray %r is not primitive" % (new_ray,))
    for cone in fan.max_cones:
        lam = solve_linear([[fan.rays[i][k] for i in cone]
                            for k in range(fan.rank)], list(new_ray))
        if lam is None or any(x < 0 for x in lam):
            continue
        support = tuple(i for i, x in zip(cone, lam) if x > 0)
        lambdas = tuple(x for x in lam if x > 0)
        if not support:
            continue
        return support, lambdas
    raise FanError("ray %r is not interior to any cone" % (new_ray,))


def star_subdivide(fan, pair, new_ray):
    """Star subdivision at new_ray with discrepancy propagation.

    The new coefficient obeys 1 + a_new = sum lambda_i (1 + a_i) over the
    supporting face; all old coefficients are unchanged.
    """
    pair.check_length(fan)
    new_ray = tuple(int(x) for x in new_ray)
    support, lambdas = supporting_cone(fan, new_ray)
    support_set = set(support)
    new_index = len(fan.rays)
    new_cones = []
    for cone in fan.max_cones:
        if not support_set.issubset(cone):
            new_cones.append(cone)
            continue
        for drop in support:
            replaced = tuple(sorted([i for i in cone if i != drop] + [new_index]))
            new_cones.append(replaced)
    a_new = sum(l * (ai + 1) for l, ai in
                zip(lambdas, (pair.a[i] for i in support))) - 1
    new_fan = Fan(fan.rank, fan.rays + (new_ray,), tuple(new_cones))
    new_pair = PairCoefficients(pair.a + (a_new,))
    return new_fan, new_pair


def _parallelotope_candidates(fan, cone):
    """Primitive lattice points sum t_i v_i with t_i in (0, 1)."""
    rays = fan.cone_matrix(cone)
    n = fan.rank
    bounds = []
    for k in range(n):
        lo = sum(min(0, v[k]) for v in rays)
        hi = sum(max(0, v[k]) for v in rays)
        bounds.append(range(lo, hi + 1))
    out = []
    for p in product(*bounds):
        if all(x == 0 for x in p):
            continue
        t = solve_linear([[rays[i][k] for i in range(n)] for k in range(n)],
                         list(p))
        if t is None or any(x <= 0 or x >= 1 for x in t):
            continue
        if not _primitive(p):
            continue
        out.append((sum(t), tuple(t), tuple(p)))
    return sorted(out)


@dataclass(frozen=True)
class SubdivisionStep:
    new_ray: tuple
    support: tuple
    lambdas: tuple
    new_coefficient: Fraction


def resolve_surface(fan, pair, max_steps=256):
    """Resolution of a simplicial complete fan by repeated minimal insertions.

    In every non-smooth cone the primitive point sum t_i v_i with t_i in
    (0, 1) minimizing t_1 + ... + t_n is inserted (the Hirzebruch-Jung step
    for rank 2), with the discrepancy rule of star_subdivide.  Rank 2 always
    terminates; higher rank is best-effort within max_steps.
    """
    pair.check_length(fan)
    chain = []
    current_fan, current_pair = fan, pair
    for _ in range(max_steps):
        bad = None
        for cone in current_fan.max_cones:
            if abs(_det(current_fan.cone_matrix(cone))) != 1:
                bad = cone
                break
        if bad is None:
            return current_fan, current_pair, tuple(chain)
        candidates = _parallelotope_candidates(current_fan, bad)
        if not candidates:
            raise FanError("no interior lattice point in non-smooth cone %r" % (bad,))
        _, _, point = candidates[0]
        support, lambdas = supporting_cone(current_fan, point)
        current_fan, current_pair = star_subdivide(current_fan, current_pair, point)
        chain.append(SubdivisionStep(point, support, lambdas,
                                     current_pair.a[-1]))
    raise FanError("resolution did not terminate within %d steps" % max_steps)


@dataclass(frozen=True)
class FixedPointData:
    """Tangent and divisor weights at every maximal cone for a chosen xi."""

    xi: tuple
    tangent_weights: tuple   # per cone: tuple of n integers, cone-ray order
    divisor_weights: tuple   # per cone: tuple over all rays (0 off the cone)


def fixed_point_data(fan, xi):
    """Dual-basis weights m_j(sigma) = u_j^sigma(xi) at every maximal cone."""
    xi = tuple(int(x) for x in xi)
    if all(x == 0 for x in xi):
        raise FanError("one-parameter subgroup must be nonzero")
    tangent = []
    divisor = []
    n_rays = len(fan.rays)
    for cone in fan.max_cones:
        # Row j of the inverse ray matrix is the dual functional u_j.
        weights = []
        for j in range(fan.rank):
            rhs = [0] * fan.rank
            rhs[j] = 1
            u = solve_linear([[fan.rays[i][k] for k in range(fan.rank)]
                              for i in cone], rhs)
            m = sum(uk * xk for uk, xk in zip(u, xi))
            if m == 0:
                raise NonGenericSubgroup(
                    "xi=%r has zero weight on cone %r" % (xi, cone))
            if m.denominator != 1:
                # Smooth cones have unimodular ray matrices, so weights are
                # integers; fractional values signal a non-smooth cone.
                raise FanError("fractional weight on non-smooth cone %r" % (cone,))
            weights.append(int(m))
        tangent.append(tuple(weights))
        d = [0] * n_rays
        for j, i in enumerate(cone):
            d[i] = weights[j]
        divisor.append(tuple(d))
    return FixedPointData(xi, tuple(tangent), tuple(divisor))


def generic_xi_candidates(fan):
    """Deterministic sequence xi = (1, M, M^2, ...) with M = 2, 3, 5, 7, ..."""
    m = 2
    while True:
        yield tuple(m ** k for k in range(fan.rank))
        m = _next_prime(m)


def _next_prime(m):
    c = m + 1
    while True:
        if all(c % p for p in range(2, int(c ** 0.5) + 1)):
            return c
        c += 1


def generic_fixed_point_data(fan, xi=None, skip=0):
    """Fixed point data for the given xi, or the first generic candidate.

    skip discards that many successful candidates first, giving a second
    independent generic subgroup for cross-checks.
    """
    if xi is not None:
        return fixed_point_data(fan, xi)
    found = 0
    tried = 0
    for candidate in generic_xi_candidates(fan):
        tried += 1
        if tried > 64:
            break
        try:
            data = fixed_point_data(fan, candidate)
        except NonGenericSubgroup:
            continue
        if found == skip:
            return data
        found += 1
    raise NonGenericSubgroup("no generic candidate found in the retry sequence")


def intersection_number(fan, ray_indices):
    """Exact intersection number of the listed divisors via localization.

    ray_indices is a multiset of size rank.  Computed with two distinct
    generic subgroups; both evaluations must agree.
    """
    ray_indices = list(ray_indices)
    if len(ray_indices) != fan.rank:
        raise FanError("need exactly rank=%d divisor indices" % fan.rank)
    values = []
    for skip in (0, 1):
        data = generic_fixed_point_data(fan, skip=skip)
        total = Fraction(0)
        for cone_idx in range(len(fan.max_cones)):
            num = Fraction(1)
            for i in ray_indices:
                num *= data.divisor_weights[cone_idx][i]
            if num == 0:
                continue
            den = Fraction(1)
            for m in data.tangent_weights[cone_idx]:
                den *= m
            total += num / den
        values.append(total)
    if values[0] != values[1]:
        raise FanError("intersection number depends on xi: %r" % (values,))
    return values[0]
