"""Standard fans used throughout the test and verification suites."""

from __future__ import annotations

from .toric import Fan, PairCoefficients


def p1():
    return Fan(1, ((1,), (-1,)), ((0,), (1,)))


def p2():
    return Fan(2, ((1, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (2, 0)))


def p1xp1():
    return Fan(2, ((1, 0), (-1, 0), (0, 1), (0, -1)),
               ((0, 2), (2, 1), (1, 3), (3, 0)))


def f2():
    """Hirzebruch surface F_2; ray 3 = (0, -1) is the -2-curve."""
    return Fan(2, ((1, 0), (0, 1), (-1, -2), (0, -1)),
               ((0, 1), (1, 2), (2, 3), (3, 0)))


def p1cubed():
    rays = ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1))
    cones = tuple((i, 2 + j, 4 + k) for i in (0, 1) for j in (0, 1) for k in (0, 1))
    return Fan(3, rays, cones)


def p112():
    """Weighted projective plane P(1,1,2): simplicial, complete, one A_1 point."""
    return Fan(2, ((1, 0), (0, 1), (-1, -2)), ((0, 1), (1, 2), (2, 0)))


def p113():
    return Fan(2, ((1, 0), (0, 1), (-1, -3)), ((0, 1), (1, 2), (2, 0)))


def zero_pair(fan):
    return PairCoefficients((0,) * len(fan.rays))


ACCEPTANCE_FANS = (
    ("P1", p1),
    ("P2", p2),
    ("P1xP1", p1xp1),
    ("F2", f2),
    ("(P1)^3", p1cubed),
)
