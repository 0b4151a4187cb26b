"""Line-based text format for fans, pair coefficients, and perturbations.

The format is self-describing and exact: one declaration per line, rational
coefficients written as p or p/q (never floats), '#' starts a comment.

    rank 2
    ray 1 0
    ray 0 1
    ray -1 -1
    cone 0 1
    cone 1 2
    cone 2 0
    pair 0 0 -3/2          # optional
    perturbation 1 -1 0    # optional

parse -> serialize -> parse is the identity.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .toric import Fan, PairCoefficients
from .singular import PerturbationSpec


class ParseError(ValueError):
    """Malformed input line; carries the 1-based line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)


class SemanticError(ParseError):
    """Well-formed line with inadmissible content (arity, primitivity)."""


def _parse_int(token, lineno, what):
    try:
        return int(token)
    except ValueError:
        raise ParseError("%s must be an integer, got %r" % (what, token),
                         lineno) from None


def _parse_fraction(token, lineno, what):
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError("%s must be a rational p or p/q, got %r"
                         % (what, token), lineno) from None


def parse_input(path):
    """Read a fan description file.

    Returns (Fan, PairCoefficients or None, PerturbationSpec or None).
    Raises ParseError / SemanticError with the offending line number.
    """
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.readlines()

    rank = None
    rank_line = None
    rays = []
    ray_lines = []
    cones = []
    pair_tokens = None
    pert_tokens = None

    for lineno, line in enumerate(raw, start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        tokens = text.split()
        keyword, args = tokens[0], tokens[1:]
        if keyword == "rank":
            if rank is not None:
                raise ParseError("duplicate rank declaration", lineno)
            if len(args) != 1:
                raise ParseError("rank takes exactly one integer", lineno)
            rank = _parse_int(args[0], lineno, "rank")
            if rank < 1:
                raise SemanticError("rank must be positive", lineno)
            rank_line = lineno
        elif keyword == "ray":
            if rank is None:
                raise ParseError("ray before rank declaration", lineno)
            if len(args) != rank:
                raise SemanticError(
                    "ray has %d components, rank is %d" % (len(args), rank),
                    lineno)
            v = tuple(_parse_int(a, lineno, "ray component") for a in args)
            g = 0
            for x in v:
                g = gcd(g, abs(x))
            if g != 1:
                raise SemanticError("non-primitive ray %r" % (v,), lineno)
            rays.append(v)
            ray_lines.append(lineno)
        elif keyword == "cone":
            if rank is None:
                raise ParseError("cone before rank declaration", lineno)
            if len(args) != rank:
                raise SemanticError(
                    "cone lists %d rays, rank is %d" % (len(args), rank),
                    lineno)
            idx = tuple(_parse_int(a, lineno, "ray index") for a in args)
            for i in idx:
                if i < 0:
                    raise SemanticError("negative ray index %d" % i, lineno)
            cones.append((idx, lineno))
        elif keyword == "pair":
            if pair_tokens is not None:
                raise ParseError("duplicate pair declaration", lineno)
            pair_tokens = (args, lineno)
        elif keyword == "perturbation":
            if pert_tokens is not None:
                raise ParseError("duplicate perturbation declaration", lineno)
            pert_tokens = (args, lineno)
        else:
            raise ParseError("unknown keyword %r" % keyword, lineno)

    if rank is None:
        raise ParseError("missing rank declaration")
    if not rays:
        raise ParseError("no rays declared")
    if not cones:
        raise ParseError("no maximal cones declared")
    for idx, lineno in cones:
        for i in idx:
            if i >= len(rays):
                raise SemanticError(
                    "ray index %d out of range (only %d rays)"
                    % (i, len(rays)), lineno)
    try:
        fan = Fan(rank, tuple(rays), tuple(idx for idx, _ in cones))
    except Exception as exc:
        raise SemanticError("inconsistent fan data: %s" % exc, rank_line)

    pair = None
    if pair_tokens is not None:
        args, lineno = pair_tokens
        if len(args) != len(rays):
            raise SemanticError(
                "pair lists %d coefficients, fan has %d rays"
                % (len(args), len(rays)), lineno)
        pair = PairCoefficients(tuple(
            _parse_fraction(a, lineno, "pair coefficient") for a in args))

    perturbation = None
    if pert_tokens is not None:
        args, lineno = pert_tokens
        if len(args) != len(rays):
            raise SemanticError(
                "perturbation lists %d coefficients, fan has %d rays"
                % (len(args), len(rays)), lineno)
        perturbation = PerturbationSpec(tuple(
            _parse_fraction(a, lineno, "perturbation coefficient")
            for a in args))

    return fan, pair, perturbation


def _fmt_rational(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def serialize(fan, pair=None, perturbation=None):
    """Canonical text form; parse_input(serialize(...)) round-trips exactly."""
    lines = ["rank %d" % fan.rank]
    for v in fan.rays:
        lines.append("ray " + " ".join(str(x) for x in v))
    for cone in fan.max_cones:
        lines.append("cone " + " ".join(str(i) for i in cone))
    if pair is not None:
        lines.append("pair " + " ".join(_fmt_rational(a) for a in pair.a))
    if perturbation is not None:
        lines.append("perturbation "
                     + " ".join(_fmt_rational(b) for b in perturbation.b))
    return "\n".join(lines) + "\n"
