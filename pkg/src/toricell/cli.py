"""Batch command-line surface for the exact elliptic-genus engine.

Exit codes: 0 success, 2 parse or semantic input error, 3 precondition
failure, 4 the epsilon limit has a pole at zero, 5 internal invariant
violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .series import (
    InterpolationInconsistent,
    frac_coeff_map,
    render_frac,
    render_qseries,
)
from .theta import ZeroArgumentError
from .toric import FanError, NonGenericSubgroup, q_trivial, validate_fan
from .genus import (
    LogCanonicalCoefficient,
    check_rigidity,
    check_vanishing_cy,
    ell_pair,
    ell_pair_equivariant,
    verify_blowup_invariance,
)
from .singular import (
    DegeneratePerturbation,
    PoleAtEpsilonZero,
    ell_singular_toric,
    limit_eps,
    perturbed_ell,
    validate_perturbation,
)
from .io_formats import ParseError, parse_input, serialize
from .verification import run_battery

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PRECONDITION = 3
EXIT_POLE = 4
EXIT_INTERNAL = 5

PRECONDITION_ERRORS = (
    FanError,
    LogCanonicalCoefficient,
    DegeneratePerturbation,
    NonGenericSubgroup,
    ZeroArgumentError,
)


def _parse_xi(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            "xi must be a comma-separated integer vector") from None


def _parse_indices(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            "expected a comma-separated list of ray indices") from None


def _series_maps(series, lattice):
    return {"q^%d" % k: frac_coeff_map(c, lattice)
            for k, c in enumerate(series.coeffs)}


def _echo(path, fan, pair, perturbation):
    return {
        "input_path": path,
        "input": serialize(fan, pair, perturbation),
    }


def _emit(args, payload, text_lines):
    if args.format == "structured":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


def _genus_payload(g):
    return {
        "order": g.order,
        "rank": g.rank,
        "normalization": g.normalization,
        "series": _series_maps(g.series, g.lattice),
    }


def _cmd_validate(args):
    fan, pair, perturbation = parse_input(args.input)
    report = validate_fan(fan)
    payload = {
        **_echo(args.input, fan, pair, perturbation),
        "rank": fan.rank,
        "rays": len(fan.rays),
        "maximal_cones": len(fan.max_cones),
        "simplicial": report.simplicial,
        "smooth": report.smooth,
        "complete": report.complete,
        "canonical_q_trivial": q_trivial(fan, [-1] * len(fan.rays)),
    }
    lines = [
        "rank %d, %d rays, %d maximal cones"
        % (fan.rank, len(fan.rays), len(fan.max_cones)),
        "smooth: %s" % report.smooth,
        "complete: %s" % report.complete,
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def _input_pair(fan, pair):
    if pair is None:
        from .toric import PairCoefficients
        return PairCoefficients((0,) * len(fan.rays))
    return pair


def _cmd_genus(args):
    started = time.time()
    fan, pair, perturbation = parse_input(args.input)
    pair = _input_pair(fan, pair)
    g = ell_pair(fan, pair, args.order)
    payload = {
        **_echo(args.input, fan, pair, perturbation),
        **_genus_payload(g),
    }
    lines = ["pair genus to q-order %d (normalization: %s)"
             % (g.order, g.normalization),
             render_qseries(g.series, g.lattice),
             "elapsed: %.2fs" % (time.time() - started)]
    _emit(args, payload, lines)
    return EXIT_OK


def _equivariant(args):
    fan, pair, perturbation = parse_input(args.input)
    pair = _input_pair(fan, pair)
    if args.xi is None:
        raise FanError("equivariant jobs need --xi")
    eq = ell_pair_equivariant(fan, pair, args.xi, args.order,
                              validation_extra=args.validation_extra)
    return fan, pair, perturbation, eq


def _cmd_equivariant(args):
    started = time.time()
    fan, pair, perturbation, eq = _equivariant(args)
    payload = {
        **_echo(args.input, fan, pair, perturbation),
        "order": eq.order,
        "rank": eq.rank,
        "xi": list(eq.xi),
        "coefficients": {"q^%d" % k: frac_coeff_map(c, eq.lattice)
                         for k, c in enumerate(eq.coeffs)},
        "sample_log": [dict(entry) for entry in eq.sample_log],
    }
    lines = ["equivariant genus to q-order %d, xi = %s"
             % (eq.order, list(eq.xi))]
    for k, c in enumerate(eq.coeffs):
        lines.append("q^%d: %s" % (k, render_frac(c, eq.lattice)))
    for entry in eq.sample_log:
        lines.append("q^%d window %s, %d samples + %d validation"
                     % (entry["q_order"], entry["window"],
                        len(entry["points"]), len(entry["validation_points"])))
    lines.append("elapsed: %.2fs" % (time.time() - started))
    _emit(args, payload, lines)
    return EXIT_OK


def _cmd_rigidity(args):
    fan, pair, perturbation, eq = _equivariant(args)
    report = check_rigidity(eq)
    supports = [[str(x) for x in sup] for sup in report["t_support"]]
    payload = {
        **_echo(args.input, fan, pair, perturbation),
        "order": eq.order,
        "xi": list(eq.xi),
        "rigid": report["rigid"],
        "t_support": supports,
    }
    lines = ["rigid: %s" % report["rigid"]]
    for k, sup in enumerate(supports):
        lines.append("q^%d t-support: %s" % (k, " ".join(sup) or "(empty)"))
    _emit(args, payload, lines)
    return EXIT_OK


def _cmd_vanishing(args):
    fan, pair, perturbation = parse_input(args.input)
    pair = _input_pair(fan, pair)
    rep = check_vanishing_cy(fan, pair, args.order, xi=args.xi)
    payload = {
        **_echo(args.input, fan, pair, perturbation),
        "order": args.order,
        "calabi_yau": rep.calabi_yau,
        "vanishes": rep.vanishes,
    }
    lines = ["Calabi-Yau pair: %s" % rep.calabi_yau,
             "identically zero to order %d: %s" % (args.order, rep.vanishes)]
    if rep.witness is not None:
        from .genus import lattice_for
        lattice = lattice_for(pair)
        k, c = rep.witness
        payload["witness"] = {"q_order": k,
                              "coefficient": frac_coeff_map(c, lattice)}
        lines.append("witness: q^%d coefficient %s"
                     % (k, render_frac(c, lattice)))
    _emit(args, payload, lines)
    return EXIT_OK


def _cmd_blowup(args):
    fan, pair, perturbation = parse_input(args.input)
    pair = _input_pair(fan, pair)
    ok = verify_blowup_invariance(fan, pair, args.cone, args.subset,
                                  args.order)
    payload = {
        **_echo(args.input, fan, pair, perturbation),
        "order": args.order,
        "cone": list(args.cone),
        "subset": list(args.subset),
        "invariant": ok,
    }
    _emit(args, payload, ["blow-up invariance: %s" % ok])
    return EXIT_OK


def _cmd_singular(args):
    fan, pair, perturbation = parse_input(args.input)
    g = ell_singular_toric(fan, args.order)
    payload = {
        **_echo(args.input, fan, pair, perturbation),
        **_genus_payload(g),
    }
    _emit(args, payload, ["singular genus to q-order %d" % g.order,
                          render_qseries(g.series, g.lattice)])
    return EXIT_OK


def _cmd_limit(args):
    fan, pair, perturbation = parse_input(args.input)
    if pair is None or perturbation is None:
        raise FanError("limit jobs need both pair and perturbation records")
    if not validate_perturbation(fan, pair, perturbation):
        raise FanError("perturbation is not in the admissible class")
    pg = perturbed_ell(fan, pair, perturbation, args.order)
    lim = limit_eps(pg)
    echo = _echo(args.input, fan, pair, perturbation)
    if isinstance(lim, PoleAtEpsilonZero):
        principal = []
        for k, parts in enumerate(lim.principal):
            principal.append({
                "q_order": k,
                "terms": {str(exp): frac_coeff_map(c, pg.lattice)
                          for exp, c in sorted(parts.items())},
            })
        payload = {
            **echo,
            "order": lim.order,
            "status": "pole",
            "simple": lim.simple,
            "principal_part": principal,
        }
        lines = ["pole at epsilon = 0 (simple: %s)" % lim.simple]
        for entry in principal:
            for exp, cmap in entry["terms"].items():
                lines.append("q^%d eps^%s: %s"
                             % (entry["q_order"], exp, json.dumps(cmap,
                                                                  sort_keys=True)))
        _emit(args, payload, lines)
        return EXIT_POLE
    payload = {
        **echo,
        "status": "finite",
        **_genus_payload(lim),
    }
    _emit(args, payload, ["finite limit at epsilon = 0",
                          render_qseries(lim.series, lim.lattice)])
    return EXIT_OK


def _cmd_suite(args):
    results = run_battery()
    payload = {
        "criteria": [
            {"number": r.number, "title": r.title, "passed": r.passed,
             "detail": r.detail}
            for r in results
        ],
        "all_passed": all(r.passed for r in results),
    }
    lines = []
    for r in results:
        lines.append("[%s] %2d. %s  (%s)"
                     % ("PASS" if r.passed else "FAIL", r.number, r.title,
                        r.detail))
    lines.append("overall: %s"
                 % ("PASS" if payload["all_passed"] else "FAIL"))
    _emit(args, payload, lines)
    return EXIT_OK if payload["all_passed"] else EXIT_INTERNAL


def build_parser():
    parser = argparse.ArgumentParser(
        prog="toricell",
        description="Exact elliptic genera of toric varieties and pairs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, needs_input=True):
        p = sub.add_parser(name, help=help_text)
        if needs_input:
            p.add_argument("input", help="fan description file")
        p.add_argument("--order", type=int, default=4,
                       help="q-series truncation order (default 4)")
        p.add_argument("--xi", type=_parse_xi, default=None,
                       help="one-parameter subgroup, e.g. 1,2")
        p.add_argument("--format", choices=("text", "structured"),
                       default="text")
        p.add_argument("--validation-extra", type=int, default=3,
                       help="surplus interpolation checkpoints (default 3)")
        p.set_defaults(func=func)
        return p

    add("validate", _cmd_validate, "structural fan checks")
    add("genus", _cmd_genus, "pair genus via nilpotent localization")
    add("equivariant", _cmd_equivariant,
        "equivariant genus via certified interpolation in t")
    add("rigidity", _cmd_rigidity, "t-support report per q-order")
    add("vanishing", _cmd_vanishing, "Calabi-Yau vanishing check")
    blowup = add("blowup", _cmd_blowup, "blow-up functoriality check")
    blowup.add_argument("--cone", type=_parse_indices, required=True,
                        help="maximal cone as ray indices, e.g. 0,1")
    blowup.add_argument("--subset", type=_parse_indices, required=True,
                        help="face rays to sum for the new ray")
    add("singular", _cmd_singular, "singular genus via toric resolution")
    add("limit", _cmd_limit, "epsilon-perturbation limit or principal part")
    add("suite", _cmd_suite, "run the built-in verification battery",
        needs_input=False)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "order", 0) < 0:
        print("input error: --order must be >= 0", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except ParseError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except PRECONDITION_ERRORS as exc:
        print("precondition failure: %s" % exc, file=sys.stderr)
        return EXIT_PRECONDITION
    except (ArithmeticError, InterpolationInconsistent) as exc:
        print("internal invariant violation: %s" % exc, file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
