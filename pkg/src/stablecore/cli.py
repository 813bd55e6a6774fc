"""``stablecore`` command line.

Exit codes: 0 success, 2 unreadable input, 3 not strongly stable,
4 no G_d property, 5 a certificate failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .corecalc import (
    GdFailure,
    certify_core_upper_bound,
    certify_lower_bound_obstruction,
    core,
    core_strong_stability_check,
    northcott_check,
    socle_check,
)
from .diagred import (
    NonMembership,
    certify_Im_in_J,
    certify_reduction,
    diagonal_reduction,
    run_algorithm,
    verify_Sh_equals_Th,
)
from .polyarith import parse_monomial
from .stableideal import (
    NotStronglyStable,
    StableIdeal2,
    TableauError,
    analytic_spread,
    from_generators,
    has_Gd,
    render_tableau,
    trim,
)

EXIT_OK, EXIT_PARSE, EXIT_STABILITY, EXIT_GD, EXIT_CERT = 0, 2, 3, 4, 5

log = logging.getLogger("stablecore")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def load_ideal(source: str) -> StableIdeal2:
    """Read ``{"d": .., "rows": [..]}`` or ``{"d": .., "generators": [..]}`` from a path, ``-`` or inline JSON."""
    if source.lstrip().startswith("{"):
        text = source
    elif source == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise CliError(f"cannot read {source}: {exc}", EXIT_PARSE) from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"invalid JSON: {exc}", EXIT_PARSE) from exc
    if not isinstance(data, dict) or not isinstance(data.get("d"), int):
        raise CliError('input must be an object with an integer "d"', EXIT_PARSE)
    d = data["d"]
    try:
        if "rows" in data and "generators" not in data:
            rows = data["rows"]
            if not isinstance(rows, list) or not all(isinstance(r, int) for r in rows):
                raise CliError('"rows" must be a list of integers', EXIT_PARSE)
            return StableIdeal2(d, tuple(rows))
        if "generators" in data and "rows" not in data:
            gens = [parse_monomial(str(s), d) for s in data["generators"]]
            return from_generators(gens, d)
    except NotStronglyStable as exc:
        raise CliError(f"not strongly stable: {exc}", EXIT_STABILITY) from exc
    except (TableauError, ValueError) as exc:
        raise CliError(f"invalid ideal: {exc}", EXIT_PARSE) from exc
    raise CliError('give exactly one of "rows" or "generators"', EXIT_PARSE)


def _prepare(args: argparse.Namespace) -> tuple[StableIdeal2, StableIdeal2]:
    if args.input is None:
        raise CliError("--input is required for this command", EXIT_PARSE)
    original = load_ideal(args.input)
    work, _ = trim(original)
    if work.d > args.max_d:
        raise CliError(f"d={work.d} exceeds --max-d {args.max_d}", EXIT_PARSE)
    return original, work


def _ideal_json(original: StableIdeal2, work: StableIdeal2, no_trim: bool) -> dict:
    return {"d": original.d, "rows": list(original.rows),
            "working_d": original.d if no_trim else work.d,
            "trimmed": work.d != original.d}


def _require_gd(work: StableIdeal2) -> None:
    diag = has_Gd(work)
    if not diag.holds:
        raise CliError(
            f"no G_d property: x{diag.g - 1}*x{diag.d} is not in I "
            f"(s={diag.s}, prime ({', '.join(f'x{i}' for i in diag.prime)}) "
            f"needs {len(diag.localized_generators)} > {len(diag.prime)} local generators)",
            EXIT_GD)


def cmd_check(args: argparse.Namespace) -> tuple[dict, str, int]:
    original, work = _prepare(args)
    diag = has_Gd(work) if work.g >= 1 else None
    shown = original if args.no_trim else work
    report = {
        "ideal": _ideal_json(original, work, args.no_trim),
        "g": work.g,
        "Gd": diag.to_json(),
        "analytic_spread": analytic_spread(work),
    }
    lines = [
        f"d = {original.d}, rows = {list(original.rows)}, g = {work.g}",
        f"trimmed to d' = {work.d}" if work.d != original.d else "no trimming needed",
        render_tableau(shown, diag.cell if diag.holds and diag.cell else None),
        f"G_d: {'yes' if diag.holds else 'no'}"
        + (f" ({diag.convention})" if diag.convention else "")
        + ("" if diag.holds else f"; s = {diag.s}, t = {diag.t}, witness {[str(m) for m in diag.witness]}"),
        f"analytic spread = {report['analytic_spread']}",
    ]
    return report, "\n".join(lines), EXIT_OK


def cmd_core(args: argparse.Namespace) -> tuple[dict, str, int]:
    original, work = _prepare(args)
    _require_gd(work)
    result = core(original)
    report = {"ideal": _ideal_json(original, work, args.no_trim), **result.to_json()}
    lines = [f"core = I*m^{result.g - 1}: {len(result.generators)} generators of degree {result.g + 1}"
             + (" (formula-extrapolated, g = 1)" if result.provenance != "theorem" else "")]
    if result.trimmed_from is not None:
        lines.append(f"computed over d' = {result.working_d}, extended to d = {result.trimmed_from}")
    lines.extend(str(m) for m in result.generators)
    return report, "\n".join(lines), EXIT_OK


def cmd_reduction(args: argparse.Namespace) -> tuple[dict, str, int]:
    original, work = _prepare(args)
    _require_gd(work)
    red = diagonal_reduction(work)
    rep = certify_reduction(work, red)
    report = {"ideal": _ideal_json(original, work, args.no_trim), "g": work.g,
              "diagonal_reduction": red.to_json(), "reduction": rep.to_json()}
    lines = [f"f{n} = {f}" for n, f in enumerate(red.gens, start=1)]
    lines.append(f"betas = {list(red.betas)}")
    lines.append(f"I^{work.g} = J*I^{work.g - 1}: {rep.reduction_holds}; "
                 f"least reduction number: {rep.reduction_number}")
    return report, "\n".join(lines), EXIT_OK if rep.reduction_holds else EXIT_CERT


def cmd_socle(args: argparse.Namespace) -> tuple[dict, str, int]:
    d = _dimension(args, minimum=1)
    rep = socle_check(d)
    text = f"Soc(R/J) in degree {d}: {[str(p) for p in rep.socle]}; matches x1^{d}: {rep.matches}"
    return rep.to_json(), text, EXIT_OK if rep.matches else EXIT_CERT


def cmd_northcott(args: argparse.Namespace) -> tuple[dict, str, int]:
    d = _dimension(args, minimum=2)
    rep = northcott_check(d)
    text = "\n".join([
        f"det(A) = {rep.det}",
        f"A*x = f: {rep.rows_match}",
        f"det(A) - x1^{d} in J: {rep.det_identity}",
        f"x1^{d} - (-1)^{rep.c}*x{d}^{d} in J: {rep.sign_identity}",
        f"(det A) + J = J : m in degree {d}: {rep.colon_match}",
    ])
    return rep.to_json(), text, EXIT_OK if rep.ok else EXIT_CERT


def cmd_algorithm(args: argparse.Namespace) -> tuple[list | dict, str, int]:
    original, work = _prepare(args)
    s = run_algorithm(work.d, work.g)
    check = verify_Sh_equals_Th(s)
    rows = s.to_jsonl()
    text = "\n".join(f"{r['index']:>4}  {r['monomial']:<20} S_{r['h']}[{r['j']}]" for r in rows)
    text += f"\nstrata agree with revlex order: {check.ok}"
    return rows, text, EXIT_OK if check.ok else EXIT_CERT


def cmd_certify_all(args: argparse.Namespace) -> tuple[dict, str, int]:
    original, work = _prepare(args)
    _require_gd(work)
    g = work.g
    red = diagonal_reduction(work)
    result = core(work)
    checks: dict = {"Gd": True}
    try:
        certify_Im_in_J(work, red)
        checks["Im_in_J"] = True
    except NonMembership as exc:
        log.error("%s", exc)
        checks["Im_in_J"] = False
    rep = certify_reduction(work, red)
    checks["reduction"] = rep.reduction_holds
    checks["reduction_number_leq"] = g - 1 if rep.reduction_holds else None
    checks["reduction_number"] = rep.reduction_number
    checks["strata"] = verify_Sh_equals_Th(run_algorithm(work.d, g)).ok
    if g >= 2:
        obstruction = certify_lower_bound_obstruction(work)
        checks["socle"] = obstruction.ok
        checks["lower_bound"] = obstruction.to_json()
        north = northcott_check(g)
        checks["northcott"] = {"det_identity": north.det_identity, "sign_identity": north.sign_identity,
                               "colon_match": north.colon_match, "rows_match": north.rows_match}
    else:
        checks["socle"] = socle_check(1).matches
        checks["northcott"] = None
    upper = certify_core_upper_bound(work, trials=args.trials, seed=args.seed)
    checks["upper_bound"] = upper.ok
    checks["upper_bound_trials"] = upper.passed
    checks["core_strongly_stable"] = core_strong_stability_check(result)
    report = {
        "ideal": _ideal_json(original, work, args.no_trim),
        "g": g,
        "provenance": result.provenance,
        "seed": args.seed,
        "core_generators": [str(m) for m in core(original).generators],
        "checks": checks,
    }
    failed = _failed_checks(checks)
    lines = [f"{name}: {'FAIL' if name in failed else 'PASS'}"
             for name in ("Im_in_J", "reduction", "strata", "socle", "northcott", "upper_bound",
                          "core_strongly_stable")]
    lines.append(f"core: {len(report['core_generators'])} generators of degree {g + 1}")
    if failed:
        print(f"failed checks: {', '.join(failed)}", file=sys.stderr)
    return report, "\n".join(lines), EXIT_CERT if failed else EXIT_OK


def _failed_checks(checks: dict) -> list[str]:
    failed = [k for k in ("Im_in_J", "reduction", "strata", "socle", "upper_bound", "core_strongly_stable")
              if checks.get(k) is False]
    north = checks.get("northcott")
    if north is not None and not all(north.values()):
        failed.append("northcott")
    return failed


def _dimension(args: argparse.Namespace, minimum: int) -> int:
    if args.d is None:
        raise CliError("--d is required for this command", EXIT_PARSE)
    if args.d < minimum:
        raise CliError(f"--d must be at least {minimum}", EXIT_PARSE)
    if args.d > args.max_d:
        raise CliError(f"d={args.d} exceeds --max-d {args.max_d}", EXIT_PARSE)
    return args.d


COMMANDS = {
    "check": cmd_check,
    "core": cmd_core,
    "reduction": cmd_reduction,
    "socle": cmd_socle,
    "northcott": cmd_northcott,
    "algorithm": cmd_algorithm,
    "certify-all": cmd_certify_all,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--max-d", type=int, default=8, help="largest dimension accepted (default 8)")
    common.add_argument("-v", "--verbose", action="store_true")

    ideal = argparse.ArgumentParser(add_help=False)
    ideal.add_argument("--input", help="JSON file, '-' for stdin, or inline JSON object")
    ideal.add_argument("--no-trim", action="store_true",
                       help="report in the ambient ring (computation still uses the trimmed ring)")

    parser = argparse.ArgumentParser(prog="stablecore", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common, ideal], help="validate, height, G_d, analytic spread")
    sub.add_parser("core", parents=[common, ideal], help="core generators I*m^(g-1)")
    sub.add_parser("reduction", parents=[common, ideal], help="diagonal reduction and reduction number")
    sub.add_parser("algorithm", parents=[common, ideal], help="the ordered set S as JSON lines")
    cert = sub.add_parser("certify-all", parents=[common, ideal], help="run every certificate")
    cert.add_argument("--seed", type=int, default=0)
    cert.add_argument("--trials", type=int, default=5)
    for name in ("socle", "northcott"):
        p = sub.add_parser(name, parents=[common], help=f"{name} check for the diagonal reduction of m^2")
        p.add_argument("--d", type=int, help="number of variables")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        report, text, code = COMMANDS[args.command](args)
    except CliError as exc:
        print(f"stablecore: {exc}", file=sys.stderr)
        return exc.code
    except GdFailure as exc:
        print(f"stablecore: {exc}", file=sys.stderr)
        return EXIT_GD
    if args.json:
        if args.command == "algorithm":
            sys.stdout.write("".join(json.dumps(r) + "\n" for r in report))
        else:
            sys.stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
