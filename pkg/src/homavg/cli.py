"""Command-line front end.

Exit codes: 0 when every check passes, 1 when some check has witnesses,
2 for malformed input or a refused search.
"""

import argparse
import json
import sys

from .classify import SearchSpace, enumerate_profiles, match_families
from .errors import HomAvgError, SearchTooLarge
from .families import (
    DEGREE_ZERO,
    ROOT_OF_UNITY,
    induced_closed_form_crosscheck,
    induced_multiplicativity_verdict,
    make_family,
)
from .graded import HomogeneousOperator, make_algebra
from .laws import (
    check_averaging,
    check_hom_jacobi,
    check_multiplicative,
    check_qnumber_identities,
    check_skew,
    check_subalgebra_ideal,
    criterion_multiplicative,
)
from .scalars import field_make

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

CASE_ALIASES = {"1": ROOT_OF_UNITY, "2": DEGREE_ZERO, ROOT_OF_UNITY: ROOT_OF_UNITY, DEGREE_ZERO: DEGREE_ZERO}
PARAM_FLAGS = ("beta", "nu", "gamma", "mu", "theta", "nu1", "nu2", "nu3", "nu4")


class UsageError(HomAvgError):
    pass


def _field_arg(text):
    text = text.strip()
    if text.startswith("{"):
        return field_make(json.loads(text))
    return field_make(text)


def family_descriptor(spec, args):
    """Turn 'witt:3' or 'w22:<case>:<variant>' plus parameter flags into a family descriptor."""
    parts = spec.split(":")
    if parts[0] == "witt" and len(parts) == 2:
        desc = {"family": "witt", "variant": int(parts[1])}
    elif parts[0] == "w22" and len(parts) == 3 and parts[1] in CASE_ALIASES:
        desc = {"family": "w22", "case": CASE_ALIASES[parts[1]], "variant": int(parts[2])}
    else:
        raise UsageError(f"bad family spec {spec!r}; use witt:<v> or w22:<case>:<v>")
    desc["d"] = args.get("d", 0)
    for key in PARAM_FLAGS:
        if args.get(key) is not None:
            desc[key] = args[key]
    return desc


def build_parser():
    p = argparse.ArgumentParser(prog="homavg", description="Exact checks for graded Hom-algebras and averaging operators.")
    p.add_argument("--config", help="JSON file whose keys provide defaults for the flags")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, M_default):
        sp.add_argument("--field", default="qfunc", help="rational:<a>[/<b>], cyclotomic:<N>, qfunc, or a JSON descriptor")
        sp.add_argument("--M", type=int, default=M_default, help="grading window")
        sp.add_argument("--out", help="write the JSON report here instead of stdout")
        sp.add_argument("--no-timing", dest="timing", action="store_false", help="omit millis fields")

    def op_flags(sp):
        sp.add_argument("--family", help="witt:<v> or w22:<case>:<v> (case 1/root_of_unity, 2/degree_zero)")
        sp.add_argument("--op", dest="operator", help="operator JSON file with a table or family profile")
        sp.add_argument("--d", type=int, default=0)
        for key in PARAM_FLAGS:
            sp.add_argument(f"--{key}", type=int if key == "mu" else str)

    va = sub.add_parser("verify-algebra", help="skew, Hom-Jacobi and multiplicativity")
    common(va, 5)
    va.add_argument("--algebra", choices=("witt", "w22"), default="witt")
    va.add_argument("--k", type=int, default=0)

    co = sub.add_parser("check-op", help="averaging law and subalgebra/ideal facts")
    common(co, None)
    op_flags(co)

    ind = sub.add_parser("induce", help="induced product: Hom-Leibniz, closed-form cross-check, multiplicativity")
    common(ind, 4)
    op_flags(ind)

    cl = sub.add_parser("classify", help="exhaustive profile search and family coverage")
    common(cl, 3)
    cl.add_argument("--algebra", choices=("witt", "w22"), default="witt")
    cl.add_argument("--d", type=int, default=0)
    cl.add_argument("--values", default="0,1,2", help="comma-separated value set; must contain 0")

    idn = sub.add_parser("identities", help="q-number identity suite")
    common(idn, 8)
    return p


def _load_config(argv, parser):
    """Apply a --config JSON file as flag defaults; returns the argv to parse."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, rest = pre.parse_known_args(argv)
    if not known.config:
        return argv
    with open(known.config) as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    subparsers = parser._subparsers._group_actions[0].choices
    defaults = {k.replace("-", "_"): v for k, v in cfg.items() if k != "command"}
    for sp in subparsers.values():
        sp.set_defaults(**defaults)
    if rest and rest[0] in subparsers:
        return rest
    if "command" not in cfg:
        raise UsageError("config has no command and none was given")
    return [cfg["command"]] + rest


def _operator(args, field, M):
    if args.get("operator"):
        with open(args["operator"]) as fh:
            data = json.load(fh)
        prof = data.get("profile", {})
        if prof.get("kind") == "table":
            return HomogeneousOperator.from_table_json(field, data)
        desc = dict(prof, d=data.get("degree", prof.get("d", 0)))
        return make_family(desc, field, M, verify=False)
    if not args.get("family"):
        raise UsageError("check-op and induce need --family or --op")
    return make_family(family_descriptor(args["family"], args), field, M, verify=False)


def run(args):
    """Execute one parsed command; returns (exit code, list of JSON reports)."""
    cmd = args["command"]
    field = _field_arg(args["field"]) if isinstance(args["field"], str) else field_make(args["field"])
    timing = args.get("timing", True)
    M = args.get("M")
    reports = []
    if cmd == "verify-algebra":
        alg = make_algebra(args["algebra"], field, args["k"])
        reports += [check_skew(alg, M), check_hom_jacobi(alg, M), check_multiplicative(alg, M)]
        if alg.kind == "witt":
            reports.append(criterion_multiplicative(alg, M))
        out = [r.to_json(timing) for r in reports]
    elif cmd == "check-op":
        op = _operator(args, field, M)
        M = M or (6 if op.algebra == "witt" else 4)
        alg = make_algebra(op.algebra, field)
        reports.append(check_averaging(alg, op, M, restrict_to_domain=op.is_table))
        if not op.is_table:
            reports.append(check_subalgebra_ideal(alg, op, M))
        out = [r.to_json(timing) for r in reports]
    elif cmd == "induce":
        op = _operator(args, field, M)
        reports += [induced_closed_form_crosscheck(op, M), induced_multiplicativity_verdict(op, M)]
        out = [r.to_json(timing) for r in reports]
    elif cmd == "classify":
        values = args["values"]
        if isinstance(values, str):
            values = [v for v in values.split(",") if v.strip()]
        space = SearchSpace(args["algebra"], field, args["d"], M, tuple(values))
        profiles = enumerate_profiles(space)
        coverage = match_families(profiles, space)
        reports = [profiles, coverage]
        out = [profiles.to_json(), coverage.to_json()]
        if timing:
            out[0]["millis"], out[1]["millis"] = profiles.millis, coverage.millis
    elif cmd == "identities":
        reports.append(check_qnumber_identities(field, M))
        out = [r.to_json(timing) for r in reports]
    else:
        raise UsageError(f"unknown command {cmd!r}")
    failed = any(r["verdict"] == "fail" for r in out)
    return (EXIT_FAIL if failed else EXIT_OK), out


def run_cli(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _load_config(argv, parser)
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    except (OSError, ValueError, HomAvgError) as exc:
        print(f"homavg: {exc}", file=sys.stderr)
        return EXIT_INPUT
    args = vars(ns)
    try:
        code, out = run(args)
    except SearchTooLarge as exc:
        print(f"homavg: search refused: estimate {exc.estimate} exceeds ceiling {exc.ceiling}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, ValueError, KeyError, HomAvgError) as exc:
        print(f"homavg: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = json.dumps({"command": args["command"], "exit_code": code, "reports": out}, indent=2, sort_keys=True)
    if args.get("out"):
        with open(args["out"], "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


def main():
    sys.exit(run_cli())
