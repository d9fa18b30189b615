"""Command-line front end.

Subcommands mirror the library modules:

* ``foam sphere M`` / ``foam theta M1 M2 M3`` -- closed-foam values;
* ``web info|tait|predict-rank FILE`` -- web inspection and counting;
* ``ops unknot|theta [--show] [--check] [--decompose]`` -- operator models;
* ``complex analyze FILE | cone-p | handcuffs-linked | certify-order4``
  -- differential-module analysis;
* ``verify-all`` -- the full verification suite.

Web and complex arguments are file paths; a bare name (``dodecahedron``)
falls back to the shipped corpus.  Output is deterministic byte-for-byte
for fixed inputs and flags (the opt-in ``verify-all --timings`` column is
the one exception); ``--json`` switches every subcommand to a
machine-readable report.

Exit codes: 0 success, 1 failed checks, 2 usage error, 3 malformed
input, 4 invalid web or complex, 5 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from . import acceptance, homology, linalg, operators, webs
from .errors import InputError, InternalConsistencyError, ValidationError
from .foams import eval_sphere, eval_theta
from .homology import DIRECTIONS
from .laurent import P

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_VALIDATION = 4
EXIT_INTERNAL = 5

#: Values grow as powers of P; beyond desk scale there is nothing to see.
MAX_CLI_DOTS = 64


def _emit_json(data: object) -> None:
    print(json.dumps(data, sort_keys=True, indent=2))


def _parse_direction(text: str) -> tuple[int, int, int]:
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        parts = ()
    if parts not in DIRECTIONS:
        allowed = " or ".join(",".join(str(c) for c in d) for d in DIRECTIONS)
        raise argparse.ArgumentTypeError(
            f"direction must be {allowed}, got {text!r}"
        )
    return parts  # type: ignore[return-value]


def _checked_dots(value: str) -> int:
    m = int(value)
    if m < 0:
        raise argparse.ArgumentTypeError("dot counts must be nonnegative")
    if m > MAX_CLI_DOTS:
        raise argparse.ArgumentTypeError(
            f"dot counts above {MAX_CLI_DOTS} are not supported on the CLI"
        )
    return m


def _resolve_web(target: str) -> webs.Web:
    path = Path(target)
    if path.exists():
        return webs.load_web(path)
    if "/" not in target and "\\" not in target and not target.endswith(".json"):
        return webs.corpus_web(target)
    raise InputError(f"{target}: no such file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="webfoam",
        description="Exact web/foam algebra: Tait counts, operator models, "
        "and torsion analysis over F2[T1^±,T2^±,T3^±].",
        epilog="exit codes: 0 ok, 1 failed checks, 2 usage, 3 bad input, "
        "4 invalid object, 5 internal inconsistency",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    foam = sub.add_parser("foam", help="closed-foam evaluations")
    foam_sub = foam.add_subparsers(dest="foam_command", required=True)
    sphere = foam_sub.add_parser("sphere", help="dotted 2-sphere value")
    sphere.add_argument("dots", type=_checked_dots)
    sphere.add_argument("--json", action="store_true")
    theta = foam_sub.add_parser("theta", help="dotted theta-foam value")
    theta.add_argument("dots", type=_checked_dots, nargs=3)
    theta.add_argument("--json", action="store_true")

    web = sub.add_parser("web", help="web inspection and Tait counting")
    web_sub = web.add_subparsers(dest="web_command", required=True)
    for name, help_text in (
        ("info", "validate and summarize a web"),
        ("tait", "count Tait colorings (two independent methods)"),
        ("predict-rank", "matching-formula rank prediction"),
    ):
        cmd = web_sub.add_parser(name, help=help_text)
        cmd.add_argument("web", help="path to a web JSON file, or a corpus name")
        cmd.add_argument("--json", action="store_true")

    ops = sub.add_parser("ops", help="edge-operator models")
    ops_sub = ops.add_subparsers(dest="ops_command", required=True)
    for name in ("unknot", "theta"):
        cmd = ops_sub.add_parser(name, help=f"the {name} operator model")
        cmd.add_argument("--show", action="store_true", help="print the matrices")
        cmd.add_argument(
            "--check", action="store_true", help="verify the operator relations"
        )
        cmd.add_argument(
            "--decompose",
            action="store_true",
            help="fraction-field ranks of all edge-subset summands",
        )
        cmd.add_argument("--json", action="store_true")

    cx = sub.add_parser("complex", help="differential-module analysis")
    cx_sub = cx.add_subparsers(dest="complex_command", required=True)
    analyze = cx_sub.add_parser("analyze", help="analyze a complex JSON file")
    analyze.add_argument("complex", help="path to a complex JSON file")
    analyze.add_argument(
        "--direction",
        type=_parse_direction,
        action="append",
        help="substitution direction (1,1,1 or 1,1,0); may repeat",
    )
    analyze.add_argument("--seed", type=int, default=0)
    analyze.add_argument("--json", action="store_true")
    for name, help_text in (
        ("cone-p", "the mapping cone of P times the identity on rank 2"),
        ("handcuffs-linked", "the rank-6 cone of u^2 + P on the circle model"),
    ):
        cmd = cx_sub.add_parser(name, help=help_text)
        cmd.add_argument("--direction", type=_parse_direction, action="append")
        cmd.add_argument("--seed", type=int, default=0)
        cmd.add_argument("--json", action="store_true")
    certify = cx_sub.add_parser(
        "certify-order4", help="order-of-vanishing certificate for P at (1,1,1)"
    )
    certify.add_argument("--json", action="store_true")

    verify = sub.add_parser("verify-all", help="run the full verification suite")
    verify.add_argument(
        "--only",
        help="comma-separated check keys (default: all); "
        f"available: {', '.join(sorted(acceptance.CHECKS))}",
    )
    verify.add_argument(
        "--seed", type=int, default=0, help="seed for the randomized-rank suite"
    )
    verify.add_argument(
        "--corpus", help="override the corpus directory for the Tait check"
    )
    verify.add_argument(
        "--timings",
        action="store_true",
        help="include wall-clock timings (output is then not byte-stable)",
    )
    verify.add_argument("--json", action="store_true")
    return parser


# ---------------------------------------------------------------------------
# subcommand bodies
# ---------------------------------------------------------------------------


def _cmd_foam(args: argparse.Namespace) -> int:
    if args.foam_command == "sphere":
        value = eval_sphere(args.dots)
        label = f"sphere({args.dots})"
    else:
        value = eval_theta(*args.dots)
        label = f"theta({', '.join(str(m) for m in args.dots)})"
    if args.json:
        _emit_json({"foam": label, "value": str(value)})
    else:
        print(value)
    return EXIT_OK


def _web_summary(web: webs.Web) -> dict:
    kinds = {"edge": 0, "loop": 0, "circle": 0}
    for e in web.edges:
        kinds[e.kind] += 1
    sets = webs.one_sets(web)
    even = sum(1 for s in sets if s.is_even())
    return {
        "name": web.name,
        "vertices": len(web.vertices),
        "edges": kinds["edge"],
        "loops": kinds["loop"],
        "circles": kinds["circle"],
        "one_sets": len(sets),
        "even_one_sets": even,
        "declared_planar": web.planar,
        "abstract_planar": webs.is_abstract_planar(web),
    }


def _cmd_web(args: argparse.Namespace) -> int:
    web = _resolve_web(args.web).validate()
    if args.web_command == "info":
        summary = _web_summary(web)
        if args.json:
            _emit_json(summary)
        else:
            for key in sorted(summary):
                print(f"{key}: {summary[key]}")
        return EXIT_OK
    if args.web_command == "tait":
        bt = webs.count_tait_backtracking(web)
        mf = webs.count_tait_matching_formula(web)
        if bt != mf:
            raise InternalConsistencyError(
                f"backtracking count {bt} != matching-formula count {mf}"
            )
        if args.json:
            _emit_json({"web": web.name, "tait_colorings": bt})
        else:
            print(bt)
        return EXIT_OK
    # predict-rank
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        predicted = webs.predict_planar_rank(web)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    if args.json:
        _emit_json(
            {
                "web": web.name,
                "predicted_rank": predicted,
                "planar_backed": not caught,
            }
        )
    else:
        print(predicted)
    return EXIT_OK


def _cmd_ops(args: argparse.Namespace) -> int:
    if args.ops_command == "unknot":
        module = operators.unknot_module()
        vertex = None
    else:
        module = operators.theta_module()
        vertex = ("e1", "e2", "e3")
    report: dict = {"model": args.ops_command, "rank": module.rank}
    lines: list[str] = [f"model: {args.ops_command}", f"rank: {module.rank}"]
    failed = False

    if args.show:
        matrices = {
            name: [[str(x) for x in row] for row in mat]
            for name, mat in sorted(module.operators.items())
        }
        report["operators"] = matrices
        for name, rows in matrices.items():
            lines.append(f"operator {name}:")
            for row in rows:
                lines.append("  [" + ", ".join(row) + "]")

    if args.check:
        checks: list[tuple[str, bool]] = []
        if vertex is not None:
            checks.extend(operators.check_vertex_relations(module, vertex).entries)
        else:
            u = module.operator("e")
            cubic = linalg.mat_add(
                linalg.mat_mul(linalg.mat_mul(u, u), u),
                linalg.mat_scale(P, u),
            )
            checks.append(("e^3 + P*e = 0", linalg.is_zero_matrix(cubic)))
        report["checks"] = {name: ok for name, ok in checks}
        for name, ok in checks:
            lines.append(f"{'PASS' if ok else 'FAIL'}  {name}")
            failed |= not ok

    if args.decompose:
        decomposition = operators.edge_decomposition(module, vertex)
        ranks = {
            "{" + ",".join(sorted(subset)) + "}": r
            for subset, r in decomposition.subset_ranks.items()
        }
        report["summand_ranks"] = ranks
        lines.append("summand ranks over Frac(R):")
        for key in sorted(ranks):
            lines.append(f"  {key or '{}'}: {ranks[key]}")
        if decomposition.projection_checks:
            report["projections"] = {
                name: ok for name, ok in decomposition.projection_checks
            }
            for name, ok in decomposition.projection_checks:
                lines.append(f"{'PASS' if ok else 'FAIL'}  {name}")
                failed |= not ok

    if args.json:
        _emit_json(report)
    else:
        print("\n".join(lines))
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def _analyze_module(
    module: homology.DifferentialModule,
    directions: list[tuple[int, int, int]] | None,
    seed: int,
    as_json: bool,
    label: str,
) -> int:
    directions = directions or list(DIRECTIONS)
    reports = [module.bockstein(d) for d in directions]
    data = {
        "complex": label,
        "rank": module.rank,
        "frac_rank": module.frac_rank(seed=seed),
        "f2_dim": module.f2_dim(),
        "directions": [r.to_dict() for r in reports],
    }
    if module.two_term is not None:
        ker, coker = module.two_term_ranks(seed=seed)
        data["map_kernel_rank"] = ker
        data["map_cokernel_rank"] = coker
    if as_json:
        _emit_json(data)
    else:
        print(f"complex: {label}")
        print(f"rank: {module.rank}")
        print(f"frac_rank: {data['frac_rank']}")
        print(f"f2_dim: {data['f2_dim']}")
        if "map_kernel_rank" in data:
            print(
                f"two-term map: kernel rank {data['map_kernel_rank']}, "
                f"cokernel rank {data['map_cokernel_rank']}"
            )
        for r in reports:
            torsion = (
                "{" + ",".join(str(a) for a in r.torsion_exponents) + "}"
                if r.torsion_exponents
                else "{}"
            )
            print(
                f"direction {','.join(str(c) for c in r.direction)}: "
                f"r={r.r} l={r.l} torsion={torsion}"
            )
    return EXIT_OK


def _cmd_complex(args: argparse.Namespace) -> int:
    if args.complex_command == "certify-order4":
        certificate = homology.order_four_certificate()
        if args.json:
            _emit_json(
                {
                    "entries": [
                        {"claim": claim, "computed": got, "passed": ok}
                        for claim, got, ok in certificate.entries
                    ],
                    "passed": certificate.all_pass,
                }
            )
        else:
            print(certificate)
        return EXIT_OK if certificate.all_pass else EXIT_CHECK_FAILED
    if args.complex_command == "analyze":
        path = Path(args.complex)
        module = homology.load_complex(path)
        label = path.name
    elif args.complex_command == "cone-p":
        module = homology.cone_of_p()
        label = "cone-p"
    else:
        module = homology.linked_handcuffs_model()
        label = "handcuffs-linked"
    return _analyze_module(module, args.direction, args.seed, args.json, label)


def _cmd_verify_all(args: argparse.Namespace) -> int:
    keys = None
    if args.only:
        keys = [k.strip() for k in args.only.split(",") if k.strip()]
    corpus = Path(args.corpus) if args.corpus else None
    if corpus is not None and not corpus.is_dir():
        raise InputError(f"{corpus}: not a directory")
    try:
        results = acceptance.run_all(keys, corpus=corpus, seed=args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if args.json:
        payload = []
        for r in results:
            entry = r.to_dict()
            if not args.timings:
                del entry["seconds"]
            payload.append(entry)
        _emit_json(
            {"checks": payload, "passed": all(r.passed for r in results)}
        )
    else:
        width = max(len(r.key) for r in results)
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            stamp = f"  ({r.seconds:6.2f}s)" if args.timings else ""
            print(f"{status}  {r.key:<{width}}{stamp}  {r.detail}")
        print("all checks passed" if all(r.passed for r in results) else "FAILURES")
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "foam":
            return _cmd_foam(args)
        if args.command == "web":
            return _cmd_web(args)
        if args.command == "ops":
            return _cmd_ops(args)
        if args.command == "complex":
            return _cmd_complex(args)
        return _cmd_verify_all(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except InternalConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
