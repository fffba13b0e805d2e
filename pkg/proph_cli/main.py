"""
Command Line
Subcommands: thresholds, simulate, spe, certify, verify-eq, reproduce,
welfare-sweep and serve. Exit statuses: 0 success, 2 config error,
3 capability error, 4 a certificate or reproduction check failed.
"""
import argparse
import sys
from typing import Callable, List, Optional

from pydantic import ValidationError

from config import get_settings
from core_model.errors import ConfigInvalidError, ProphetError
from core_model.loader import describe_validation_error, load_instance, read_document
from core_model.models import TieRule
from core_model.order_stats import expected_order_stats
from observability import configure_logging, get_logger
from proph_cli.models import FamilySpec, OutputSpec
from proph_cli.reports import (
    model_json,
    reproduce_csv,
    threshold_rows_csv,
    threshold_rows_json,
    welfare_csv,
    write_text_atomic,
)
from proph_cli.reproduce import reproduce_prop4, reproduce_prop6
from proph_cli.scenario import certify_instance, load_scenario, resolve_profile, run_scenario
from proph_cli.welfare import SWEEP_MODES, welfare_sweep
from solvers.best_response import verify_nash
from solvers.export import (
    certificates_csv,
    certificates_json,
    nash_report_csv,
    nash_report_json,
    threshold_table_csv,
    threshold_table_json,
)
from solvers.k_select import solve_k_select
from strategies.thresholds import threshold_table_random, threshold_table_ranked

EXIT_OK = 0
EXIT_FAIL = 4

logger = get_logger("cli")


def _emit(args: argparse.Namespace, csv_body: Callable[[], str], json_body: Callable[[], str]) -> None:
    text = csv_body() if args.format == "csv" else json_body()
    if args.out:
        write_text_atomic(args.out, text)
    else:
        sys.stdout.write(text)


def cmd_thresholds(args: argparse.Namespace) -> int:
    inst = load_instance(args.config)
    order_stats = expected_order_stats(inst, num_samples=args.samples, seed=args.seed)
    if inst.tie_rule == TieRule.RANDOM:
        rows = threshold_table_random(order_stats, inst.k)
    else:
        rows = threshold_table_ranked(order_stats, min(inst.k, inst.n))
    _emit(args, lambda: threshold_rows_csv(rows), lambda: threshold_rows_json(rows))
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    config = load_scenario(args.config)
    if args.out:
        config = config.model_copy(update={"outputs": [OutputSpec(kind=args.format, path=args.out)]})
    elif args.format != "csv":
        config = config.model_copy(update={"outputs": [
            output if output.kind != "stdout" else OutputSpec(kind="stdout", format=args.format)
            for output in config.outputs
        ]})
    run_scenario(config, num_samples=args.samples, seed=args.seed)
    return EXIT_OK


def cmd_spe(args: argparse.Namespace) -> int:
    table = solve_k_select(load_instance(args.config))
    _emit(args, lambda: threshold_table_csv(table), lambda: threshold_table_json(table))
    return EXIT_OK


def cmd_certify(args: argparse.Namespace) -> int:
    certificates = certify_instance(load_instance(args.config), args.samples, args.seed)
    _emit(args, lambda: certificates_csv(certificates), lambda: certificates_json(certificates))
    failed = [c for c in certificates if not c.passed]
    if failed:
        sys.stderr.write(f"FAIL: {len(failed)} of {len(certificates)} certificates below their claim\n")
        return EXIT_FAIL
    return EXIT_OK


def cmd_verify_eq(args: argparse.Namespace) -> int:
    config = load_scenario(args.config)
    profile = resolve_profile(config, args.samples, args.seed)
    report = verify_nash(config.instance, profile)
    _emit(args, lambda: nash_report_csv(report), lambda: nash_report_json(report))
    if not report.is_equilibrium:
        sys.stderr.write("FAIL: profile is not a Nash equilibrium\n")
        return EXIT_FAIL
    return EXIT_OK


def cmd_reproduce(args: argparse.Namespace) -> int:
    if args.construction == "prop4":
        report = reproduce_prop4(args.k, args.eps, args.n)
    else:
        report = reproduce_prop6(args.i, args.k, args.eps, args.n)
    _emit(args, lambda: reproduce_csv(report), lambda: model_json(report))
    for failure in report.failures:
        sys.stderr.write(f"FAIL: {failure}\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def _parse_k_values(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise ConfigInvalidError(f"--k-values must be comma-separated integers, got '{text}'") from e


def cmd_welfare_sweep(args: argparse.Namespace) -> int:
    try:
        if args.config:
            family_spec = FamilySpec.model_validate(read_document(args.config))
        else:
            family_spec = FamilySpec(family=args.family, n=args.n, eps=args.eps)
    except ValidationError as e:
        raise ConfigInvalidError(f"invalid family: {describe_validation_error(e)}") from e
    report = welfare_sweep(family_spec, _parse_k_values(args.k_values), args.mode)
    _emit(args, lambda: welfare_csv(report), lambda: model_json(report))
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    settings = get_settings()
    uvicorn.run(
        "main:app",
        host=args.host or settings.host,
        port=args.port or settings.port,
        reload=False,
        log_level=settings.log_level.lower(),
    )
    return EXIT_OK


def _add_io_flags(parser: argparse.ArgumentParser, config_required: bool = True) -> None:
    parser.add_argument("--config", "-c", required=config_required, help="JSON instance or scenario file")
    parser.add_argument("--seed", "-s", type=int, help="Monte Carlo seed (u64)")
    parser.add_argument("--samples", type=int, help="Monte Carlo sample count")
    parser.add_argument("--out", "-o", help="Write the report here instead of stdout")
    parser.add_argument("--format", choices=["csv", "json"], default="csv", help="Report format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="proph",
        description="Multi-agent prophet game: thresholds, equilibria and guarantees",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    thresholds = subparsers.add_parser("thresholds", help="Print the T^ell / T-hat_i^ell tables of an instance")
    _add_io_flags(thresholds)
    thresholds.set_defaults(handler=cmd_thresholds)

    simulate = subparsers.add_parser("simulate", help="Run a scenario")
    _add_io_flags(simulate)
    simulate.set_defaults(handler=cmd_simulate)

    spe = subparsers.add_parser("spe", help="Solve and dump the k-select threshold table")
    _add_io_flags(spe)
    spe.set_defaults(handler=cmd_spe)

    certify = subparsers.add_parser("certify", help="Worst-case certificates for every threshold")
    _add_io_flags(certify)
    certify.set_defaults(handler=cmd_certify)

    verify_eq = subparsers.add_parser("verify-eq", help="Nash check of a scenario's profile")
    _add_io_flags(verify_eq)
    verify_eq.set_defaults(handler=cmd_verify_eq)

    reproduce = subparsers.add_parser("reproduce", help="Reproduce a tight upper-bound instance")
    reproduce_sub = reproduce.add_subparsers(dest="construction", required=True)
    prop4 = reproduce_sub.add_parser("prop4", help="Random tie-breaking: all agents wait for the gamble")
    prop4.add_argument("--k", type=int, default=2)
    prop4.add_argument("--eps", type=float, default=0.5)
    prop4.add_argument("--n", type=int, default=2)
    prop6 = reproduce_sub.add_parser("prop6", help="Ranked tie-breaking: SPE of the i-ranked agent")
    prop6.add_argument("--i", type=int, default=2)
    prop6.add_argument("--k", type=int, default=2)
    prop6.add_argument("--eps", type=float, default=0.5)
    prop6.add_argument("--n", type=int, default=3)
    for sub in (prop4, prop6):
        _add_io_flags(sub, config_required=False)
        sub.set_defaults(handler=cmd_reproduce)

    sweep = subparsers.add_parser("welfare-sweep", help="Equilibrium welfare ratio as k grows")
    _add_io_flags(sweep, config_required=False)
    sweep.add_argument("--family", choices=["point", "iid", "prop4"], default="iid")
    sweep.add_argument("--n", type=int, default=6)
    sweep.add_argument("--eps", type=float, default=0.5)
    sweep.add_argument("--k-values", default="1,2,3,4")
    sweep.add_argument("--mode", choices=list(SWEEP_MODES), default="ranked_spe")
    sweep.set_defaults(handler=cmd_welfare_sweep)

    serve = subparsers.add_parser("serve", help="Run the HTTP API")
    serve.add_argument("--host")
    serve.add_argument("--port", type=int)
    serve.set_defaults(handler=cmd_serve)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging()
    try:
        return args.handler(args)
    except ProphetError as e:
        logger.debug("command failed", {"command": args.command, "error": type(e).__name__})
        sys.stderr.write(f"error: {e}\n")
        return e.exit_status


if __name__ == "__main__":
    raise SystemExit(main())
