"""Command-line interface: analyze, matrix and validate-fan."""

import argparse
import logging
import sys

import orjson

from reid_gale import __version__
from reid_gale.errors import ReidGaleError, ValidationError
from reid_gale.services.config_manager import FORMATS, RunConfig, build_run_config
from reid_gale.services.crepant_fan import build_fan, check_fan, load_fan, read_fan_json
from reid_gale.services.gale_reid import matrix_mode
from reid_gale.services.group_action import parse_group
from reid_gale.services.matrix_io import matrix_to_csv, parse_int_list, read_matrix
from reid_gale.services.pipeline import analyze_fan
from reid_gale.services.report_writer import (
    JSON_OPTIONS,
    degrees_csv,
    dumps_report,
    error_body,
    euler_csv,
    write_output,
    write_report,
)
from reid_gale.types.group import DimensionVector
from reid_gale.types.report import GaleReport

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_STRICT = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reid-gale",
        description="Gale dual matrices L and Kt for Reid's recipe",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--debug", action="store_true", help="verbose logging")
    parser.add_argument("--threads", type=int, default=None,
                        help="worker threads (0 = one per CPU; default from REID_GALE_THREADS)")
    sub = parser.add_subparsers(dest="command", required=True)

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--output", "-o", help="report path (default: stdout)")
    output.add_argument("--format", choices=FORMATS, default=None)
    output.add_argument("--strict", action="store_true",
                        help="exit 2 when the report carries failure diagnostics")

    analyze = sub.add_parser("analyze", parents=[output], help="run the recipe on a crepant fan")
    analyze.add_argument("--group", required=True, help="r,a,b,c")
    analyze.add_argument("--fan", required=True)
    analyze.add_argument("--dump-degrees", dest="dump_degrees")
    analyze.add_argument("--dump-euler", dest="dump_euler")

    matrix = sub.add_parser("matrix", parents=[output], help="Gale dual of a given L")
    matrix.add_argument("--L", dest="L", required=True)
    matrix.add_argument("--K", dest="K")
    matrix.add_argument("--v", help="dimension vector v_0,v_1,...")
    matrix.add_argument("--labels", help="column labels, comma separated")

    validate = sub.add_parser("validate-fan", help="itemize fan invariant failures")
    validate.add_argument("--fan", required=True)
    return parser


def _emit(report: GaleReport, config: RunConfig) -> None:
    if config.output is not None:
        for path in write_report(report, config.output, config.format):
            logger.info("Wrote %s", path)
    elif config.format == "csv":
        sys.stdout.write(matrix_to_csv(report.Kt))
    else:
        sys.stdout.buffer.write(dumps_report(report))
        sys.stdout.flush()


def _finish(report: GaleReport, config: RunConfig) -> int:
    _emit(report, config)
    for d in report.failures:
        logger.warning("%s: %s", d.kind, d.message)
    if config.strict and report.failures:
        return EXIT_STRICT
    return EXIT_OK


def run_analyze(config: RunConfig) -> int:
    action = parse_group(config.group)
    fan = load_fan(config.fan)
    if fan.action != action:
        raise ValidationError(
            f"fan is for {fan.action.label()} but --group is {action.label()}",
            check="group",
        )
    analysis = analyze_fan(fan, config.threads)
    if config.dump_degrees:
        write_output(config.dump_degrees, degrees_csv(fan, analysis.degrees))
    if config.dump_euler:
        write_output(config.dump_euler, euler_csv(fan, analysis.euler))
    return _finish(analysis.report, config)


def run_matrix(config: RunConfig) -> int:
    L = read_matrix(config.L)
    K = read_matrix(config.K) if config.K else None
    v = DimensionVector(tuple(parse_int_list(config.v, "--v"))) if config.v else None
    labels = [s.strip() for s in config.labels.split(",")] if config.labels else None
    return _finish(matrix_mode(L, v, labels, K), config)


def run_validate_fan(config: RunConfig) -> int:
    raw = read_fan_json(config.fan)
    _, issues = check_fan(raw)
    items = [i.to_dict() for i in issues]
    if not issues:
        try:
            build_fan(raw)
        except ReidGaleError as e:
            items.append({"check": e.code, "message": e.message, "details": e.details})
    body = {"fan": str(config.fan), "valid": not items, "issues": items}
    sys.stdout.buffer.write(orjson.dumps(body, option=JSON_OPTIONS) + b"\n")
    sys.stdout.flush()
    return EXIT_OK if not items else EXIT_ERROR


HANDLERS = {
    "analyze": run_analyze,
    "matrix": run_matrix,
    "validate-fan": run_validate_fan,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_ERROR

    config = build_run_config(args)
    logging.basicConfig(
        level=logging.DEBUG if config.debug else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    problems = config.validate()
    if problems:
        for p in problems:
            print(f"reid-gale: {p}", file=sys.stderr)
        return EXIT_ERROR

    try:
        return HANDLERS[config.command](config)
    except ReidGaleError as e:
        logger.debug("Command failed", exc_info=True)
        sys.stderr.buffer.write(error_body(e))
        sys.stderr.flush()
        return EXIT_ERROR
