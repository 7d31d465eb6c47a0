import argparse
import logging
import os
import sys
import time
from typing import List, Optional

from algorithm.errors import VerificationError
from app.commands import Classify, Coset, Golay, Pmepr, Search, VerifyTables, Wht
from app.config import AppConfig
from app.io.Report import CommandReport


COMMANDS = (Golay, Coset, Classify, Pmepr, Wht, Search, VerifyTables)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=AppConfig.APP_NAME,
                                     description="Low-PMEPR cosets of generalized first-order Reed-Muller codes")
    parser.add_argument('--json', action='store_true', help="print the report as JSON")
    parser.add_argument('--workers', type=int, default=None, help="worker processes (search only)")
    parser.add_argument('-v', '--verbose', action='count', default=0, help="-v for INFO, -vv for DEBUG")
    subparsers = parser.add_subparsers(dest='command', required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def _configure_logging(verbose: int) -> None:
    level = AppConfig.LOG_LEVEL
    if verbose == 1:
        level = 'INFO'
    elif verbose > 1:
        level = 'DEBUG'
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format='%(asctime)s %(levelname)s %(message)s', force=True)


def _error(code: int, exc: BaseException) -> dict:
    return {'code': code, 'type': type(exc).__name__, 'message': str(exc)}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse argv, run one command and print its report.

    Returns:
        int: 0 on success, 1 when a verification fails, 2 on a usage error
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        AppConfig.initialize()
    except ValueError as exc:
        print(f"{parser.prog}: {exc}", file=sys.stderr)
        return EXIT_USAGE

    _configure_logging(args.verbose)
    if args.workers is None or os.environ.get('RM_PMEPR_WORKERS'):
        args.workers = AppConfig.WORKERS

    start = time.perf_counter()
    try:
        report = args.run(args)
        code = EXIT_OK if report.ok else EXIT_VERIFICATION
    except VerificationError as exc:
        logging.error(f"Verification failed: {exc}")
        code = EXIT_VERIFICATION
        report = CommandReport(args.command, {}, ok=False, error=_error(code, exc))
    except (ValueError, TypeError, OSError) as exc:
        logging.error(f"{args.command}: {exc}")
        code = EXIT_USAGE
        report = CommandReport(args.command, {}, ok=False, error=_error(code, exc))
    report.wall_time = time.perf_counter() - start

    print(report.render(args.json))
    return code
