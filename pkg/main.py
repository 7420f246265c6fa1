#!/usr/bin/env python3
import sys
import argparse
import logging
from typing import List, Optional

from config import Config, VerifyConfig
from core import classno, oracle, quatalg
from core.exceptions import CensusError, DeferredCaseError, InvalidInputError
from core.numth import is_prime
from core.report import (
    CosetPayload,
    IdealClassEntry,
    IdealClassPayload,
    UnitCensusPayload,
    render_census,
    render_payload,
    render_table,
    render_verification,
)
from pipeline import CensusPipeline, VerificationPipeline

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID = 2
EXIT_PARTIAL = 3

FORMATS = ['json', 'csv', 'text']


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        description='Count conjugacy classes of torsion in GL_2 over a maximal order of D_{p,inf}',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py census --p 7 --format json
  python main.py census --p 11 --q-degree 4
  python main.py table --p-min 5 --p-max 1000 --format csv --output table.csv
  python main.py verify --bound 50 --suites ideal-classes,units
  python main.py oracle cosets
  python main.py oracle classes --p 23 --level 2
        """
    )
    parser.add_argument('--quiet', action='store_true', help='Disable progress bars')
    parser.add_argument('--log-level', type=str, default=None, help='Override LOG_LEVEL')

    commands = parser.add_subparsers(dest='command', required=True)

    census = commands.add_parser('census', help='Census of one prime')
    census.add_argument('--p', type=int, required=True, help='The ramified prime p')
    census.add_argument('--format', choices=FORMATS, default='text')
    census.add_argument('--q-degree', type=int, default=None,
                        help='Also report the superspecial surface count over F_{p^a} (a even)')

    table = commands.add_parser('table', help='Census for every prime in a range')
    table.add_argument('--p-min', type=int, required=True)
    table.add_argument('--p-max', type=int, required=True)
    table.add_argument('--format', choices=FORMATS, default='csv')
    table.add_argument('--output', type=str, default=None, help='Write to a file instead of stdout')
    table.add_argument('--threads', type=int, default=None, help='Worker processes (CENSUS_THREADS)')

    verify = commands.add_parser('verify', help='Run brute-force and identity checks')
    verify.add_argument('--bound', type=int, default=50, help='Largest prime to check')
    verify.add_argument('--suites', type=str, default=None,
                        help=f"Comma-separated subset of: {', '.join(VerifyConfig.ALL_SUITES)}")
    verify.add_argument('--format', choices=['json', 'text'], default='text')

    oracle_cmd = commands.add_parser('oracle', help='Raw brute-force data')
    oracle_commands = oracle_cmd.add_subparsers(dest='oracle_command', required=True)
    cosets = oracle_commands.add_parser('cosets', help='Double coset table of S_3')
    cosets.add_argument('--format', choices=['json', 'text'], default='text')
    classes = oracle_commands.add_parser('classes', help='Right ideal class representatives')
    classes.add_argument('--p', type=int, required=True)
    classes.add_argument('--level', type=int, default=1, help='1 for the maximal order, or a prime')
    classes.add_argument('--format', choices=['json', 'text'], default='text')
    units = oracle_commands.add_parser('units', help='Unit group orders of the left orders')
    units.add_argument('--p', type=int, required=True)
    units.add_argument('--format', choices=['json', 'text'], default='text')

    return parser.parse_args(argv)


def setup_logging(level: Optional[str] = None):
    logging.basicConfig(
        level=(level or Config.LOG_LEVEL).upper(),
        format='%(name)s [%(levelname)s] %(message)s',
        stream=sys.stderr,
    )


def _require_prime(p: int):
    if not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")


def run_census(args: argparse.Namespace) -> int:
    _require_prime(args.p)
    if args.q_degree is not None and (args.q_degree < 2 or args.q_degree % 2):
        raise InvalidInputError(f"--q-degree must be even and at least 2, got {args.q_degree}")

    report = classno.census(args.p)
    if args.q_degree is not None:
        field = f"F_{args.p}^{args.q_degree}"
        if report.total is None:
            report.notes.append(f"superspecial abelian surfaces over {field}: unavailable, census total withheld")
        else:
            count = classno.superspecial_surface_count(args.p, args.q_degree)
            report.notes.append(f"superspecial abelian surfaces over {field}: {count}")
    sys.stdout.write(render_census(report, args.format))
    return EXIT_OK if report.assumptions_ok else EXIT_PARTIAL


def _show_progress(args: argparse.Namespace) -> bool:
    return not args.quiet and sys.stderr.isatty()


def run_table(args: argparse.Namespace) -> int:
    pipeline = CensusPipeline(args.p_min, args.p_max, threads=args.threads, progress=_show_progress(args))
    chunks = render_table(pipeline.iter_reports(), args.format)
    if args.output:
        with open(args.output, 'w', encoding='utf-8', newline='') as handle:
            for chunk in chunks:
                handle.write(chunk)
        print(f"✓ Wrote {len(pipeline.primes)} rows to {args.output}", file=sys.stderr)
    else:
        for chunk in chunks:
            sys.stdout.write(chunk)
    return EXIT_OK


def run_verify(args: argparse.Namespace) -> int:
    suites = [s.strip() for s in args.suites.split(',')] if args.suites else None
    pipeline = VerificationPipeline(args.bound, suites, progress=_show_progress(args))
    payload = pipeline.run()
    sys.stdout.write(render_verification(payload, args.format))
    return EXIT_OK if payload.passed else EXIT_FAILURE


def run_oracle(args: argparse.Namespace) -> int:
    if args.oracle_command == 'cosets':
        table = oracle.double_coset_table()
        payload = CosetPayload(table=[list(row) for row in table.entries])
        sys.stdout.write(render_payload('oracle-cosets', payload, args.format))
        return EXIT_OK

    _require_prime(args.p)
    if args.oracle_command == 'units':
        orders = oracle.unit_orders_census(args.p)
        payload = UnitCensusPayload(p=args.p, class_number=len(orders), unit_orders=orders)
        sys.stdout.write(render_payload('oracle-units', payload, args.format))
        return EXIT_OK

    order = quatalg.maximal_order(quatalg.make_algebra(args.p))
    if args.level != 1:
        order = quatalg.eichler_order(order, args.level)
    classes = oracle.enumerate_right_ideal_classes(order)
    payload = IdealClassPayload(
        p=args.p,
        level=args.level,
        discriminant=order.discriminant,
        class_number=classes.class_number,
        mass=str(classes.mass),
        classes=[
            IdealClassEntry(denominator=ideal.denominator, hnf=[list(row) for row in ideal.hnf],
                            norm=norm, unit_order=units)
            for ideal, norm, units in zip(classes.representatives, classes.norms, classes.unit_orders)
        ],
    )
    sys.stdout.write(render_payload('oracle-classes', payload, args.format))
    return EXIT_OK


COMMANDS = {
    'census': run_census,
    'table': run_table,
    'verify': run_verify,
    'oracle': run_oracle,
}


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        Config.validate()
        if args.log_level:
            Config.LOG_LEVEL = args.log_level
            Config.validate()
    except ValueError as e:
        print(f"Configuration error: {e}", file=sys.stderr)
        print("\nSet CENSUS_* variables in the environment or .env", file=sys.stderr)
        return EXIT_INVALID

    setup_logging(Config.LOG_LEVEL)

    try:
        return COMMANDS[args.command](args)
    except (InvalidInputError, DeferredCaseError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except KeyboardInterrupt:
        print("\n\nInterrupted by user.", file=sys.stderr)
        return EXIT_FAILURE
    except CensusError as e:
        logger.exception("census failed")
        print(f"\n✗ Error: {e}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == '__main__':
    sys.exit(main())
