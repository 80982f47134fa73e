"""Entry point toolkit secrecy rate AN (jalankan dengan: python main.py <subcommand>)."""
import argparse
import logging
import sys

from config.settings import Config
from config.constants import LOG_FORMAT
from cli.handlers import (
    sweep_command,
    validate_command,
    pdf_dump_command,
    search_s1_command,
    error_handler
)

logging.basicConfig(
    format=LOG_FORMAT,
    level=getattr(logging, Config.LOG_LEVEL, logging.INFO)
)
logger = logging.getLogger(__name__)


def _add_scenario_arguments(parser):
    parser.add_argument('--recipe', default=Config.RECIPES_FILE, help='INI recipe file')
    parser.add_argument('--section', help='recipe section to use')
    parser.add_argument('--set', action='append', metavar='KEY=VALUE',
                        help='override one recipe key (repeatable)')
    parser.add_argument('--seed', type=int, help='64-bit seed of the root random stream')
    parser.add_argument('--trials', type=int, help='Monte Carlo trials per point')
    parser.add_argument('--tolerance', type=float, default=Config.QUAD_TOLERANCE,
                        help='quadrature tolerance')
    parser.add_argument('--out', help='output file (sweep) or directory (pdf-dump)')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='main.py',
        description='Ergodic secrecy rates of artificial-noise MIMO under correlated fading',
    )
    parser.add_argument('--log-level', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    commands = parser.add_subparsers(dest='command', required=True)

    sweep = commands.add_parser('sweep', help='run one recipe section and write a CSV')
    _add_scenario_arguments(sweep)
    sweep.add_argument('--jobs', type=int, default=Config.DEFAULT_JOBS, help='worker processes')
    sweep.add_argument('--record-time', action='store_true', help='write measured wall_ms')
    sweep.set_defaults(handler=sweep_command)

    check = commands.add_parser('validate', help='exact rate against Monte Carlo for every s1')
    _add_scenario_arguments(check)
    check.add_argument('--theory-set', action='append', metavar='KEY=VALUE',
                       help='override a key on the theory side only (negative control)')
    check.set_defaults(handler=validate_command)

    dump = commands.add_parser('pdf-dump', help='write per-k eigenvalue pdf tables')
    _add_scenario_arguments(dump)
    dump.add_argument('--side', choices=['bob', 'eve'], default='bob')
    dump.add_argument('--b', type=int, help='free dimension (default t)')
    dump.add_argument('--points', type=int, default=200)
    dump.set_defaults(handler=pdf_dump_command)

    search = commands.add_parser('search-s1', help='best message/AN split for one scenario')
    _add_scenario_arguments(search)
    search.set_defaults(handler=search_s1_command)
    return parser


def main(argv=None) -> int:
    """Fungsi utama untuk menjalankan CLI"""
    args = build_parser().parse_args(argv)
    if args.log_level:
        logging.getLogger().setLevel(args.log_level)
    if getattr(args, 'jobs', 1) < 1:
        logger.warning("⚠️  --jobs harus >= 1, pakai 1")
        args.jobs = 1

    logger.info(f"🚀 Menjalankan {args.command}...")
    try:
        return args.handler(args)
    except Exception as e:
        return error_handler(e)


if __name__ == '__main__':
    sys.exit(main())
