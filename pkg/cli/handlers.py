import logging
from pathlib import Path

import numpy as np

from config.constants import EXIT_CONFIG_ERROR, EXIT_OK, EXIT_ROW_ERROR
from config.settings import Config
from models.errors import ConfigurationError, DegenerateCorrelationError, DomainError
from models.quadrature import QuadratureSpec
from models.wishart import WishartParams
from services.correlation import scenario_correlations
from services.experiments import run_sweep, validate
from services.parser import RecipeParser
from services.rate import search_best_s1
from services.results import results_writer
from services.wishart import dump_pdf_table, truncation_point

logger = logging.getLogger(__name__)


def _quadrature(args) -> QuadratureSpec:
    return QuadratureSpec(node_count=Config.QUAD_NODES, tolerance=args.tolerance)


def _scenario(args):
    values = RecipeParser.resolve(args.recipe, args.section, RecipeParser.parse_overrides(args.set))
    return values, RecipeParser.build_config(values)


def sweep_command(args) -> int:
    """Handler untuk subcommand sweep"""
    if not args.section:
        raise ConfigurationError("sweep needs --section naming a recipe section")
    spec = RecipeParser.build_sweep(
        args.recipe, args.section,
        overrides=RecipeParser.parse_overrides(args.set),
        seed=args.seed, trials=args.trials,
    )
    rows = run_sweep(spec, _quadrature(args), jobs=args.jobs)
    path = results_writer.resolve_path(args.out, spec.name)
    results_writer.write_rows(rows, path, record_time=args.record_time or Config.RECORD_WALL_TIME)
    failed = [row for row in rows if row.error is not None]
    for row in failed:
        logger.error(f"❌ {row.variable}={row.value} s1={row.s1} {row.method}: {row.error}")
    return EXIT_ROW_ERROR if failed else EXIT_OK


def validate_command(args) -> int:
    """Handler untuk subcommand validate"""
    values, config = _scenario(args)
    theory = None
    if args.theory_set:
        theory_values = dict(values)
        theory_values.update(RecipeParser.parse_overrides(args.theory_set))
        theory = RecipeParser.build_config(theory_values)
        logger.info(f"🧪 Sisi teori diganti: {theory.format_message()}")
    trials = args.trials if args.trials is not None else Config.DEFAULT_TRIALS
    seed = args.seed if args.seed is not None else Config.DEFAULT_SEED
    report = validate(config, trials, seed, _quadrature(args), theory_config=theory)
    print(report.format_message())
    return EXIT_OK if report.passed else EXIT_ROW_ERROR


def pdf_dump_command(args) -> int:
    """Handler untuk subcommand pdf-dump"""
    _, config = _scenario(args)
    bob, eve = scenario_correlations(config)
    if args.side == 'eve':
        if eve is None:
            raise ConfigurationError("pdf-dump --side eve needs e >= 1")
        correlation, b = eve, args.b or config.t
    else:
        correlation, b = bob, args.b or config.t
    params = WishartParams.from_correlation(correlation, b)
    xs = np.linspace(0.0, truncation_point(params), args.points)
    directory = Path(args.out) if args.out else Path(Config.OUTPUT_DIR) / f"pdf_{args.side}"
    paths = dump_pdf_table(params, xs, directory)
    for path in paths:
        print(path)
    return EXIT_OK


def search_s1_command(args) -> int:
    """Handler untuk subcommand search-s1"""
    _, config = _scenario(args)
    result = search_best_s1(config, _quadrature(args))
    print(result.format_message())
    return EXIT_OK


def error_handler(error: Exception) -> int:
    """Handler untuk error; mengembalikan exit code."""
    if isinstance(error, (ConfigurationError, DomainError, DegenerateCorrelationError)):
        logger.error(f"❌ Konfigurasi tidak valid: {error}")
        return EXIT_CONFIG_ERROR
    logger.error(f"❌ Error: {error}", exc_info=error)
    return EXIT_ROW_ERROR
