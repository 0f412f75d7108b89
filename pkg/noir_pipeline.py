#!/usr/bin/env python3
"""
Noir Tag Pipeline

Finds films with film-noir characteristics from MovieLens user tags: tag
normalization, tag-group clustering, TgFIFF features and a one-class
nearest-neighbor classifier trained on IMDb's Film-Noir genre.

Usage:
    python noir_pipeline.py run
    python noir_pipeline.py run --thresholds 1.26,0.43,0.43,0.43
    python noir_pipeline.py run --stop-after features
    python noir_pipeline.py classify --config my_run.yaml
    python noir_pipeline.py select-threshold --seed 7 --workers 4
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from packages.configuration import ConfigurationManager
from packages.configuration import config
from packages.pipeline import PipelineRunner
from packages.utils import (
    EXIT_OK,
    EXIT_UNEXPECTED,
    PipelineError,
    initialize_profiler,
    setup_logging,
)

CONFIG_FLAGS = (
    'links_path', 'tags_path', 'basics_path', 'overrides_path', 'stem_overrides_path',
    'person_stoplist_path', 'noinfo_stoplist_path', 'output_dir', 'thresholds',
    'min_users', 'min_films', 'min_tags', 'neighbors', 'folds', 'repetitions', 'seed',
    'workers', 'refine', 'positive_genre', 'era_cutoff', 'top_k', 'stop_after', 'debug', 'profile',
)


def _common_arguments() -> argparse.ArgumentParser:
    """Flags shared by every subcommand; they mirror RunConfig"""
    common = argparse.ArgumentParser(add_help=False)

    inputs = common.add_argument_group('inputs')
    inputs.add_argument('--links', dest='links_path', help='MovieLens links.csv')
    inputs.add_argument('--tags', dest='tags_path', help='MovieLens tags.csv')
    inputs.add_argument('--basics', dest='basics_path', help='IMDb title.basics.tsv')
    inputs.add_argument('--overrides', dest='overrides_path', help='IMDb id override table')
    inputs.add_argument('--stem-overrides', dest='stem_overrides_path', help='Forced stems table')
    inputs.add_argument('--person-stoplist', dest='person_stoplist_path', help='Person-name tag stoplist')
    inputs.add_argument('--noinfo-stoplist', dest='noinfo_stoplist_path', help='No-information tag stoplist')
    inputs.add_argument('--output-dir', '-o', dest='output_dir', help='Artifact directory')
    inputs.add_argument('--config', '-c', help='YAML key: value file; its settings override flags')

    model = common.add_argument_group('model')
    model.add_argument('--thresholds', help="'select' or θ as comma separated numbers")
    model.add_argument('--min-users', type=int, help=f'Tags need more distinct users than this (default: {config.MIN_USERS})')
    model.add_argument('--min-films', type=int, help=f'Tags need more distinct films than this (default: {config.MIN_FILMS})')
    model.add_argument('--min-tags', type=int, help=f'Minimum tags for a classified film (default: {config.MIN_TAGS})')
    model.add_argument('--neighbors', type=int, help=f'Nearest neighbors J (default: {config.NEIGHBOR_COUNT})')
    model.add_argument('--folds', type=int, help=f'Cross-validation folds G (default: {config.FOLD_COUNT})')
    model.add_argument('--repetitions', type=int, help=f'Cross-validation repetitions (default: {config.REPETITIONS})')
    model.add_argument('--seed', type=int, help=f'Random seed (default: {config.DEFAULT_SEED})')
    model.add_argument('--no-refine', dest='refine', action='store_false', default=None,
                       help='Skip the fine threshold grid')
    model.add_argument('--positive-genre', help=f'IMDb genre marking training films (default: {config.POSITIVE_GENRE})')

    reports = common.add_argument_group('reports')
    reports.add_argument('--era-cutoff', type=int, help=f'First year of the late era (default: {config.ERA_CUTOFF})')
    reports.add_argument('--top-k', type=int, help=f'Groups per era list (default: {config.TOP_K})')

    runtime = common.add_argument_group('runtime')
    runtime.add_argument('--workers', type=int, help='Worker processes for clustering and cross-validation')
    runtime.add_argument('--debug', action='store_true', default=None, help='Write DEBUG records to the log file')
    runtime.add_argument('--profile', action='store_true', default=None, help='Record per-operation timings')
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_arguments()
    parser = argparse.ArgumentParser(
        description='Identify noir-like films from crowd-sourced tags',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog='''
Exit codes:
    0 success, 1 unexpected error, 2 configuration error,
    3 data error, 4 contract violation
        '''
    )
    subcommands = parser.add_subparsers(dest='command', required=True)
    for stage in config.STAGES:
        subcommands.add_parser(stage, parents=[common], help=f'Run the {stage} stage from existing artifacts')
    run = subcommands.add_parser('run', parents=[common], help='Run every stage')
    run.add_argument('--stop-after', choices=config.STAGES, help='Last stage to run')
    return parser


def cli_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    return {name: getattr(args, name, None) for name in CONFIG_FLAGS}


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit code"""
    args = build_parser().parse_args(argv)

    try:
        run_config = ConfigurationManager(args.config).build(cli_overrides(args))
    except PipelineError as e:
        logging.basicConfig(format='%(levelname)s: %(message)s')
        logging.error(f"Configuration error: {e}")
        return e.exit_code

    logs_dir = Path(run_config.output_dir) / 'logs'
    setup_logging(run_config.debug, logs_dir)
    profiler = initialize_profiler(run_config.profile)

    runner = PipelineRunner(run_config)
    exit_code = EXIT_OK
    try:
        if args.command == 'run':
            runner.run()
        else:
            runner.write_run_config()
            runner.run_stage(args.command)
    except PipelineError as e:
        logging.error(f"💥 {e}")
        exit_code = e.exit_code
    except KeyboardInterrupt:
        logging.info("🛑 Interrupted by user")
        exit_code = EXIT_UNEXPECTED
    except Exception as e:
        logging.exception(f"💥 Unexpected error: {e}")
        exit_code = EXIT_UNEXPECTED
    finally:
        if run_config.profile:
            logging.info("\n" + profiler.generate_performance_report())
            profiler.save_detailed_report(logs_dir / 'performance.json')

    return exit_code


if __name__ == '__main__':
    sys.exit(main())
