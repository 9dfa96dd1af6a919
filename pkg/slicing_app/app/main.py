"""
Точка входа CLI: границы задержки срезов RAN и оптимизация прибыли
"""
import logging
import sys
import time
from typing import List, Optional

from app import __version__
from app.commands import out_dir
from app.commands.router import build_parser
from app.config import settings
from app.schemas.report import RunReport
from app.utils.errors import EXIT_INPUT_ERROR, SlicingError
from app.utils.io import dump_model, scenario_digest

logger = logging.getLogger(__name__)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    # Настройка логирования
    logging.basicConfig(level=(args.log_level or settings.log_level).upper())
    logger.info("=" * 80)
    logger.info(f"📡 RAN Slicing Planner {__version__}: команда {args.command}")
    logger.info("=" * 80)

    started = time.perf_counter()
    report = RunReport(command=args.command, version=__version__)
    try:
        result = args.handler(args)
        report.outputs = [str(p) for p in result.outputs]
        report.scenario_digest = scenario_digest(result.scenario)
        report.exit_code = result.exit_code
    except SlicingError as e:
        logger.error(f"❌ {e}", exc_info=True)
        report.exit_code = e.exit_code
    except ValueError as e:
        logger.error(f"❌ Некорректные параметры: {e}", exc_info=True)
        report.exit_code = EXIT_INPUT_ERROR
    report.wall_clock_s = time.perf_counter() - started

    dump_model(report, out_dir(args) / "run_report.yaml")
    logger.info(f"🏁 Завершено за {report.wall_clock_s:.3f} с, код {report.exit_code}")
    logger.info("=" * 80)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
