"""
Команда analyze: сквозные границы задержки потоков при заданном решении
"""
import logging

import pandas as pd

from app.commands import CommandResult, out_dir, output_format, require_scenario
from app.dependencies import build_context
from app.schemas.decision import ConstraintCheck, FlowDelay
from app.services.delay_engine import analyze_flows
from app.services.minplus import InstabilityError, SaturationError
from app.services.optimizer import check_feasibility
from app.utils.errors import EXIT_INFEASIBLE, EXIT_OK
from app.utils.io import load_decision, write_table

logger = logging.getLogger(__name__)

DELAY_COLUMNS = list(FlowDelay.model_fields)
CHECK_COLUMNS = list(ConstraintCheck.model_fields)


def register(subparsers) -> None:
    parser = subparsers.add_parser("analyze", help="Границы задержки потоков для решения")
    parser.add_argument("--decision", required=True, help="Файл решения (Decision или Solution)")
    parser.add_argument("--method", choices=["tree", "additive"], default="tree", help="Метод оценки очередной задержки")
    parser.set_defaults(handler=run)


def run(args) -> CommandResult:
    scenario = require_scenario(args)
    decision = load_decision(args.decision)
    checks = check_feasibility(scenario, decision)

    exit_code = EXIT_OK
    try:
        rows = analyze_flows(build_context(scenario, decision), args.method)
    except (SaturationError, InstabilityError) as e:
        logger.error(f"❌ Решение нестабильно: {e}", exc_info=True)
        rows = []
        exit_code = EXIT_INFEASIBLE

    violations = [c for c in checks if not c.ok]
    if violations:
        logger.warning(f"⚠️ Нарушено ограничений: {len(violations)}")
        for c in violations:
            logger.warning(f"   {c.constraint} {c.subject}: {c.value:.6g} vs {c.limit:.6g}")
        exit_code = EXIT_INFEASIBLE

    fmt = output_format(args)
    delays = pd.DataFrame([r.model_dump() for r in rows], columns=DELAY_COLUMNS)
    checks_df = pd.DataFrame([c.model_dump() for c in checks], columns=CHECK_COLUMNS)
    outputs = [
        write_table(delays, out_dir(args), "delays", fmt, header=f"method={args.method}"),
        write_table(checks_df, out_dir(args), "checks", fmt),
    ]
    if rows:
        worst = max(rows, key=lambda r: r.total)
        logger.info(f"⏱️ Наибольшая граница: {worst.flow} {worst.total * 1e3:.6f} мс")
    return CommandResult(outputs=outputs, scenario=scenario, exit_code=exit_code)
