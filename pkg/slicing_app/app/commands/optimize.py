"""
Команда optimize: максимизация прибыли, сравнение режимов и сетка нагрузок
"""
import logging
from pathlib import Path
from typing import List, Optional

import pandas as pd

from app.commands import CommandResult, out_dir, output_format, require_scenario
from app.schemas.decision import Solution
from app.schemas.scenario import Scenario
from app.services.optimizer import (
    BudgetExceededError,
    compare_modes,
    solution_frame,
    solve_bnb,
    solve_exhaustive,
    sweep_demand_grid,
)
from app.services.share_allocator import ALLOCATION_MODES
from app.utils.errors import EXIT_BUDGET_EXCEEDED, EXIT_INFEASIBLE, EXIT_OK
from app.utils.io import dump_model, write_table

logger = logging.getLogger(__name__)

SOLVERS = {"bnb": solve_bnb, "exhaustive": solve_exhaustive}


def register(subparsers) -> None:
    parser = subparsers.add_parser("optimize", help="Оптимальные доли, маршруты, разбиения и допуск UE")
    parser.add_argument("--solver", choices=sorted(SOLVERS), default="bnb")
    parser.add_argument("--budget", type=int, help="Бюджет перебора (листья или узлы)")
    parser.add_argument("--workers", type=int, help="Процессов для таблиц вариантов vDU")
    parser.add_argument(
        "--allocation",
        choices=ALLOCATION_MODES,
        help="Распределение долей: pareto (точно) или greedy (быстро, для крупных сеток)",
    )
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument("--compare", action="store_true", help="Сравнить FFS с режимами O1 и O9")
    mode.add_argument("--sweep", action="store_true", help="Перебрать сетку нагрузок eMBB по vDU")
    parser.set_defaults(handler=run)


def write_solution(solution: Solution, scenario: Scenario, target: Path, fmt: str) -> List[Path]:
    header = f"solver={solution.solver} profit={solution.profit!r} feasible={solution.feasible}"
    delays = pd.DataFrame([d.model_dump() for d in solution.delays])
    return [
        dump_model(solution, target / "solution.yaml"),
        write_table(solution_frame(solution, scenario), target, "solution", fmt, header=header),
        write_table(delays, target, "solution_delays", fmt),
    ]


def run(args) -> CommandResult:
    scenario = require_scenario(args)
    target = out_dir(args)
    fmt = output_format(args)

    if args.compare:
        comparison = compare_modes(scenario, args.grid_step, args.solver, args.workers, allocation=args.allocation)
        rows = [
            {
                "mode": mode,
                "profit": None if s is None else s.profit,
                "splits": "" if s is None else ",".join(s.decision.splits[u] for u in sorted(s.decision.splits)),
            }
            for mode, s in comparison.solutions.items()
        ]
        histogram = ", ".join(f"{k}: {v}" for k, v in comparison.histogram.items())
        path = write_table(pd.DataFrame(rows), target, "modes", fmt, header=f"histogram {histogram}")
        return CommandResult(outputs=[path], scenario=scenario)

    if args.sweep:
        df = sweep_demand_grid(scenario, grid_step=args.grid_step, solver=args.solver, allocation=args.allocation)
        return CommandResult(outputs=[write_table(df, target, "demand_sweep", fmt)], scenario=scenario)

    solver = SOLVERS[args.solver]
    best: Optional[Solution] = None
    exit_code = EXIT_OK
    try:
        best = solver(scenario, args.grid_step, args.budget, workers=args.workers, allocation=args.allocation)
    except BudgetExceededError as e:
        logger.warning(f"⚠️ {e}")
        if e.best is None:
            raise
        best = e.best
        exit_code = EXIT_BUDGET_EXCEEDED
    if not best.feasible:
        # пересчёт решения нашёл нарушенные ограничения
        failed = sorted({c.constraint for c in best.violations})
        logger.error(f"❌ Найденное решение недопустимо: {failed}")
        exit_code = EXIT_INFEASIBLE
    logger.info(f"✅ Прибыль {best.profit:.6f}, разбиения {best.decision.splits}, F {best.decision.admitted}")
    return CommandResult(outputs=write_solution(best, scenario, target, fmt), scenario=scenario, exit_code=exit_code)
