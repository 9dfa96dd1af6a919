"""
Команда simulate: дискретно-событийная проверка границ задержки
"""
import logging
from typing import List, Tuple

import pandas as pd

from app.commands import CommandResult, out_dir, output_format, require_scenario
from app.config import settings
from app.services.simulator import run as run_simulation
from app.services.simulator import sweep_ue_count
from app.utils.errors import EXIT_OK, ScenarioError
from app.utils.io import dump_model, load_decision, write_table

logger = logging.getLogger(__name__)


def parse_sweep(text: str) -> Tuple[int, List[int]]:
    """'vdu:n0:n1:step' -> (vdu, [n0, n0 + step, ..., n1])"""
    try:
        vdu, n0, n1, step = (int(x) for x in text.split(":"))
    except ValueError:
        raise ScenarioError(f"Ожидалось vdu:n0:n1:step, получено {text!r}") from None
    if step <= 0 or n1 < n0 or n0 < 0:
        raise ScenarioError(f"Некорректный диапазон развёртки {text!r}")
    return vdu, list(range(n0, n1 + 1, step))


def register(subparsers) -> None:
    parser = subparsers.add_parser("simulate", help="Симуляция нарезанной сети с WRR")
    parser.add_argument("--decision", required=True, help="Файл решения (Decision или Solution)")
    parser.add_argument("--model", choices=["token_bucket", "poisson"], default="token_bucket")
    parser.add_argument("--duration", type=float, help="Длительность, с")
    parser.add_argument("--warmup", type=float, help="Исключаемый начальный интервал, с")
    parser.add_argument("--scheduler", choices=["wrr", "rr"], default="wrr")
    parser.add_argument("--sweep", help="Развёртка числа UE: vdu:n0:n1:step")
    parser.add_argument("--seeds", type=int, default=1, help="Число seed в развёртке")
    parser.set_defaults(handler=run)


def run(args) -> CommandResult:
    scenario = require_scenario(args)
    decision = load_decision(args.decision)
    seed = args.seed if args.seed is not None else settings.default_seed
    target = out_dir(args)
    fmt = output_format(args)

    if args.sweep:
        vdu, n_values = parse_sweep(args.sweep)
        seeds = [seed + i for i in range(args.seeds)]
        df = sweep_ue_count(
            scenario, decision, vdu, n_values, seeds,
            model=args.model, duration=args.duration, scheduler=args.scheduler,
        )
        header = f"model={args.model} seeds={seeds} prng=PCG64"
        return CommandResult(outputs=[write_table(df, target, "ue_sweep", fmt, header=header)], scenario=scenario)

    duration = args.duration if args.duration is not None else settings.sim_duration_s
    stats = run_simulation(
        scenario, decision,
        model=args.model, seed=seed, duration=duration,
        warmup=args.warmup, scheduler=args.scheduler,
    )
    queues = pd.DataFrame([
        {"queue": q, "max_backlog_bits": b, "served_bits": stats.served_bits.get(q, 0.0)}
        for q, b in sorted(stats.max_backlog.items())
    ])
    outputs = [
        write_table(stats.frame(), target, "simulation", fmt, header=stats.header()),
        write_table(queues, target, "queues", fmt, header=stats.header()),
        dump_model(stats.summary(duration), target / "simulation.yaml"),
    ]
    return CommandResult(outputs=outputs, scenario=scenario, exit_code=EXIT_OK)
