"""
Команда cashflow: точка безубыточности, ζ и γ по финансовой отчётности
"""
import logging

import pandas as pd

from app.commands import CommandResult, out_dir, output_format
from app.schemas.cashflow import CashFlowInput
from app.services.economics import cashflow_report
from app.utils.errors import ScenarioError
from app.utils.io import dump_model, load_model, write_table

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("cashflow", help="F_BE, ζ и γ по финансовой отчётности")
    parser.add_argument("--cashflow", help="Файл отчётности (иначе используется --scenario)")
    parser.set_defaults(handler=run)


def run(args) -> CommandResult:
    path = args.cashflow or args.scenario
    if not path:
        raise ScenarioError("Команде cashflow нужен --cashflow")
    report = cashflow_report(load_model(path, CashFlowInput))
    target = out_dir(args)
    outputs = [
        dump_model(report, target / "cashflow.yaml"),
        write_table(pd.DataFrame([report.model_dump()]), target, "cashflow", output_format(args)),
    ]
    return CommandResult(outputs=outputs)
