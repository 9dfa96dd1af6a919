"""
Главный парсер CLI: глобальные флаги и подключение всех команд
"""
import argparse

from app import __version__
from app.commands import analyze, cashflow, catalog, optimize, simulate

COMMANDS = (catalog, analyze, optimize, simulate, cashflow)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ranslice",
        description="Границы задержки срезов RAN, оптимизация разбиений и долей, симуляция",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--scenario", help="Файл сценария (YAML или JSON)")
    parser.add_argument("--out-dir", help="Каталог для артефактов")
    parser.add_argument("--format", choices=["csv", "json-lines"], help="Формат таблиц")
    parser.add_argument("--seed", type=int, help="Seed генератора PCG64 симулятора")
    parser.add_argument("--grid-step", type=float, help="Шаг сетки долей φ")
    parser.add_argument("--log-level", help="Уровень логирования")

    subparsers = parser.add_subparsers(dest="command", required=True)
    # Подключаем все команды
    for module in COMMANDS:
        module.register(subparsers)
    return parser
