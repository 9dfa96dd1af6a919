"""
Команда catalog: таблица функциональных разбиений
"""
import logging

from app.commands import CommandResult, out_dir, output_format
from app.dependencies import build_catalog
from app.schemas.catalog import CatalogOverride
from app.schemas.scenario import Scenario
from app.services.split_catalog import catalog_frame, catalog_from_override
from app.utils.io import load_model, write_table

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("catalog", help="Выгрузить каталог разбиений в CSV")
    parser.add_argument("--catalog", help="Файл переопределения радиоконфигурации и требований")
    parser.add_argument("--ip-packet-bytes", type=int, help="Размер IP-пакета для ёмкости O6")
    parser.add_argument("--include-lls", action="store_true", help="Добавить разбиения fronthaul")
    parser.set_defaults(handler=run)


def run(args) -> CommandResult:
    scenario = None
    override = CatalogOverride()
    if args.catalog:
        override = load_model(args.catalog, CatalogOverride)
        catalog = catalog_from_override(override)
    elif args.scenario:
        scenario = load_model(args.scenario, Scenario)
        catalog = build_catalog(scenario)
    else:
        catalog = catalog_from_override(override)
    ip_pkt = args.ip_packet_bytes or override.ip_packet_bytes
    df = catalog_frame(catalog, ip_pkt, include_lls=args.include_lls)
    path = write_table(df, out_dir(args), "catalog", output_format(args))
    return CommandResult(outputs=[path], scenario=scenario)
