"""
Сборка объектов сервисов из сценария и решения

Сценарий и решение приходят из YAML как pydantic-модели; здесь они
превращаются в топологию, каталог, таблицу долей, потоки и контекст оценки.
"""
import logging
import math
from typing import Dict, List, Optional, Tuple

from app.config import settings
from app.schemas.decision import Decision
from app.schemas.scenario import Scenario, SliceSchema
from app.services.delay_engine import EvaluationContext, ProcessingParams
from app.services.economics import EconParams
from app.services.split_catalog import SplitCatalog, SplitOption, UnknownSplitError
from app.services.topology import (
    FlowSpec,
    RoutedFlow,
    RoutePath,
    ShareTable,
    SliceKey,
    Topology,
    enumerate_paths,
)
from app.utils.constants import PROPAGATION_SPEEDS, VNF_CHAIN
from app.utils.errors import ScenarioError

logger = logging.getLogger(__name__)


def build_topology(scenario: Scenario) -> Topology:
    return Topology.from_schema(scenario.topology)


def build_catalog(scenario: Scenario) -> SplitCatalog:
    return SplitCatalog(radio=scenario.radio, delay_profile=scenario.splits.delay_profile)


def build_processing(scenario: Scenario) -> ProcessingParams:
    return ProcessingParams.from_schema(scenario.processing)


def build_econ(scenario: Scenario) -> EconParams:
    return EconParams.from_schema(
        scenario.economics,
        vdus=len(scenario.topology.roles.vdus),
        vnfs=len(VNF_CHAIN),
    )


def urllc_cap(scenario: Scenario, vdu: int) -> int:
    """
    Предел допуска URLLC UE на vDU: один RB на UE за TTI и F_max/U.

    RB, занятые eMBB, для URLLC недоступны.
    """
    demand = scenario.demand_for(vdu)
    fraction = demand.embb_rb_fraction if demand is not None else 0.0
    by_rb = math.floor(scenario.radio.n_rb * (1.0 - fraction) + 1e-9)
    by_fmax = scenario.economics.f_max // len(scenario.topology.roles.vdus)
    return max(0, min(by_rb, by_fmax))


def embb_rate(scenario: Scenario, vdu: int) -> float:
    demand = scenario.demand_for(vdu)
    if demand is None or scenario.slice_by_kind("embb") is None:
        return 0.0
    return demand.embb_rate


def build_shares(decision: Decision) -> ShareTable:
    return ShareTable({
        (entry.node, SliceKey(entry.slice, entry.vdu)): entry.share
        for entry in decision.shares
    })


def build_splits(decision: Decision, catalog: SplitCatalog) -> Dict[int, SplitOption]:
    splits = {}
    for vdu, split_id in decision.splits.items():
        split = catalog.get(split_id)
        if split.placement is None:
            raise UnknownSplitError(f"vDU {vdu}: разбиение {split_id} не может быть выбрано на vDU")
        splits[vdu] = split
    return splits


def resolve_path(
    topology: Topology,
    scenario: Scenario,
    decision: Decision,
    slice_name: str,
    vdu: int,
    explicit: Optional[List[int]] = None,
) -> RoutePath:
    """Маршрут потока: явный, из решения или первый из перечисленных (кратчайший)"""
    nodes = explicit or decision.path_for(slice_name, vdu)
    if nodes is not None:
        path = topology.make_path(nodes)
        if path.nodes[0] != topology.cu or path.nodes[-1] != vdu:
            raise ScenarioError(f"Маршрут {path.label} не ведёт из CU {topology.cu} в vDU {vdu}")
        return path
    hop_limit = scenario.hop_limit if scenario.hop_limit is not None else settings.hop_limit
    return enumerate_paths(topology, topology.cu, vdu, hop_limit)[0]


def slice_flows(sl: SliceSchema, vdu: int, count: int, rate: float) -> List[FlowSpec]:
    """Потоки среза на vDU: count потоков URLLC или один агрегат eMBB"""
    key = SliceKey(sl.name, vdu)
    if sl.kind == "urllc":
        return [
            FlowSpec(f"{sl.name}-u{vdu}-{i}", key, rate, sl.burst, sl.packet_bytes)
            for i in range(count)
        ]
    if rate <= 0:
        return []
    return [FlowSpec(f"{sl.name}-u{vdu}", key, rate, sl.burst, sl.packet_bytes)]


def build_flows(scenario: Scenario, decision: Decision, topology: Topology) -> Tuple[RoutedFlow, ...]:
    """
    Потоки сценария с маршрутами.

    Явно заданные потоки имеют приоритет; иначе URLLC строится по числу
    допущенных UE, eMBB по нагрузке vDU.
    """
    flows = []
    if scenario.flows is not None:
        for f in scenario.flows:
            spec = FlowSpec(f.id, SliceKey(f.slice, f.vdu), f.rate_bps, f.burst_bits, f.packet_bytes)
            path = resolve_path(topology, scenario, decision, f.slice, f.vdu, f.path)
            flows.append(RoutedFlow(spec, path))
        return tuple(flows)
    for vdu in topology.vdus:
        for sl in scenario.slices:
            if sl.kind == "urllc":
                specs = slice_flows(sl, vdu, decision.admitted.get(vdu, 0), sl.mu_sla_bps)
            else:
                specs = slice_flows(sl, vdu, 1, embb_rate(scenario, vdu))
            if not specs:
                continue
            path = resolve_path(topology, scenario, decision, sl.name, vdu)
            flows.extend(RoutedFlow(spec, path) for spec in specs)
    return tuple(flows)


def propagation_speed(scenario: Scenario) -> float:
    """Скорость распространения по линиям: среда сценария или settings.light_speed_mps"""
    if scenario.propagation_medium is not None:
        return PROPAGATION_SPEEDS[scenario.propagation_medium]
    return settings.light_speed_mps


def build_context(
    scenario: Scenario,
    decision: Decision,
    catalog: Optional[SplitCatalog] = None,
    light_speed: Optional[float] = None,
    packetized: Optional[bool] = None,
) -> EvaluationContext:
    """Контекст оценки задержек для пары (сценарий, решение)"""
    topology = build_topology(scenario)
    catalog = catalog or build_catalog(scenario)
    ctx = EvaluationContext(
        topology=topology,
        shares=build_shares(decision),
        flows=build_flows(scenario, decision, topology),
        catalog=catalog,
        processing=build_processing(scenario),
        splits=build_splits(decision, catalog),
        slice_kinds={s.name: s.kind for s in scenario.slices},
        slice_sla={s.name: s.d_sla_s for s in scenario.slices},
        light_speed=light_speed if light_speed is not None else propagation_speed(scenario),
        apply_overhead=scenario.splits.apply_overhead,
        packetized=packetized if packetized is not None else settings.packetized_bounds,
    )
    logger.debug(f"Контекст {scenario.name}: {len(ctx.flows)} потоков, {len(ctx.shares)} долей")
    return ctx
