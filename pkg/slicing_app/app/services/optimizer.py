"""
Максимизация прибыли оператора: проверка допустимости решения,
полный перебор, метод ветвей и границ и сравнение режимов разбиения
"""
import itertools
import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import pandas as pd

from app.config import settings
from app.dependencies import (
    build_catalog,
    build_context,
    build_econ,
    build_processing,
    build_topology,
    embb_rate,
    propagation_speed,
    urllc_cap,
)
from app.schemas.decision import ConstraintCheck, Decision, FlowDelay, PathEntry, ShareEntry, Solution
from app.schemas.scenario import DemandSchema, Scenario
from app.services.delay_engine import EvaluationContext, end_to_end_delay
from app.services.economics import profit, revenue, deployment_cost
from app.services.minplus import SaturationError
from app.services.share_allocator import (
    ALLOCATION_MODES,
    SliceDemand,
    VduOption,
    VduProblem,
    grid_units,
    prune_dominated,
    vdu_options,
)
from app.services.split_catalog import (
    SplitCatalog,
    chain_respected,
    placement_vector,
    required_capacity,
)
from app.services.topology import SliceKey, enumerate_paths, find_route_cycle
from app.utils.constants import DELAY_TOLERANCE, EMBB_DEMAND_LEVELS, HLS_SPLITS, SHARE_TOLERANCE
from app.utils.errors import EXIT_BUDGET_EXCEEDED, EXIT_INFEASIBLE, ScenarioError, SlicingError

logger = logging.getLogger(__name__)

BASELINE_MODES = ("O1", "O9")


class InfeasibleError(SlicingError):
    """Нет ни одного допустимого решения"""
    exit_code = EXIT_INFEASIBLE


class BudgetExceededError(SlicingError):
    """Исчерпан бюджет перебора; best содержит лучшее найденное решение"""
    exit_code = EXIT_BUDGET_EXCEEDED

    def __init__(self, message: str, best: Optional[Solution] = None):
        super().__init__(message)
        self.best = best


# ---------------------------------------------------------------------------
# Проверка допустимости
# ---------------------------------------------------------------------------

def _check(
    constraint: str,
    subject: str,
    value: float,
    limit: float,
    upper: bool,
    tol: float = 0.0,
    relative: bool = False,
) -> ConstraintCheck:
    """upper=True: value ≤ limit, иначе value ≥ limit"""
    slack = limit - value if upper else value - limit
    scale = max(1.0, abs(limit)) if relative else 1.0
    return ConstraintCheck(
        constraint=constraint,
        subject=subject,
        value=value,
        limit=limit,
        slack=slack,
        ok=slack >= -tol * scale,
    )


def _flag(constraint: str, subject: str, ok: bool) -> ConstraintCheck:
    return ConstraintCheck(
        constraint=constraint,
        subject=subject,
        value=1.0 if ok else 0.0,
        limit=1.0,
        slack=0.0 if ok else -1.0,
        ok=ok,
    )


def _structural_checks(scenario: Scenario, decision: Decision, ctx: EvaluationContext) -> List[ConstraintCheck]:
    checks = []
    for node in sorted(ctx.topology.nodes):
        total = ctx.shares.node_total(node)
        if total > 0:
            checks.append(_check("share_limit", f"v{node}", total, 1.0, True, SHARE_TOLERANCE, relative=True))

    for vdu in ctx.topology.vdus:
        admitted = decision.admitted.get(vdu, 0)
        checks.append(_check("admission", f"u{vdu}", admitted, urllc_cap(scenario, vdu), True, 0.0))

    for vdu, split in sorted(ctx.splits.items()):
        checks.append(_flag("split_candidate", f"u{vdu}:{split.id}", split.id in scenario.splits.candidates))
        checks.append(_flag("vnf_chain", f"u{vdu}:{split.id}", chain_respected(placement_vector(split))))

    effective = ctx.effective_flows
    key_load: Dict[SliceKey, List[float]] = {}
    key_path = {}
    node_load: Dict[int, List[float]] = {}
    for rf in effective.values():
        key_load.setdefault(rf.flow.key, [])
        key_load[rf.flow.key].append(rf.flow.rate)
        key_path[rf.flow.key] = rf.path
        for v in rf.path.nodes:
            node_load.setdefault(v, []).append(rf.flow.rate)

    for key in sorted(key_load):
        demand = math.fsum(key_load[key])
        for v in key_path[key].nodes:
            allocated = ctx.shares.share(v, key) * ctx.topology.node(v).capacity
            checks.append(_check("ue_rate", f"{key}@v{v}", allocated, demand, False, SHARE_TOLERANCE, relative=True))

    for v in sorted(node_load):
        load = math.fsum(node_load[v])
        checks.append(_check("node_rate", f"v{v}", load, ctx.topology.node(v).capacity, True, SHARE_TOLERANCE, relative=True))

    urllc = scenario.slice_by_kind("urllc")
    ip_pkt = urllc.packet_bytes if urllc is not None else 1500
    for vdu, split in sorted(ctx.splits.items()):
        need = required_capacity(split, ctx.catalog.radio, ip_pkt)
        for v in ctx.shares.nodes():
            keys = [k for k in ctx.shares.keys_at(v) if k.vdu == vdu]
            if not keys:
                continue
            rate = math.fsum(ctx.shares.share(v, k) * ctx.topology.node(v).capacity for k in keys)
            checks.append(_check("split_capacity", f"u{vdu}@v{v}", rate, need, False, SHARE_TOLERANCE, relative=True))

    edges = frozenset(e for rf in ctx.flows for e in rf.path.edges)
    cycle = find_route_cycle(edges)
    subject = "routes" if cycle is None else "routes:" + ">".join(map(str, cycle))
    checks.append(_flag("feedforward", subject, cycle is None))
    return checks


def _delay_checks(ctx: EvaluationContext) -> Tuple[List[ConstraintCheck], List[FlowDelay]]:
    checks, rows = [], []
    for rf in ctx.flows:
        flow = rf.flow
        try:
            d = end_to_end_delay(rf, ctx)
        except SaturationError as e:
            checks.append(_flag("stability", f"{flow.id}@v{e.node}", False))
            continue
        split = ctx.splits.get(flow.key.vdu)
        if split is not None:
            checks.append(_check("split_delay", flow.id, d.total, split.delay_requirement, True, DELAY_TOLERANCE))
        sla = ctx.slice_sla.get(flow.key.slice)
        if sla is not None:
            checks.append(_check("sla_delay", flow.id, d.total, sla, True, DELAY_TOLERANCE))
        requirement = ctx.requirement(flow)
        rows.append(FlowDelay(
            flow=flow.id,
            slice=flow.key.slice,
            vdu=flow.key.vdu,
            path=rf.path.label,
            d_net=d.queueing,
            d_du=d.processing_du,
            d_cu=d.processing_cu,
            d_ran=d.processing,
            d_pd=d.propagation,
            total=d.total,
            requirement=requirement,
            margin=None if requirement is None else requirement - d.total,
        ))
    return checks, rows


def check_feasibility(scenario: Scenario, decision: Decision, catalog: Optional[SplitCatalog] = None) -> List[ConstraintCheck]:
    """
    Проверяет все ограничения задачи для решения.

    Нарушения возвращаются как данные (ok=False), а не исключения.
    """
    checks, _ = _evaluate(scenario, decision, catalog)
    return checks


def _evaluate(scenario, decision, catalog=None):
    ctx = build_context(scenario, decision, catalog)
    checks = _structural_checks(scenario, decision, ctx)
    delay_checks, rows = _delay_checks(ctx)
    return checks + delay_checks, rows


def evaluate_decision(
    scenario: Scenario,
    decision: Decision,
    solver: str = "given",
    explored: int = 0,
    catalog: Optional[SplitCatalog] = None,
) -> Solution:
    """Решение с прибылью, задержками и сертификатом"""
    catalog = catalog or build_catalog(scenario)
    checks, rows = _evaluate(scenario, decision, catalog)
    econ = build_econ(scenario)
    placements = [placement_vector(catalog.get(s)) for _, s in sorted(decision.splits.items())]
    admitted = dict(decision.admitted)
    solution = Solution(
        scenario=scenario.name,
        solver=solver,
        decision=decision,
        profit=profit(admitted, placements, econ),
        revenue=revenue(admitted, econ),
        cost=deployment_cost(placements, econ.eta, econ.c_du),
        feasible=all(c.ok for c in checks),
        checks=checks,
        delays=rows,
        explored=explored,
    )
    violations = len(solution.violations)
    if violations:
        logger.warning(f"⚠️ Решение {solver}: нарушено ограничений {violations}")
    return solution


# ---------------------------------------------------------------------------
# Таблицы вариантов vDU
# ---------------------------------------------------------------------------

def build_problems(
    scenario: Scenario,
    grid_step: Optional[float] = None,
    candidates: Optional[Iterable[str]] = None,
    catalog: Optional[SplitCatalog] = None,
    allocation: Optional[str] = None,
) -> List[VduProblem]:
    """
    Независимые подзадачи vDU для сценария.

    Args:
        scenario: проверенный сценарий
        grid_step: шаг сетки долей φ (по умолчанию settings.grid_step)
        candidates: разбиения-кандидаты (по умолчанию из сценария)
        catalog: каталог разбиений с применёнными переопределениями
        allocation: "pareto" (точно) или "greedy" (по умолчанию settings.allocation)

    Returns:
        Подзадачи в порядке vDU сценария
    """
    grid_step = grid_step if grid_step is not None else settings.grid_step
    allocation = allocation or settings.allocation
    if allocation not in ALLOCATION_MODES:
        raise ValueError(f"Неизвестный режим распределения долей: {allocation}")
    units = grid_units(grid_step)
    catalog = catalog or build_catalog(scenario)
    topology = build_topology(scenario)
    econ = build_econ(scenario)
    processing = build_processing(scenario)
    urllc = scenario.slice_by_kind("urllc")
    if urllc is None:
        raise ScenarioError("Для оптимизации нужен срез URLLC")
    embb_slice = scenario.slice_by_kind("embb")
    splits = tuple(catalog.get(s) for s in (candidates or scenario.splits.candidates))
    capacities = tuple(required_capacity(s, catalog.radio, urllc.packet_bytes) for s in splits)
    hop_limit = scenario.hop_limit if scenario.hop_limit is not None else settings.hop_limit
    nodes = tuple(topology.nodes[n] for n in sorted(topology.nodes))

    problems = []
    for vdu in topology.vdus:
        paths = tuple(enumerate_paths(topology, topology.cu, vdu, hop_limit))
        rate = embb_rate(scenario, vdu)
        embb = None
        if embb_slice is not None and rate > 0:
            embb = SliceDemand(embb_slice.name, "embb", rate, embb_slice.burst, embb_slice.packet_bytes, embb_slice.d_sla_s)
        problems.append(VduProblem(
            vdu=vdu,
            nodes=nodes,
            urllc_paths=paths,
            embb_paths=paths,
            urllc=SliceDemand(urllc.name, "urllc", urllc.mu_sla_bps, urllc.burst, urllc.packet_bytes, urllc.d_sla_s),
            embb=embb,
            splits=splits,
            capacities=capacities,
            vnfs=catalog.vnfs,
            cap=urllc_cap(scenario, vdu),
            units=units,
            econ=econ,
            processing=processing,
            light_speed=propagation_speed(scenario),
            apply_overhead=scenario.splits.apply_overhead,
            packetized=settings.packetized_bounds,
            allocation=allocation,
            frontier_budget=settings.frontier_budget,
        ))
    return problems


def option_tables(problems: Sequence[VduProblem], workers: Optional[int] = None) -> Dict[int, Tuple[VduOption, ...]]:
    """Таблицы вариантов по vDU; при workers > 1 считаются в пуле процессов"""
    workers = workers if workers is not None else settings.workers
    if workers > 1 and len(problems) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            tables = list(pool.map(vdu_options, problems))
    else:
        tables = [vdu_options(p) for p in problems]
    for p, t in zip(problems, tables):
        logger.info(f"📋 vDU {p.vdu}: вариантов {len(t)}")
    return {p.vdu: t for p, t in zip(problems, tables)}


def _filtered(tables: Dict[int, Sequence[VduOption]], splits: Optional[Iterable[str]]) -> List[List[VduOption]]:
    allowed = set(splits) if splits is not None else None
    result = []
    for vdu in sorted(tables):
        options = [o for o in tables[vdu] if allowed is None or o.split.id in allowed]
        if not options:
            raise InfeasibleError(f"vDU {vdu}: нет допустимых вариантов")
        result.append(prune_dominated(options))
    return result


# ---------------------------------------------------------------------------
# Поиск
# ---------------------------------------------------------------------------

@dataclass
class _Incumbent:
    key: Optional[tuple] = None
    combo: Optional[Tuple[VduOption, ...]] = None
    profit: float = -math.inf

    def offer(self, combo: Tuple[VduOption, ...], total: float) -> None:
        cost = 0.0
        for o in combo:
            cost += o.cost
        key = (-round(total, 9), round(cost, 9), tuple(o.encoding for o in combo))
        if self.key is None or key < self.key:
            self.key, self.combo, self.profit = key, combo, total


def _fits(usage: Dict[int, int], option: VduOption, units: int) -> bool:
    return all(usage.get(v, 0) + k <= units for v, k in option.usage)


def _apply(usage: Dict[int, int], option: VduOption, sign: int) -> None:
    for v, k in option.usage:
        usage[v] = usage.get(v, 0) + sign * k


def _search_exhaustive(tables: List[List[VduOption]], units: int, budget: int) -> Tuple[_Incumbent, int, bool]:
    best = _Incumbent()
    leaves = 0
    for combo in itertools.product(*tables):
        leaves += 1
        if leaves > budget:
            return best, leaves - 1, False
        usage: Dict[int, int] = {}
        feasible = True
        for o in combo:
            if not _fits(usage, o, units):
                feasible = False
                break
            _apply(usage, o, 1)
        if not feasible:
            continue
        if find_route_cycle(frozenset().union(*(o.route_edges for o in combo))) is not None:
            continue
        total = 0.0
        for o in combo:
            total += o.profit
        best.offer(combo, total)
    return best, leaves, True


class _BudgetSignal(Exception):
    pass


def _search_bnb(tables: List[List[VduOption]], units: int, budget: int) -> Tuple[_Incumbent, int, bool]:
    best = _Incumbent()
    levels = len(tables)
    static_rest = [0.0] * (levels + 1)
    for k in range(levels - 1, -1, -1):
        static_rest[k] = static_rest[k + 1] + tables[k][0].profit
    usage: Dict[int, int] = {}
    chosen: List[VduOption] = []
    explored = 0

    def rest_bound(k: int) -> float:
        # лучший вариант каждого оставшегося vDU, совместимый с остатком долей
        total = 0.0
        for table in tables[k:]:
            fitting = next((o for o in table if _fits(usage, o, units)), None)
            if fitting is None:
                return -math.inf
            total += fitting.profit
        return total

    def dfs(k: int, current: float, edges: frozenset) -> None:
        nonlocal explored
        if k == levels:
            best.offer(tuple(chosen), current)
            return
        for option in tables[k]:
            if best.key is not None and current + option.profit + static_rest[k + 1] < best.profit - 1e-9:
                break
            explored += 1
            if explored > budget:
                raise _BudgetSignal()
            if not _fits(usage, option, units):
                continue
            merged = edges | option.route_edges
            if find_route_cycle(merged) is not None:
                continue
            _apply(usage, option, 1)
            value = current + option.profit
            if best.key is None or value + rest_bound(k + 1) >= best.profit - 1e-9:
                chosen.append(option)
                dfs(k + 1, value, merged)
                chosen.pop()
            _apply(usage, option, -1)

    try:
        dfs(0, 0.0, frozenset())
    except _BudgetSignal:
        return best, explored - 1, False
    return best, explored, True


def decision_from_options(combo: Sequence[VduOption], units: int) -> Decision:
    """Решение по выбранным вариантам vDU"""
    splits, admitted, paths, shares = {}, {}, [], []
    for o in combo:
        splits[o.vdu] = o.split.id
        admitted[o.vdu] = o.admitted
        for slice_name, path, packed in (
            ("urllc", o.urllc_path, o.urllc_units),
            ("embb", o.embb_path, o.embb_units),
        ):
            if path is None or not packed:
                continue
            paths.append(PathEntry(slice=slice_name, vdu=o.vdu, nodes=list(path.nodes)))
            for node, k in packed:
                shares.append(ShareEntry(node=node, slice=slice_name, vdu=o.vdu, share=k / units))
    return Decision(splits=splits, admitted=admitted, paths=paths, shares=shares)


def _rename_slices(decision: Decision, scenario: Scenario) -> Decision:
    """Имена срезов решения по сценарию (варианты vDU знают только вид среза)"""
    names = {s.kind: s.name for s in scenario.slices}
    return Decision(
        splits=decision.splits,
        admitted=decision.admitted,
        paths=[PathEntry(slice=names.get(p.slice, p.slice), vdu=p.vdu, nodes=p.nodes) for p in decision.paths],
        shares=[
            ShareEntry(node=s.node, slice=names.get(s.slice, s.slice), vdu=s.vdu, share=s.share)
            for s in decision.shares
        ],
    )


def _solve(
    scenario: Scenario,
    method: str,
    grid_step: Optional[float],
    budget: Optional[int],
    splits: Optional[Iterable[str]] = None,
    tables: Optional[Dict[int, Sequence[VduOption]]] = None,
    workers: Optional[int] = None,
    allocation: Optional[str] = None,
) -> Solution:
    grid_step = grid_step if grid_step is not None else settings.grid_step
    units = grid_units(grid_step)
    catalog = build_catalog(scenario)
    if tables is None:
        problems = build_problems(scenario, grid_step, catalog=catalog, allocation=allocation)
        tables = option_tables(problems, workers)
    ordered = _filtered(tables, splits)
    if method == "exhaustive":
        budget = budget if budget is not None else settings.exhaustive_budget
        best, explored, complete = _search_exhaustive(ordered, units, budget)
    else:
        budget = budget if budget is not None else settings.bnb_budget
        best, explored, complete = _search_bnb(ordered, units, budget)

    solution = None
    if best.combo is not None:
        decision = _rename_slices(decision_from_options(best.combo, units), scenario)
        solution = evaluate_decision(scenario, decision, solver=method, explored=explored, catalog=catalog)
    if not complete:
        logger.warning(f"⚠️ {method}: бюджет {budget} исчерпан")
        raise BudgetExceededError(f"Бюджет перебора {budget} исчерпан ({method})", best=solution)
    if solution is None:
        raise InfeasibleError(f"Нет совместно допустимой комбинации вариантов ({method})")
    logger.info(f"✅ {method}: прибыль {solution.profit:.4f}, просмотрено {explored}")
    return solution


def solve_exhaustive(scenario: Scenario, grid_step: Optional[float] = None, budget: Optional[int] = None, **kwargs) -> Solution:
    """
    Глобальный оптимум полным перебором комбинаций вариантов vDU.

    При allocation="pareto" (по умолчанию) доли перебираются по всем
    минимальным векторам, и результат точен на сетке; allocation="greedy"
    сужает таблицы вариантов до жадных долей.

    Args:
        scenario: проверенный сценарий
        grid_step: шаг сетки долей φ
        budget: предел числа просмотренных комбинаций
        **kwargs: splits, tables, workers, allocation для _solve

    Returns:
        Решение с пересчитанными задержками и проверками

    Raises:
        InfeasibleError: нет совместно допустимой комбинации
        BudgetExceededError: бюджет исчерпан, в best лучшее найденное
    """
    return _solve(scenario, "exhaustive", grid_step, budget, **kwargs)


def solve_bnb(scenario: Scenario, grid_step: Optional[float] = None, budget: Optional[int] = None, **kwargs) -> Solution:
    """
    Тот же оптимум методом ветвей и границ.

    Args:
        scenario: проверенный сценарий
        grid_step: шаг сетки долей φ
        budget: предел числа узлов дерева поиска
        **kwargs: splits, tables, workers, allocation для _solve

    Returns:
        Решение с пересчитанными задержками и проверками
    """
    return _solve(scenario, "bnb", grid_step, budget, **kwargs)


# ---------------------------------------------------------------------------
# Режимы разбиения
# ---------------------------------------------------------------------------

@dataclass
class ModeComparison:
    """Прибыль гибкого выбора разбиений и базовых режимов с одним разбиением"""
    solutions: Dict[str, Optional[Solution]] = field(default_factory=dict)

    @property
    def profits(self) -> Dict[str, Optional[float]]:
        return {mode: (s.profit if s is not None else None) for mode, s in self.solutions.items()}

    @property
    def histogram(self) -> Dict[str, int]:
        ffs = self.solutions.get("FFS")
        if ffs is None:
            return {}
        return dict(sorted(Counter(ffs.decision.splits.values()).items()))


def compare_modes(
    scenario: Scenario,
    grid_step: Optional[float] = None,
    solver: str = "bnb",
    workers: Optional[int] = None,
    allocation: Optional[str] = None,
) -> ModeComparison:
    """
    Решает задачу с набором разбиений сценария и с {O1}, {O9}.

    Таблицы вариантов строятся один раз для объединения разбиений, поэтому
    прибыль FFS не меньше прибыли любого базового режима.

    Args:
        scenario: проверенный сценарий
        grid_step: шаг сетки долей φ
        solver: "bnb" или "exhaustive"
        workers: число процессов для таблиц вариантов
        allocation: режим распределения долей ("pareto" или "greedy")

    Returns:
        Решения по режимам; None для режима без допустимого решения
    """
    candidates = list(dict.fromkeys(list(scenario.splits.candidates) + list(BASELINE_MODES)))
    candidates = [s for s in HLS_SPLITS if s in candidates]
    problems = build_problems(scenario, grid_step, candidates=candidates, allocation=allocation)
    tables = option_tables(problems, workers)
    modes = {"FFS": list(scenario.splits.candidates)}
    modes.update({m: [m] for m in BASELINE_MODES})
    comparison = ModeComparison()
    for mode, splits in modes.items():
        try:
            comparison.solutions[mode] = _solve(scenario, solver, grid_step, None, splits=splits, tables=tables)
        except InfeasibleError:
            logger.warning(f"⚠️ Режим {mode}: нет допустимого решения")
            comparison.solutions[mode] = None
    logger.info(f"📊 Сравнение режимов: {comparison.profits}")
    return comparison


def with_demand(scenario: Scenario, levels: Sequence[float]) -> Scenario:
    """Копия сценария с долями RB eMBB по vDU"""
    demand = [
        DemandSchema(vdu=vdu, embb_rb_fraction=level)
        for vdu, level in zip(scenario.topology.roles.vdus, levels)
    ]
    return scenario.model_copy(update={"demand": demand})


def sweep_demand_grid(
    scenario: Scenario,
    levels: Sequence[float] = EMBB_DEMAND_LEVELS,
    grid_step: Optional[float] = None,
    solver: str = "bnb",
    allocation: Optional[str] = None,
) -> pd.DataFrame:
    """
    Все комбинации уровней нагрузки eMBB по vDU: прибыль FFS, O1, O9.

    Args:
        scenario: сценарий с топологией и срезами
        levels: уровни доли RB eMBB, перебираемые на каждом vDU
        grid_step: шаг сетки долей φ
        solver: "bnb" или "exhaustive"
        allocation: режим распределения долей ("pareto" или "greedy")

    Returns:
        Таблица: instance, embb_u*, profit_FFS, profit_O1, profit_O9, splits_FFS
    """
    vdus = list(scenario.topology.roles.vdus)
    rows = []
    for index, combo in enumerate(itertools.product(levels, repeat=len(vdus))):
        result = compare_modes(with_demand(scenario, combo), grid_step, solver, allocation=allocation)
        row = {"instance": index}
        row.update({f"embb_u{u}": level for u, level in zip(vdus, combo)})
        for mode, value in result.profits.items():
            row[f"profit_{mode}"] = value
        ffs = result.solutions.get("FFS")
        row["splits_FFS"] = ",".join(ffs.decision.splits[u] for u in vdus) if ffs is not None else ""
        rows.append(row)
    logger.info(f"🧮 Сетка нагрузок: {len(rows)} экземпляров")
    return pd.DataFrame(rows)


def solution_frame(solution: Solution, scenario: Scenario) -> pd.DataFrame:
    """Таблица решения: строка на узел, доли φ по срезам и vDU, разбиение и F"""
    vdus = list(scenario.topology.roles.vdus)
    shares = {(s.node, s.slice, s.vdu): s.share for s in solution.decision.shares}
    rows = []
    for node in sorted(n.id for n in scenario.topology.nodes):
        row = {"node": node}
        for sl in scenario.slices:
            for u in vdus:
                row[f"phi_{sl.name}_u{u}"] = shares.get((node, sl.name, u), 0.0)
        row["split"] = solution.decision.splits.get(node, "") if node in vdus else ""
        row["admitted"] = solution.decision.admitted.get(node) if node in vdus else None
        rows.append(row)
    return pd.DataFrame(rows)
