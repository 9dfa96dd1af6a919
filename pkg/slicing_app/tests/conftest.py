"""
Конфигурация pytest
"""
import os
from pathlib import Path

import pytest

# Тестовые переменные окружения: один процесс, без .env разработчика
os.environ.setdefault('RANSLICE_WORKERS', '1')
os.environ.setdefault('RANSLICE_LOG_LEVEL', 'WARNING')

from app.schemas.cashflow import CashFlowInput  # noqa: E402
from app.schemas.scenario import Scenario  # noqa: E402
from app.utils.io import load_decision, load_model  # noqa: E402

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

TANDEM_TOTAL_S = 1.43153667431e-3


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def tandem_scenario() -> Scenario:
    return load_model(FIXTURES / "tandem5.scenario", Scenario)


@pytest.fixture
def tandem_decision():
    return load_decision(FIXTURES / "tandem5.decision")


@pytest.fixture
def ring_scenario() -> Scenario:
    return load_model(FIXTURES / "ring10.scenario", Scenario)


@pytest.fixture
def fig6_scenario() -> Scenario:
    return load_model(FIXTURES / "fig6_default.scenario", Scenario)


@pytest.fixture
def relaxed_scenario() -> Scenario:
    return load_model(FIXTURES / "ring10_relaxed.scenario", Scenario)


@pytest.fixture
def reference_decision():
    return load_decision(FIXTURES / "ring10_reference.decision")


@pytest.fixture
def verizon() -> CashFlowInput:
    return load_model(FIXTURES / "verizon_q3_2022.cashflow", CashFlowInput)


def chain_scenario(
    capacities,
    latencies=None,
    distance_m=0.0,
    vdus=None,
    embb_fraction=None,
    name="chain",
    **extra,
) -> Scenario:
    """Линейная цепочка узлов 1..V: CU = 1, vDU = V (или заданные vdus)"""
    ids = list(range(1, len(capacities) + 1))
    latencies = latencies or [0.0] * len(ids)
    data = {
        "name": name,
        "topology": {
            "nodes": [
                {"id": i, "capacity_bps": c, "latency_s": t}
                for i, c, t in zip(ids, capacities, latencies)
            ],
            "links": [{"a": a, "b": b, "distance_m": distance_m} for a, b in zip(ids, ids[1:])],
            "roles": {"cu": ids[0], "vdus": vdus or [ids[-1]]},
        },
        "slices": [
            {"name": "urllc", "kind": "urllc", "d_sla_s": 1e-3, "mu_sla_bps": 1.024e6, "packet_bytes": 128},
        ],
    }
    if embb_fraction is not None:
        data["slices"].append({"name": "embb", "kind": "embb", "mu_sla_bps": 29.201e6, "packet_bytes": 1500})
        data["demand"] = [{"vdu": u, "embb_rb_fraction": embb_fraction} for u in data["topology"]["roles"]["vdus"]]
    data.update(extra)
    return Scenario.model_validate(data)


@pytest.fixture
def make_chain():
    """Фабрика линейных сценариев"""
    return chain_scenario


def graph_scenario(nodes, links, vdus, d_sla=1e-3, name="graph", **extra) -> Scenario:
    """
    Сценарий на произвольном графе: nodes - (id, capacity_bps, latency_s),
    links - пары (a, b) с нулевой длиной, CU - первый узел, только срез URLLC
    """
    data = {
        "name": name,
        "topology": {
            "nodes": [{"id": i, "capacity_bps": c, "latency_s": t} for i, c, t in nodes],
            "links": [{"a": a, "b": b, "distance_m": 0.0} for a, b in links],
            "roles": {"cu": nodes[0][0], "vdus": list(vdus)},
        },
        "slices": [
            {"name": "urllc", "kind": "urllc", "d_sla_s": d_sla, "mu_sla_bps": 1.024e6, "packet_bytes": 128},
        ],
    }
    data.update(extra)
    return Scenario.model_validate(data)


@pytest.fixture
def make_graph():
    """Фабрика сценариев на произвольном графе"""
    return graph_scenario
