"""
Pydantic схемы файла сценария: топология, срезы, нагрузка, радио, экономика
"""
from typing import Dict, List, Literal, Optional
from pydantic import BaseModel, Field, field_validator, model_validator

from app.schemas.catalog import DelayProfile, RadioConfig
from app.utils.constants import (
    DEFAULT_DELAY_PROFILE,
    DEFAULT_LINK_DISTANCE_M,
    ECON_DEFAULTS,
    EMBB_DEMAND_BPS,
    HLS_SPLITS,
    PROCESSING_DEFAULTS,
)

SliceKind = Literal["urllc", "embb"]
PropagationMedium = Literal["vacuum", "fiber"]


class NodeSchema(BaseModel):
    """Транспортный узел"""
    id: int
    capacity_bps: float = Field(..., gt=0, description="Пропускная способность R_v, бит/с")
    latency_s: float = Field(0.0, ge=0, description="Фиксированная задержка T_v, с")


class LinkSchema(BaseModel):
    """Ненаправленная связь между узлами"""
    a: int
    b: int
    distance_m: float = Field(DEFAULT_LINK_DISTANCE_M, ge=0, description="Длина линии, м")


class RolesSchema(BaseModel):
    """Роли узлов: CU, DU, vDU и привязка RU к vDU"""
    cu: int
    dus: List[int] = Field(default_factory=list)
    vdus: List[int]
    rus: Dict[str, int] = Field(default_factory=dict, description="RU -> vDU (расстояние 0)")


class TopologySchema(BaseModel):
    """Граф транспортной сети"""
    nodes: List[NodeSchema]
    links: List[LinkSchema] = Field(default_factory=list)
    roles: RolesSchema

    @model_validator(mode="after")
    def check_references(self):
        ids = [n.id for n in self.nodes]
        if len(set(ids)) != len(ids):
            raise ValueError("Идентификаторы узлов повторяются")
        known = set(ids)
        for link in self.links:
            if link.a not in known or link.b not in known:
                raise ValueError(f"Связь {link.a}-{link.b} ссылается на неизвестный узел")
            if link.a == link.b:
                raise ValueError(f"Петля на узле {link.a}")
        for node in [self.roles.cu, *self.roles.dus, *self.roles.vdus, *self.roles.rus.values()]:
            if node not in known:
                raise ValueError(f"Роль ссылается на неизвестный узел {node}")
        return self


class SliceSchema(BaseModel):
    """Срез сети и его SLA"""
    name: str
    kind: SliceKind
    d_sla_s: Optional[float] = Field(None, gt=0, description="Требование SLA к задержке, с")
    mu_sla_bps: float = Field(..., ge=0, description="Скорость на UE (URLLC) или на срез (eMBB), бит/с")
    packet_bytes: int = Field(..., ge=1)
    burst_bits: Optional[float] = Field(None, description="Всплеск на поток, по умолчанию один пакет")

    @model_validator(mode="after")
    def check_burst(self):
        if self.burst_bits is not None and self.burst_bits < self.packet_bytes * 8:
            raise ValueError(f"Всплеск среза {self.name} меньше одного пакета")
        return self

    @property
    def burst(self) -> float:
        return self.burst_bits if self.burst_bits is not None else float(self.packet_bytes * 8)


class DemandSchema(BaseModel):
    """Фоновая нагрузка eMBB на RU данного vDU"""
    vdu: int
    embb_rb_fraction: float = Field(0.2, ge=0, le=1, description="Доля RB, занятая eMBB")
    embb_rate_bps: Optional[float] = Field(None, ge=0, description="Скорость eMBB, по умолчанию из таблицы уровней")

    @property
    def embb_rate(self) -> float:
        if self.embb_rate_bps is not None:
            return self.embb_rate_bps
        level = round(self.embb_rb_fraction, 6)
        if level not in EMBB_DEMAND_BPS:
            raise ValueError(f"Нет табличной скорости eMBB для доли {self.embb_rb_fraction}")
        return EMBB_DEMAND_BPS[level]


class ProcessingSchema(BaseModel):
    """Параметры обработки VNF"""
    z_s: float = Field(PROCESSING_DEFAULTS["z_s"], ge=0, description="Время обработки эталонной нагрузки, с")
    x_bps: float = Field(PROCESSING_DEFAULTS["x_bps"], gt=0, description="Эталонная нагрузка, бит/с")
    k_u: int = Field(PROCESSING_DEFAULTS["k_u"], ge=1, description="Ядер на vDU")
    k_0: int = Field(PROCESSING_DEFAULTS["k_0"], ge=1, description="Ядер на CU")


class EconomicsSchema(BaseModel):
    """Экономические параметры"""
    eta: float = Field(ECON_DEFAULTS["eta"], gt=0, le=1)
    zeta: float = Field(ECON_DEFAULTS["zeta"], gt=0, le=1)
    f_max: int = Field(ECON_DEFAULTS["f_max"], ge=1)
    c_du: float = Field(ECON_DEFAULTS["c_du"], gt=0)
    gamma: Optional[float] = Field(None, gt=0, description="Явное значение γ, иначе вычисляется")


class SplitsSchema(BaseModel):
    """Набор допустимых разбиений и профиль требований к задержке"""
    candidates: List[str] = Field(default_factory=lambda: list(HLS_SPLITS))
    delay_profile: DelayProfile = DEFAULT_DELAY_PROFILE
    apply_overhead: bool = Field(True, description="Умножать ρ и σ на множитель накладных расходов")

    @field_validator("candidates")
    @classmethod
    def check_candidates(cls, value: List[str]) -> List[str]:
        unknown = [s for s in value if s not in HLS_SPLITS]
        if unknown:
            raise ValueError(f"Недопустимые разбиения: {unknown}")
        if not value:
            raise ValueError("Пустой набор разбиений")
        return value


class FlowSchema(BaseModel):
    """Явно заданный поток (иначе потоки строятся из решения)"""
    id: str
    slice: str
    vdu: int
    rate_bps: float = Field(..., gt=0)
    burst_bits: float = Field(..., ge=0)
    packet_bytes: int = Field(..., ge=1)
    path: Optional[List[int]] = None

    @model_validator(mode="after")
    def check_burst(self):
        if self.burst_bits < self.packet_bytes * 8:
            raise ValueError(f"Всплеск потока {self.id} меньше одного пакета")
        return self


class Scenario(BaseModel):
    """Сценарий: вход для analyze, optimize и simulate"""
    name: str = "scenario"
    topology: TopologySchema
    slices: List[SliceSchema]
    demand: List[DemandSchema] = Field(default_factory=list)
    radio: RadioConfig = Field(default_factory=RadioConfig)
    economics: EconomicsSchema = Field(default_factory=EconomicsSchema)
    processing: ProcessingSchema = Field(default_factory=ProcessingSchema)
    splits: SplitsSchema = Field(default_factory=SplitsSchema)
    flows: Optional[List[FlowSchema]] = None
    hop_limit: Optional[int] = Field(None, ge=1)
    propagation_medium: Optional[PropagationMedium] = Field(
        None, description="Среда линий: vacuum (3e8 м/с) или fiber (2e8 м/с); по умолчанию из настроек"
    )

    @model_validator(mode="after")
    def check_slices(self):
        names = [s.name for s in self.slices]
        if len(set(names)) != len(names):
            raise ValueError("Имена срезов повторяются")
        vdus = set(self.topology.roles.vdus)
        for d in self.demand:
            if d.vdu not in vdus:
                raise ValueError(f"Нагрузка задана для неизвестного vDU {d.vdu}")
        for f in self.flows or []:
            if f.slice not in names:
                raise ValueError(f"Поток {f.id} ссылается на неизвестный срез {f.slice}")
            if f.vdu not in vdus:
                raise ValueError(f"Поток {f.id} ссылается на неизвестный vDU {f.vdu}")
        return self

    def slice_by_kind(self, kind: str) -> Optional[SliceSchema]:
        for s in self.slices:
            if s.kind == kind:
                return s
        return None

    def slice_by_name(self, name: str) -> SliceSchema:
        for s in self.slices:
            if s.name == name:
                return s
        raise KeyError(name)

    def demand_for(self, vdu: int) -> Optional[DemandSchema]:
        for d in self.demand:
            if d.vdu == vdu:
                return d
        return None
