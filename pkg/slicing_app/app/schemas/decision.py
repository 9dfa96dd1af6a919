"""
Pydantic схемы решения оптимизатора и результата с сертификатом допустимости
"""
from typing import Dict, List, Optional
from pydantic import BaseModel, Field, model_validator


class ShareEntry(BaseModel):
    """Доля φ пропускной способности узла для среза (s, u)"""
    node: int
    slice: str
    vdu: int
    share: float = Field(..., ge=0, le=1)


class PathEntry(BaseModel):
    """Выбранный маршрут CU -> vDU для среза (s, u)"""
    slice: str
    vdu: int
    nodes: List[int] = Field(..., min_length=1)


class Decision(BaseModel):
    """Переменные решения: доли, разбиения, маршруты, число допущенных UE"""
    splits: Dict[int, str] = Field(default_factory=dict, description="vDU -> разбиение")
    admitted: Dict[int, int] = Field(default_factory=dict, description="vDU -> допущено URLLC UE")
    paths: List[PathEntry] = Field(default_factory=list)
    shares: List[ShareEntry] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_unique(self):
        keys = [(p.slice, p.vdu) for p in self.paths]
        if len(set(keys)) != len(keys):
            raise ValueError("Маршрут среза задан более одного раза")
        share_keys = [(s.node, s.slice, s.vdu) for s in self.shares]
        if len(set(share_keys)) != len(share_keys):
            raise ValueError("Доля узла для среза задана более одного раза")
        if any(v < 0 for v in self.admitted.values()):
            raise ValueError("Число допущенных UE не может быть отрицательным")
        return self

    def path_for(self, slice_name: str, vdu: int) -> Optional[List[int]]:
        for p in self.paths:
            if p.slice == slice_name and p.vdu == vdu:
                return p.nodes
        return None


class ConstraintCheck(BaseModel):
    """Проверка одного ограничения: значение, предел и запас"""
    constraint: str
    subject: str
    value: float
    limit: float
    slack: float
    ok: bool


class FlowDelay(BaseModel):
    """Разложение оценки сквозной задержки потока"""
    flow: str
    slice: str
    vdu: int
    path: str
    d_net: float
    d_du: float
    d_cu: float
    d_ran: float
    d_pd: float
    total: float
    requirement: Optional[float] = None
    margin: Optional[float] = None


class Solution(BaseModel):
    """Решение с прибылью, задержками потоков и сертификатом"""
    scenario: str
    solver: str
    decision: Decision
    profit: float
    revenue: float
    cost: float
    feasible: bool
    checks: List[ConstraintCheck] = Field(default_factory=list)
    delays: List[FlowDelay] = Field(default_factory=list)
    explored: int = 0

    @property
    def violations(self) -> List[ConstraintCheck]:
        return [c for c in self.checks if not c.ok]
