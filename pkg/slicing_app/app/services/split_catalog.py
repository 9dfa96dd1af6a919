"""
Каталог функциональных разбиений RAN

Для каждого разбиения хранит размещение VNF (DU или CU), требование к
задержке, множители накладных расходов на пакет и формулу требуемой
ёмкости midhaul/fronthaul в нисходящем направлении.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Optional, Tuple

import pandas as pd

from app.schemas.catalog import CatalogOverride, RadioConfig
from app.utils.constants import (
    CU_PREFIX_LENGTH,
    DEFAULT_DELAY_PROFILE,
    DELAY_PROFILES,
    HLS_SPLITS,
    LLS_SPLITS,
    OVERHEAD_MULTIPLIERS,
    RU_FFT_FRACTION,
    SPLIT_TAXONOMY,
    VNF_CHAIN,
)
from app.utils.errors import SlicingError
from app.utils.io import dump_model, load_model

logger = logging.getLogger(__name__)


class UnknownSplitError(SlicingError):
    """Разбиение вне каталога или без нужной формулы/размещения"""
    pass


class Location(str, Enum):
    DU = "DU"
    CU = "CU"


class PacketClass(str, Enum):
    URLLC = "urllc"
    EMBB = "embb"


@dataclass(frozen=True)
class VnfProfile:
    """VNF стека протоколов: индекс g, уровень, доля z_g времени обработки (%)"""
    index: int
    layer: str
    processing_fraction: float


@dataclass(frozen=True)
class SplitOption:
    """Одно функциональное разбиение"""
    id: str
    label: str
    placement: Optional[Tuple[Location, ...]]
    delay_requirement: Optional[float]
    multiplier_urllc: float = 1.0
    multiplier_embb: float = 1.0
    selectable: bool = False

    @property
    def cu_vnfs(self) -> int:
        return sum(1 for loc in self.placement or () if loc is Location.CU)

    @property
    def placement_label(self) -> str:
        if self.placement is None:
            return ""
        return "".join("C" if loc is Location.CU else "D" for loc in self.placement)


def default_vnf_profiles() -> Tuple[VnfProfile, ...]:
    return tuple(VnfProfile(g, layer, z) for g, (layer, z) in enumerate(VNF_CHAIN, start=1))


def check_processing_fractions(vnfs: Iterable[VnfProfile], tolerance: float = 0.05) -> bool:
    """Доли VNF плюс FFT на RU дают 100% с учётом округления публикации"""
    total = math.fsum(v.processing_fraction for v in vnfs) + RU_FFT_FRACTION
    return abs(total - 100.0) <= tolerance


def _build_option(split_id: str, delay_profile: Dict[str, float], vnf_count: int) -> SplitOption:
    label = SPLIT_TAXONOMY[split_id][0]
    if split_id in CU_PREFIX_LENGTH:
        cu = CU_PREFIX_LENGTH[split_id]
        placement = tuple(Location.CU if g < cu else Location.DU for g in range(vnf_count))
        m_urllc, m_embb = OVERHEAD_MULTIPLIERS[split_id]
        return SplitOption(
            id=split_id,
            label=label,
            placement=placement,
            delay_requirement=delay_profile[split_id],
            multiplier_urllc=m_urllc,
            multiplier_embb=m_embb,
            selectable=True,
        )
    return SplitOption(
        id=split_id,
        label=label,
        placement=None,
        delay_requirement=delay_profile.get(split_id),
    )


class SplitCatalog:
    """Неизменяемый каталог разбиений для заданной радиоконфигурации"""

    def __init__(
        self,
        radio: Optional[RadioConfig] = None,
        delay_profile: str = DEFAULT_DELAY_PROFILE,
        delay_overrides: Optional[Dict[str, float]] = None,
    ):
        if delay_profile not in DELAY_PROFILES:
            raise UnknownSplitError(f"Неизвестный профиль задержки: {delay_profile}")
        self.radio = radio or RadioConfig()
        self.delay_profile = delay_profile
        self.delay_overrides = dict(delay_overrides or {})
        for split_id in self.delay_overrides:
            if split_id not in SPLIT_TAXONOMY:
                raise UnknownSplitError(f"Переопределение задержки для неизвестного разбиения {split_id}")
        delays = {**DELAY_PROFILES[delay_profile], **self.delay_overrides}
        self.vnfs = default_vnf_profiles()
        self._options = {sid: _build_option(sid, delays, len(self.vnfs)) for sid in SPLIT_TAXONOMY}

    def get(self, split_id: str) -> SplitOption:
        try:
            return self._options[split_id]
        except KeyError:
            raise UnknownSplitError(f"Неизвестное разбиение: {split_id}") from None

    def all(self) -> Tuple[SplitOption, ...]:
        return tuple(self._options.values())

    def selectable(self) -> Tuple[SplitOption, ...]:
        return tuple(self._options[sid] for sid in HLS_SPLITS)

    def capacity(self, split_id: str, ip_pkt: int) -> float:
        return required_capacity(self.get(split_id), self.radio, ip_pkt)


def ip_packets_per_tti(rc: RadioConfig, ip_pkt: int) -> float:
    """Число IP-пакетов на TTI: TBS / ((IP + заголовки PDCP, RLC, MAC)·8)"""
    return rc.tbs_dl / ((ip_pkt + rc.hdr_pdcp + rc.hdr_rlc + rc.hdr_mac) * 8)


def pdsch_res(rc: RadioConfig) -> int:
    """RE канала PDSCH за вычетом опорных символов"""
    return rc.n_rb * rc.n_sc_rb * (rc.n_sym_sub - rc.ref_sym_res * rc.n_ap)


def required_capacity(split: SplitOption, rc: RadioConfig, ip_pkt: int) -> float:
    """Требуемая ёмкость интерфейса разбиения, бит/с"""
    sid = split.id
    if sid in ("O1", "O2", "O4", "O6"):
        headers = {
            "O1": 0,
            "O2": rc.hdr_pdcp,
            "O4": rc.hdr_pdcp + rc.hdr_rlc,
            "O6": rc.hdr_pdcp + rc.hdr_rlc + rc.hdr_mac,
        }[sid]
        bits_per_tti = ip_packets_per_tti(rc, ip_pkt) * (ip_pkt + headers) * rc.n_dl_tbs * 8
        rate = bits_per_tti / rc.tti
        if sid == "O6":
            rate += rc.fapi_dl
        return rate
    if sid == "O8":
        return (rc.n_ue * pdsch_res(rc) + rc.pdcch_res) * rc.n_iq * rc.n_layers / rc.tti
    if sid == "O9":
        return rc.n_sc_rb * rc.n_rb * rc.n_sym_sub * rc.n_layers * rc.n_iq / rc.tti
    if sid == "O11":
        return rc.sample_rate * rc.n_ap * rc.n_iq
    raise UnknownSplitError(f"Для разбиения {sid} нет формулы ёмкости")


def overhead_multiplier(split: SplitOption, packet_class: PacketClass) -> float:
    """Множитель накладных расходов на пакет URLLC (128 B) или eMBB (1500 B)"""
    if PacketClass(packet_class) is PacketClass.URLLC:
        return split.multiplier_urllc
    return split.multiplier_embb


def placement_vector(split: SplitOption) -> Tuple[bool, ...]:
    """x_g по цепочке g = 1..G: True означает размещение VNF на CU"""
    if split.placement is None:
        raise UnknownSplitError(f"Разбиение {split.id} не задаёт размещение VNF на DU/CU")
    return tuple(loc is Location.CU for loc in split.placement)


def chain_respected(placement: Tuple[bool, ...]) -> bool:
    """Если VNF g на CU, то и g−1 на CU"""
    return all(placement[g] <= placement[g - 1] for g in range(1, len(placement)))


def load_catalog(path) -> SplitCatalog:
    """Каталог из файла переопределений; пустой файл даёт значения по умолчанию"""
    override = load_model(path, CatalogOverride)
    return catalog_from_override(override)


def catalog_from_override(override: CatalogOverride) -> SplitCatalog:
    return SplitCatalog(
        radio=override.radio,
        delay_profile=override.delay_profile,
        delay_overrides=override.delay_requirements_s,
    )


def dump_catalog(catalog: SplitCatalog, path) -> None:
    override = CatalogOverride(
        radio=catalog.radio,
        delay_profile=catalog.delay_profile,
        delay_requirements_s=catalog.delay_overrides,
    )
    dump_model(override, path)


def catalog_frame(catalog: SplitCatalog, ip_pkt: int = 1500, include_lls: bool = False) -> pd.DataFrame:
    """Таблица каталога: одна строка на разбиение"""
    ids = list(HLS_SPLITS) + (list(LLS_SPLITS) if include_lls else [])
    rows = []
    for sid in ids:
        split = catalog.get(sid)
        du = cu = None
        if split.placement is not None:
            x = placement_vector(split)
            cu = math.fsum(v.processing_fraction for v, at_cu in zip(catalog.vnfs, x) if at_cu)
            du = math.fsum(v.processing_fraction for v, at_cu in zip(catalog.vnfs, x) if not at_cu)
        rows.append({
            "split": sid,
            "label": split.label,
            "placement": split.placement_label,
            "capacity_bps": required_capacity(split, catalog.radio, ip_pkt),
            "delay_requirement_s": split.delay_requirement,
            "multiplier_128B": split.multiplier_urllc,
            "multiplier_1500B": split.multiplier_embb,
            "du_processing_pct": du,
            "cu_processing_pct": cu,
        })
    logger.info(f"📚 Каталог разбиений: {len(rows)} строк, профиль {catalog.delay_profile}")
    return pd.DataFrame(rows)
