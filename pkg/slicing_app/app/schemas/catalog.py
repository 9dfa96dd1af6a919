"""
Pydantic схемы радиоконфигурации и файла переопределения каталога разбиений
"""
from typing import Dict, Literal, Optional
from pydantic import BaseModel, ConfigDict, Field

from app.utils.constants import DEFAULT_DELAY_PROFILE, RADIO_DEFAULTS

DelayProfile = Literal["near_ideal", "relaxed"]


class RadioConfig(BaseModel):
    """Параметры радиоинтерфейса для формул ёмкости разбиений"""
    model_config = ConfigDict(frozen=True)

    tbs_dl: int = Field(RADIO_DEFAULTS["tbs_dl"], ge=1, description="Размер транспортного блока, бит")
    n_rb: int = Field(RADIO_DEFAULTS["n_rb"], ge=1, description="Число ресурсных блоков")
    sample_rate: float = Field(RADIO_DEFAULTS["sample_rate"], gt=0, description="Частота дискретизации, отсчётов/с")
    n_sc_rb: int = Field(RADIO_DEFAULTS["n_sc_rb"], ge=1, description="Поднесущих на RB")
    n_sym_sub: int = Field(RADIO_DEFAULTS["n_sym_sub"], ge=1, description="Символов на подкадр")
    n_layers: int = Field(RADIO_DEFAULTS["n_layers"], ge=1, description="Число MIMO-слоёв")
    n_iq: int = Field(RADIO_DEFAULTS["n_iq"], ge=1, description="Бит на IQ-отсчёт")
    n_ap: int = Field(RADIO_DEFAULTS["n_ap"], ge=1, description="Число антенных портов")
    n_dl_tbs: int = Field(RADIO_DEFAULTS["n_dl_tbs"], ge=1, description="Транспортных блоков на TTI")
    fapi_dl: float = Field(RADIO_DEFAULTS["fapi_dl"], gt=0, description="Сигнализация FAPI, бит/с")
    ref_sym_res: int = Field(RADIO_DEFAULTS["ref_sym_res"], ge=1, description="RE опорных символов")
    pdcch_res: int = Field(RADIO_DEFAULTS["pdcch_res"], ge=1, description="RE канала PDCCH")
    hdr_pdcp: int = Field(RADIO_DEFAULTS["hdr_pdcp"], ge=0, description="Заголовок PDCP, байт")
    hdr_rlc: int = Field(RADIO_DEFAULTS["hdr_rlc"], ge=0, description="Заголовок RLC, байт")
    hdr_mac: int = Field(RADIO_DEFAULTS["hdr_mac"], ge=0, description="Заголовок MAC, байт")
    tti: float = Field(RADIO_DEFAULTS["tti"], gt=0, description="Длительность TTI, с")
    n_ue: int = Field(RADIO_DEFAULTS["n_ue"], ge=1, description="UE, между которыми делятся RB (O8)")


class CatalogOverride(BaseModel):
    """Файл переопределения каталога: все поля необязательны"""
    radio: Optional[RadioConfig] = None
    delay_profile: DelayProfile = DEFAULT_DELAY_PROFILE
    delay_requirements_s: Dict[str, float] = Field(default_factory=dict, description="Требования к задержке по разбиению")
    ip_packet_bytes: int = Field(1500, ge=1, description="Размер IP-пакета для расчёта ёмкости")
