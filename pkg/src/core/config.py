import json
from pathlib import Path
from typing import Optional

from pydantic import ValidationError as PydanticValidationError

from .models import CampaignConfig, HarnessSettings
from .exceptions import ConfigError

SETTINGS_FILE = Path(__file__).resolve().parent.parent.parent / "assets" / "config" / "settings.json"


def load_settings(settings_file: Optional[Path] = None) -> HarnessSettings:
    """Carrega os padrões do harness"""

    config_file = Path(settings_file) if settings_file is not None else SETTINGS_FILE
    if not config_file.exists():
        return HarnessSettings()

    try:
        with open(config_file, 'r', encoding='utf-8') as f:
            file_config = json.load(f)
    except Exception as e:
        raise ConfigError(f"Erro ao carregar configuração: {e}")

    try:
        return HarnessSettings(**file_config.get('harness', {}))
    except PydanticValidationError as e:
        raise ConfigError(f"Configuração inválida em {config_file.name}: {e}")


def load_campaign_config(path: Path) -> CampaignConfig:
    """Lê um documento JSON de campanha"""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"Arquivo de campanha não encontrado: {path}")

    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except Exception as e:
        raise ConfigError(f"Erro ao ler campanha {path.name}: {e}")

    return parse_campaign_config(data)


def parse_campaign_config(data: dict) -> CampaignConfig:
    try:
        return CampaignConfig(**data)
    except PydanticValidationError as e:
        raise ConfigError(f"Campanha inválida: {e}")
    except TypeError as e:
        raise ConfigError(f"Campanha inválida: {e}")
