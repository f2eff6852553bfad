# app/config.py
"""Réglages par défaut (CLI) et réglages du service lus dans l'environnement."""
import json
import os

from pydantic import BaseModel, Field

DEFAULT_NORMALIZE_CAP = 1_000_000
DEFAULT_SCAN_CHUNK = 100_000
DEFAULT_SCAN_MAX_LIMIT = 10_000_000
DEFAULT_MAX_BOUND = 2_000_000
DEFAULT_LOG_LEVEL = "INFO"


def default_workers() -> int:
    return os.cpu_count() or 1


class ServiceSettings(BaseModel):
    normalize_cap: int = Field(DEFAULT_NORMALIZE_CAP, ge=1)
    scan_chunk: int = Field(DEFAULT_SCAN_CHUNK, ge=1)
    scan_workers: int = Field(default_factory=default_workers, ge=1)
    scan_max_limit: int = Field(DEFAULT_SCAN_MAX_LIMIT, ge=1)
    # borne B maximale acceptée par le service : find_cycles alloue des tables de taille B
    max_bound: int = Field(DEFAULT_MAX_BOUND, ge=1)
    log_level: str = DEFAULT_LOG_LEVEL


def load_settings() -> ServiceSettings:
    env = {
        "normalize_cap": os.getenv("HAPPY_NORMALIZE_CAP"),
        "scan_chunk": os.getenv("HAPPY_SCAN_CHUNK"),
        "scan_workers": os.getenv("HAPPY_SCAN_WORKERS"),
        "scan_max_limit": os.getenv("HAPPY_SCAN_MAX_LIMIT"),
        "max_bound": os.getenv("HAPPY_MAX_BOUND"),
        "log_level": os.getenv("LOG_LEVEL"),
    }
    return ServiceSettings(**{key: value for key, value in env.items() if value})


def load_api_keys() -> dict:
    clients_json = os.getenv("CLIENTS", "{}")
    try:
        clients = json.loads(clients_json)
    except json.JSONDecodeError:
        clients = {}
    if not clients:
        clients = {"default": os.getenv("API_KEY", "dev-secret-key")}
    return clients
