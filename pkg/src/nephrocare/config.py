"""Service configuration: key=value file with environment overrides.

Lines are `key = value`; blank lines and #-comments are ignored. Every
key can be overridden by an environment variable named NEPHROCARE_<KEY
uppercased>, e.g. NEPHROCARE_LISTEN_PORT.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields
from pathlib import Path

from .tables import default_bp_table_path, default_growth_table_path

ENV_PREFIX = "NEPHROCARE_"


@dataclass
class Config:
    listen_host: str = "127.0.0.1"
    listen_port: int = 8000
    store_path: str = "./data/store"
    blob_dir: str = "./data/blobs"
    bp_table_path: str = str(default_bp_table_path())
    growth_table_path: str = str(default_growth_table_path())
    hospitals_path: str = ""
    static_dir: str = ""
    webhook_urls: list[str] = field(default_factory=list)
    notification_log_path: str = ""
    smtp_host: str = ""
    smtp_port: int = 587
    smtp_username: str = ""
    smtp_password: str = ""
    mail_from: str = "nephrocare@localhost"
    hash_cost: int = 14
    token_ttl_hours: int = 24
    report_size_cap: int = 8 * 1024 * 1024
    retry_attempts: int = 3
    retry_base_delay: float = 1.0

    @classmethod
    def field_names(cls) -> set[str]:
        return {f.name for f in fields(cls)}


def _coerce(name: str, raw: str, target_type: type) -> object:
    raw = raw.strip()
    if target_type is int:
        return int(raw)
    if target_type is float:
        return float(raw)
    if target_type is list or name == "webhook_urls":
        return [part.strip() for part in raw.split(",") if part.strip()]
    return raw


def load_config(path: str | Path | None = None, environ: dict | None = None) -> Config:
    """Defaults, then the config file, then NEPHROCARE_* overrides."""
    config = Config()
    known = {f.name: f.type for f in fields(Config)}
    types = {
        "listen_port": int,
        "smtp_port": int,
        "hash_cost": int,
        "token_ttl_hours": int,
        "report_size_cap": int,
        "retry_attempts": int,
        "retry_base_delay": float,
        "webhook_urls": list,
    }

    if path is not None:
        text = Path(path).read_text(encoding="utf-8")
        for lineno, line in enumerate(text.splitlines(), start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if "=" not in stripped:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = stripped.partition("=")
            key = key.strip()
            if key not in known:
                raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
            setattr(config, key, _coerce(key, value, types.get(key, str)))

    env = os.environ if environ is None else environ
    for key in Config.field_names():
        env_name = ENV_PREFIX + key.upper()
        if env_name in env:
            setattr(config, key, _coerce(key, env[env_name], types.get(key, str)))
    return config


def check_config(config: Config) -> list[str]:
    """Validate a configuration; returns a list of problems (empty when OK)."""
    from .rules import BpReferenceTable, GrowthReferenceTable, RulesError

    problems: list[str] = []
    for name in ("bp_table_path", "growth_table_path"):
        path = getattr(config, name)
        if not Path(path).is_file():
            problems.append(f"{name}: no such file: {path}")
    if not problems:
        try:
            BpReferenceTable.load(config.bp_table_path).validate_coverage()
        except (RulesError, ValueError) as exc:
            problems.append(f"bp_table_path: {exc}")
        try:
            GrowthReferenceTable.load(config.growth_table_path)
        except (RulesError, ValueError) as exc:
            problems.append(f"growth_table_path: {exc}")
    if config.hospitals_path and not Path(config.hospitals_path).is_file():
        problems.append(f"hospitals_path: no such file: {config.hospitals_path}")
    if config.static_dir and not Path(config.static_dir).is_dir():
        problems.append(f"static_dir: no such directory: {config.static_dir}")
    if config.listen_port < 1 or config.listen_port > 65535:
        problems.append(f"listen_port out of range: {config.listen_port}")
    if config.hash_cost < 4 or config.hash_cost > 20:
        problems.append(f"hash_cost must be between 4 and 20, got {config.hash_cost}")
    if config.retry_attempts < 1:
        problems.append("retry_attempts must be >= 1")
    return problems
