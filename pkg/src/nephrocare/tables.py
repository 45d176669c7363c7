"""Locations of the packaged default reference tables."""

from importlib import resources
from pathlib import Path


def _data_path(name: str) -> Path:
    with resources.as_file(resources.files("nephrocare") / "data" / name) as path:
        return Path(path)


def default_bp_table_path() -> Path:
    return _data_path("bp_reference.csv")


def default_growth_table_path() -> Path:
    return _data_path("growth_reference.csv")
