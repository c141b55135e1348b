import os
from importlib import metadata

import toml

_PYPROJECT = os.path.join(os.path.dirname(__file__), "..", "..", "pyproject.toml")


def get_version_from_pyproject(dist: str = "biso") -> str:
    """Installed distribution version, else the one declared in a source checkout."""
    try:
        return metadata.version(dist)
    except metadata.PackageNotFoundError:
        pass

    if not os.path.exists(_PYPROJECT):
        raise FileNotFoundError(f"{dist} is not installed and {_PYPROJECT} is missing")
    with open(_PYPROJECT, "r", encoding="utf-8") as file:
        return toml.load(file)["tool"]["poetry"]["version"]
