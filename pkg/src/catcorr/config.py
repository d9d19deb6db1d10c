"""Plain-text ``key = value`` configuration shared by the CLI commands.

Recognized keys (all optional):

``nodes``       quadrature nodes per axis (default 96)
``box_margin``  quadrature box margin beyond the largest label (default 4.0)
``log_base``    entropy base for information quantities: ``2`` or ``e``
``threads``     worker threads for grid accumulation (default 1)
``strict``      fail with exit code 3 on quadrature non-convergence

Command-line flags override file values.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

__all__ = ["Config", "load_config", "DEFAULT_CONFIG"]


@dataclass(frozen=True)
class Config:
    nodes: int = 96
    box_margin: float = 4.0
    log_base: object = 2
    threads: int = 1
    strict: bool = False


DEFAULT_CONFIG = Config()

_BOOLEANS = {"true": True, "yes": True, "1": True, "false": False, "no": False, "0": False}


def _parse_value(key: str, value: str):
    if key == "nodes":
        return int(value)
    if key == "box_margin":
        return float(value)
    if key == "log_base":
        if value == "2":
            return 2
        if value.lower() == "e":
            return "e"
        raise ValueError(f"log_base must be 2 or e, got {value!r}")
    if key == "threads":
        return int(value)
    if key == "strict":
        try:
            return _BOOLEANS[value.lower()]
        except KeyError:
            raise ValueError(f"strict must be a boolean, got {value!r}") from None
    raise ValueError(f"unknown configuration key {key!r}")


def load_config(path: str, base: Config = DEFAULT_CONFIG) -> Config:
    """Parse a ``key = value`` file on top of ``base``."""
    updates = {}
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            if "=" not in text:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, _, value = text.partition("=")
            key = key.strip()
            updates[key] = _parse_value(key, value.strip())
    return replace(base, **updates)
