"""INI experiment configuration.

A config file has one ``[experiment]`` section::

    [experiment]
    K = 500
    B = 0.25
    delta = 0.5
    n_values = 20, 50, 100, 200, 300, 500, 1000, 1500, 2000
    trials = 1000
    master_seed = 20190601
    methods = ERM, VBR, HSR
    diagnostics = false
    reuse_prefix = false
    output_dir = results
    figures = svg

Every key is optional; omitted keys keep the ``ExperimentConfig`` defaults.
``output_dir`` falls back to ``$HSREG_OUTPUT_DIR`` and then to ``.``.
"""

from __future__ import annotations

import configparser
import os
import re
from pathlib import Path
from typing import Optional

from .core_model import ParameterError
from .experiment import ExperimentConfig

OUTPUT_DIR_ENV = "HSREG_OUTPUT_DIR"
SECTION = "experiment"


class ConfigError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, key: Optional[str] = None):
        self.line = line
        self.key = key
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(f"key '{key}'")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in re.split(r"[,\s]+", text.strip()) if tok]


def _str_list(text: str) -> list[str]:
    return [tok.upper() for tok in re.split(r"[,\s]+", text.strip()) if tok]


def _bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def _seed(text: str) -> int:
    return int(text.strip(), 0)


PARSERS = {
    "K": int,
    "B": float,
    "delta": float,
    "n_values": _int_list,
    "trials": int,
    "master_seed": _seed,
    "methods": _str_list,
    "diagnostics": _bool,
    "reuse_prefix": _bool,
    "output_dir": str,
    "figures": lambda s: s.strip().lower(),
}
_CANONICAL = {k.lower(): k for k in PARSERS}


def _line_of(text: str, key: str) -> Optional[int]:
    pattern = re.compile(rf"^\s*{re.escape(key)}\s*[=:]", re.IGNORECASE)
    for i, line in enumerate(text.splitlines(), start=1):
        if pattern.match(line):
            return i
    return None


def parse_config(text: str) -> dict:
    """Parse config text into a dict of typed values (only the keys present)."""
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(str(exc).splitlines()[0], line=getattr(exc, "lineno", None)) from None
    extra = [s for s in parser.sections() if s != SECTION]
    if extra:
        raise ConfigError(f"unknown section [{extra[0]}]; expected [{SECTION}]", line=_line_of_section(text, extra[0]))
    if not parser.has_section(SECTION):
        if text.strip():
            raise ConfigError(f"missing [{SECTION}] section")
        return {}
    values = {}
    for raw_key, raw_value in parser.items(SECTION):
        key = _CANONICAL.get(raw_key.lower())
        if key is None:
            raise ConfigError("unknown key", line=_line_of(text, raw_key), key=raw_key)
        try:
            values[key] = PARSERS[key](raw_value)
        except ValueError as exc:
            raise ConfigError(f"invalid value {raw_value!r} ({exc})", line=_line_of(text, raw_key), key=raw_key) from None
    return values


def _line_of_section(text: str, name: str) -> Optional[int]:
    for i, line in enumerate(text.splitlines(), start=1):
        if line.strip() == f"[{name}]":
            return i
    return None


def build_config(text: str = "", overrides: Optional[dict] = None) -> ExperimentConfig:
    values = parse_config(text)
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    values.setdefault("output_dir", os.environ.get(OUTPUT_DIR_ENV, "."))
    config = ExperimentConfig(**values)
    try:
        config.validate()
    except ParameterError as exc:
        key = _key_in_message(str(exc))
        raise ConfigError(str(exc), line=_line_of(text, key) if key else None, key=key) from None
    return config


def _key_in_message(message: str) -> Optional[str]:
    for key in sorted(PARSERS, key=len, reverse=True):
        if re.search(rf"\b{re.escape(key)}\b", message):
            return key
    return None


def load_config(path: Optional[Path], overrides: Optional[dict] = None) -> ExperimentConfig:
    text = Path(path).read_text(encoding="utf-8") if path is not None else ""
    return build_config(text, overrides)
