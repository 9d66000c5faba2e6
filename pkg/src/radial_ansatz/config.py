"""Molecule parameter files.

A config file holds one JSON object or an array of them::

    [{"name": "toy", "De": 1, "re": 1, "mu": 1, "potential": "modified-kratzer"}]

``hbar`` is optional (default 1).  No molecular constants ship with the
package; the only built-in entries are the dimensionless demo molecules.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .core import (PhysicalConstants, PotentialSpec, make_kratzer_fues, make_modified_kratzer,
                   make_pseudoharmonic)

POTENTIALS = {
    "pseudoharmonic": make_pseudoharmonic,
    "kratzer": make_kratzer_fues,
    "modified-kratzer": make_modified_kratzer,
}
REQUIRED = ("name", "De", "re", "mu", "potential")
OPTIONAL = ("hbar",)


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class MoleculeConfig:
    name: str
    De: float
    re: float
    mu: float
    potential: str
    hbar: float = 1.0

    def __post_init__(self):
        if not self.name:
            raise ConfigError("name must be non-empty")
        if self.potential not in POTENTIALS:
            raise ConfigError(f"unsupported potential {self.potential!r}; "
                              f"choose from {', '.join(POTENTIALS)}")
        for key in ("De", "re", "mu", "hbar"):
            value = getattr(self, key)
            if not (math.isfinite(value) and value > 0):
                raise ConfigError(f"{key} must be positive, got {value}")

    def to_potential(self) -> PotentialSpec:
        return POTENTIALS[self.potential](self.De, self.re)

    def constants(self) -> PhysicalConstants:
        return PhysicalConstants(hbar=self.hbar, mu=self.mu)


def demo_configs() -> list[MoleculeConfig]:
    """Dimensionless demo: De = re = mu = hbar = 1 for every supported potential."""
    return [MoleculeConfig(f"demo-{kind}", 1.0, 1.0, 1.0, kind) for kind in POTENTIALS]


def _entries_with_lines(text: str):
    """Decode the document, returning (line, entry) pairs."""
    decoder = json.JSONDecoder()

    def line_of(pos):
        return text.count("\n", 0, pos) + 1

    try:
        start = len(text) - len(text.lstrip())
        if text[start:start + 1] != "[":
            obj, end = decoder.raw_decode(text, start)
            if text[end:].strip():
                raise ConfigError(f"line {line_of(end)}: trailing data after JSON document")
            return [(line_of(start), obj)]
        json.loads(text)  # full syntax check first, so errors report the right position
        entries, pos = [], start + 1
        while True:
            while text[pos] in " \t\r\n,":
                pos += 1
            if text[pos] == "]":
                return entries
            begin = pos
            obj, pos = decoder.raw_decode(text, pos)
            entries.append((line_of(begin), obj))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _field(entry: dict, key: str, where: str):
    value = entry[key]
    if key in ("name", "potential"):
        if not isinstance(value, str):
            raise ConfigError(f"{where}: field '{key}' must be a string, got {value!r}")
        return value
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}: field '{key}' must be a number, got {value!r}")
    value = float(value)
    if not (math.isfinite(value) and value > 0):
        raise ConfigError(f"{where}: field '{key}' must be positive, got {value:g}")
    return value


def parse_entry(entry, where: str = "entry") -> MoleculeConfig:
    if not isinstance(entry, dict):
        raise ConfigError(f"{where}: expected an object, got {type(entry).__name__}")
    for key in entry:
        if key not in REQUIRED and key not in OPTIONAL:
            raise ConfigError(f"{where}: unknown key '{key}'")
    for key in REQUIRED:
        if key not in entry:
            raise ConfigError(f"{where}: missing field '{key}'")
    values = {key: _field(entry, key, where) for key in entry}
    if values["potential"] not in POTENTIALS:
        raise ConfigError(f"{where}: unsupported potential '{values['potential']}' "
                          f"(field 'potential'; choose from {', '.join(POTENTIALS)})")
    if not values["name"]:
        raise ConfigError(f"{where}: field 'name' must be non-empty")
    return MoleculeConfig(**values)


def parse_config(path) -> list[MoleculeConfig]:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None
    if not text.strip():
        raise ConfigError(f"{path}: empty file")
    configs = []
    for i, (line, entry) in enumerate(_entries_with_lines(text)):
        configs.append(parse_entry(entry, f"{path}: entry {i + 1} (line {line})"))
    names = [c.name for c in configs]
    duplicates = sorted({n for n in names if names.count(n) > 1})
    if duplicates:
        raise ConfigError(f"{path}: duplicate molecule names {duplicates}")
    return configs
