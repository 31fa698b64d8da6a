"""Job configuration: UTF-8 ``key = value`` lines plus an integer matrix block.

Example::

    # type C2
    cartan:
      2 -1
      -2 2
    symmetrizers = 2 1
    command = module
    weights = 1 0 ; 0 1
    depth = 4

``cartan = C2`` selects a named datum instead of a block.  Weights are
coefficient vectors over the fundamental weights, separated by ``;``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .cartan import NAMED, CartanData, NotGCM, NotSymmetrizable, Weight, is_dominant, validate_cartan

COMMANDS = ("fold", "module", "crystal", "fold-crystal", "tensor", "theta", "ybe", "forms", "all")
KEYS = {"cartan", "symmetrizers", "command", "weights", "depth", "out", "name"}


class ConfigError(ValueError):
    pass


@dataclass
class JobConfig:
    cartan: list[list[int]]
    symmetrizers: Optional[list[int]] = None
    command: Optional[str] = None
    weights: list[list[int]] = field(default_factory=list)
    depth: Optional[int] = None
    out: Optional[str] = None
    name: str = "job"

    def cartan_data(self) -> CartanData:
        try:
            return validate_cartan(self.cartan, self.symmetrizers)
        except (NotGCM, NotSymmetrizable) as exc:
            raise ConfigError(str(exc)) from exc

    def weight_list(self, cd: CartanData, require_dominant: bool = True) -> list[Weight]:
        out = []
        for w in self.weights:
            if len(w) != cd.rank:
                raise ConfigError(f"weight {w} has {len(w)} coordinates, rank is {cd.rank}")
            lam = cd.weight(w)
            if require_dominant and not is_dominant(lam):
                raise ConfigError(f"weight {w} is not dominant")
            out.append(lam)
        return out


def _ints(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split()]
    except ValueError as exc:
        raise ConfigError(f"{what}: expected integers, got {text!r}") from exc


def parse_config(text: str) -> JobConfig:
    values: dict[str, str] = {}
    matrix: Optional[list[list[int]]] = None
    lines = text.splitlines()
    k = 0
    while k < len(lines):
        raw = lines[k]
        line = raw.split("#", 1)[0].rstrip()
        k += 1
        if not line.strip():
            continue
        if line.strip() == "cartan:":
            rows = []
            while k < len(lines) and lines[k][:1] in (" ", "\t") and lines[k].split("#", 1)[0].strip():
                rows.append(_ints(lines[k].split("#", 1)[0], "cartan row"))
                k += 1
            if not rows:
                raise ConfigError("empty cartan block")
            matrix = rows
            continue
        if "=" not in line:
            raise ConfigError(f"line {k}: expected 'key = value', got {raw!r}")
        key, val = (x.strip() for x in line.split("=", 1))
        if key not in KEYS:
            raise ConfigError(f"line {k}: unknown key {key!r}")
        if key in values or (key == "cartan" and matrix is not None):
            raise ConfigError(f"line {k}: duplicate key {key!r}")
        values[key] = val
    if "cartan" in values:
        name = values.pop("cartan")
        if name not in NAMED:
            raise ConfigError(f"unknown named Cartan datum {name!r}; known: {sorted(NAMED)}")
        C, s = NAMED[name]
        matrix = [list(r) for r in C]
        if s is not None and "symmetrizers" not in values:
            values["symmetrizers"] = " ".join(map(str, s))
        values.setdefault("name", name)
    if matrix is None:
        raise ConfigError("missing cartan matrix")
    if any(len(r) != len(matrix) for r in matrix):
        raise ConfigError("cartan matrix is not square")
    cfg = JobConfig(matrix)
    if "symmetrizers" in values:
        cfg.symmetrizers = _ints(values["symmetrizers"], "symmetrizers")
    if "command" in values:
        if values["command"] not in COMMANDS:
            raise ConfigError(f"unknown command {values['command']!r}")
        cfg.command = values["command"]
    if "weights" in values:
        cfg.weights = [_ints(w, "weight") for w in values["weights"].split(";") if w.strip()]
    if "depth" in values:
        d = _ints(values["depth"], "depth")
        if len(d) != 1 or d[0] < 0:
            raise ConfigError("depth must be one nonnegative integer")
        cfg.depth = d[0]
    cfg.out = values.get("out")
    cfg.name = values.get("name", cfg.name)
    return cfg


def load_config(path: str | Path) -> JobConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text)
