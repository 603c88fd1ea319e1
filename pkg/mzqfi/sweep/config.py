"""
Run configuration for sweeps and oracle checks.

A run is described by one JSON document. It is parsed with ``json`` and
validated into frozen dataclasses; every validation failure raises
`ConfigError` naming the offending field path.

```
{
  "states": [
    {"kind": "perelomov", "a": 1, "v": 1.0, "name": "pcs"},
    {"kind": "barut_girardello", "a": 1, "v": 1.0, "name": "bgcs"}
  ],
  "bgcs_parametrization": "xi_equals_tanh_half_v",
  "splitters": {"t1": 0.7071067811865476, "t2": 0.7071067811865476},
  "homodyne_splitters": {"t1": 1.0, "t2": 0.0},
  "theta_grid": {"start_pi": 0.01, "stop_pi": 0.99, "count": 99},
  "homodyne_theta_grid": {"start_pi": -0.45, "stop_pi": 0.45, "count": 91},
  "schemes": ["intensity_difference", "single_mode"],
  "output": {"csv": "out/ratio.csv", "svg": "out/ratio.svg"},
  "tolerances": {"tail_tolerance": 1e-12}
}
```
"""

import json
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from mzqfi.conf import Conf
from mzqfi.detection import Scheme
from mzqfi.exceptions import ConfigError
from mzqfi.states import StateKind, StateSpec

logger = logging.getLogger(__name__)

_SQRT_HALF = 1.0 / math.sqrt(2.0)


class BgcsParametrization(str, Enum):
    """How a Barut-Girardello entry is turned into |ξ|."""
    DIRECT_XI = "direct_xi"
    XI_EQUALS_TANH_HALF_V = "xi_equals_tanh_half_v"


@dataclass(frozen=True)
class SweepState:
    """A named input state of a run."""
    name: str
    spec: StateSpec


@dataclass(frozen=True)
class Splitters:
    t1: float = _SQRT_HALF
    t2: float = _SQRT_HALF


@dataclass(frozen=True)
class LinearGrid:
    """``count`` evenly spaced points from ``start`` to ``stop``, both included."""
    start: float
    stop: float
    count: int


@dataclass(frozen=True)
class OracleGrid:
    """Sample points of the oracle check: |α|² values and θ/π values."""
    transmissions: Tuple[float, ...] = (0.1, 0.5, 0.9)
    thetas_pi: Tuple[float, ...] = (0.2, 0.35, 0.5, 0.65, 0.8)


@dataclass(frozen=True)
class OutputPaths:
    csv: Optional[Path] = None
    svg: Optional[Path] = None
    report: Optional[Path] = None


@dataclass(frozen=True)
class SweepConfig:
    """
    Validated run configuration.

    Attributes
    ----------
    states : list of SweepState
        One or more input states; ratio sweeps need exactly two
    splitters : Splitters
        |α|, |α′| for the intensity schemes
    homodyne_splitters : Splitters
        |α|, |α′| for the homodyne schemes
    transmission_grid : LinearGrid
        |α|² values of a QFI sweep
    theta_grid : LinearGrid
        θ/π values of the intensity schemes in sensitivity and ratio sweeps
    homodyne_theta_grid : LinearGrid
        θ/π values of the homodyne schemes; the default range holds θ = 0
    schemes : list of Scheme
        Detection schemes to evaluate
    output : OutputPaths
        Where CSV, SVG and oracle report go
    oracle : bool
        Add oracle columns to sweeps
    cutoff : int or None
        Fixed oracle grid cutoff instead of the certified one
    tolerances : dict
        Overrides merged into ``Conf()["tolerances"]`` for the run
    oracle_grid : OracleGrid
        Sample points of the oracle check
    """
    states: List[SweepState]
    splitters: Splitters = Splitters()
    homodyne_splitters: Splitters = Splitters(1.0, 0.0)
    transmission_grid: LinearGrid = LinearGrid(0.0, 1.0, 101)
    theta_grid: LinearGrid = LinearGrid(0.01, 0.99, 99)
    homodyne_theta_grid: LinearGrid = LinearGrid(-0.45, 0.45, 91)
    schemes: List[Scheme] = field(default_factory=lambda: list(Scheme))
    output: OutputPaths = OutputPaths()
    oracle: bool = False
    cutoff: Optional[int] = None
    tolerances: Dict[str, float] = field(default_factory=dict)
    oracle_grid: OracleGrid = OracleGrid()

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "SweepConfig":
        """
        Load and validate a configuration file.

        Raises
        ------
        ConfigError
            If the file is unreadable, not a JSON object, or invalid
        """
        path = Path(path)
        try:
            with open(path, "r", encoding="utf-8") as f:
                document = json.load(f)
        except OSError as e:
            raise ConfigError("", f"Cannot read {path}: {e}")
        except json.JSONDecodeError as e:
            raise ConfigError("", f"Invalid JSON in {path}: {e}")
        logger.info(f"Loaded run configuration from {path}")
        return cls.from_dict(document)

    @classmethod
    def from_dict(cls, document: Any) -> "SweepConfig":
        """Validate an already parsed configuration document."""
        if not isinstance(document, dict):
            raise ConfigError("", "Configuration must be a JSON object")
        known = {
            "states", "bgcs_parametrization", "splitters", "homodyne_splitters", "transmission_grid",
            "theta_grid", "homodyne_theta_grid", "schemes", "output", "oracle", "cutoff", "tolerances", "oracle_grid",
        }
        for key in document:
            if key not in known:
                raise ConfigError(key, "unknown field")

        tolerances = _parse_tolerances(document.get("tolerances", {}))
        with Conf().overridden(tolerances=tolerances):
            default = BgcsParametrization(_enum(document, "bgcs_parametrization", BgcsParametrization,
                                                BgcsParametrization.XI_EQUALS_TANH_HALF_V))
            states = _parse_states(document.get("states"), default)

        schemes = document.get("schemes", [scheme.value for scheme in Scheme])
        if not isinstance(schemes, list) or not schemes:
            raise ConfigError("schemes", "expected a non-empty list")
        parsed_schemes = []
        for i, name in enumerate(schemes):
            try:
                parsed_schemes.append(Scheme(name))
            except ValueError:
                raise ConfigError(f"schemes[{i}]", f"unknown scheme {name!r}")

        cutoff = document.get("cutoff")
        if cutoff is not None and (not isinstance(cutoff, int) or isinstance(cutoff, bool) or cutoff < 1):
            raise ConfigError("cutoff", f"expected a positive integer, got {cutoff!r}")
        oracle = document.get("oracle", False)
        if not isinstance(oracle, bool):
            raise ConfigError("oracle", f"expected true or false, got {oracle!r}")

        return cls(
            states=states,
            splitters=_parse_splitters(document, "splitters", Splitters()),
            homodyne_splitters=_parse_splitters(document, "homodyne_splitters", Splitters(1.0, 0.0)),
            transmission_grid=_parse_grid(document, "transmission_grid", ("start", "stop"), (0.0, 1.0), LinearGrid(0.0, 1.0, 101)),
            theta_grid=_parse_grid(document, "theta_grid", ("start_pi", "stop_pi"), (-4.0, 4.0), LinearGrid(0.01, 0.99, 99)),
            homodyne_theta_grid=_parse_grid(
                document, "homodyne_theta_grid", ("start_pi", "stop_pi"), (-4.0, 4.0), LinearGrid(-0.45, 0.45, 91)
            ),
            schemes=parsed_schemes,
            output=_parse_output(document.get("output", {})),
            oracle=oracle,
            cutoff=cutoff,
            tolerances=tolerances,
            oracle_grid=_parse_oracle_grid(document.get("oracle_grid", {})),
        )


def _number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ConfigError(path, f"expected a finite number, got {value!r}")
    return float(value)


def _enum(document: Dict, key: str, enum: type, default: Enum) -> Enum:
    value = document.get(key, default.value)
    try:
        return enum(value)
    except ValueError:
        choices = ", ".join(member.value for member in enum)
        raise ConfigError(key, f"expected one of {choices}, got {value!r}")


def _parse_tolerances(section: Any) -> Dict[str, float]:
    if not isinstance(section, dict):
        raise ConfigError("tolerances", "expected an object")
    known = Conf()["tolerances"]
    parsed = {}
    for name, value in section.items():
        if name not in known:
            raise ConfigError(f"tolerances.{name}", "unknown tolerance")
        parsed[name] = _number(value, f"tolerances.{name}")
        if isinstance(known[name], int) and not isinstance(known[name], bool):
            if parsed[name] != int(parsed[name]):
                raise ConfigError(f"tolerances.{name}", f"expected an integer, got {value!r}")
            parsed[name] = int(parsed[name])
    return parsed


def _parse_state(entry: Any, path: str, default: BgcsParametrization) -> SweepState:
    if not isinstance(entry, dict):
        raise ConfigError(path, "expected an object")
    allowed = {"kind", "a", "v", "phi", "xi", "xi_phase", "parametrization", "name"}
    for key in entry:
        if key not in allowed:
            raise ConfigError(f"{path}.{key}", "unknown field")
    try:
        kind = StateKind(entry.get("kind"))
    except ValueError:
        raise ConfigError(f"{path}.kind", f"expected perelomov, barut_girardello or vacuum, got {entry.get('kind')!r}")
    a = _number(entry.get("a", 1), f"{path}.a")

    try:
        if kind is StateKind.VACUUM:
            spec = StateSpec.vacuum()
        elif kind is StateKind.PERELOMOV:
            if "xi" in entry:
                raise ConfigError(f"{path}.xi", "Perelomov states take v and phi")
            spec = StateSpec.perelomov(
                a, _number(entry.get("v", 0.0), f"{path}.v"), _number(entry.get("phi", 0.0), f"{path}.phi")
            )
        else:
            parametrization = _enum(entry, "parametrization", BgcsParametrization, default)
            phase = _number(entry.get("xi_phase", 0.0), f"{path}.xi_phase")
            if parametrization is BgcsParametrization.XI_EQUALS_TANH_HALF_V:
                if "xi" in entry or "v" not in entry:
                    raise ConfigError(path, "xi_equals_tanh_half_v states take v, not xi")
                spec = StateSpec.barut_girardello_from_v(a, _number(entry["v"], f"{path}.v"), phase)
            else:
                if "v" in entry or "xi" not in entry:
                    raise ConfigError(path, "direct_xi states take xi, not v")
                spec = StateSpec.barut_girardello(a, _number(entry["xi"], f"{path}.xi"), phase)
    except ConfigError:
        raise
    except ValueError as e:
        raise ConfigError(path, str(e))

    name = entry.get("name", spec.label)
    if not isinstance(name, str) or not name:
        raise ConfigError(f"{path}.name", f"expected a non-empty string, got {name!r}")
    return SweepState(name, spec)


def _parse_states(entries: Any, default: BgcsParametrization) -> List[SweepState]:
    if not isinstance(entries, list) or not entries:
        raise ConfigError("states", "expected a non-empty list")
    states = [_parse_state(entry, f"states[{i}]", default) for i, entry in enumerate(entries)]
    names = [state.name for state in states]
    if len(set(names)) != len(names):
        raise ConfigError("states", f"state names must be unique, got {names}")
    return states


def _parse_splitters(document: Dict, key: str, default: Splitters) -> Splitters:
    section = document.get(key)
    if section is None:
        return default
    if section == "balanced":
        return Splitters()
    if not isinstance(section, dict):
        raise ConfigError(key, "expected an object or \"balanced\"")
    values = []
    for name, fallback in (("t1", default.t1), ("t2", default.t2)):
        value = _number(section.get(name, fallback), f"{key}.{name}")
        if not 0.0 <= value <= 1.0:
            raise ConfigError(f"{key}.{name}", f"must be in [0, 1], got {value!r}")
        values.append(value)
    return Splitters(*values)


def _parse_grid(
    document: Dict,
    key: str,
    names: Tuple[str, str],
    domain: Tuple[float, float],
    default: LinearGrid,
) -> LinearGrid:
    section = document.get(key)
    if section is None:
        return default
    if not isinstance(section, dict):
        raise ConfigError(key, "expected an object")
    start = _number(section.get(names[0], default.start), f"{key}.{names[0]}")
    stop = _number(section.get(names[1], default.stop), f"{key}.{names[1]}")
    count = section.get("count", default.count)
    if isinstance(count, bool) or not isinstance(count, int) or count < 2:
        raise ConfigError(f"{key}.count", f"expected an integer >= 2, got {count!r}")
    for name, value in zip(names, (start, stop)):
        if not domain[0] <= value <= domain[1]:
            raise ConfigError(f"{key}.{name}", f"must be in [{domain[0]}, {domain[1]}], got {value!r}")
    if stop <= start:
        raise ConfigError(key, f"{names[1]} must exceed {names[0]}")
    return LinearGrid(start, stop, count)


def _parse_output(section: Any) -> OutputPaths:
    if not isinstance(section, dict):
        raise ConfigError("output", "expected an object")
    paths = {}
    for name in ("csv", "svg", "report"):
        value = section.get(name)
        if value is not None and not isinstance(value, str):
            raise ConfigError(f"output.{name}", f"expected a path string, got {value!r}")
        paths[name] = Path(value) if value else None
    return OutputPaths(**paths)


def _parse_oracle_grid(section: Any) -> OracleGrid:
    if not isinstance(section, dict):
        raise ConfigError("oracle_grid", "expected an object")
    default = OracleGrid()
    transmissions = section.get("transmissions", list(default.transmissions))
    thetas = section.get("thetas_pi", list(default.thetas_pi))
    for key, values in (("transmissions", transmissions), ("thetas_pi", thetas)):
        if not isinstance(values, list) or not values:
            raise ConfigError(f"oracle_grid.{key}", "expected a non-empty list")
    parsed_t = tuple(_number(x, f"oracle_grid.transmissions[{i}]") for i, x in enumerate(transmissions))
    for i, x in enumerate(parsed_t):
        if not 0.0 <= x <= 1.0:
            raise ConfigError(f"oracle_grid.transmissions[{i}]", f"must be in [0, 1], got {x!r}")
    parsed_theta = tuple(_number(x, f"oracle_grid.thetas_pi[{i}]") for i, x in enumerate(thetas))
    return OracleGrid(parsed_t, parsed_theta)
