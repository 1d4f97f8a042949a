"""
Module for scenario files

A scenario file is YAML with a top-level `scenarios` list. Each entry holds an
`id`, optional `repetitions`, `path` and `transport` mappings whose keys are the
PathConfig and TransportParams fields, and a `workload` mapping with exactly one
of `single_blob`, `federation` or `sweep`. Unknown keys are errors.
"""
import dataclasses
from dataclasses import dataclass, field
from typing import Tuple, Union

import yaml

from fedrdma_sim.core.report import TransportParams
from fedrdma_sim.errors import ConfigParseError, FedRdmaError
from fedrdma_sim.network.wan import PathConfig

SCENARIO_KEYS = {"id", "repetitions", "path", "transport", "workload"}


@dataclass(frozen=True)
class SingleBlob:
    bytes: int
    materialize: bool = False


@dataclass(frozen=True)
class FederationWorkload:
    rounds: int = 5
    clients: int = 2
    model_bytes: int = 468_500_000
    compute_time_per_round: float = 56.2
    parallel_clients: bool = False
    nic_power: float = None


@dataclass(frozen=True)
class Sweep:

    """ Repeat a single-blob run over the values of one path or transport field """

    axis: str
    values: Tuple = ()
    bytes: int = 1_000_000_000
    materialize: bool = False


WORKLOADS = {
    "single_blob": SingleBlob,
    "federation": FederationWorkload,
    "sweep": Sweep,
}


@dataclass(frozen=True)
class Scenario:
    id: str
    workload: Union[SingleBlob, FederationWorkload, Sweep]
    path: PathConfig = field(default_factory=PathConfig)
    transport: TransportParams = field(default_factory=TransportParams)
    repetitions: int = 1


def _coerce(value, default):
    # YAML reads 1e9 without a decimal point as a string.
    if isinstance(value, str) and not isinstance(default, (str, bool)):
        try:
            number = float(value)
        except ValueError:
            return value
        if isinstance(default, int) and number.is_integer():
            return int(number)
        return number
    if isinstance(value, list):
        return tuple(value)
    return value


def build_dataclass(cls, mapping, key):
    """
    Build a dataclass from a mapping, rejecting unknown keys.

    Args:
        cls (type): Dataclass to build
        mapping (Optional[dict]): Field values
        key (str): Dotted key of the mapping, for error messages

    Returns:
        Any: Instance of cls

    Raises:
        ConfigParseError: Mapping is malformed or its values fail validation
    """
    if mapping is None:
        mapping = {}
    if not isinstance(mapping, dict):
        raise ConfigParseError("expected a mapping", key=key)

    fields = {item.name: item for item in dataclasses.fields(cls)}
    values = {}
    for name, value in mapping.items():
        if name not in fields:
            raise ConfigParseError("unknown key", key=f"{key}.{name}")
        item = fields[name]
        default = item.default
        no_factory = item.default_factory is dataclasses.MISSING
        if default is dataclasses.MISSING and no_factory:
            default = 0
        values[name] = _coerce(value, default)

    try:
        return cls(**values)
    except (FedRdmaError, ValueError, TypeError) as error:
        raise ConfigParseError(str(error), key=key) from error


def parse_workload(mapping, key):
    if not isinstance(mapping, dict) or len(mapping) != 1:
        raise ConfigParseError(
            f"expected exactly one of {sorted(WORKLOADS)}", key=key
        )
    kind, body = next(iter(mapping.items()))
    if kind not in WORKLOADS:
        raise ConfigParseError("unknown workload", key=f"{key}.{kind}")
    workload = build_dataclass(WORKLOADS[kind], body, f"{key}.{kind}")

    if isinstance(workload, Sweep):
        if not workload.values:
            raise ConfigParseError("a sweep needs values", key=f"{key}.sweep.values")
        axes = {item.name for item in dataclasses.fields(PathConfig)} | {
            item.name for item in dataclasses.fields(TransportParams)
        }
        if workload.axis not in axes:
            raise ConfigParseError(
                f"cannot sweep over {workload.axis!r}", key=f"{key}.sweep.axis"
            )
    return workload


def parse_scenarios(document):
    """
    Validate a parsed scenario document.

    Args:
        document (Any): Result of yaml.safe_load

    Returns:
        List[Scenario]: Scenarios in file order
    """
    if not isinstance(document, dict) or "scenarios" not in document:
        raise ConfigParseError("missing top-level list", key="scenarios")
    unknown = set(document) - {"scenarios"}
    if unknown:
        raise ConfigParseError("unknown key", key=sorted(unknown)[0])

    entries = document["scenarios"]
    if not isinstance(entries, list) or not entries:
        raise ConfigParseError("needs at least one scenario", key="scenarios")

    scenarios = []
    for index, entry in enumerate(entries):
        key = f"scenarios[{index}]"
        if not isinstance(entry, dict):
            raise ConfigParseError("expected a mapping", key=key)
        unknown = set(entry) - SCENARIO_KEYS
        if unknown:
            raise ConfigParseError("unknown key", key=f"{key}.{sorted(unknown)[0]}")
        if not entry.get("id"):
            raise ConfigParseError("must be a non-empty string", key=f"{key}.id")
        if "workload" not in entry:
            raise ConfigParseError("missing", key=f"{key}.workload")

        repetitions = entry.get("repetitions", 1)
        if not isinstance(repetitions, int) or repetitions < 1:
            raise ConfigParseError(
                "must be a positive integer", key=f"{key}.repetitions"
            )

        scenarios.append(
            Scenario(
                id=str(entry["id"]),
                workload=parse_workload(entry["workload"], f"{key}.workload"),
                path=build_dataclass(PathConfig, entry.get("path"), f"{key}.path"),
                transport=build_dataclass(
                    TransportParams, entry.get("transport"), f"{key}.transport"
                ),
                repetitions=repetitions,
            )
        )

    return scenarios


def load_scenarios(config_path):
    """
    Read and validate a scenario file.

    Args:
        config_path (str): Path of the YAML file

    Returns:
        List[Scenario]: Scenarios in file order

    Raises:
        ConfigParseError: Invalid YAML or schema violation
        OSError: File cannot be read
    """
    with open(config_path) as stream:
        try:
            document = yaml.safe_load(stream)
        except yaml.YAMLError as error:
            raise ConfigParseError(f"invalid YAML: {error}") from error

    return parse_scenarios(document)
