"""Parameter sweeps behind the four reference figure datasets, plus serialization.

Sweeps evaluate the closed-form operations point by point and collect the
rows of each dataset: entanglement versus band half-width (fig1), versus
detuning (fig2), decay dynamics (fig3), and the vacuum-fidelity map (fig4),
together with the continuum-versus-discrete oracle comparison.  Output is a
flat CSV dialect (comma separator, ``#``-prefixed metadata lines before the
header, >= 12 significant digits per numeric field) or an equivalent JSON
document; identical configuration yields byte-identical files.
"""

from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum

import numpy as np

from . import __version__
from .model import (PartitionSpec, atom_population, partition_entanglement,
                    partition_weights, vacuum_fidelity)
from .oracle import assign_partition, build_mode_grid, reduced_weights

__all__ = [
    "SweepKind",
    "SweepRange",
    "SweepConfig",
    "SweepResult",
    "sweep_epsilon",
    "sweep_delta",
    "sweep_time",
    "grid_fidelity",
    "oracle_check",
    "write_result",
    "write_csv",
    "write_json",
    "read_json",
    "worker_count",
]

#: Fixed decimal formatting for CSV fields: 16 significant digits.
FLOAT_FORMAT = "{:.15e}"


class SweepKind(str, Enum):
    EPSILON = "epsilon"
    DELTA = "delta"
    TIME = "time"
    FIDELITY_GRID = "fidelity_grid"
    ORACLE_CHECK = "oracle_check"
    VERIFY = "verify"


@dataclass(frozen=True)
class SweepRange:
    """Closed swept interval sampled on `steps` evenly spaced points."""

    start: float
    stop: float
    steps: int

    def __post_init__(self) -> None:
        if int(self.steps) != self.steps or self.steps < 2:
            raise ValueError(f"steps must be an integer >= 2, got {self.steps!r}")
        object.__setattr__(self, "steps", int(self.steps))
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValueError("range endpoints must be finite")
        if not self.start < self.stop:
            raise ValueError(f"range must satisfy min < max, "
                             f"got ({self.start!r}, {self.stop!r})")

    def values(self) -> list[float]:
        return np.linspace(self.start, self.stop, self.steps).tolist()

    def __str__(self) -> str:
        return f"{self.start:g}:{self.stop:g}:{self.steps}"


@dataclass(frozen=True)
class SweepConfig:
    """CLI-facing description of one sweep invocation."""

    sweep_kind: SweepKind
    fixed_params: tuple[tuple[str, float], ...] = ()
    ranges: tuple[SweepRange, ...] = ()
    output_path: str = ""
    output_format: str = "csv"

    def __post_init__(self) -> None:
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"output_format must be csv or json, "
                             f"got {self.output_format!r}")


@dataclass
class SweepResult:
    """Ordered rows of one sweep plus tool/parameter metadata."""

    header: list[str]
    rows: list[tuple[float, ...]]
    metadata: dict[str, str] = field(default_factory=dict)


def worker_count() -> int:
    """Worker cap for concurrent sweep evaluation (env var WW_THREADS)."""
    env = os.environ.get("WW_THREADS")
    if env is not None:
        n = int(env)
        if n < 1:
            raise ValueError(f"WW_THREADS must be >= 1, got {env!r}")
        return n
    return os.cpu_count() or 1


def _base_metadata(kind: SweepKind, params: dict[str, str]) -> dict[str, str]:
    md = {"tool": "wwentangle", "version": __version__, "sweep_kind": kind.value}
    md.update(params)
    # Timestamps come from SOURCE_DATE_EPOCH (reproducible-build convention)
    # so that identical configurations serialize byte-identically.
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is not None:
        stamp = datetime.fromtimestamp(int(epoch), tz=timezone.utc)
        md["timestamp"] = stamp.isoformat()
    return md


def _fmt_values(values) -> str:
    return ",".join(f"{v:g}" for v in values)


def sweep_epsilon(delta_values, eps_range: SweepRange) -> SweepResult:
    """Entanglement versus band half-width, one column per detuning value."""
    deltas = [float(d) for d in delta_values]
    if not deltas:
        raise ValueError("delta_values must be nonempty")
    header = ["eps_tilde"] + [f"entanglement_delta_{d:g}" for d in deltas]
    rows = []
    for eps in eps_range.values():
        rows.append((eps, *(partition_entanglement(PartitionSpec(eps, d))
                            for d in deltas)))
    md = _base_metadata(SweepKind.EPSILON, {
        "delta_values": _fmt_values(deltas), "eps_range": str(eps_range)})
    return SweepResult(header, rows, md)


def sweep_delta(eps_values, delta_range: SweepRange) -> SweepResult:
    """Entanglement versus detuning, one column per band half-width."""
    epsilons = [float(e) for e in eps_values]
    if not epsilons:
        raise ValueError("eps_values must be nonempty")
    for e in epsilons:
        if e < 0.0 or not math.isfinite(e):
            raise ValueError(f"eps_values must be finite and >= 0, got {e!r}")
    header = ["delta_tilde"] + [f"entanglement_eps_{e:g}" for e in epsilons]
    rows = []
    for delta in delta_range.values():
        rows.append((delta, *(partition_entanglement(PartitionSpec(e, delta))
                              for e in epsilons)))
    md = _base_metadata(SweepKind.DELTA, {
        "eps_values": _fmt_values(epsilons), "delta_range": str(delta_range)})
    return SweepResult(header, rows, md)


def sweep_time(time_range: SweepRange) -> SweepResult:
    """Decay dynamics: excited population and atom-field entropy over scaled time."""
    if time_range.start < 0.0:
        raise ValueError(f"gamma_t range must start at >= 0, "
                         f"got {time_range.start!r}")
    header = ["gamma_t", "excited_population", "atom_field_entropy"]
    rows = []
    for t in time_range.values():
        snap = atom_population(t)
        rows.append((t, snap.excited_population, snap.atom_field_entropy))
    md = _base_metadata(SweepKind.TIME, {"time_range": str(time_range)})
    return SweepResult(header, rows, md)


def grid_fidelity(eps_range: SweepRange, delta_range: SweepRange) -> SweepResult:
    """Vacuum fidelity of partition A over the (eps, delta) plane."""
    header = ["eps_tilde", "delta_tilde", "vacuum_fidelity"]
    rows = []
    for eps in eps_range.values():
        for delta in delta_range.values():
            rows.append((eps, delta, vacuum_fidelity(PartitionSpec(eps, delta))))
    md = _base_metadata(SweepKind.FIDELITY_GRID, {
        "eps_range": str(eps_range), "delta_range": str(delta_range)})
    return SweepResult(header, rows, md)


def oracle_check(mode_count: int, span: float,
                 eps_values, delta_values) -> SweepResult:
    """Continuum closed form versus brute-force mode sums over a spec grid.

    Builds one discrete grid and compares the in-band weight from
    :func:`wwentangle.oracle.reduced_weights` against the arctan closed form
    for every (eps, delta) pair; rows may be evaluated concurrently (capped
    by WW_THREADS) and are emitted in axis order regardless.
    """
    if mode_count < 1000:
        raise ValueError(f"mode_count must be >= 1000 for a meaningful "
                         f"comparison, got {mode_count!r}")
    epsilons = [float(e) for e in eps_values]
    deltas = [float(d) for d in delta_values]
    if not epsilons or not deltas:
        raise ValueError("spec grid must be nonempty")
    grid = build_mode_grid(mode_count, span)
    specs = [PartitionSpec(e, d) for e in epsilons for d in deltas]

    def compare(spec: PartitionSpec) -> tuple[float, ...]:
        closed = partition_weights(spec).lambda_a
        discrete = reduced_weights(grid, assign_partition(grid, spec)).lambda_a
        return (spec.eps_tilde, spec.delta_tilde, closed, discrete,
                abs(discrete - closed))

    workers = worker_count()
    if workers > 1 and len(specs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(compare, specs))
    else:
        rows = [compare(s) for s in specs]
    max_err = max(r[4] for r in rows)
    md = _base_metadata(SweepKind.ORACLE_CHECK, {
        "mode_count": str(mode_count), "span": f"{span:g}",
        "eps_values": _fmt_values(epsilons), "delta_values": _fmt_values(deltas),
        "max_abs_error": FLOAT_FORMAT.format(max_err)})
    return SweepResult(["eps_tilde", "delta_tilde", "lambda_a_closed",
                        "lambda_a_discrete", "abs_error"], rows, md)


def write_csv(result: SweepResult, path: str) -> None:
    """CSV dialect: '#'-prefixed metadata, header row, fixed-format numerics."""
    with open(path, "w", newline="") as handle:
        for key in sorted(result.metadata):
            handle.write(f"# {key} = {result.metadata[key]}\n")
        writer = csv.writer(handle)
        writer.writerow(result.header)
        for row in result.rows:
            writer.writerow([FLOAT_FORMAT.format(x) for x in row])


def write_json(result: SweepResult, path: str) -> None:
    document = {
        "metadata": result.metadata,
        "header": result.header,
        "rows": [list(row) for row in result.rows],
    }
    with open(path, "w") as handle:
        json.dump(document, handle, indent=2, sort_keys=True)
        handle.write("\n")


def read_json(path: str) -> SweepResult:
    """Inverse of :func:`write_json`; floats round-trip exactly."""
    with open(path) as handle:
        document = json.load(handle)
    return SweepResult(
        header=list(document["header"]),
        rows=[tuple(float(x) for x in row) for row in document["rows"]],
        metadata={str(k): str(v) for k, v in document["metadata"].items()},
    )


def write_result(result: SweepResult, path: str, output_format: str = "csv") -> None:
    if output_format == "csv":
        write_csv(result, path)
    elif output_format == "json":
        write_json(result, path)
    else:
        raise ValueError(f"unknown output format {output_format!r}")
