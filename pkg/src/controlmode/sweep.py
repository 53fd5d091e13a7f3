"""Degree sweep over synthetic graphs: generate, analyse, rewire, tabulate."""

from __future__ import annotations

import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .errors import ConfigInvalid, ControlModeError, PostConditionViolation
from .generation import GeneratorConfig, Model, generate
from .rewiring import alter_to_centralized

HEADER = ("k", "seed", "n", "l", "n_d", "in_before", "in_after", "ic_max_before", "p_m", "p_r", "delta_nd", "delta_ic")

_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def instance_seed(base_seed: int, k_index: int, attempt: int) -> int:
    return (base_seed ^ splitmix64((k_index << 32) | attempt)) & _MASK64


@dataclass(frozen=True)
class SweepConfig:
    n: int
    k_min: float
    k_max: float
    k_step: float
    instances_per_k: int
    base_seed: int = 0
    gamma: float = 3.0
    model: Model = Model.STATIC_SCALE_FREE
    filter_input_largest: bool = False
    # attempts per accepted instance when filtering
    attempt_factor: int = 20
    guard: str = "final"
    workers: int = 1

    def validate(self) -> None:
        if self.k_min > self.k_max:
            raise ConfigInvalid("k_min must not exceed k_max")
        if not self.k_step > 0:
            raise ConfigInvalid("k_step must be positive")
        if self.instances_per_k < 1:
            raise ConfigInvalid("instances_per_k must be at least 1")
        if not 0 <= self.base_seed < 2**64:
            raise ConfigInvalid("base_seed must be a non-negative 64-bit integer")

    def k_values(self) -> list[float]:
        count = math.floor((self.k_max - self.k_min) / self.k_step + 1e-9) + 1
        return [round(self.k_min + i * self.k_step, 10) for i in range(count)]


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def run_instance(n: int, k: float, seed: int, gamma: float, model: Model, guard: str) -> tuple[bool, list[str]]:
    """Return (largest component is input, CSV fields) for one generated graph."""
    fields = [f"{k:g}", str(seed)]
    try:
        graph = generate(GeneratorConfig(n=n, k=k, gamma_in=gamma, gamma_out=gamma, seed=seed, model=model))
        outcome = alter_to_centralized(graph, guard=guard)
        before, after = outcome.report_before, outcome.report_after
        if before.n_d != after.n_d:
            raise PostConditionViolation("driver count changed", [])
    except ControlModeError as exc:
        return False, fields + [""] * (len(HEADER) - 3) + [f"error:{type(exc).__name__}"]
    fields += [
        str(before.n),
        str(before.l),
        str(before.n_d),
        _fmt(before.in_fraction),
        _fmt(after.in_fraction),
        _fmt(before.ic_max),
        _fmt(outcome.p_m),
        _fmt(outcome.p_r),
        _fmt(outcome.delta_nd),
        _fmt(outcome.delta_ic),
    ]
    return outcome.largest_is_input, fields


def _run_star(args):
    return run_instance(*args)


def sweep_rows(config: SweepConfig) -> list[list[str]]:
    config.validate()
    rows: list[list[str]] = []
    pool = ProcessPoolExecutor(config.workers) if config.workers > 1 else None
    try:
        for ki, k in enumerate(config.k_values()):
            wanted = config.instances_per_k
            limit = wanted * config.attempt_factor if config.filter_input_largest else wanted
            accepted: list[list[str]] = []
            attempt = 0
            while len(accepted) < wanted and attempt < limit:
                batch = range(attempt, min(limit, attempt + max(config.workers, wanted - len(accepted))))
                jobs = [
                    (config.n, k, instance_seed(config.base_seed, ki, a), config.gamma, config.model, config.guard)
                    for a in batch
                ]
                results = pool.map(_run_star, jobs) if pool else map(_run_star, jobs)
                for keep, fields in results:
                    if len(accepted) < wanted and (keep or not config.filter_input_largest):
                        accepted.append(fields)
                attempt = batch.stop
            rows.extend(accepted)
    finally:
        if pool:
            pool.shutdown()
    return rows


def run_experiment_sweep(config: SweepConfig, out=None) -> str:
    """Run the sweep and return the CSV text (also written to ``out`` if given).

    Rows follow (k, instance) order. With ``filter_input_largest`` only
    graphs whose largest alternating component is an input component are
    kept, drawing further seeds until ``instances_per_k`` are found or the
    attempt budget runs out.
    """
    buf = io.StringIO()
    buf.write(",".join(HEADER) + "\n")
    for fields in sweep_rows(config):
        buf.write(",".join(fields) + "\n")
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text
