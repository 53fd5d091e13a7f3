"""Synthetic directed graphs for the experiment sweep.

All randomness comes from numpy's PCG64 bit generator seeded with the
config seed, which gives identical streams on every platform.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import ConfigInvalid, SaturationFailure
from .graph import DirectedGraph

# attempts allowed per requested edge before giving up on the static model
ATTEMPT_FACTOR = 50


class Model(str, enum.Enum):
    STATIC_SCALE_FREE = "sf"
    UNIFORM_RANDOM = "er"


@dataclass(frozen=True)
class GeneratorConfig:
    n: int
    k: float
    gamma_in: float = 3.0
    gamma_out: float = 3.0
    seed: int = 0
    model: Model = Model.STATIC_SCALE_FREE

    @property
    def edge_target(self) -> int:
        # round first so k values built by repeated float steps do not overshoot
        return math.ceil(round(self.k * self.n / 2, 9))

    def validate(self) -> None:
        if self.n < 2:
            raise ConfigInvalid(f"need n >= 2, got {self.n}")
        if not self.k > 0:
            raise ConfigInvalid(f"need k > 0, got {self.k}")
        if self.model is Model.STATIC_SCALE_FREE and not (self.gamma_in > 2 and self.gamma_out > 2):
            raise ConfigInvalid("static model needs gamma_in, gamma_out > 2")
        if self.edge_target > self.n * (self.n - 1):
            raise ConfigInvalid(f"{self.edge_target} edges do not fit in {self.n} nodes")
        if not 0 <= self.seed < 2**64:
            raise ConfigInvalid("seed must be a non-negative 64-bit integer")

    def to_dict(self) -> dict:
        out = asdict(self)
        out["model"] = self.model.value
        out["edge_target"] = self.edge_target
        out["rng"] = "numpy.random.PCG64"
        return out


def weight_exponent(gamma: float) -> float:
    """Static-model weight exponent alpha = 1 / (gamma - 1)."""
    return 1.0 / (gamma - 1.0)


def _cumulative(n: int, gamma: float) -> np.ndarray:
    w = np.arange(1, n + 1, dtype=np.float64) ** -weight_exponent(gamma)
    cdf = np.cumsum(w)
    return cdf / cdf[-1]


def scale_free_digraph(config: GeneratorConfig) -> DirectedGraph:
    """Static-model scale-free digraph with exactly ``ceil(k*n/2)`` edges.

    Node i gets out-weight (i+1)^-a_out and in-weight (i+1)^-a_in. Sources
    and targets are drawn independently by weight; self-loops and repeats
    are rejected in draw order until the edge target is met.
    """
    if config.model is not Model.STATIC_SCALE_FREE:
        raise ConfigInvalid("scale_free_digraph needs model=sf")
    config.validate()
    n, target = config.n, config.edge_target
    rng = np.random.Generator(np.random.PCG64(config.seed))
    cdf_out = _cumulative(n, config.gamma_out)
    cdf_in = _cumulative(n, config.gamma_in)

    edges: set[tuple[int, int]] = set()
    order: list[tuple[int, int]] = []
    budget = ATTEMPT_FACTOR * target + 1000
    drawn = 0
    while len(order) < target:
        if drawn >= budget:
            raise SaturationFailure(f"only {len(order)} of {target} edges after {drawn} draws")
        batch = min(max(2 * (target - len(order)), 1024), budget - drawn)
        src = np.minimum(np.searchsorted(cdf_out, rng.random(batch), side="right"), n - 1)
        dst = np.minimum(np.searchsorted(cdf_in, rng.random(batch), side="right"), n - 1)
        drawn += batch
        for u, v in zip(src.tolist(), dst.tolist()):
            if u == v or (u, v) in edges:
                continue
            edges.add((u, v))
            order.append((u, v))
            if len(order) == target:
                break
    return DirectedGraph(n, order)


def uniform_random_digraph(config: GeneratorConfig) -> DirectedGraph:
    """``ceil(k*n/2)`` distinct non-loop edges drawn uniformly without replacement."""
    if config.model is not Model.UNIFORM_RANDOM:
        raise ConfigInvalid("uniform_random_digraph needs model=er")
    config.validate()
    n, target = config.n, config.edge_target
    rng = np.random.Generator(np.random.PCG64(config.seed))
    slots = rng.choice(n * (n - 1), size=target, replace=False)
    src = slots // (n - 1)
    dst = slots % (n - 1)
    dst = dst + (dst >= src)
    return DirectedGraph(n, zip(src.tolist(), dst.tolist()))


def generate(config: GeneratorConfig) -> DirectedGraph:
    if config.model is Model.STATIC_SCALE_FREE:
        return scale_free_digraph(config)
    return uniform_random_digraph(config)
