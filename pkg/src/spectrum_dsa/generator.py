"""Seeded random scenario generation.

All randomness comes from numpy's PCG64 bit generator seeded through a
``SeedSequence``; identical parameters and seed give an identical scenario on
every platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np

from spectrum_dsa.model import Region, Scenario, Transmitter

RNG_NAME = f"numpy.random.PCG64 (SeedSequence) numpy-{np.__version__}"

BASELINE_REGION = Region.square(100.0)


@dataclass(frozen=True)
class GenParams:
    """Scenario generation parameters.

    ``bandwidth_law`` is an inclusive integer range and ``radius_law`` a real
    range; a fixed value is a range with equal ends.
    """

    n: int = 25
    f: int = 10
    bandwidth_law: tuple[int, int] = (1, 3)
    radius_law: tuple[float, float] = (8.0, 17.0)
    region: Region = field(default=BASELINE_REGION)
    seed: int = 0

    def __post_init__(self) -> None:
        b_min, b_max = self.bandwidth_law
        r_min, r_max = self.radius_law
        if int(b_min) != b_min or int(b_max) != b_max:
            raise ValueError("bandwidth law bounds must be integers")
        object.__setattr__(self, "bandwidth_law", (int(b_min), int(b_max)))
        object.__setattr__(self, "radius_law", (float(r_min), float(r_max)))
        if not 1 <= b_min <= b_max:
            raise ValueError(f"need 1 <= b_min <= b_max, got {self.bandwidth_law}")
        if not (0 < r_min <= r_max and math.isfinite(r_max)):
            raise ValueError(f"need 0 < r_min <= r_max, got {self.radius_law}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.f < 1:
            raise ValueError("f must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def with_(self, **changes: Any) -> GenParams:
        return replace(self, **changes)

    def to_dict(self) -> dict[str, Any]:
        r = self.region
        return {
            "n": self.n,
            "f": self.f,
            "bandwidth_law": list(self.bandwidth_law),
            "radius_law": list(self.radius_law),
            "region": {"x_min": r.x_min, "x_max": r.x_max, "y_min": r.y_min, "y_max": r.y_max},
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> GenParams:
        kwargs: dict[str, Any] = {}
        for key in ("n", "f", "seed"):
            if key in data:
                kwargs[key] = int(data[key])
        if "bandwidth_law" in data:
            kwargs["bandwidth_law"] = _law(data["bandwidth_law"])
        if "radius_law" in data:
            kwargs["radius_law"] = _law(data["radius_law"])
        if "region" in data:
            reg = data["region"]
            kwargs["region"] = Region(
                float(reg["x_min"]), float(reg["x_max"]), float(reg["y_min"]), float(reg["y_max"])
            )
        return cls(**kwargs)


def _law(value: Any) -> tuple[Any, Any]:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"law must be [lo, hi], got {value!r}")
        return (value[0], value[1])
    return (value, value)


def make_rng(seed: int | np.random.SeedSequence) -> np.random.Generator:
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    return np.random.Generator(np.random.PCG64(ss))


def generate_scenario(p: GenParams, rng: np.random.Generator | None = None) -> Scenario:
    """Draw ``p.n`` transmitters uniformly over the region.

    Uses ``p.seed`` unless an explicit generator is passed (the sweep harness
    passes its per-trial substream).
    """
    rng = rng if rng is not None else make_rng(p.seed)
    reg = p.region
    xs = rng.uniform(reg.x_min, reg.x_max, p.n)
    ys = rng.uniform(reg.y_min, reg.y_max, p.n)
    bs = rng.integers(p.bandwidth_law[0], p.bandwidth_law[1], size=p.n, endpoint=True)
    rs = rng.uniform(p.radius_law[0], p.radius_law[1], p.n)
    txs = tuple(
        Transmitter(i + 1, float(xs[i]), float(ys[i]), int(bs[i]), float(rs[i]))
        for i in range(p.n)
    )
    return Scenario(reg, txs, p.f)
