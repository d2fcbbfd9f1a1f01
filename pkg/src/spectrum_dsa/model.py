"""Domain types (region, transmitter, scenario) and disk geometry."""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from typing import Any, Iterable


@dataclass(frozen=True)
class Region:
    """Axis-aligned rectangle, coordinates in meters."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self) -> None:
        for v in (self.x_min, self.x_max, self.y_min, self.y_max):
            if not math.isfinite(v):
                raise ValueError(f"region bounds must be finite, got {self}")
        if not (self.x_max > self.x_min and self.y_max > self.y_min):
            raise ValueError(f"region must have positive width and height, got {self}")

    @classmethod
    def square(cls, side: float) -> Region:
        return cls(0.0, float(side), 0.0, float(side))

    @property
    def width(self) -> float:
        return self.x_max - self.x_min

    @property
    def height(self) -> float:
        return self.y_max - self.y_min

    @property
    def area(self) -> float:
        return self.width * self.height

    def contains(self, x: float, y: float) -> bool:
        return self.x_min <= x <= self.x_max and self.y_min <= y <= self.y_max


@dataclass(frozen=True)
class Transmitter:
    id: int
    x: float
    y: float
    bandwidth: int
    radius: float

    def __post_init__(self) -> None:
        if isinstance(self.bandwidth, bool) or not isinstance(self.bandwidth, int):
            raise TypeError(f"bandwidth must be an integer number of units, got {self.bandwidth!r}")
        if self.bandwidth < 1:
            raise ValueError(f"transmitter {self.id}: bandwidth must be >= 1")
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise ValueError(f"transmitter {self.id}: radius must be positive and finite")
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"transmitter {self.id}: position must be finite")


@dataclass(frozen=True)
class Scenario:
    region: Region
    transmitters: tuple[Transmitter, ...]
    total_bandwidth: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "transmitters", tuple(self.transmitters))
        if isinstance(self.total_bandwidth, bool) or not isinstance(self.total_bandwidth, int):
            raise TypeError("total_bandwidth must be an integer")
        if self.total_bandwidth < 1:
            raise ValueError("total_bandwidth must be >= 1")
        ids = sorted(t.id for t in self.transmitters)
        if ids != list(range(1, len(ids) + 1)):
            raise ValueError("transmitter ids must be unique and contiguous from 1")
        for t in self.transmitters:
            if not self.region.contains(t.x, t.y):
                raise ValueError(f"transmitter {t.id} at ({t.x}, {t.y}) lies outside the region")

    @property
    def n(self) -> int:
        return len(self.transmitters)

    def by_id(self) -> dict[int, Transmitter]:
        return {t.id: t for t in self.transmitters}

    def to_dict(self) -> dict[str, Any]:
        r = self.region
        return {
            "region": {"x_min": r.x_min, "x_max": r.x_max, "y_min": r.y_min, "y_max": r.y_max},
            "total_bandwidth": self.total_bandwidth,
            "transmitters": [
                {"id": t.id, "x": t.x, "y": t.y, "bandwidth": t.bandwidth, "radius": t.radius}
                for t in self.transmitters
            ],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Scenario:
        try:
            reg = data["region"]
            region = Region(
                float(reg["x_min"]), float(reg["x_max"]), float(reg["y_min"]), float(reg["y_max"])
            )
            txs = [
                Transmitter(
                    id=int(t["id"]),
                    x=float(t["x"]),
                    y=float(t["y"]),
                    bandwidth=_as_int(t["bandwidth"], "bandwidth"),
                    radius=float(t["radius"]),
                )
                for t in data["transmitters"]
            ]
            total = _as_int(data["total_bandwidth"], "total_bandwidth")
        except (KeyError, TypeError) as err:
            raise ValueError(f"malformed scenario document: {err}") from err
        return cls(region, tuple(txs), total)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> Scenario:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as err:
            raise ValueError(f"malformed scenario JSON: {err}") from err
        if not isinstance(data, dict):
            raise ValueError("scenario JSON must be an object")
        return cls.from_dict(data)

    def digest(self) -> str:
        """SHA-256 of the canonical JSON form; equal content gives equal digest."""
        canon = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode()).hexdigest()


def _as_int(value: Any, name: str) -> int:
    if isinstance(value, bool):
        raise TypeError(f"{name} must be an integer")
    if isinstance(value, float):
        if not value.is_integer():
            raise TypeError(f"{name} must be an integer, got {value}")
        return int(value)
    return int(value)


def overlaps(a: Transmitter, b: Transmitter) -> bool:
    # strict: tangent disks share no area and do not conflict
    return math.hypot(a.x - b.x, a.y - b.y) < a.radius + b.radius


def _half_disk_integral(x: float, r: float) -> float:
    """Antiderivative of sqrt(r^2 - x^2) on [-r, r]."""
    u = min(1.0, max(-1.0, x / r))
    return 0.5 * (x * math.sqrt(max(0.0, r * r - x * x)) + r * r * math.asin(u))


def disk_rect_area(
    cx: float, cy: float, r: float, x_min: float, x_max: float, y_min: float, y_max: float
) -> float:
    """Exact area of disk((cx, cy), r) intersected with a rectangle.

    The vertical extent of the intersection at abscissa x is
    min(y_max, h(x)) - max(y_min, -h(x)) with h(x) = sqrt(r^2 - x^2).
    Between breakpoints where h crosses |y_min| or |y_max| each bound is
    either a constant or +-h, so every piece integrates in closed form.
    """
    x0, x1 = x_min - cx, x_max - cx
    y0, y1 = y_min - cy, y_max - cy
    lo, hi = max(x0, -r), min(x1, r)
    if lo >= hi or y0 >= r or y1 <= -r:
        return 0.0

    cuts = {lo, hi}
    for yb in (y0, y1):
        if abs(yb) < r:
            w = math.sqrt(r * r - yb * yb)
            for c in (-w, w):
                if lo < c < hi:
                    cuts.add(c)
    pts = sorted(cuts)

    area = 0.0
    for u, v in zip(pts, pts[1:]):
        m = 0.5 * (u + v)
        hm = math.sqrt(max(0.0, r * r - m * m))
        if min(y1, hm) <= max(y0, -hm):
            continue
        seg_h = _half_disk_integral(v, r) - _half_disk_integral(u, r)
        top = y1 * (v - u) if y1 < hm else seg_h
        bottom = y0 * (v - u) if y0 > -hm else -seg_h
        area += top - bottom
    return max(0.0, area)


def coverage_correction(t: Transmitter, region: Region) -> float:
    """Fraction of the transmitter's coverage disk lying inside ``region``."""
    if not region.contains(t.x, t.y):
        raise ValueError(f"transmitter {t.id} center lies outside the region")
    r = t.radius
    if (
        t.x - r >= region.x_min
        and t.x + r <= region.x_max
        and t.y - r >= region.y_min
        and t.y + r <= region.y_max
    ):
        return 1.0
    inside = disk_rect_area(t.x, t.y, r, region.x_min, region.x_max, region.y_min, region.y_max)
    return min(1.0, max(0.0, inside / (math.pi * r * r)))


def coverage_corrections(s: Scenario) -> dict[int, float]:
    return {t.id: coverage_correction(t, s.region) for t in s.transmitters}


def make_scenario(
    points: Iterable[tuple[float, float, int, float]],
    total_bandwidth: int,
    region: Region | None = None,
) -> Scenario:
    """Convenience builder: ids are assigned 1..N in iteration order."""
    region = region or Region.square(100.0)
    txs = tuple(
        Transmitter(i, float(x), float(y), int(b), float(r))
        for i, (x, y, b, r) in enumerate(points, start=1)
    )
    return Scenario(region, txs, total_bandwidth)
