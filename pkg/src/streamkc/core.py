"""Points, windows, distances and shared stream parameters.

Everything here is a plain value type or a pure function; instances can be
shared freely between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

Metric = Callable[["Point", "Point"], float]


@dataclass(frozen=True, slots=True)
class Point:
    """A stream element: a coordinate tuple stamped with its 1-based arrival index."""

    arrival: int
    coords: tuple[float, ...]

    def __post_init__(self):
        if self.arrival < 1:
            raise ValueError(f"arrival must be >= 1, got {self.arrival}")
        for c in self.coords:
            if not math.isfinite(c):
                raise ValueError(f"non-finite coordinate {c!r} at arrival {self.arrival}")

    @property
    def dim(self) -> int:
        return len(self.coords)


def dist(p: Point, q: Point) -> float:
    """Euclidean distance. The default (and only acceptance-tested) metric.

    Any other metric must be symmetric, non-negative, zero only on equal
    coordinates, and satisfy the triangle inequality.
    """
    if len(p.coords) != len(q.coords):
        raise ValueError(f"dimension mismatch: {len(p.coords)} vs {len(q.coords)}")
    return math.dist(p.coords, q.coords)


@dataclass(frozen=True, slots=True)
class StreamParams:
    """Knobs shared by the streaming structures.

    window_len: number of most recent points forming the active window.
    k: number of centers.
    z: number of outliers to discard.
    lam: accuracy of the window-count estimates; stored weights are within a
        factor (1 + lam) of the true counts.  lam == 0 keeps exact counts
        (useful for testing, memory grows linearly with the window).
    beta: granularity of the geometric grid of radius guesses (ratio 1 + beta).
    """

    window_len: int
    k: int
    z: int = 0
    lam: float = 0.5
    beta: float = 0.5

    def __post_init__(self):
        if self.window_len < 1:
            raise ValueError("window_len must be positive")
        if not 1 <= self.k < self.window_len:
            raise ValueError("k must satisfy 1 <= k < window_len")
        if not 0 <= self.z < self.window_len:
            raise ValueError("z must satisfy 0 <= z < window_len")
        if self.k + self.z + 1 > self.window_len:
            raise ValueError("window_len must be at least k + z + 1")
        if self.lam < 0:
            raise ValueError("lam must be >= 0")
        if not 0 < self.beta <= 1:
            raise ValueError("beta must be in (0, 1]")


@dataclass(frozen=True, slots=True)
class WindowView:
    """The active points at time t (arrivals in (t - N, t])."""

    points: tuple[Point, ...]
    t: int

    @classmethod
    def from_coords(cls, coords: Iterable[Sequence[float]]) -> "WindowView":
        """Build a window from raw coordinate rows, arrivals 1..n (test helper)."""
        pts = tuple(
            Point(i + 1, tuple(float(c) for c in row)) for i, row in enumerate(coords)
        )
        return cls(points=pts, t=len(pts))

    def __len__(self) -> int:
        return len(self.points)


def radius_excluding(
    centers: Sequence[Point],
    window: WindowView,
    z: int,
    metric: Metric = dist,
) -> float:
    """Max distance from the window to its nearest center, after dropping the
    z largest such distances.  With z == 0 this is the plain clustering radius.
    """
    if not centers:
        raise ValueError("centers must be non-empty")
    if z < 0:
        raise ValueError("z must be >= 0")
    if len(window.points) <= z:
        raise ValueError("window must contain more than z points")
    dists = sorted(min(metric(p, c) for c in centers) for p in window.points)
    return dists[len(dists) - 1 - z]
