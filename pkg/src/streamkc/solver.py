"""Center selection on weighted point sets, sequential baselines, and the
exhaustive oracle used to verify them.

``outliers_cluster`` is the greedy weighted routine shared by everything
here: each round picks the candidate whose small ball captures the most
uncovered weight, then discards everything inside a larger ball around it.
``compute_solution`` drives it over a geometric radius grid on a coreset
extracted from a ``GuessLadder``; the baselines drive it (or farthest-first
traversal) over a raw window.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .core import Metric, Point, WindowView, dist, radius_excluding
from .coreset import GuessLadder


@dataclass(frozen=True, slots=True)
class SolveOutcome:
    """Result of a clustering run.

    uncovered_weight is the aggregate (estimated) weight left uncovered at
    the returned radius rho_min; achieved_radius scores the centers against
    the true window (z largest distances excluded) when one was supplied.
    """

    centers: tuple[Point, ...]
    uncovered_weight: int
    rho_min: float
    achieved_radius: Optional[float] = None
    guess: Optional[float] = None
    coreset_size: Optional[int] = None


def outliers_cluster(
    points: Sequence[Point],
    weights: Sequence[int],
    k: int,
    rho: float,
    eps: float,
    metric: Metric = dist,
) -> tuple[list[Point], list[tuple[Point, int]]]:
    """Greedy weighted center selection at radius guess rho.

    Runs at most k rounds.  Each round scans all points, scoring each by the
    total weight of uncovered points within (1 + 2*eps)*rho, picks the first
    best in storage order, and covers (removes) all uncovered points within
    (3 + 4*eps)*rho of it.  Returns the chosen centers and the uncovered
    points with their weights.
    """
    if rho < 0 or eps < 0:
        raise ValueError("rho and eps must be non-negative")
    n = len(points)
    cover_r = (1.0 + 2.0 * eps) * rho
    removal_r = (3.0 + 4.0 * eps) * rho
    uncovered = list(range(n))
    centers: list[Point] = []
    for _ in range(k):
        if not uncovered:
            break
        best_i = -1
        best_w = -1
        for i in range(n):
            w = 0
            pi = points[i]
            for j in uncovered:
                if metric(pi, points[j]) <= cover_r:
                    w += weights[j]
            if w > best_w:
                best_i, best_w = i, w
        x = points[best_i]
        centers.append(x)
        uncovered = [j for j in uncovered if metric(x, points[j]) > removal_r]
    return centers, [(points[j], weights[j]) for j in uncovered]


def compute_solution(
    ladder: GuessLadder,
    t: Optional[int] = None,
    k: Optional[int] = None,
    z: Optional[int] = None,
    search: str = "linear",
    eps: Optional[float] = None,
    window: Optional[WindowView] = None,
    metric: Metric = dist,
) -> SolveOutcome:
    """Extract a coreset and search the smallest radius whose greedy run
    leaves at most z uncovered weight.

    The radius grid starts at zero (degenerate exact covers), then walks
    geometrically with step (1 + beta) from the ladder's lower distance bound.
    eps defaults to 4*(1 + beta), matching the coreset's dilation.
    """
    if t is not None and t != ladder.t:
        raise ValueError(f"t={t} does not match ladder clock {ladder.t}")
    params = ladder.params
    k = params.k if k is None else k
    z = params.z if z is None else z
    eps = 4.0 * (1.0 + params.beta) if eps is None else eps
    coreset = ladder.extract_coreset(search)
    pts = [p for p, _ in coreset.points]
    wts = [w for _, w in coreset.points]

    if ladder.mode == "fixed":
        lo, cap = ladder.d_min / 2.0, ladder.d_max * (1.0 + params.beta)
    elif ladder.bootstrapped:
        lo, cap = ladder.d_t / 2.0, 4.0 * ladder.D_t
    else:
        # warm-up: the coreset is the exact buffer, bound the grid by it
        pair = [
            metric(pts[i], pts[j])
            for i in range(len(pts))
            for j in range(i + 1, len(pts))
        ]
        pos = [d for d in pair if d > 0]
        lo = min(pos) if pos else 1.0
        cap = 4.0 * max(pair) if pair else lo

    grid = [0.0]
    rho = lo
    while rho <= cap:
        grid.append(rho)
        rho *= 1.0 + params.beta
    grid.append(rho)  # one step past the cap so success at the bound is reachable

    def attempt(rho: float):
        centers, uncovered = outliers_cluster(pts, wts, k, rho, eps, metric)
        return centers, sum(w for _, w in uncovered)

    hit = None
    if search == "linear":
        for rho in grid:
            centers, uw = attempt(rho)
            if uw <= z:
                hit = (rho, centers, uw)
                break
    else:
        # leftmost success by bisection; assumes success is monotone in rho
        lo_i, hi_i = 0, len(grid) - 1
        if attempt(grid[hi_i])[1] <= z:
            while lo_i < hi_i:
                mid = (lo_i + hi_i) // 2
                if attempt(grid[mid])[1] <= z:
                    hi_i = mid
                else:
                    lo_i = mid + 1
            centers, uw = attempt(grid[lo_i])
            hit = (grid[lo_i], centers, uw)
    if hit is None:
        raise RuntimeError("radius grid exhausted without covering enough weight")
    rho_min, centers, uw = hit
    achieved = None
    if window is not None:
        achieved = radius_excluding(centers, window, z, metric)
    return SolveOutcome(
        centers=tuple(centers),
        uncovered_weight=uw,
        rho_min=rho_min,
        achieved_radius=achieved,
        guess=coreset.guess,
        coreset_size=len(coreset),
    )


# -- oracle ----------------------------------------------------------------

MAX_ORACLE_WINDOW = 40
MAX_ORACLE_K = 4


def brute_force_optimum(
    window: WindowView, k: int, z: int, metric: Metric = dist
) -> tuple[tuple[Point, ...], float]:
    """Exact optimum by enumerating every k-subset of the window.

    Guarded to tiny instances; this is the reference the approximation
    bounds are tested against, never a production path.
    """
    n = len(window.points)
    if n > MAX_ORACLE_WINDOW or k > MAX_ORACLE_K:
        raise ValueError(
            f"instance too large for enumeration (n={n} k={k}), "
            f"limits are n<={MAX_ORACLE_WINDOW}, k<={MAX_ORACLE_K}"
        )
    if not 1 <= k:
        raise ValueError("k must be >= 1")
    if not 0 <= z < n:
        raise ValueError("z must satisfy 0 <= z < window size")
    pts = window.points
    D = np.empty((n, n))
    for i in range(n):
        D[i, i] = 0.0
        for j in range(i + 1, n):
            D[i, j] = D[j, i] = metric(pts[i], pts[j])
    keep = n - 1 - z  # index of the max after dropping the z largest
    best_r = math.inf
    best: tuple[int, ...] = ()
    for combo in itertools.combinations(range(n), min(k, n)):
        d = D[:, combo].min(axis=1)
        r = np.partition(d, keep)[keep]
        if r < best_r:
            best_r = r
            best = combo
    return tuple(pts[i] for i in best), float(best_r)


# -- baselines ---------------------------------------------------------------


def gonzalez(window: WindowView, k: int, metric: Metric = dist) -> list[Point]:
    """Farthest-first traversal, seeded at the first window point."""
    if k < 1:
        raise ValueError("k must be >= 1")
    pts = window.points
    centers = [pts[0]]
    mind = [metric(p, pts[0]) for p in pts]
    while len(centers) < min(k, len(pts)):
        i = max(range(len(pts)), key=lambda j: mind[j])
        centers.append(pts[i])
        for j in range(len(pts)):
            d = metric(pts[j], pts[i])
            if d < mind[j]:
                mind[j] = d
    return centers


def _np_coords(window: WindowView) -> np.ndarray:
    return np.array([p.coords for p in window.points])


def _pairwise_extremes(coords: np.ndarray, block: int = 512) -> tuple[float, float]:
    """(min positive, max) pairwise Euclidean distance, computed in blocks."""
    n = len(coords)
    minpos, dmax = math.inf, 0.0
    for i0 in range(0, n, block):
        chunk = coords[i0 : i0 + block]
        d2 = (
            (chunk**2).sum(1)[:, None]
            + (coords**2).sum(1)[None, :]
            - 2.0 * chunk @ coords.T
        )
        np.maximum(d2, 0.0, out=d2)
        dmax = max(dmax, float(d2.max()))
        pos = d2[d2 > 0]
        if pos.size:
            minpos = min(minpos, float(pos.min()))
    return math.sqrt(minpos) if minpos < math.inf else 0.0, math.sqrt(dmax)


def _cluster_unit_euclidean(
    coords: np.ndarray,
    k: int,
    rho: float,
    eps: float,
    sampler: Optional[Callable[[int], np.ndarray]] = None,
    block: int = 256,
) -> tuple[list[int], int]:
    """outliers_cluster specialised to unit weights and Euclidean coords.

    sampler(iteration) may restrict the candidate centers; coverage and
    removal always consider every point.  Returns chosen indices and the
    uncovered count.
    """
    n = len(coords)
    cover_r = (1.0 + 2.0 * eps) * rho
    removal_r = (3.0 + 4.0 * eps) * rho
    uncovered = np.ones(n, dtype=bool)
    centers: list[int] = []
    sq = (coords**2).sum(1)
    for it in range(k):
        if not uncovered.any():
            break
        cand = np.arange(n) if sampler is None else sampler(it)
        if cand.size == 0:
            cand = np.arange(n)
        unc_idx = np.flatnonzero(uncovered)
        unc = coords[unc_idx]
        unc_sq = sq[unc_idx]
        best_i, best_w = -1, -1
        for c0 in range(0, cand.size, block):
            cc = cand[c0 : c0 + block]
            d2 = sq[cc][:, None] + unc_sq[None, :] - 2.0 * coords[cc] @ unc.T
            counts = (d2 <= cover_r * cover_r).sum(1)
            j = int(counts.argmax())
            if counts[j] > best_w:
                best_i, best_w = int(cc[j]), int(counts[j])
        centers.append(best_i)
        d2x = sq[unc_idx] + sq[best_i] - 2.0 * unc @ coords[best_i]
        uncovered[unc_idx[d2x <= removal_r * removal_r]] = False
    return centers, int(uncovered.sum())


def charikar(
    window: WindowView,
    k: int,
    z: int,
    step: float = 0.5,
    metric: Metric = dist,
) -> SolveOutcome:
    """Whole-window baseline: smallest rho on a geometric grid (ratio
    1 + step, spanning the window's positive pairwise distances) for which
    the unit-weight greedy run leaves at most z uncovered points."""
    pts = list(window.points)
    n = len(pts)
    euclid = metric is dist
    if euclid:
        coords = _np_coords(window)
        minpos, dmax = _pairwise_extremes(coords)
    else:
        pair = [metric(pts[i], pts[j]) for i in range(n) for j in range(i + 1, n)]
        pos = [d for d in pair if d > 0]
        minpos = min(pos) if pos else 0.0
        dmax = max(pair) if pair else 0.0

    grid = [0.0]
    if minpos > 0:
        rho = minpos
        while rho < dmax:
            grid.append(rho)
            rho *= 1.0 + step
        grid.append(rho)

    for rho in grid:
        if euclid:
            centers_i, uw = _cluster_unit_euclidean(coords, k, rho, 0.0)
            centers = [pts[i] for i in centers_i]
        else:
            centers, unc = outliers_cluster(pts, [1] * n, k, rho, 0.0, metric)
            uw = len(unc)
        if uw <= z:
            achieved = 0.0 if z >= n else radius_excluding(centers, window, z, metric)
            return SolveOutcome(
                centers=tuple(centers),
                uncovered_weight=uw,
                rho_min=rho,
                achieved_radius=achieved,
            )
    raise RuntimeError("radius grid exhausted; should be unreachable")


def samp_charikar(
    window: WindowView,
    k: int,
    z: int,
    step: float = 0.5,
    sample_size: int = 1000,
    seed: int = 0,
) -> SolveOutcome:
    """charikar with each center-selection scan restricted to a Bernoulli
    sample of the window of expected size sample_size.  Euclidean only."""
    pts = list(window.points)
    n = len(pts)
    coords = _np_coords(window)
    minpos, dmax = _pairwise_extremes(coords)
    rng = np.random.default_rng(seed)
    prob = min(1.0, sample_size / n)

    def sampler(_it: int) -> np.ndarray:
        if prob >= 1.0:
            return np.arange(n)
        return np.flatnonzero(rng.random(n) < prob)

    grid = [0.0]
    if minpos > 0:
        rho = minpos
        while rho < dmax:
            grid.append(rho)
            rho *= 1.0 + step
        grid.append(rho)

    for rho in grid:
        centers_i, uw = _cluster_unit_euclidean(coords, k, rho, 0.0, sampler)
        if uw <= z:
            centers = [pts[i] for i in centers_i]
            achieved = 0.0 if z >= n else radius_excluding(centers, window, z)
            return SolveOutcome(
                centers=tuple(centers),
                uncovered_weight=uw,
                rho_min=rho,
                achieved_radius=achieved,
            )
    raise RuntimeError("radius grid exhausted; should be unreachable")
