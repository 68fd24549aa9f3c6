"""Sliding-window weighted coreset maintenance.

One ``GuessState`` per radius guess keeps three small sets of active points:

* attraction points, pairwise farther apart than the attraction radius;
* one representative per attraction point (the newest point it attracted),
  each carrying a histogram that counts the window points it stands for;
* orphans: representatives whose attraction point expired or was evicted.

A ``GuessLadder`` maintains these states over a geometric grid of guesses
``(1 + beta) ** i``.  In *fixed* mode the grid is pinned to user-supplied
distance bounds; in *oblivious* mode it tracks running estimates derived
from the first stream point and the most recent ``k + z + 1`` points, so no
prior knowledge of the data's distance scale is needed.

The same machinery doubles as the fine-grained layer used for effective
diameter estimation, by shrinking the attraction radius and raising the
attraction cap (see ``streamkc.effdiam``).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import Metric, Point, StreamParams, dist
from .histogram import (
    Histogram,
    bump_and_trim,
    check_invariants as check_histogram,
    new_histogram,
    synthetic_full_window,
    weight_estimate,
)

SNAPSHOT_FORMAT = "streamkc-ladder"
SNAPSHOT_VERSION = 1

# below this many attraction points a plain python scan beats numpy
_VEC_MIN = 48


@dataclass(frozen=True, slots=True)
class WeightedCoreset:
    """Extracted coreset: points with approximate window counts.

    guess: the radius guess the coreset was extracted at (0.0 for the exact
    warm-up coreset).  The sum of weights never exceeds the window size.
    """

    points: tuple[tuple[Point, int], ...]
    guess: float
    t: int

    def total_weight(self) -> int:
        return sum(w for _, w in self.points)

    def __len__(self) -> int:
        return len(self.points)


class GuessState:
    """Attraction/representative/orphan bookkeeping for one radius guess.

    max_attractions caps the attraction set; inserting beyond it evicts the
    oldest attraction point (its representative becomes an orphan) and bumps
    ``evictions``.  With prune_orphans set, any orphan older than the oldest
    attraction point is discarded whenever the attraction set exceeds
    ``max_attractions - 1`` (such orphans can never reach a usable coreset).

    Must see every time step: the expiry sweep relies on consecutive calls,
    so that anything stale matches the current step's expiring timestamp
    exactly.  Orphans are keyed by arrival, and the first (only possibly
    stale) entry of each orphan histogram is indexed by timestamp, making the
    per-step sweep O(1) regardless of how many orphans are held.
    """

    __slots__ = (
        "guess",
        "attr_radius",
        "max_attractions",
        "prune_orphans",
        "orphan_cap",
        "attractions",
        "reps",
        "orphans",
        "evictions",
        "_first_ts",
        "_buf",
        "_lo",
        "_hi",
    )

    def __init__(
        self,
        guess: float,
        attr_radius: float,
        max_attractions: int,
        prune_orphans: bool = True,
        orphan_cap: Optional[int] = None,
    ):
        self.guess = guess
        self.attr_radius = attr_radius
        self.max_attractions = max_attractions
        self.prune_orphans = prune_orphans
        self.orphan_cap = orphan_cap
        self.attractions: list[Point] = []  # arrival order == expiry order
        self.reps: dict[int, tuple[Point, Histogram]] = {}  # attraction arrival -> (rep, hist)
        self.orphans: dict[int, tuple[Point, Histogram]] = {}  # orphan arrival -> (pt, hist)
        self.evictions = 0
        self._first_ts: dict[int, int] = {}  # orphan hist first timestamp -> arrival
        # append-only mirror of attraction coordinates for vectorized scans;
        # rows [_lo:_hi) track the attraction list (front pops, back appends)
        self._buf: Optional[np.ndarray] = None
        self._lo = 0
        self._hi = 0

    # -- update ------------------------------------------------------------

    def process_point(
        self, p: Point, t: int, window_len: int, lam: float, metric: Metric = dist
    ) -> Optional[int]:
        """Expire stale state, then absorb the arrival p.

        Returns the arrival index of the attraction point that captured p, or
        None when p became a new attraction point.
        """
        self.sweep(t, window_len)
        idx = self._first_within(p, metric)
        if idx is None:
            self._insert(p)
            return None
        a = self.attractions[idx]
        _, hist = self.reps[a.arrival]
        self.reps[a.arrival] = (p, bump_and_trim(hist, t, lam))
        return a.arrival

    def sweep(self, t: int, window_len: int) -> None:
        """Expiry pass: attraction points first (their representatives become
        orphans), then the orphan expiring now, then the one histogram entry
        stamped with the expiring timestamp."""
        stale = t - window_len
        attrs = self.attractions
        while attrs and attrs[0].arrival <= stale:
            a = attrs.pop(0)
            self._lo += 1
            rep, hist = self.reps.pop(a.arrival)
            if rep.arrival > stale:
                self._add_orphan(rep, hist)
        gone = self.orphans.pop(stale, None)
        if gone is not None:
            self._first_ts.pop(gone[1][0][0], None)
        owner = self._first_ts.pop(stale, None)
        if owner is not None:
            hist = self.orphans[owner][1]
            hist.pop(0)
            if hist:
                self._first_ts[hist[0][0]] = owner
            else:
                del self.orphans[owner]

    def insert_attraction(self, p: Point, metric: Metric = dist) -> None:
        """Add p as a new attraction point (and its own representative).

        p must be farther than the attraction radius from every current
        attraction point.
        """
        if self._first_within(p, metric) is not None:
            raise ValueError(
                f"point at arrival {p.arrival} is within {self.attr_radius} of an "
                "existing attraction point"
            )
        self._insert(p)

    def _insert(self, p: Point) -> None:
        self.attractions.append(p)
        self._buf_append(p.coords)
        self.reps[p.arrival] = (p, new_histogram(p.arrival))
        if len(self.attractions) > self.max_attractions:
            old = self.attractions.pop(0)
            self._lo += 1
            self._add_orphan(*self.reps.pop(old.arrival))
            self.evictions += 1
        if self.prune_orphans and len(self.attractions) > self.max_attractions - 1:
            oldest = self.attractions[0].arrival
            for arrival in [a for a in self.orphans if a < oldest]:
                _, hist = self.orphans.pop(arrival)
                self._first_ts.pop(hist[0][0], None)
        if self.orphan_cap is not None and len(self.orphans) > self.orphan_cap:
            victim = min(self.orphans)
            _, hist = self.orphans.pop(victim)
            self._first_ts.pop(hist[0][0], None)
            self.evictions += 1

    def _add_orphan(self, rep: Point, hist: Histogram) -> None:
        assert rep.arrival not in self.orphans
        self.orphans[rep.arrival] = (rep, hist)
        ts = hist[0][0]
        assert ts not in self._first_ts, "duplicate leading histogram timestamp"
        self._first_ts[ts] = rep.arrival

    def seed(self, anchor: Point, rep: Point, hist: Histogram) -> None:
        """Initialize an empty state with a single attraction point whose
        representative carries a prebuilt histogram."""
        assert not self.attractions and not self.orphans
        self.attractions.append(anchor)
        self._buf_append(anchor.coords)
        self.reps[anchor.arrival] = (rep, hist)

    def _buf_append(self, coords) -> None:
        dim = len(coords)
        if self._buf is None or self._hi == self._buf.shape[0]:
            live = 0 if self._buf is None else self._hi - self._lo
            cap = max(64, 2 * (live + 1))
            fresh = np.empty((cap, dim))
            if live:
                fresh[:live] = self._buf[self._lo : self._hi]
            self._buf = fresh
            self._lo, self._hi = 0, live
        self._buf[self._hi] = coords
        self._hi += 1

    def _first_within(self, p: Point, metric: Metric) -> Optional[int]:
        """Index of the oldest attraction point within the attraction radius."""
        attrs = self.attractions
        n = len(attrs)
        if n == 0:
            return None
        r = self.attr_radius
        if metric is dist and n >= _VEC_MIN:
            diff = self._buf[self._lo : self._hi] - np.asarray(p.coords)
            hits = np.flatnonzero(np.einsum("ij,ij->i", diff, diff) <= r * r)
            return int(hits[0]) if hits.size else None
        for i, a in enumerate(attrs):
            if metric(p, a) <= r:
                return i
        return None

    # -- inspection ----------------------------------------------------------

    def union_points(self) -> list[Point]:
        """Attractions, orphans and representatives, deduplicated, in storage order."""
        seen: set[int] = set()
        out: list[Point] = []
        for p in self.attractions:
            seen.add(p.arrival)
            out.append(p)
        for r, _ in self.orphans.values():
            if r.arrival not in seen:
                seen.add(r.arrival)
                out.append(r)
        for rep, _ in self.reps.values():
            if rep.arrival not in seen:
                seen.add(rep.arrival)
                out.append(rep)
        return out

    def coreset_points(self) -> list[tuple[Point, int]]:
        """Representatives and orphans with their estimated window counts."""
        out = [(rep, weight_estimate(h)) for rep, h in self.reps.values()]
        out.extend((r, weight_estimate(h)) for r, h in self.orphans.values())
        return out

    def stored_points(self) -> int:
        return len(self.attractions) + len(self.reps) + len(self.orphans)

    def histogram_entries(self) -> int:
        return sum(len(h) for _, h in self.reps.values()) + sum(
            len(h) for _, h in self.orphans.values()
        )

    def check_invariants(
        self, t: int, window_len: int, lam: float, metric: Metric = dist
    ) -> None:
        attrs = self.attractions
        assert len(attrs) <= self.max_attractions
        assert len(self.reps) == len(attrs), "one representative per attraction point"
        assert len(attrs) == len({a.arrival for a in attrs})
        assert self._hi - self._lo == len(attrs)
        for i in range(len(attrs)):
            assert attrs[i].arrival > t - window_len, "stored expired attraction point"
            assert tuple(self._buf[self._lo + i]) == attrs[i].coords
            if i:
                assert attrs[i - 1].arrival < attrs[i].arrival
            for j in range(i + 1, len(attrs)):
                assert metric(attrs[i], attrs[j]) > self.attr_radius, (
                    f"attraction points {attrs[i].arrival},{attrs[j].arrival} too close"
                )
        for a in attrs:
            rep, hist = self.reps[a.arrival]
            assert rep.arrival >= a.arrival
            assert rep.arrival > t - window_len
            check_histogram(hist, window_len, lam)
        if self.orphan_cap is not None:
            assert len(self.orphans) <= self.orphan_cap
        for arrival, (r, hist) in self.orphans.items():
            assert arrival == r.arrival
            assert r.arrival > t - window_len, "stored expired orphan"
            assert self._first_ts.get(hist[0][0]) == arrival
            check_histogram(hist, window_len, lam)
        assert len(self._first_ts) == len(self.orphans)

    # -- snapshots -----------------------------------------------------------

    def to_jsonable(self) -> dict:
        return {
            "attractions": [_point_out(p) for p in self.attractions],
            "reps": [
                [a, _point_out(rep), [list(e) for e in hist]]
                for a, (rep, hist) in self.reps.items()
            ],
            "orphans": [
                [_point_out(r), [list(e) for e in hist]]
                for r, hist in self.orphans.values()
            ],
            "evictions": self.evictions,
        }

    def restore(self, data: dict) -> None:
        self.attractions = [_point_in(p) for p in data["attractions"]]
        self.reps = {
            a: (_point_in(rep), [tuple(e) for e in hist])
            for a, rep, hist in data["reps"]
        }
        self.orphans = {}
        self._first_ts = {}
        for r, hist in data["orphans"]:
            self._add_orphan(_point_in(r), [tuple(e) for e in hist])
        self.evictions = data["evictions"]
        self._buf = None
        self._lo = self._hi = 0
        for p in self.attractions:
            self._buf_append(p.coords)


def _point_out(p: Point) -> list:
    return [p.arrival, list(p.coords)]


def _point_in(data: list) -> Point:
    return Point(data[0], tuple(data[1]))


class GuessLadder:
    """All guess states over the geometric radius grid, plus the stream clock.

    mode "fixed" requires d_min and d_max bracketing the stream's pairwise
    distances; mode "oblivious" discovers the needed grid on the fly.  A
    single instance is single-writer; reads are safe once no update runs.
    """

    def __init__(
        self,
        params: StreamParams,
        mode: str = "oblivious",
        d_min: Optional[float] = None,
        d_max: Optional[float] = None,
        metric: Metric = dist,
        *,
        attr_factor: float = 2.0,
        max_attractions: Optional[int] = None,
        prune_orphans: bool = True,
        orphan_cap: Optional[int] = None,
        high_init: str = "synthetic",
    ):
        if mode not in ("fixed", "oblivious"):
            raise ValueError(f"unknown mode {mode!r}")
        if high_init not in ("synthetic", "replay"):
            raise ValueError(f"unknown high_init {high_init!r}")
        self.params = params
        self.mode = mode
        self.metric = metric
        self.attr_factor = attr_factor
        self.max_attractions = (
            params.k + params.z + 1 if max_attractions is None else max_attractions
        )
        self.prune_orphans = prune_orphans
        self.orphan_cap = orphan_cap
        self.high_init = high_init
        self.t = 0
        self.states: dict[int, GuessState] = {}
        self.d_min = d_min
        self.d_max = d_max
        if mode == "fixed":
            if d_min is None or d_max is None or not 0 < d_min <= d_max:
                raise ValueError("fixed mode requires 0 < d_min <= d_max")
            # the grid reaches down to d_min/2 so that points at the minimum
            # scale can still sit in separate attraction sets, mirroring the
            # oblivious grid's lower end
            for e in range(self._exp_floor(d_min / 2.0), self._exp_ceil(d_max) + 1):
                self.states[e] = self._new_state(e)
        else:
            self.first_point: Optional[Point] = None
            self.recent: deque[Point] = deque(maxlen=params.k + params.z + 1)
            self.d_t = 0.0
            self.D_t = 0.0
            self.warmup: list[Point] = []
            self.bootstrapped = False

    # -- grid helpers --------------------------------------------------------

    def guess_value(self, exponent: int) -> float:
        return (1.0 + self.params.beta) ** exponent

    def _exp_floor(self, x: float) -> int:
        """Largest e with (1+beta)^e <= x, robust to log rounding."""
        b = 1.0 + self.params.beta
        e = math.floor(math.log(x) / math.log(b))
        while b**e > x:
            e -= 1
        while b ** (e + 1) <= x:
            e += 1
        return e

    def _exp_ceil(self, x: float) -> int:
        """Smallest e with (1+beta)^e >= x, robust to log rounding."""
        b = 1.0 + self.params.beta
        e = math.ceil(math.log(x) / math.log(b))
        while b**e < x:
            e += 1
        while b ** (e - 1) >= x:
            e -= 1
        return e

    def _new_state(self, exponent: int) -> GuessState:
        g = self.guess_value(exponent)
        return GuessState(
            guess=g,
            attr_radius=self.attr_factor * g,
            max_attractions=self.max_attractions,
            prune_orphans=self.prune_orphans,
            orphan_cap=self.orphan_cap,
        )

    def exponents(self) -> list[int]:
        return sorted(self.states)

    # -- updates -------------------------------------------------------------

    def process_point(self, p: Point, t: Optional[int] = None) -> None:
        """Feed the next stream point.  Arrivals must be consecutive from 1."""
        if t is None:
            t = p.arrival
        if t != p.arrival:
            raise ValueError(f"t={t} does not match arrival {p.arrival}")
        if t != self.t + 1:
            raise ValueError(f"out-of-order arrival {t}, expected {self.t + 1}")
        if self.mode == "oblivious":
            self.maintain_oblivious_ladder(p, t)
            self.t = t
            if not self.bootstrapped:
                self.warmup.append(p)
                return
        else:
            self.t = t
        N, lam = self.params.window_len, self.params.lam
        for st in self.states.values():
            st.process_point(p, t, N, lam, self.metric)

    def maintain_oblivious_ladder(self, p: Point, t: int) -> None:
        """Refresh the distance estimates and retarget the grid before p is
        handed to the per-guess states.  Called by process_point exactly once
        per arrival; do not invoke separately when feeding through it."""
        if self.first_point is None:
            self.first_point = p
        else:
            self.D_t = max(self.D_t, self.metric(self.first_point, p))
        prev_recent = list(self.recent)
        self.recent.append(p)
        d = self._min_positive_pairwise(self.recent)
        if d is not None:
            self.d_t = d
        if not self.bootstrapped:
            if t >= self.params.k + self.params.z + 2 and self.d_t > 0:
                self._bootstrap()
            return
        self._retarget(prev_recent, t)

    def _min_positive_pairwise(self, pts) -> Optional[float]:
        best = None
        seq = list(pts)
        for i in range(len(seq)):
            for j in range(i + 1, len(seq)):
                d = self.metric(seq[i], seq[j])
                if d > 0.0 and (best is None or d < best):
                    best = d
        return best

    def _bootstrap(self) -> None:
        """First grid construction: replay the buffered prefix through empty
        states, which reproduces exactly what a from-scratch run would hold."""
        N, lam = self.params.window_len, self.params.lam
        lo = self._exp_floor(self.d_t / 2.0)
        hi = self._exp_ceil(2.0 * self.D_t)
        for e in range(lo, hi + 1):
            st = self._new_state(e)
            for q in self.warmup:
                st.process_point(q, q.arrival, N, lam, self.metric)
            self.states[e] = st
        self.bootstrapped = True
        self.warmup = []

    def _retarget(self, prev_recent: list[Point], t: int) -> None:
        lo = self._exp_floor(self.d_t / 2.0)
        hi = self._exp_ceil(2.0 * self.D_t)
        old_lo = min(self.states)
        old_hi = max(self.states)
        for e in [e for e in self.states if e < lo or e > hi]:
            del self.states[e]
        for e in range(lo, old_lo):
            self.states[e] = self._low_guess_state(e, prev_recent)
        for e in range(max(old_hi + 1, lo), hi + 1):
            self.states[e] = self._high_guess_state(e, prev_recent, t)

    def _low_guess_state(self, exponent: int, prev_recent: list[Point]) -> GuessState:
        """State for a guess below the previous grid: the recent points are
        mutually farther than twice the new guess, so replaying just them is
        exactly what a fresh run over them would store."""
        N, lam = self.params.window_len, self.params.lam
        st = self._new_state(exponent)
        for q in prev_recent:
            st.process_point(q, q.arrival, N, lam, self.metric)
        return st

    def _high_guess_state(
        self, exponent: int, prev_recent: list[Point], t: int
    ) -> GuessState:
        """State for a guess above the previous grid.

        All prior points are within twice the new guess of each other, so a
        from-scratch run would hold a single attraction point whose
        representative is the latest point, standing for the whole window.
        The anchor is the (about to expire) oldest window point while the
        window is full, or the very first stream point before that; its
        histogram is built directly by ``synthetic_full_window``.
        """
        if self.high_init == "replay":
            return self._low_guess_state(exponent, prev_recent)
        st = self._new_state(exponent)
        N, lam = self.params.window_len, self.params.lam
        rep = prev_recent[-1]
        m = min(N, t - 1)
        if t - 1 >= N:
            anchor = Point(t - N, rep.coords)
        else:
            anchor = self.first_point
        st.seed(anchor, rep, synthetic_full_window(t, m, lam))
        return st

    # -- extraction ----------------------------------------------------------

    def qualifies(self, exponent: int) -> bool:
        """A guess qualifies when its attraction set is small enough and a
        greedy separation pass over all its stored points selects at most
        k + z points at twice the guess radius."""
        st = self.states[exponent]
        cap = self.params.k + self.params.z
        if len(st.attractions) > cap:
            return False
        threshold = 2.0 * st.guess
        chosen: list[Point] = []
        for q in st.union_points():
            if all(self.metric(q, c) > threshold for c in chosen):
                chosen.append(q)
                if len(chosen) > cap:
                    return False
        return True

    def selected_exponent(self, search: str = "linear") -> int:
        if search not in ("linear", "binary"):
            raise ValueError(f"unknown search {search!r}")
        exps = self.exponents()
        if not exps:
            raise RuntimeError("ladder holds no guesses yet")
        if search == "linear":
            for e in exps:
                if self.qualifies(e):
                    return e
        else:
            # assumes qualification is monotone in the guess (see README)
            lo, hi = 0, len(exps) - 1
            if self.qualifies(exps[hi]):
                while lo < hi:
                    mid = (lo + hi) // 2
                    if self.qualifies(exps[mid]):
                        hi = mid
                    else:
                        lo = mid + 1
                return exps[lo]
        raise RuntimeError(
            "no qualifying guess: the ladder does not cover the needed radius "
            "range (check d_min/d_max in fixed mode)"
        )

    def extract_coreset(self, search: str = "linear") -> WeightedCoreset:
        """Weighted coreset for the current window: representatives and
        orphans of the smallest qualifying guess."""
        if self.mode == "oblivious" and not self.bootstrapped:
            return self.warmup_coreset()
        return self.coreset_at(self.selected_exponent(search))

    def warmup_coreset(self) -> WeightedCoreset:
        """Before the grid exists every point is kept verbatim: the active
        buffer itself is an exact (radius zero) coreset."""
        stale = self.t - self.params.window_len
        pts = tuple((q, 1) for q in self.warmup if q.arrival > stale)
        if not pts:
            raise RuntimeError("no points processed yet")
        return WeightedCoreset(points=pts, guess=0.0, t=self.t)

    def coreset_at(self, exponent: int) -> WeightedCoreset:
        st = self.states[exponent]
        return WeightedCoreset(
            points=tuple(st.coreset_points()), guess=st.guess, t=self.t
        )

    # -- accounting ----------------------------------------------------------

    def stored_points(self) -> int:
        n = sum(st.stored_points() for st in self.states.values())
        if self.mode == "oblivious":
            n += (0 if self.first_point is None else 1) + len(self.recent)
            if not self.bootstrapped:
                n += len(self.warmup)
        return n

    def histogram_entries(self) -> int:
        return sum(st.histogram_entries() for st in self.states.values())

    def memory_floats(self, dim: int) -> int:
        """Structure-size memory gauge: stored points times dimension, plus
        two floats per histogram entry, plus one scalar per guess and two
        mode scalars (d_min/d_max or the running distance estimates)."""
        scalars = len(self.states) + 2
        return self.stored_points() * dim + 2 * self.histogram_entries() + scalars

    def check_invariants(self) -> None:
        N, lam = self.params.window_len, self.params.lam
        for st in self.states.values():
            st.check_invariants(self.t, N, lam, self.metric)

    # -- snapshots -------------------------------------------------------------

    def to_snapshot(self) -> dict:
        """Self-describing, JSON-serializable state dump; exact round-trip."""
        snap = {
            "format": SNAPSHOT_FORMAT,
            "version": SNAPSHOT_VERSION,
            "mode": self.mode,
            "params": {
                "window_len": self.params.window_len,
                "k": self.params.k,
                "z": self.params.z,
                "lam": self.params.lam,
                "beta": self.params.beta,
            },
            "config": {
                "attr_factor": self.attr_factor,
                "max_attractions": self.max_attractions,
                "prune_orphans": self.prune_orphans,
                "orphan_cap": self.orphan_cap,
                "high_init": self.high_init,
            },
            "t": self.t,
            "d_min": self.d_min,
            "d_max": self.d_max,
            "states": [
                {"exponent": e, **self.states[e].to_jsonable()}
                for e in self.exponents()
            ],
        }
        if self.mode == "oblivious":
            snap["oblivious"] = {
                "first_point": None
                if self.first_point is None
                else _point_out(self.first_point),
                "recent": [_point_out(q) for q in self.recent],
                "d_t": self.d_t,
                "D_t": self.D_t,
                "bootstrapped": self.bootstrapped,
                "warmup": [_point_out(q) for q in self.warmup],
            }
        return snap

    @classmethod
    def from_snapshot(cls, snap: dict, metric: Metric = dist) -> "GuessLadder":
        if snap.get("format") != SNAPSHOT_FORMAT:
            raise ValueError("not a ladder snapshot")
        if snap.get("version") != SNAPSHOT_VERSION:
            raise ValueError(f"unsupported snapshot version {snap.get('version')!r}")
        params = StreamParams(**snap["params"])
        cfg = snap["config"]
        ladder = cls(
            params,
            mode=snap["mode"],
            d_min=snap["d_min"],
            d_max=snap["d_max"],
            metric=metric,
            attr_factor=cfg["attr_factor"],
            max_attractions=cfg["max_attractions"],
            prune_orphans=cfg["prune_orphans"],
            orphan_cap=cfg["orphan_cap"],
            high_init=cfg["high_init"],
        )
        ladder.t = snap["t"]
        ladder.states = {}
        for entry in snap["states"]:
            st = ladder._new_state(entry["exponent"])
            st.restore(entry)
            ladder.states[entry["exponent"]] = st
        if ladder.mode == "oblivious":
            ob = snap["oblivious"]
            ladder.first_point = (
                None if ob["first_point"] is None else _point_in(ob["first_point"])
            )
            ladder.recent = deque(
                (_point_in(q) for q in ob["recent"]),
                maxlen=params.k + params.z + 1,
            )
            ladder.d_t = ob["d_t"]
            ladder.D_t = ob["D_t"]
            ladder.bootstrapped = ob["bootstrapped"]
            ladder.warmup = [_point_in(q) for q in ob["warmup"]]
        return ladder
