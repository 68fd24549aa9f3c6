"""Trimmed (timestamp, count) lists that track how many window points a stored
proxy stands for.

A histogram is a plain list of ``(timestamp, count)`` pairs with strictly
increasing timestamps and strictly decreasing counts.  The count of an entry
is the number of assignments that happened at or after its timestamp.  The
trimming rule keeps the list logarithmic in the window length while
guaranteeing that the first entry's count is within a factor ``(1 + lam)``
of the exact assignment count still inside the window.

Invariants maintained by the operations below (for window length N):
  1. every count <= N
  2. adjacent entries: c[i] <= (1 + lam) * c[i+1]  or  c[i] == c[i+1] + 1
  3. entries two apart: c[i] > (1 + lam) * c[i+2]
  4. length <= 2 * ceil(log_{1+lam} N) + 2   (for lam > 0)
  5. the last entry has count 1

With ``lam == 0`` the deletion rule never fires and the histogram stays exact.
"""

from __future__ import annotations

import math

Histogram = list[tuple[int, int]]


def new_histogram(t: int) -> Histogram:
    """Histogram for a proxy that currently stands only for itself."""
    return [(t, 1)]


def bump_and_trim(hist: Histogram, t: int, lam: float) -> Histogram:
    """Record one new assignment at time t and re-trim.

    All existing counts go up by one, a fresh ``(t, 1)`` entry is appended,
    then interior entries are dropped wherever the last kept count is not more
    than ``(1 + lam)`` times the count after the candidate.  First and last
    entries are always kept.
    """
    if hist and t <= hist[-1][0]:
        raise ValueError(f"timestamp {t} not greater than last entry {hist[-1][0]}")
    bumped = [(ts, c + 1) for ts, c in hist]
    bumped.append((t, 1))
    n = len(bumped)
    if n <= 2:
        return bumped
    trimmed = [bumped[0]]
    last = 0
    factor = 1.0 + lam
    for i in range(1, n - 1):
        if bumped[last][1] > factor * bumped[i + 1][1]:
            trimmed.append(bumped[i])
            last = i
    trimmed.append(bumped[n - 1])
    return trimmed


def expire_entry(hist: Histogram, t: int, window_len: int) -> Histogram:
    """Drop the entry stamped exactly ``t - window_len`` (it refers to the
    point expiring now).  An empty result means the proxy itself is stale and
    the owner should discard it.
    """
    stale = t - window_len
    return [(ts, c) for ts, c in hist if ts != stale]


def weight_estimate(hist: Histogram) -> int:
    """Count of the oldest surviving entry: the (1+lam)-accurate number of
    active points this proxy stands for.  Caller must have expired stale
    entries first.
    """
    if not hist:
        raise ValueError("weight of an empty histogram is undefined")
    return hist[0][1]


def synthetic_full_window(t: int, size: int, lam: float) -> Histogram:
    """The trimmed histogram of a proxy standing for all ``size`` most recent
    points at time t, built directly instead of by replay.

    Counts follow ``c_0 = size`` and ``c_{i+1} = min(c_i - 1, ceil(c_i / (1 + lam)))``
    down to 1, each placed at timestamp ``t - c_i``; the result satisfies all
    histogram invariants.
    """
    if size < 1:
        raise ValueError("size must be >= 1")
    entries = []
    c = size
    while True:
        entries.append((t - c, c))
        if c == 1:
            break
        c = min(c - 1, math.ceil(c / (1.0 + lam)))
    return entries


def max_entries(window_len: int, lam: float) -> int:
    """Hard bound on histogram length implied by invariants 1, 3 and 5."""
    if lam <= 0:
        return window_len
    return 2 * math.ceil(math.log(window_len, 1.0 + lam)) + 2


def check_invariants(hist: Histogram, window_len: int, lam: float) -> None:
    """Raise AssertionError if any histogram invariant is violated."""
    assert hist, "histogram is empty"
    factor = 1.0 + lam
    for i, (ts, c) in enumerate(hist):
        assert 1 <= c <= window_len, f"count {c} outside [1, {window_len}]"
        if i:
            assert ts > hist[i - 1][0], "timestamps not strictly increasing"
            assert c < hist[i - 1][1], "counts not strictly decreasing"
    for i in range(len(hist) - 1):
        ci, cj = hist[i][1], hist[i + 1][1]
        assert ci <= factor * cj or ci == cj + 1, f"adjacent gap at {i}: {ci} vs {cj}"
    for i in range(len(hist) - 2):
        assert hist[i][1] > factor * hist[i + 2][1], f"two-apart overlap at {i}"
    assert hist[-1][1] == 1, "last entry count must be 1"
    assert len(hist) <= max_entries(window_len, lam), "histogram too long"
