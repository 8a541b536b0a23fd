"""The two split rules applied to a projection vector: sign-based principal
partition and largest-gap partition with a fringe window."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateVectorError, WindowEmptyError


@dataclass(frozen=True)
class Partition:
    """A two-way split of indices 0..n-1 into nonempty, disjoint sides.

    Each side is an ascending tuple of ints (canonical form, so partitions
    compare by value).
    """

    left: tuple[int, ...]
    right: tuple[int, ...]

    def unordered_sides(self) -> frozenset:
        """The two sides without left/right orientation, for comparisons
        that should treat a partition and its mirror as equal."""
        return frozenset((self.left, self.right))


@dataclass(eq=False)
class GapDiagnostics:
    """Where the gap split landed, for dot-plot export and debugging.

    ``gap_index`` is the size of the left side: the chosen gap lies between
    ``sorted_values[gap_index - 1]`` and ``sorted_values[gap_index]``.
    ``permutation[r]`` is the original index of the r-th smallest value.
    The admissible window is ``fringe_lo <= gap_index < fringe_hi``.
    """

    sorted_values: np.ndarray
    permutation: np.ndarray
    gap_index: int
    gap_width: float
    fringe_lo: int
    fringe_hi: int


def principal_partition(v) -> Partition:
    """Split indices by the sign of their entry in ``v``.

    Zero entries join the nonnegative (left) side. If every entry has the
    same sign the zero threshold separates nothing, so the split falls back
    to the best gap (tau=0) to keep a divisive loop progressing.
    """
    v = np.asarray(v, dtype=np.float64)
    n = v.size
    if n < 2:
        raise ValueError("need at least 2 entries to partition")
    if np.all(v == v[0]):
        raise DegenerateVectorError("all projection entries are equal; no split possible")
    neg = v < 0.0
    if not neg.any() or neg.all():
        part, _ = gap_partition(v, 0.0)
        return part
    left = tuple(int(i) for i in np.flatnonzero(~neg))
    right = tuple(int(i) for i in np.flatnonzero(neg))
    return Partition(left, right)


def gap_partition(v, tau: float) -> tuple[Partition, GapDiagnostics]:
    """Split at the widest gap between consecutive sorted entries of ``v``,
    ignoring a fringe of the smallest and largest values as candidate split
    locations.

    With ``f = max(1, ceil(tau*n/2))`` points excluded per end, admissible
    left-side sizes are ``f..n-f``; each resulting side therefore keeps at
    least ``f`` members. Ties on gap width go to the most balanced split
    (smallest ``|k - n/2|``), then to the smallest ``k``. The sort is stable,
    so equal values keep their input order in the permutation.
    """
    v = np.asarray(v, dtype=np.float64)
    n = v.size
    if n < 2:
        raise ValueError("need at least 2 entries to partition")
    if not 0.0 <= tau < 1.0:
        raise ValueError(f"tau must be in [0, 1), got {tau}")

    order = np.argsort(v, kind="stable")
    s = v[order]
    f = max(1, math.ceil(tau * n / 2.0))
    if f > n - f:
        raise WindowEmptyError(
            f"tau={tau} excludes every split position for n={n} (fringe {f} per end)")

    half = n / 2.0
    best_k = -1
    best_key = None
    for k in range(f, n - f + 1):
        width = float(s[k] - s[k - 1])
        key = (-width, abs(k - half), k)
        if best_key is None or key < best_key:
            best_key = key
            best_k = k
    best_width = -best_key[0]

    if best_width == 0.0 and s[0] == s[-1]:
        raise DegenerateVectorError("all projection entries are equal; no gaps exist")

    left = tuple(sorted(int(i) for i in order[:best_k]))
    right = tuple(sorted(int(i) for i in order[best_k:]))
    diag = GapDiagnostics(
        sorted_values=s.copy(),
        permutation=order.copy(),
        gap_index=best_k,
        gap_width=best_width,
        fringe_lo=f,
        fringe_hi=n - f + 1,
    )
    return Partition(left, right), diag
