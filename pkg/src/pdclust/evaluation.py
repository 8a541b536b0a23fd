"""External cluster validation: contingency tables against ground-truth
labels and normalized entropy in [0, 1]."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatchError


@dataclass(eq=False)
class ContingencyTable:
    """Cluster-by-class count matrix.

    Row j counts the members of cluster j per true class. ``cluster_ids``
    and ``class_ids`` record the original identifiers in first-occurrence
    order.
    """

    counts: np.ndarray
    cluster_ids: tuple
    class_ids: tuple

    @property
    def cluster_sizes(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def class_count(self) -> int:
        return self.counts.shape[1]

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def contingency(assignment, labels) -> ContingencyTable:
    """Cross-tabulate cluster assignments against true class labels.

    Ids may be any hashable values; rows and columns appear in first
    occurrence order.
    """
    assignment = list(assignment)
    labels = list(labels)
    if len(assignment) != len(labels):
        raise LengthMismatchError(
            f"{len(assignment)} assignments vs {len(labels)} labels")
    if not assignment:
        raise ValueError("need at least one observation")

    cluster_index: dict = {}
    class_index: dict = {}
    pairs = []
    for a, c in zip(assignment, labels):
        j = cluster_index.setdefault(a, len(cluster_index))
        i = class_index.setdefault(c, len(class_index))
        pairs.append((j, i))
    counts = np.zeros((len(cluster_index), len(class_index)), dtype=np.int64)
    for j, i in pairs:
        counts[j, i] += 1
    return ContingencyTable(counts=counts,
                            cluster_ids=tuple(cluster_index),
                            class_ids=tuple(class_index))


def raw_entropy(table: ContingencyTable) -> float:
    """Cluster-size-weighted class entropy in bits (unnormalized).

    sum_j (n_j / n) * e_j with e_j = -sum_i p_ij log2 p_ij, using the
    convention 0 * log 0 = 0 so pure clusters contribute nothing.
    """
    n = table.total
    if n < 1:
        raise ValueError("empty table")
    total = 0.0
    for row in table.counts:
        nj = int(row.sum())
        if nj == 0:
            continue
        e = 0.0
        for count in row:
            if count > 0:
                p = count / nj
                e -= p * math.log2(p)
        total += (nj / n) * e
    return total


def normalized_entropy(table: ContingencyTable) -> float:
    """Raw entropy divided by log2(class count), so values land in [0, 1]:
    0 for pure clusters, 1 for a single cluster with uniform classes.

    With a single true class the normalizer is undefined; the raw value is
    necessarily 0 and is returned as-is.
    """
    c = table.class_count
    if c == 1:
        return 0.0
    return raw_entropy(table) / math.log2(c)
