"""Divisive clustering driver: repeatedly split the leaf of maximal scatter
until the requested number of clusters is reached."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import (
    DegenerateVectorError,
    InvalidKError,
    NothingSplittableError,
    NotConvergedError,
    ZeroMatrixError,
)
from .linalg import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    CenteredView,
    ColumnMatrix,
    column_mean,
    leading_triplet,
    projections,
    scatter,
)
from .partition import GapDiagnostics, gap_partition, principal_partition

DEFAULT_TAU = 0.2

SELECTION_MODES = ("scatter", "variance")


class SplitRule(Enum):
    PDDP = "pddp"   # sign split of the projections at zero
    PDGP = "pdgp"   # split at the largest in-window gap


@dataclass(frozen=True)
class SplitStrategy:
    """Which rule to split with. ``tau`` is the fringe tolerance; it is used
    by the gap rule only and ignored by the sign rule."""

    rule: SplitRule
    tau: float = DEFAULT_TAU

    def __post_init__(self):
        if isinstance(self.rule, str):
            object.__setattr__(self, "rule", SplitRule(self.rule))
        if not 0.0 <= self.tau < 1.0:
            raise ValueError(f"tau must be in [0, 1), got {self.tau}")


@dataclass(eq=False)
class ClusterNode:
    """A node of the cluster tree.

    ``members`` are ascending indices into the original matrix columns.
    After a split, the projection vector (aligned with ``members``) and the
    gap diagnostics are archived here for dot-plot export.
    """

    members: np.ndarray
    scatter: float
    node_id: int
    children: tuple["ClusterNode", "ClusterNode"] | None = None
    projections: np.ndarray | None = None
    diagnostics: GapDiagnostics | None = None
    unsplittable: bool = False

    @property
    def is_leaf(self) -> bool:
        return self.children is None

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(eq=False)
class ClusterTree:
    """Binary split tree; ``leaves`` (in creation order) are the current
    clusters."""

    root: ClusterNode
    leaves: list[ClusterNode]
    strategy: SplitStrategy
    selection: str
    svd_tol: float
    svd_max_iter: int
    n: int
    k_requested: int
    exhausted: bool = False   # stopped early: nothing left to split

    @property
    def assignment(self) -> np.ndarray:
        """Leaf label per observation; labels follow leaf creation order."""
        out = np.empty(self.n, dtype=np.int64)
        for label, leaf in enumerate(self.leaves):
            out[leaf.members] = label
        return out

    def internal_nodes(self) -> list[ClusterNode]:
        """All split nodes, root first (preorder)."""
        out = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.children is not None:
                out.append(node)
                stack.extend(reversed(node.children))
        return out


def _leaf_score(leaf: ClusterNode, selection: str) -> float:
    if selection == "variance":
        return leaf.scatter / leaf.size
    return leaf.scatter


def select_splittable(tree: ClusterTree) -> ClusterNode:
    """The leaf with maximal scatter (or variance, per the tree's selection
    mode) among those that can actually be split: at least two members,
    positive scatter, not marked unsplittable. Ties go to the earliest
    created leaf."""
    best = None
    best_score = -np.inf
    for leaf in tree.leaves:    # creation order, so strict '>' keeps the earliest on ties
        if leaf.size < 2 or leaf.scatter <= 0.0 or leaf.unsplittable:
            continue
        score = _leaf_score(leaf, tree.selection)
        if score > best_score:
            best = leaf
            best_score = score
    if best is None:
        raise NothingSplittableError("every leaf is a singleton, has zero scatter, "
                                     "or is marked unsplittable")
    return best


def split_leaf(A: ColumnMatrix, node: ClusterNode, strategy: SplitStrategy,
               *, svd_tol: float = DEFAULT_TOL, svd_max_iter: int = DEFAULT_MAX_ITER,
               child_ids: tuple[int, int] | None = None) -> tuple[ClusterNode, ClusterNode]:
    """Split one leaf along its principal trend direction.

    Forms the submatrix of the node's member columns, computes the leading
    singular triplet of its centered view, projects, and applies the split
    rule. The two children get freshly recomputed scatters; the parent keeps
    the projection vector and any gap diagnostics.

    ``child_ids`` should be globally unique node ids; the driver supplies
    them from its counter.
    """
    if node.size < 2:
        raise ValueError("cannot split a leaf with fewer than 2 members")
    sub = A.take_columns(node.members)
    mean = column_mean(sub)
    view = CenteredView(sub, mean)
    try:
        triplet = leading_triplet(view, tol=svd_tol, max_iter=svd_max_iter)
    except ZeroMatrixError as exc:
        raise DegenerateVectorError(str(exc)) from exc
    if not triplet.converged:
        raise NotConvergedError(
            f"singular triplet did not converge within {svd_max_iter} iterations "
            f"(node {node.node_id}, size {node.size})")
    alpha = projections(triplet)

    if strategy.rule is SplitRule.PDDP:
        part = principal_partition(alpha)
        diag = None
    else:
        part, diag = gap_partition(alpha, strategy.tau)

    if child_ids is None:
        child_ids = (node.node_id + 1, node.node_id + 2)
    children = []
    for cid, positions in zip(child_ids, (part.left, part.right)):
        members = node.members[np.asarray(positions, dtype=np.intp)]
        sub_c = A.take_columns(members)
        children.append(ClusterNode(
            members=members,
            scatter=scatter(sub_c, column_mean(sub_c)),
            node_id=cid,
        ))
    node.children = (children[0], children[1])
    node.projections = alpha
    node.diagnostics = diag
    return node.children


def cluster(A: ColumnMatrix, k: int, strategy: SplitStrategy | str,
            *, selection: str = "scatter", svd_tol: float = DEFAULT_TOL,
            svd_max_iter: int = DEFAULT_MAX_ITER) -> ClusterTree:
    """Divisively cluster the columns of ``A`` into ``k`` groups.

    Performs k-1 splits, each time splitting the selected leaf with the
    given strategy. A leaf whose projections are degenerate is marked
    unsplittable and skipped. If nothing remains splittable before k leaves
    exist, the tree is returned with fewer leaves and ``exhausted=True``.
    """
    if isinstance(strategy, str):
        strategy = SplitStrategy(strategy)
    if selection not in SELECTION_MODES:
        raise ValueError(f"selection must be one of {SELECTION_MODES}, got {selection!r}")
    n = A.cols
    if not 1 <= k <= n:
        raise InvalidKError(f"k must be in 1..{n}, got {k}")

    members = np.arange(n, dtype=np.int64)
    root = ClusterNode(members=members, scatter=scatter(A, column_mean(A)), node_id=0)
    tree = ClusterTree(root=root, leaves=[root], strategy=strategy,
                       selection=selection, svd_tol=svd_tol,
                       svd_max_iter=svd_max_iter, n=n, k_requested=k)
    next_id = 1
    while len(tree.leaves) < k:
        try:
            node = select_splittable(tree)
        except NothingSplittableError:
            tree.exhausted = True
            break
        try:
            left, right = split_leaf(A, node, strategy, svd_tol=svd_tol,
                                     svd_max_iter=svd_max_iter,
                                     child_ids=(next_id, next_id + 1))
        except DegenerateVectorError:
            node.unsplittable = True
            continue
        next_id += 2
        tree.leaves.remove(node)
        tree.leaves.append(left)
        tree.leaves.append(right)
    return tree
