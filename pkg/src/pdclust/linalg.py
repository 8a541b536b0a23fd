"""Column-data matrices, implicit mean-centering, and the leading singular
triplet of the centered matrix.

Observations are columns. Centering is never materialized: a
:class:`CenteredView` applies the rank-one mean correction inside its
matrix-vector products, so sparse inputs stay sparse throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import NotConvergedError, ZeroMatrixError

DEFAULT_TOL = 1e-8
DEFAULT_MAX_ITER = 1000


class ColumnMatrix:
    """An m x n matrix of n observations stored as columns.

    Wraps either a dense float64 array (column-major) or a scipy CSC matrix
    holding explicit nonzeros only. Both storages expose the same interface
    and produce bitwise-identical column means.
    """

    def __init__(self, values):
        if sp.issparse(values):
            mat = values.tocsc().astype(np.float64)
            mat.sum_duplicates()
            mat.sort_indices()
            mat.eliminate_zeros()
            payload = mat.data
        else:
            mat = np.asfortranarray(np.asarray(values, dtype=np.float64))
            if mat.ndim != 2:
                raise ValueError(f"expected a 2-d array, got ndim={mat.ndim}")
            payload = mat
        if mat.shape[0] < 1 or mat.shape[1] < 1:
            raise ValueError(f"matrix must be at least 1x1, got {mat.shape}")
        if payload.size and not np.all(np.isfinite(payload)):
            raise ValueError("matrix values must be finite (no NaN/Inf)")
        self._mat = mat

    @property
    def rows(self) -> int:
        return self._mat.shape[0]

    @property
    def cols(self) -> int:
        return self._mat.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._mat.shape

    @property
    def is_sparse(self) -> bool:
        return sp.issparse(self._mat)

    @property
    def storage(self):
        """Underlying ndarray (dense) or csc_matrix (sparse)."""
        return self._mat

    def column(self, j: int) -> np.ndarray:
        """Column j as a dense 1-d array."""
        if self.is_sparse:
            return self._mat[:, [j]].toarray().ravel()
        return self._mat[:, j].copy()

    def take_columns(self, indices) -> "ColumnMatrix":
        """Submatrix formed by the given columns, same storage kind."""
        idx = np.asarray(indices, dtype=np.intp)
        return ColumnMatrix(self._mat[:, idx])

    def matvec(self, x: np.ndarray) -> np.ndarray:
        return self._mat @ x

    def rmatvec(self, y: np.ndarray) -> np.ndarray:
        return self._mat.T @ y

    def frobenius2(self) -> float:
        """Squared Frobenius norm."""
        if self.is_sparse:
            return float(self._mat.data @ self._mat.data)
        return float(np.vdot(self._mat, self._mat))


def column_mean(A: ColumnMatrix) -> np.ndarray:
    """Per-row arithmetic mean across columns.

    Accumulates columns strictly left to right so dense and sparse storage
    of the same matrix give bitwise-identical results and reruns are
    reproducible.
    """
    acc = np.zeros(A.rows)
    if A.is_sparse:
        mat = A.storage
        indptr, indices, data = mat.indptr, mat.indices, mat.data
        for j in range(A.cols):
            lo, hi = indptr[j], indptr[j + 1]
            acc[indices[lo:hi]] += data[lo:hi]
    else:
        mat = A.storage
        for j in range(A.cols):
            acc += mat[:, j]
    return acc / A.cols


def scatter(A: ColumnMatrix, mean: np.ndarray) -> float:
    """Total squared deviation of the columns from ``mean``.

    Returns sum_j ||a_j - mean||^2, i.e. the squared Frobenius norm of the
    centered matrix. Dividing by the column count gives the variance.
    """
    mean = np.asarray(mean, dtype=np.float64)
    if mean.shape != (A.rows,):
        raise ValueError(f"mean has length {mean.shape}, expected ({A.rows},)")
    total = 0.0
    if A.is_sparse:
        mat = A.storage
        indptr, indices, data = mat.indptr, mat.indices, mat.data
        mu2 = float(mean @ mean)
        for j in range(A.cols):
            lo, hi = indptr[j], indptr[j + 1]
            vals = data[lo:hi]
            # ||a_j - mu||^2 expanded over the explicit nonzeros only
            total += mu2 + float(vals @ vals) - 2.0 * float(mean[indices[lo:hi]] @ vals)
    else:
        mat = A.storage
        for j in range(A.cols):
            d = mat[:, j] - mean
            total += float(d @ d)
    return max(total, 0.0)


class CenteredView:
    """Implicit centered matrix C = A - mean * ones^T.

    Only matrix-vector products are exposed; the dense C is never formed, so
    a sparse base stays sparse. Logical column j equals base column j minus
    the mean vector.
    """

    def __init__(self, base: ColumnMatrix, mean: np.ndarray | None = None):
        self.base = base
        self.mean = column_mean(base) if mean is None else np.asarray(mean, dtype=np.float64)
        if self.mean.shape != (base.rows,):
            raise ValueError(f"mean has shape {self.mean.shape}, expected ({base.rows},)")
        self._fro2: float | None = None

    @property
    def shape(self) -> tuple[int, int]:
        return self.base.shape

    def matvec(self, x: np.ndarray) -> np.ndarray:
        """C @ x computed as A @ x - mean * sum(x)."""
        return self.base.matvec(x) - self.mean * float(np.sum(x))

    def rmatvec(self, y: np.ndarray) -> np.ndarray:
        """C.T @ y computed as A.T @ y - (mean . y)."""
        return self.base.rmatvec(y) - float(self.mean @ y)

    def frobenius2(self) -> float:
        """Squared Frobenius norm of C (the scatter of the base columns)."""
        if self._fro2 is None:
            self._fro2 = scatter(self.base, self.mean)
        return self._fro2


@dataclass(frozen=True)
class SingularTriplet:
    """Dominant singular triplet (sigma, u, v) with convergence metadata.

    u and v are unit vectors; the entry of v with largest magnitude is
    nonnegative, which pins down the otherwise arbitrary sign of the pair.
    """

    sigma: float
    u: np.ndarray
    v: np.ndarray
    iterations: int
    converged: bool


def _ramp_start(n: int) -> np.ndarray:
    v = np.arange(1.0, n + 1.0)
    return v / float(np.linalg.norm(v))


def _fix_sign(u: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # flip u and v together so C ~ sigma * u v^T is unchanged
    pivot = int(np.argmax(np.abs(v)))
    if v[pivot] < 0.0:
        return -u, -v
    return u, v


def leading_triplet(C: CenteredView, tol: float = DEFAULT_TOL,
                    max_iter: int = DEFAULT_MAX_ITER) -> SingularTriplet:
    """Dominant singular triplet of a centered view by alternating power
    iteration.

    Starts from the normalized all-ones vector; because an exactly centered
    matrix annihilates the ones vector (C @ ones = 0), that start is detected
    as stagnant and replaced by the normalized ramp [1, 2, ..., n]. The
    iteration alternates u <- C v / ||.|| and v <- C^T u / ||.|| and stops
    once the sigma estimate is stable to ``tol`` AND the triplet residuals
    pass ||C v - sigma u|| <= tol*sigma and ||C^T u - sigma v|| <= tol*sigma.

    Returns the best iterate with ``converged=False`` if ``max_iter`` is
    exhausted; raises :class:`ZeroMatrixError` when every column equals the
    mean.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    m, n = C.shape
    fro2 = C.frobenius2()
    eps = float(np.finfo(np.float64).eps)
    if fro2 <= C.base.frobenius2() * (16.0 * n * eps) ** 2:
        raise ZeroMatrixError("all columns equal the mean; no trend direction exists")

    v = np.full(n, 1.0 / math.sqrt(n))
    w = C.matvec(v)
    if float(w @ w) <= fro2 * 1e-24:
        v = _ramp_start(n)

    sigma_prev = math.inf
    sigma = 0.0
    u_best = np.zeros(m)
    v_best = v
    iterations = 0
    converged = False
    for it in range(1, max_iter + 1):
        w = C.matvec(v)
        wn = float(np.linalg.norm(w))
        if wn == 0.0:
            # v fell into the null space; restart deterministically
            v = _ramp_start(n)
            sigma_prev = math.inf
            iterations = it
            continue
        u = w / wn
        z = C.rmatvec(u)
        # candidate triplet (wn, u, v): C v = wn * u holds exactly, so only
        # the second residual needs measuring
        sigma, u_best, v_best, iterations = wn, u, v, it
        if (abs(wn - sigma_prev) <= tol * wn
                and float(np.linalg.norm(z - wn * v)) <= tol * wn):
            converged = True
            break
        sigma_prev = wn
        zn = float(np.linalg.norm(z))
        if zn == 0.0:
            v = _ramp_start(n)
            sigma_prev = math.inf
            continue
        v = z / zn

    u_best, v_best = _fix_sign(u_best, v_best)
    return SingularTriplet(sigma=sigma, u=u_best, v=v_best,
                           iterations=iterations, converged=converged)


def projections(t: SingularTriplet) -> np.ndarray:
    """Signed projections of the centered columns onto the trend direction.

    Equals sigma * v entrywise, which matches u^T C column by column.
    """
    if not t.converged:
        raise NotConvergedError("projections require a converged triplet")
    return t.sigma * t.v
