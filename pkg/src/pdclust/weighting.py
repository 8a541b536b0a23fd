"""Preprocessing transforms applied to a raw matrix before clustering:
term-frequency/inverse-document-frequency weighting and unit-norm column
scaling."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .errors import EmptyColumnError, EmptyRowError
from .linalg import ColumnMatrix

WEIGHTING_KINDS = ("none", "norm", "tfidf", "tfidf-sparse")


def _column_maxima(A: ColumnMatrix) -> np.ndarray:
    if A.is_sparse:
        mat = A.storage
        out = np.zeros(A.cols)
        for j in range(A.cols):
            lo, hi = mat.indptr[j], mat.indptr[j + 1]
            if hi > lo:
                out[j] = mat.data[lo:hi].max()
        return out
    return A.storage.max(axis=0)


def _document_frequency(A: ColumnMatrix) -> np.ndarray:
    """Number of columns with a positive entry, per row."""
    if A.is_sparse:
        mat = A.storage
        positive = mat.data > 0.0
        return np.bincount(mat.indices[positive], minlength=A.rows)
    return np.count_nonzero(A.storage > 0.0, axis=1)


def tfidf(A: ColumnMatrix, *, zero_absent: bool = False) -> ColumnMatrix:
    """TFIDF weighting: 0.5 * (1 + a_ij / colmax_j) * log2(n / df_i).

    The formula is applied to every entry, zeros included: an absent term
    still receives 0.5 * log2(n / df_i), so rows whose term is missing from
    some document fill in. A sparse input therefore comes back DENSE unless
    ``zero_absent=True``, which keeps zeros at zero (and sparse storage
    sparse) at the cost of deviating from the formula on absent terms.
    """
    if A.is_sparse:
        if (A.storage.data < 0.0).any():
            raise ValueError("tfidf requires nonnegative entries")
    elif (A.storage < 0.0).any():
        raise ValueError("tfidf requires nonnegative entries")

    colmax = _column_maxima(A)
    bad_cols = np.flatnonzero(colmax <= 0.0)
    if bad_cols.size:
        raise EmptyColumnError(int(bad_cols[0]))
    df = _document_frequency(A)
    bad_rows = np.flatnonzero(df == 0)
    if bad_rows.size:
        raise EmptyRowError(int(bad_rows[0]))
    idf = np.log2(A.cols / df.astype(np.float64))

    if zero_absent:
        if A.is_sparse:
            mat = A.storage.copy()
            cols = np.repeat(np.arange(A.cols), np.diff(mat.indptr))
            mat.data = 0.5 * (1.0 + mat.data / colmax[cols]) * idf[mat.indices]
            return ColumnMatrix(mat)
        dense = A.storage
        out = np.where(dense > 0.0,
                       0.5 * (1.0 + dense / colmax[np.newaxis, :]) * idf[:, np.newaxis],
                       0.0)
        return ColumnMatrix(out)

    dense = A.storage.toarray() if A.is_sparse else A.storage
    out = 0.5 * (1.0 + dense / colmax[np.newaxis, :]) * idf[:, np.newaxis]
    return ColumnMatrix(out)


def norm_scale(A: ColumnMatrix) -> ColumnMatrix:
    """Scale every column to unit Euclidean length."""
    if A.is_sparse:
        mat = A.storage.copy()
        norms = np.zeros(A.cols)
        for j in range(A.cols):
            lo, hi = mat.indptr[j], mat.indptr[j + 1]
            norms[j] = np.linalg.norm(mat.data[lo:hi])
        bad = np.flatnonzero(norms == 0.0)
        if bad.size:
            raise EmptyColumnError(int(bad[0]))
        cols = np.repeat(np.arange(A.cols), np.diff(mat.indptr))
        mat.data = mat.data / norms[cols]
        return ColumnMatrix(mat)
    norms = np.linalg.norm(A.storage, axis=0)
    bad = np.flatnonzero(norms == 0.0)
    if bad.size:
        raise EmptyColumnError(int(bad[0]))
    return ColumnMatrix(A.storage / norms[np.newaxis, :])


def prune(A: ColumnMatrix) -> tuple[ColumnMatrix, np.ndarray, np.ndarray]:
    """Drop all-zero rows and all-zero columns.

    Returns the pruned matrix plus the kept row and column indices, so
    callers can trace results back to the original layout. Use before
    ``tfidf`` when the input may contain empty rows or columns.
    """
    if A.is_sparse:
        mat = A.storage
        row_any = np.zeros(A.rows, dtype=bool)
        row_any[mat.indices] = True
        col_any = np.diff(mat.indptr) > 0
    else:
        row_any = (A.storage != 0.0).any(axis=1)
        col_any = (A.storage != 0.0).any(axis=0)
    rows = np.flatnonzero(row_any)
    cols = np.flatnonzero(col_any)
    if rows.size == 0 or cols.size == 0:
        raise ValueError("matrix is entirely zero; nothing would remain after pruning")
    if A.is_sparse:
        pruned = ColumnMatrix(A.storage[rows, :][:, cols])
    else:
        pruned = ColumnMatrix(A.storage[np.ix_(rows, cols)])
    return pruned, rows, cols


def apply_weighting(A: ColumnMatrix, kind: str) -> ColumnMatrix:
    """Dispatch on a weighting-scheme name from :data:`WEIGHTING_KINDS`."""
    if kind == "none":
        return A
    if kind == "norm":
        return norm_scale(A)
    if kind == "tfidf":
        return tfidf(A)
    if kind == "tfidf-sparse":
        return tfidf(A, zero_absent=True)
    raise ValueError(f"unknown weighting {kind!r}; expected one of {WEIGHTING_KINDS}")
