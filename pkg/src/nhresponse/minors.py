"""Determinantal minors and their partial traces.

Indices are 0-based throughout. A minor of order ``k`` deletes ``k`` rows and
``k`` columns. The partial trace ``N^(k)`` is computed three ways: from the
definition (combinatorial, small ``n`` only), from the top-down recursion
seeded by ``N^(n) = 1``, and from the closed polynomial form.
"""
from __future__ import annotations

from itertools import combinations

import numpy as np

from .errors import BadIndexSet, BadOrder
from .modal import flv_expand
from .numcore import Polynomial, as_matrix, lu_det

DIRECT_MAX_N = 8


def sign_matrix(n: int) -> np.ndarray:
    """Diagonal matrix with entry (-1)**i at 1-based position i."""
    return np.diag([(-1.0) ** (i + 1) for i in range(n)]).astype(np.complex128)


def parity(seq) -> int:
    """Sign of the permutation sorting ``seq``; 0 if any index repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inversions % 2 else 1


def _check_index_set(idx, n: int) -> tuple:
    idx = tuple(int(i) for i in idx)
    if any(i < 0 or i >= n for i in idx):
        raise BadIndexSet(f"index out of range in {idx}")
    if any(idx[i] >= idx[i + 1] for i in range(len(idx) - 1)):
        raise BadIndexSet(f"indices must be strictly increasing: {idx}")
    return idx


def minor(m, rows_deleted, cols_deleted) -> complex:
    """Determinant of ``m`` with the given rows and columns removed."""
    m = as_matrix(m)
    n = m.shape[0]
    rows = _check_index_set(rows_deleted, n)
    cols = _check_index_set(cols_deleted, n)
    if len(rows) != len(cols) or len(rows) >= n:
        raise BadIndexSet("row and column sets must have equal length k < n")
    keep_r = [i for i in range(n) if i not in rows]
    keep_c = [j for j in range(n) if j not in cols]
    return lu_det(m[np.ix_(keep_r, keep_c)])


def minor_table(m, k: int) -> dict:
    """All order-``k`` minors keyed by ``(rows_deleted, cols_deleted)``."""
    m = as_matrix(m)
    n = m.shape[0]
    sets = list(combinations(range(n), k))
    return {(r, c): minor(m, r, c) for r in sets for c in sets}


def _check_order(k: int, n: int) -> None:
    if not 1 <= k <= n:
        raise BadOrder(f"order k={k} outside 1..{n}")


def partial_trace_direct(m, k: int) -> np.ndarray:
    """N^(k) from its definition; exponential cost, intended as an oracle."""
    m = as_matrix(m)
    n = m.shape[0]
    _check_order(k, n)
    if n > DIRECT_MAX_N:
        raise ValueError(f"direct partial traces are limited to n <= {DIRECT_MAX_N}")
    if k == n:
        return np.eye(n, dtype=np.complex128)
    out = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            others = [p for p in range(n) if p != i and p != j]
            total = 0j
            for rest in combinations(others, k - 1):
                sgn = parity((i,) + rest) * parity((j,) + rest)
                total += sgn * minor(m, sorted((i,) + rest), sorted((j,) + rest))
            out[i, j] = total
    return out


def partial_trace_recursive(m, k: int) -> np.ndarray:
    m = as_matrix(m)
    n = m.shape[0]
    _check_order(k, n)
    sig = sign_matrix(n)
    conj_t = sig @ m.T @ sig
    out = np.eye(n, dtype=np.complex128)
    for order in range(n - 1, k - 1, -1):
        prod = out @ conj_t
        out = np.trace(prod) / (n - order) * np.eye(n) - prod
    return out


def partial_trace_explicit(m, k: int, coeffs: Polynomial | None = None) -> np.ndarray:
    """N^(k) = sum_l c_{k+l} (-S m^T S)**l.

    ``coeffs`` are those of ``det(x*1 + m)``, i.e. the characteristic
    polynomial of ``-m``; computed when omitted.
    """
    m = as_matrix(m)
    n = m.shape[0]
    _check_order(k, n)
    if coeffs is None:
        coeffs = flv_expand(-m, 0.0).coeffs
    c = coeffs.coeffs
    sig = sign_matrix(n)
    step = -(sig @ m.T @ sig)
    power = np.eye(n, dtype=np.complex128)
    out = c[k] * power
    for l in range(1, n - k + 1):
        power = power @ step
        out = out + c[k + l] * power
    return out


_METHODS = {
    "recursive": partial_trace_recursive,
    "direct": partial_trace_direct,
    "explicit": partial_trace_explicit,
}


def mode_from_partial_trace(a, k: int, method: str = "recursive") -> np.ndarray:
    """B_k(A) = S [N^(k+1)(-A)]^T S."""
    a = as_matrix(a)
    n = a.shape[0]
    if not 0 <= k <= n - 1:
        raise BadOrder(f"mode index k={k} outside 0..{n - 1}")
    sig = sign_matrix(n)
    return sig @ _METHODS[method](-a, k + 1).T @ sig
