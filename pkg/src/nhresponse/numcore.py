"""Dense complex kernels: LU determinant/solve, Jacobi SVD, rank, Aberth roots.

Matrices are plain ``numpy`` complex128 arrays. Only array storage and
elementwise/BLAS-level products come from numpy; the factorizations and the
root finder are implemented here so results do not depend on LAPACK.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, SingularMatrix

EPS = np.finfo(float).eps


def as_matrix(m) -> np.ndarray:
    """Return ``m`` as a square complex128 array (copy)."""
    a = np.array(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
    return a


@dataclass(frozen=True)
class Polynomial:
    """Complex polynomial with ``coeffs[k]`` the coefficient of ``x**k``."""

    coeffs: tuple

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in coeffs))
        if not self.coeffs:
            raise ValueError("polynomial needs at least one coefficient")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.complex128)

    def __call__(self, x):
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Polynomial":
        if self.degree == 0:
            return Polynomial([0])
        return Polynomial([k * c for k, c in enumerate(self.coeffs)][1:])


def _lu(m: np.ndarray):
    """Partially pivoted LU in place. Returns (lu, perm, sign, min_pivot)."""
    a = m.copy()
    n = a.shape[0]
    perm = np.arange(n)
    sign = 1.0
    min_pivot = np.inf
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if p != k:
            a[[k, p]] = a[[p, k]]
            perm[[k, p]] = perm[[p, k]]
            sign = -sign
        piv = a[k, k]
        min_pivot = min(min_pivot, abs(piv))
        if piv == 0:
            continue
        if k + 1 < n:
            a[k + 1:, k] /= piv
            a[k + 1:, k + 1:] -= np.outer(a[k + 1:, k], a[k, k + 1:])
    return a, perm, sign, min_pivot


def lu_det(m) -> complex:
    a = as_matrix(m)
    lu, _, sign, _ = _lu(a)
    return complex(sign * np.prod(np.diag(lu)))


def lu_solve(m, rhs, tol: float | None = None) -> np.ndarray:
    """Solve ``m @ X = rhs`` by partially pivoted elimination.

    Raises SingularMatrix when a pivot falls below ``tol`` (default
    ``n * eps * max|m_ij|``).
    """
    a = as_matrix(m)
    b = np.array(rhs, dtype=np.complex128)
    vec = b.ndim == 1
    if vec:
        b = b[:, None]
    n = a.shape[0]
    if b.shape[0] != n:
        raise ValueError("right-hand side has the wrong number of rows")
    if tol is None:
        tol = n * EPS * float(np.max(np.abs(a)))
    lu, perm, _, min_pivot = _lu(a)
    if not min_pivot > tol:
        raise SingularMatrix(f"pivot {min_pivot:.3e} below tolerance {tol:.3e}")
    x = b[perm].copy()
    for k in range(n):
        x[k + 1:] -= np.outer(lu[k + 1:, k], x[k])
    for k in range(n - 1, -1, -1):
        x[k] /= lu[k, k]
        x[:k] -= np.outer(lu[:k, k], x[k])
    return x[:, 0] if vec else x


def _complete_unitary(u: np.ndarray, good: np.ndarray) -> np.ndarray:
    """Replace the columns of ``u`` not flagged ``good`` by an orthonormal completion."""
    n = u.shape[0]
    basis = [u[:, j] for j in range(u.shape[1]) if good[j]]
    out = u.copy()
    for j in range(u.shape[1]):
        if good[j]:
            continue
        # the unit vector with the largest component outside span(basis)
        best, best_norm = None, -1.0
        for e in np.eye(n, dtype=np.complex128):
            v = e.copy()
            for _ in range(2):
                for q in basis:
                    v -= q * np.vdot(q, v)
            nv = np.linalg.norm(v)
            if nv > best_norm:
                best, best_norm = v, nv
        v = best / best_norm
        basis.append(v)
        out[:, j] = v
    return out


def svd(m):
    """One-sided (Hestenes) Jacobi SVD of a square complex matrix.

    Returns ``(U, s, V)`` with ``m = U @ diag(s) @ V.conj().T`` and ``s``
    sorted in descending order.
    """
    w = as_matrix(m)
    n = w.shape[0]
    v = np.eye(n, dtype=np.complex128)
    cap = max(30 * n * n, 1)
    visits = 0
    while True:
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                visits += 1
                if visits > cap * n:
                    raise NoConvergence("Jacobi SVD exceeded its rotation cap")
                alpha = np.vdot(w[:, p], w[:, p]).real
                beta = np.vdot(w[:, q], w[:, q]).real
                gamma = np.vdot(w[:, p], w[:, q])
                g = abs(gamma)
                if g == 0 or g <= EPS * np.sqrt(alpha * beta) or 2.0 * g <= EPS * abs(beta - alpha):
                    continue
                zeta = (beta - alpha) / (2.0 * g)
                t = (1.0 if zeta >= 0 else -1.0) / (abs(zeta) + np.hypot(1.0, zeta))
                if t == 0:
                    continue
                rotated = True
                phase = gamma / g
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                wq = w[:, q] / phase
                wp = w[:, p].copy()
                w[:, p] = c * wp - s * wq
                w[:, q] = s * wp + c * wq
                vq = v[:, q] / phase
                vp = v[:, p].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        if not rotated:
            break
    sv = np.linalg.norm(w, axis=0)
    order = np.argsort(-sv, kind="stable")
    sv = sv[order]
    w = w[:, order]
    v = v[:, order]
    good = sv > 0
    u = np.zeros_like(w)
    u[:, good] = w[:, good] / sv[good]
    # columns of w are orthogonal but can carry rounding-level norms; renormalize
    # only the numerically meaningful ones and complete the rest
    top = sv[0] if n else 0.0
    good = sv > n * EPS * top if top > 0 else np.zeros(n, dtype=bool)
    u = _complete_unitary(u, good)
    return u, sv, v


def spectral_norm(m) -> float:
    return float(svd(m)[1][0])


def numerical_rank(m, tol: float | None = None) -> int:
    """Number of singular values above ``tol`` (default ``n * eps * s_max``)."""
    s = svd(m)[1]
    if tol is None:
        tol = s.size * EPS * s[0]
    return int(np.count_nonzero(s > tol))


def _poly_scale(coeffs: np.ndarray, z: complex) -> float:
    return float(np.max(np.abs(coeffs))) * max(1.0, abs(z)) ** (coeffs.size - 1)


def aberth_roots(p, max_iter: int = 200, seed: int = 0) -> list[complex]:
    """All roots of ``p`` with multiplicity, by Aberth-Ehrlich iteration.

    Exact zero low-order coefficients are deflated first (each is an exact
    root at the origin). Starting points are the roots of unity scaled by
    ``|c_0/c_N|**(1/deg)`` with a fixed-seed 1e-3 jitter.
    """
    if not isinstance(p, Polynomial):
        p = Polynomial(p)
    c = p.array()
    if c.size < 2 or c[-1] == 0:
        raise ValueError("need degree >= 1 with a nonzero leading coefficient")
    zeros = 0
    while c[zeros] == 0:
        zeros += 1
    c = c[zeros:]
    deg = c.size - 1
    roots = [0j] * zeros
    if deg == 0:
        return roots
    if deg == 1:
        return roots + [complex(-c[0] / c[1])]

    dc = c[1:] * np.arange(1, deg + 1)
    radius = abs(c[0] / c[-1]) ** (1.0 / deg)
    rng = np.random.default_rng(seed)
    jitter = 1e-3 * (rng.standard_normal(deg) + 1j * rng.standard_normal(deg))
    z = radius * np.exp(2j * np.pi * np.arange(deg) / deg) * (1.0 + jitter)
    absc = np.abs(c)
    done = np.zeros(deg, dtype=bool)

    for _ in range(max_iter):
        for i in range(deg):
            if done[i]:
                continue
            zi = z[i]
            pv = np.polyval(c[::-1], zi)
            rounding = 8 * EPS * np.polyval(absc[::-1], abs(zi))
            if abs(pv) <= rounding:
                done[i] = True
                continue
            ratio = pv / np.polyval(dc[::-1], zi)
            diff = zi - np.delete(z, i)
            corr = ratio / (1.0 - ratio * np.sum(1.0 / diff))
            z[i] = zi - corr
            if abs(corr) <= 2 * EPS * abs(z[i]):
                done[i] = True
        if done.all():
            break
    else:
        raise NoConvergence(f"Aberth iteration did not converge in {max_iter} sweeps")

    for zi in z:
        if abs(np.polyval(c[::-1], zi)) > 1e-10 * _poly_scale(c, zi):
            raise NoConvergence(f"root {zi} fails the residual check")
    return roots + [complex(x) for x in z]


def cluster_roots(roots, radius: float) -> list[list[complex]]:
    """Single-linkage clusters of ``roots``; members within ``radius`` chain together."""
    roots = [complex(r) for r in roots]
    parent = list(range(len(roots)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if abs(roots[i] - roots[j]) <= radius:
                parent[find(i)] = find(j)
    groups: dict[int, list[complex]] = {}
    for i, r in enumerate(roots):
        groups.setdefault(find(i), []).append(r)
    clusters = [sorted(g, key=lambda z: (z.real, z.imag)) for g in groups.values()]
    clusters.sort(key=lambda g: (np.mean(g).real, np.mean(g).imag))
    return clusters


def refine_multiple_root(p, center: complex, multiplicity: int, radius: float, steps: int = 8) -> complex:
    """Polish a cluster centre as a simple root of the (k-1)-th derivative.

    A k-fold root of ``p`` is a simple root of ``p^(k-1)``, so Newton there
    converges quadratically where the cluster mean only reaches ~eps**(1/k).
    The centre is returned unchanged if Newton wanders outside ``radius``.
    """
    if not isinstance(p, Polynomial):
        p = Polynomial(p)
    d = p
    for _ in range(multiplicity - 1):
        d = d.derivative()
    dd = d.derivative()
    z = complex(center)
    for _ in range(steps):
        slope = dd(z)
        if slope == 0:
            break
        step = d(z) / slope
        z -= step
        if abs(step) <= 2 * EPS * max(abs(z), 1e-300):
            break
    if abs(z - center) > radius:
        return complex(center)
    # drop rounding-level components so e.g. a real root stays real
    floor = 4 * EPS * max(1.0, abs(z))
    return complex(0.0 if abs(z.real) <= floor else z.real, 0.0 if abs(z.imag) <= floor else z.imag)
