"""Modal expansion of the adjugate around a reference energy.

With ``A = H - omega*1`` and ``lam = E - omega``::

    det(lam*1 - A) = sum_k c_k lam**k          (c_N = 1)
    adj(lam*1 - A) = sum_k lam**k B_k          (B_{N-1} = 1)

The modes come from the Faddeev-LeVerrier recursion; ``charpoly_newton``
and ``modes_explicit`` are independent routes used as cross-checks.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numcore import Polynomial, as_matrix


@dataclass(frozen=True, eq=False)
class ModalExpansion:
    omega: complex
    a: np.ndarray
    coeffs: Polynomial
    modes: np.ndarray  # shape (N, N, N); modes[k] is B_k

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def c(self, k: int) -> complex:
        return self.coeffs.coeffs[k]


def flv_expand(h, omega: complex = 0.0) -> ModalExpansion:
    """Coefficients c_k and modes B_k of ``H - omega`` by Faddeev-LeVerrier."""
    h = as_matrix(h)
    n = h.shape[0]
    a = h - omega * np.eye(n)
    modes = np.zeros((n, n, n), dtype=np.complex128)
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    coeffs[n] = 1.0
    b = np.eye(n, dtype=np.complex128)
    modes[n - 1] = b
    for k in range(n - 1, -1, -1):
        ab = a @ b
        ck = -np.trace(ab) / (n - k)
        coeffs[k] = ck
        if k > 0:
            b = ab + ck * np.eye(n)
            modes[k - 1] = b
    for arr in (a, modes):
        arr.setflags(write=False)
    return ModalExpansion(complex(omega), a, Polynomial(coeffs), modes)


def charpoly_newton(h, omega: complex = 0.0) -> Polynomial:
    """Shifted characteristic polynomial from power traces via Newton's identities."""
    h = as_matrix(h)
    n = h.shape[0]
    a = h - omega * np.eye(n)
    power = np.eye(n, dtype=np.complex128)
    traces = []
    for _ in range(n):
        power = power @ a
        traces.append(np.trace(power))
    # e[m]: elementary symmetric polynomials of the eigenvalues of A
    e = [1.0 + 0j]
    for m in range(1, n + 1):
        acc = sum((-1) ** (i - 1) * e[m - i] * traces[i - 1] for i in range(1, m + 1))
        e.append(acc / m)
    return Polynomial([(-1) ** (n - k) * e[n - k] for k in range(n + 1)])


def modes_explicit(exp: ModalExpansion, a=None) -> list[np.ndarray]:
    """B_k = sum_{l=1}^{N-k} c_{k+l} A**(l-1), using the expansion's coefficients."""
    a = exp.a if a is None else as_matrix(a)
    n = a.shape[0]
    powers = [np.eye(n, dtype=np.complex128)]
    for _ in range(n - 1):
        powers.append(powers[-1] @ a)
    return [
        sum(exp.c(k + l) * powers[l - 1] for l in range(1, n - k + 1))
        for k in range(n)
    ]


def adjugate_at(exp: ModalExpansion, energy: complex) -> np.ndarray:
    """adj(E*1 - H) from the modes, by Horner's scheme in ``E - omega``."""
    lam = energy - exp.omega
    acc = np.zeros_like(exp.modes[0])
    for k in range(exp.n - 1, -1, -1):
        acc = acc * lam + exp.modes[k]
    return acc


def charpoly_at(exp: ModalExpansion, energy: complex) -> complex:
    return exp.coeffs(energy - exp.omega)
