"""Parametrized test Hamiltonians with analytically known degeneracy structure."""
from __future__ import annotations

import numpy as np


def three_level(omega=1.0, a=1.0, b=1.0, c=1.0, d=1.0) -> np.ndarray:
    """3x3 family with eigenvalues 0 and omega +- sqrt(a*c)."""
    return np.array(
        [[omega, a, b], [c, omega, d], [0, 0, 0]], dtype=np.complex128
    )


def four_level(omega=0.0, a=0.0, b=0.0, c=0.0, d=0.0, e=0.0, f=0.0) -> np.ndarray:
    """Upper-triangular 4x4 family with a fourfold eigenvalue omega."""
    return np.array(
        [
            [omega, a, b, c],
            [0, omega, d, e],
            [0, 0, omega, f],
            [0, 0, 0, omega],
        ],
        dtype=np.complex128,
    )


FIXTURES = {
    "F1-DP": three_level(1, 1, 1, 1, 1),
    "F1-EP": three_level(1, 1, 1, 0, 1),
    "F2-EP4": four_level(0, a=1, d=1, f=1),
    "F2-31": four_level(0, a=1, e=1),
    "F2-22": four_level(0, a=1, b=-1, c=1, e=1, f=1),
    "F2-211": four_level(0, a=1, b=1, c=1),
}

# eigenvalue of interest for each fixture
DEGENERATE_ENERGY = {
    "F1-DP": 0.0,
    "F1-EP": 1.0,
    "F2-EP4": 0.0,
    "F2-31": 0.0,
    "F2-22": 0.0,
    "F2-211": 0.0,
}


def double_jordan(s1: float, s2: float, size: int = 2, rotation: np.ndarray | None = None):
    """Two equal Jordan blocks at 0 with chain couplings ``s1`` and ``s2``.

    Returns ``(H0, Hprime)`` where ``Hprime`` closes each chain with a unit
    entry in the lower-left corner of its block. An optional unitary
    ``rotation`` is applied to both.
    """
    n = 2 * size
    h0 = np.zeros((n, n), dtype=np.complex128)
    hp = np.zeros((n, n), dtype=np.complex128)
    for blk, s in enumerate((s1, s2)):
        o = blk * size
        for i in range(size - 1):
            h0[o + i, o + i + 1] = s
        hp[o + size - 1, o] = 1.0
    if rotation is not None:
        q = np.asarray(rotation, dtype=np.complex128)
        h0 = q @ h0 @ q.conj().T
        hp = q @ hp @ q.conj().T
    return h0, hp
