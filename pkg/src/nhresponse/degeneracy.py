"""Degeneracy classification and response strengths from modal data.

All vanishing tests are relative: a coefficient ``c_k`` is a homogeneous
polynomial of degree ``N-k`` in the entries of ``A``, and a mode ``B_m`` one
of degree ``N-1-m``, so thresholds scale with powers of ``||A||_2``. This keeps
the classification invariant under ``H -> c*H``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DegenerateInput, DivergentStrength, NotAnEigenvalue, ZeroMode
from .modal import ModalExpansion, flv_expand
from .numcore import as_matrix, numerical_rank, spectral_norm, svd


def default_tol(n: int) -> float:
    return 1e-9 * n


def _norm_a(exp: ModalExpansion) -> float:
    return spectral_norm(exp.a)


def coeff_scale(exp: ModalExpansion, k: int, norm_a: float | None = None) -> float:
    norm_a = _norm_a(exp) if norm_a is None else norm_a
    return max(1.0, norm_a ** (exp.n - k))


def mode_scale(exp: ModalExpansion, m: int, norm_a: float | None = None) -> float:
    norm_a = _norm_a(exp) if norm_a is None else norm_a
    return max(1.0, norm_a ** (exp.n - 1 - m)) * np.sqrt(exp.n)


def algebraic_multiplicity(exp: ModalExpansion, tol: float | None = None) -> int:
    """Number of leading coefficients c_0, c_1, ... that vanish at omega."""
    tol = default_tol(exp.n) if tol is None else tol
    norm_a = _norm_a(exp)
    for k in range(exp.n + 1):
        if abs(exp.c(k)) > tol * coeff_scale(exp, k, norm_a):
            return k
    return exp.n  # unreachable: c_N = 1


def geometric_multiplicity(h, eigenvalue: complex, tol: float | None = None) -> int:
    h = as_matrix(h)
    n = h.shape[0]
    return n - numerical_rank(eigenvalue * np.eye(n) - h, tol)


def max_partial_multiplicity(exp: ModalExpansion, alpha: int, tol: float | None = None):
    """Return ``(ell, B_star)`` where B_star is the first non-vanishing mode."""
    tol = default_tol(exp.n) if tol is None else tol
    norm_a = _norm_a(exp)
    for m in range(exp.n):
        if np.linalg.norm(exp.modes[m]) > tol * mode_scale(exp, m, norm_a):
            if m >= alpha:
                raise DegenerateInput(
                    f"first finite mode B_{m} does not fit algebraic multiplicity {alpha}"
                )
            return alpha - m, np.array(exp.modes[m])
    raise DegenerateInput("all modes vanish")


class LeadingSectors(NamedTuple):
    beta: int
    strengths: list
    right: list
    left: list
    sector_modes: list  # B_{*,j}, summing to B_star


def _unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def leading_sectors(b_star, c_alpha: complex, ell: int, tol: float | None = None) -> LeadingSectors:
    """Split the first finite mode into its leading-eigenvector sectors.

    For ``ell > 1`` the sectors come from the singular value decomposition.
    For ``ell == 1`` the mode is a scaled spectral projector and the sectors
    are its eigen-pieces; left vectors are returned as row-vector components.
    """
    b = as_matrix(b_star)
    n = b.shape[0]
    tol = default_tol(n) if tol is None else tol
    u, s, v = svd(b)
    if s[0] <= tol:
        raise ZeroMode("first finite mode vanishes")
    beta = int(np.count_nonzero(s > tol * s[0]))
    ca = abs(c_alpha)

    if ell > 1:
        phase = c_alpha / ca
        strengths, right, left, modes = [], [], [], []
        for j in range(beta):
            strengths.append(float(s[j] / ca))
            right.append(u[:, j].copy())
            # <L_j| chosen so that B_{*,j} = c_alpha * xi_j |R_j><L_j|
            left.append(np.conj(phase) * v[:, j].conj())
            modes.append(s[j] * np.outer(u[:, j], v[:, j].conj()))
        return LeadingSectors(beta, strengths, right, left, modes)

    ub, sb, vb = u[:, :beta], s[:beta], v[:, :beta]
    compressed = np.diag(sb) @ vb.conj().T @ ub
    mu, y = np.linalg.eig(compressed)
    yinv = np.linalg.inv(y)
    pieces = []
    for j in range(beta):
        x = ub @ y[:, j]
        z = yinv[j] @ np.diag(sb) @ vb.conj().T
        mode = mu[j] * np.outer(x, z) / (z @ x)
        pieces.append((abs(mu[j] / c_alpha), _unit(x), _unit(z), mode))
    pieces.sort(key=lambda t: -t[0])
    return LeadingSectors(
        beta,
        [float(p[0]) for p in pieces],
        [p[1] for p in pieces],
        [p[2] for p in pieces],
        [p[3] for p in pieces],
    )


def response_strengths(b_star, c_alpha: complex) -> tuple[float, float]:
    """Spectral strength xi = ||B*||_2/|c| and physical strength eta = ||B*||_F/|c|."""
    b = as_matrix(b_star)
    ca = abs(c_alpha)
    return spectral_norm(b) / ca, float(np.linalg.norm(b)) / ca


def strength_function(exp: ModalExpansion, n: int, m: int, tol: float | None = None) -> float:
    """|eta^(n,m)|^2 = tr(B_m^dag B_m) / |c_n|^2."""
    if not 1 <= n <= exp.n or not 0 <= m <= exp.n - 1:
        raise ValueError(f"(n, m) = ({n}, {m}) out of range for N = {exp.n}")
    tol = default_tol(exp.n) if tol is None else tol
    cn = exp.c(n)
    if abs(cn) <= tol * coeff_scale(exp, n):
        raise DivergentStrength(f"c_{n} vanishes; eta^({n},{m}) diverges")
    return float(np.linalg.norm(exp.modes[m]) ** 2 / abs(cn) ** 2)


def petermann_simple(exp: ModalExpansion, tol: float | None = None) -> float:
    """Petermann factor tr(B_0^dag B_0)/|c_1|^2 of a simple eigenvalue."""
    return strength_function(exp, 1, 0, tol)


def strength_table(exp: ModalExpansion, n_max: int, m_max: int, tol: float | None = None) -> dict:
    """eta^(n,m) squared for 1 <= n <= n_max, 0 <= m <= m_max; None where divergent."""
    table = {}
    for n in range(1, min(n_max, exp.n) + 1):
        for m in range(0, min(m_max, exp.n - 1) + 1):
            try:
                table[(n, m)] = strength_function(exp, n, m, tol)
            except DivergentStrength:
                table[(n, m)] = None
    return table


@dataclass(frozen=True, eq=False)
class DegeneracyReport:
    eigenvalue: complex
    alpha: int
    gamma: int
    ell: int
    beta: int
    c_alpha: complex
    b_star_index: int
    partial_strengths: list
    xi: float
    eta: float
    petermann: float | None
    leading_right: list
    leading_left: list
    b_star: np.ndarray = field(repr=False)
    sector_modes: list = field(repr=False)
    tol: float = 0.0

    @property
    def signature(self) -> tuple[int, int, int, int]:
        return (self.alpha, self.gamma, self.ell, self.beta)


def classify(h, eigenvalue: complex, tol: float | None = None) -> DegeneracyReport:
    """Full degeneracy report of ``h`` at ``eigenvalue``."""
    h = as_matrix(h)
    n = h.shape[0]
    tol = default_tol(n) if tol is None else tol
    exp = flv_expand(h, eigenvalue)
    norm_a = _norm_a(exp)

    alpha = algebraic_multiplicity(exp, tol)
    if alpha == 0:
        raise NotAnEigenvalue(
            f"{eigenvalue} is not an eigenvalue (|q(0)| = {abs(exp.c(0)):.3e})"
        )
    gamma = geometric_multiplicity(h, eigenvalue, tol * max(1.0, norm_a))
    ell, b_star = max_partial_multiplicity(exp, alpha, tol)
    c_alpha = exp.c(alpha)
    sectors = leading_sectors(b_star, c_alpha, ell, tol)
    xi, eta = response_strengths(b_star, c_alpha)
    if alpha == 1:
        petermann = petermann_simple(exp, tol)
    elif ell == 1:
        petermann = strength_function(exp, alpha, alpha - 1, tol)
    else:
        petermann = None
    return DegeneracyReport(
        eigenvalue=complex(eigenvalue),
        alpha=alpha,
        gamma=gamma,
        ell=ell,
        beta=sectors.beta,
        c_alpha=complex(c_alpha),
        b_star_index=alpha - ell,
        partial_strengths=sectors.strengths,
        xi=xi,
        eta=eta,
        petermann=petermann,
        leading_right=sectors.right,
        leading_left=sectors.left,
        b_star=b_star,
        sector_modes=sectors.sector_modes,
        tol=tol,
    )
