"""Green's function from the modal expansion, response power, and sweeps."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .degeneracy import DegeneracyReport
from .errors import OnResonance
from .modal import ModalExpansion, adjugate_at, flv_expand
from .numcore import (
    aberth_roots,
    as_matrix,
    cluster_roots,
    lu_solve,
    refine_multiple_root,
    spectral_norm,
)

RESONANCE_TOL = 1e-13


@dataclass(frozen=True, eq=False)
class GreensEvaluation:
    energy: complex
    matrix: np.ndarray
    power: float


@dataclass(frozen=True, eq=False)
class SweepResult:
    energies: np.ndarray
    powers: np.ndarray
    loss_shift: float


def _evaluation(energy, g) -> GreensEvaluation:
    return GreensEvaluation(complex(energy), g, float(np.linalg.norm(g) ** 2))


def greens_uniform(exp: ModalExpansion, energy: complex) -> GreensEvaluation:
    """G(E) = sum_k lam**k B_k / sum_k lam**k c_k with lam = E - omega."""
    lam = energy - exp.omega
    den = exp.coeffs(lam)
    if abs(den) < RESONANCE_TOL * max(1.0, abs(lam) ** exp.n):
        raise OnResonance(f"E = {energy} is on resonance (|q| = {abs(den):.3e})")
    return _evaluation(energy, adjugate_at(exp, energy) / den)


def greens_direct(h, energy: complex) -> GreensEvaluation:
    """G(E) by solving (E*1 - H) X = 1; raises SingularMatrix on resonance."""
    h = as_matrix(h)
    n = h.shape[0]
    return _evaluation(energy, lu_solve(energy * np.eye(n) - h, np.eye(n)))


CLUSTER_RADIUS = 1e-7


def eigenvalue_clusters(h, radius: float | None = None) -> list[tuple[complex, list[complex]]]:
    """Distinct eigenvalues as ``(centre, member roots)``.

    Roots within ``radius`` (default 1e-7 * ||H||_2) are merged by single
    linkage; the centre is the cluster mean polished as a multiple root.
    """
    h = as_matrix(h)
    if radius is None:
        radius = CLUSTER_RADIUS * spectral_norm(h)
    coeffs = flv_expand(h, 0.0).coeffs
    out = []
    for group in cluster_roots(aberth_roots(coeffs), radius):
        centre = complex(np.mean(group))
        if len(group) > 1:
            centre = refine_multiple_root(coeffs, centre, len(group), max(radius, 1e-300))
        out.append((centre, group))
    return out


def eigenvalues(h) -> list[complex]:
    """Eigenvalues with multiplicity, multiple roots reported at their cluster centre."""
    return [c for c, group in eigenvalue_clusters(h) for _ in group]


def loss_shift_for(h, loss: float) -> float:
    """Uniform decay shift making min_i(-Im E_i)/2 equal ``loss``."""
    return 2.0 * loss + max(e.imag for e in eigenvalues(h))


def power_sweep(h, e_min: float, e_max: float, steps: int, loss: float) -> SweepResult:
    """Response power on a real-energy grid for ``H - i*shift*1``."""
    if steps < 2:
        raise ValueError("steps must be at least 2")
    if loss < 0:
        raise ValueError("loss must be non-negative")
    if not e_max > e_min:
        raise ValueError("e_max must exceed e_min")
    h = as_matrix(h)
    shift = loss_shift_for(h, loss)
    exp = flv_expand(h - 1j * shift * np.eye(h.shape[0]), 0.0)
    energies = np.linspace(e_min, e_max, steps)
    powers = np.array([greens_uniform(exp, e).power for e in energies])
    return SweepResult(energies, powers, shift)


def leading_power(report: DegeneracyReport, energy: complex) -> float:
    """Leading resonant power eta^2 / |E - E_i|**(2*ell)."""
    return report.eta ** 2 / abs(energy - report.eigenvalue) ** (2 * report.ell)


def loglog_slope(
    h,
    eigenvalue: complex,
    window: tuple[float, float] = (1e-3, 1e-2),
    samples: int = 16,
    angle: float = 0.3,
) -> float:
    """Least-squares slope of log P against log|E - E_i| along a ray."""
    exp = flv_expand(h, eigenvalue)
    radii = np.geomspace(window[0], window[1], samples)
    ray = np.exp(1j * angle)
    powers = [greens_uniform(exp, eigenvalue + r * ray).power for r in radii]
    slope, _ = np.polyfit(np.log(radii), np.log(powers), 1)
    return float(slope)
