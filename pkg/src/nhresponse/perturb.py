"""First-order splitting of a degenerate eigenvalue into regular polygons.

Expanding ``det(lam - A0 - eps*H')`` to first order in ``eps`` gives
``c_alpha lam**alpha - eps h lam**(alpha - ell)`` with ``h = tr(B_* H')``, so
each leading sector j is lifted onto the vertices of
``lam**ell = +eps h_j / c_alpha``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .degeneracy import DegeneracyReport
from .errors import ZeroElement
from .modal import flv_expand
from .numcore import aberth_roots, as_matrix, spectral_norm


@dataclass(frozen=True)
class Sector:
    h: complex
    radius: float
    rotation: float
    vertices: list


@dataclass(frozen=True)
class PolygonPrediction:
    epsilon: float
    sectors: list
    exact_roots: list
    matched_error: float

    @property
    def vertices(self) -> list:
        return [v for s in self.sectors for v in s.vertices]


def sector_element(b_star_sector, h_prime) -> complex:
    return complex(np.trace(as_matrix(b_star_sector) @ as_matrix(h_prime)))


def predict_polygons(h0, h_prime, epsilon: float, report: DegeneracyReport) -> PolygonPrediction:
    h0 = as_matrix(h0)
    hp = as_matrix(h_prime)
    ell = report.ell
    modes = [report.b_star] if report.beta == 1 else report.sector_modes
    elements = [sector_element(m, hp) for m in modes]
    floor = report.tol * spectral_norm(report.b_star) * max(spectral_norm(hp), 1e-300)
    if all(abs(h) <= floor for h in elements):
        raise ZeroElement("perturbation does not lift the leading sectors at first order")

    sectors = []
    for h in elements:
        if abs(h) <= floor:
            continue
        w = epsilon * h / report.c_alpha
        root = complex(w) ** (1.0 / ell)
        verts = [
            report.eigenvalue + root * np.exp(2j * np.pi * k / ell) for k in range(1, ell + 1)
        ]
        sectors.append(Sector(h, abs(root), float(np.angle(root)), [complex(v) for v in verts]))

    exp = flv_expand(h0 + epsilon * hp, report.eigenvalue)
    exact = [report.eigenvalue + r for r in aberth_roots(exp.coeffs)]
    exact_arr = np.array(exact)
    err = max(
        float(np.min(np.abs(exact_arr - v))) for s in sectors for v in s.vertices
    )
    return PolygonPrediction(float(epsilon), sectors, exact, err)
