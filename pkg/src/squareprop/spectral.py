"""Real spectra via the complexification identity and the Gelfand radius.

For a unital finite-dimensional algebra, (a - se)^2 + t^2 e factors as
(a - (s+it)e)(a - (s-it)e) after complexifying, so the spectrum of a is
exactly the (conjugate-closed) eigenvalue set of the left regular matrix.
The Gelfand radius lim ||a^n||^(1/n) is computed by repeated squaring with
log-domain renormalization, and both routes are cross-checked in tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .algebra import (AlgebraElement, NotUnital, embed_in_unitization,
                      left_regular_matrix, mul, unitize)


class NonConvergence(Exception):
    pass


@dataclass(frozen=True)
class SpectrumResult:
    points: tuple          # complex eigenvalues, conjugate-closed
    radius: float          # max modulus over points


def _regular_matrix_in_hull(a: AlgebraElement) -> np.ndarray:
    if a.algebra.is_unital:
        return left_regular_matrix(a)
    hull = unitize(a.algebra)
    return left_regular_matrix(embed_in_unitization(a, hull))


def spectrum(a: AlgebraElement) -> SpectrumResult:
    """sp(a) as the eigenvalues of L_a (in the unital hull if needed)."""
    eig = np.linalg.eigvals(_regular_matrix_in_hull(a))
    pts = tuple(sorted((complex(v) for v in eig),
                       key=lambda z: (z.real, z.imag)))
    radius = float(max(abs(z) for z in pts))
    return SpectrumResult(pts, radius)


def spectral_radius(a: AlgebraElement) -> float:
    return spectrum(a).radius


def spectral_radius_batch(algebra, coords: np.ndarray) -> np.ndarray:
    """Spectral radii of a stack of elements of one unital algebra."""
    if not algebra.is_unital:
        hull = unitize(algebra)
        coords = np.hstack([np.zeros((coords.shape[0], 1)), coords])
        algebra = hull
    L = algebra.left_matrices_batch(coords)
    return np.abs(np.linalg.eigvals(L)).max(axis=1)


def in_spectrum_paper_def(a: AlgebraElement, s: float, t: float) -> bool:
    """Literal membership test: (a - se)^2 + t^2 e not invertible.

    Singularity is judged against the scale of (a, s, t), not of the test
    element itself: at a true spectrum point the element is numerically
    zero, where a self-relative singular-value ratio is meaningless.
    """
    if not a.algebra.is_unital:
        raise NotUnital("the membership test needs a unit")
    e = a.algebra.unit_element()
    shifted = a - s * e
    x = mul(shifted, shifted) + (t * t) * e
    sv = np.linalg.svd(left_regular_matrix(x), compute_uv=False)
    scale = (np.linalg.norm(left_regular_matrix(a), 2) + abs(s) + abs(t)) ** 2
    return sv[-1] <= 1e-8 * (1.0 + scale)


def operator_norm(a: AlgebraElement) -> float:
    """Largest singular value of the left regular matrix."""
    return float(np.linalg.norm(left_regular_matrix(a), 2))


def gelfand_radius(a: AlgebraElement,
                   norm: Optional[Callable[[AlgebraElement], float]] = None,
                   iterations: int = 40,
                   conv_tol: float = 1e-6,
                   return_delta: bool = False):
    """lim ||a^n||^(1/n) by repeated squaring with renormalization.

    Keeps the current power scaled to norm 1 and accumulates the log-norm,
    so powers up to 2^iterations never overflow.  Raises NonConvergence if
    the last two iterates of ||a^(2^k)||^(2^-k) still differ by more than
    conv_tol after the budget.
    """
    if norm is None:
        norm = operator_norm
    na = norm(a)
    if na == 0.0:
        return (0.0, 0.0) if return_delta else 0.0
    u = (1.0 / na) * a
    log_r = math.log(na)           # log of ||a^(2^k)||^(2^-k)
    delta = math.inf
    for k in range(1, iterations + 1):
        v = mul(u, u)
        nv = norm(v)
        if nv == 0.0:
            return (0.0, 0.0) if return_delta else 0.0
        step = math.log(nv) / 2.0 ** k
        log_r += step
        delta = abs(step)
        if delta < conv_tol * 2.0 ** -20:
            break
        u = (1.0 / nv) * v
    if delta > conv_tol:
        raise NonConvergence(
            f"radius iteration stalled, last delta {delta:.3e}")
    return (math.exp(log_r), delta) if return_delta else math.exp(log_r)
