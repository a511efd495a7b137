"""Quaternion-valued multiplicative linear functionals and their search.

A character is determined by its images q_i of the basis elements; it is
multiplicative iff q_i q_j = sum_k c[i,j,k] q_k for all basis pairs, which
is the nonlinear system the damped least-squares search solves from random
starts.  The search samples the character space, it never enumerates it:
every sup over characters reported here is a lower bound unless the
algebra's character structure is known in full.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (AlgebraElement, FiniteDimRealAlgebra, AlgebraMismatch,
                      NotUnital, is_invertible)
from .quaternion import HAMILTON, Quaternion, qnorm, qspectrum
from .spectral import spectral_radius, spectrum

ACCEPT_RESIDUAL = 1e-11    # converged character
DISCARD_RESIDUAL = 1e-7    # anything above is a failed restart; between: unconverged
DEDUP_DISTANCE = 1e-6
NONZERO_FLOOR = 1e-6

_E1 = np.array([1.0, 0.0, 0.0, 0.0])


class EmptyCharacterSet(Exception):
    pass


@dataclass(frozen=True)
class Character:
    algebra: FiniteDimRealAlgebra
    images: np.ndarray          # (n, 4), row i = x(e_i) as (w, x, y, z)
    residual: float

    def value(self, a: AlgebraElement) -> Quaternion:
        if a.algebra is not self.algebra:
            raise AlgebraMismatch("element and character algebras differ")
        return Quaternion.from_array(a.coords @ self.images)

    __call__ = value


def character_residual(algebra: FiniteDimRealAlgebra, images) -> float:
    """Max multiplicativity defect over basis pairs, scaled by 1 + max|q|^2."""
    Q = np.asarray(images, dtype=float).reshape(algebra.dim, 4)
    E = (np.einsum("ip,jq,pqc->ijc", Q, Q, HAMILTON)
         - np.einsum("ijk,kc->ijc", algebra.table, Q))
    defect = np.sqrt((E * E).sum(axis=2)).max()
    scale = 1.0 + (Q * Q).sum(axis=1).max()
    return float(defect / scale)


def _residual_system(algebra: FiniteDimRealAlgebra):
    c = algebra.table
    n = algebra.dim
    u = algebra.unit
    unital = algebra.is_unital

    def fun(x):
        Q = x.reshape(n, 4)
        E = (np.einsum("ip,jq,pqc->ijc", Q, Q, HAMILTON)
             - np.einsum("ijk,kc->ijc", c, Q))
        if unital:
            extra = u @ Q - _E1
        else:
            i0 = int(np.argmax((Q * Q).sum(axis=1)))
            extra = np.array([Q[i0] @ Q[i0] - 1.0])
        return np.concatenate([E.ravel(), extra])

    def jac(x):
        Q = x.reshape(n, 4)
        J = np.zeros((n, n, 4, n, 4))
        T1 = np.einsum("jq,dqc->jcd", Q, HAMILTON)   # d(q_i q_j)/dq_i
        T2 = np.einsum("ip,pdc->icd", Q, HAMILTON)   # d(q_i q_j)/dq_j
        for m in range(n):
            J[m, :, :, m, :] += T1
            J[:, m, :, m, :] += T2
        for comp in range(4):
            J[:, :, comp, :, comp] -= c
        J = J.reshape(n * n * 4, n * 4)
        if unital:
            Ju = np.einsum("m,cd->cmd", u, np.eye(4)).reshape(4, n * 4)
        else:
            i0 = int(np.argmax((Q * Q).sum(axis=1)))
            Ju = np.zeros((1, n, 4))
            Ju[0, i0, :] = 2.0 * Q[i0]
            Ju = Ju.reshape(1, n * 4)
        return np.vstack([J, Ju])

    return fun, jac


def _lm_minimize(fun, jac, x0, max_iter=500, gtol=1e-15, xtol=1e-15):
    """Levenberg-Marquardt with a fixed, branch-free update schedule.

    Implemented in plain numpy on purpose: the MINPACK-backed scipy solver
    is not bit-reproducible run to run on this platform, which would break
    the byte-identical-JSON contract of the CLI.  The problem is small and
    dense, so nothing beyond J^T J + damping is needed.
    """
    x = np.asarray(x0, dtype=float).copy()
    f = fun(x)
    cost = float(f @ f)
    lam = 1e-3
    for _ in range(max_iter):
        J = jac(x)
        g = J.T @ f
        if np.abs(g).max() <= gtol * (1.0 + cost):
            break
        H = J.T @ J
        d = np.maximum(np.diag(H), 1e-12)
        step = None
        while lam <= 1e12:
            try:
                step = np.linalg.solve(H + lam * np.diag(d), -g)
            except np.linalg.LinAlgError:
                lam *= 10.0
                continue
            f_new = fun(x + step)
            cost_new = float(f_new @ f_new)
            if cost_new < cost:
                x = x + step
                f, cost = f_new, cost_new
                lam = max(lam / 3.0, 1e-14)
                break
            lam *= 10.0
            step = None
        if step is None:
            break
        if np.abs(step).max() <= xtol * (1.0 + np.abs(x).max()):
            break
    return x


def find_characters(algebra: FiniteDimRealAlgebra, restarts: int = 50,
                    seed: int = 0, max_iter: int = 500) -> list[Character]:
    """Damped least-squares search from random starts; deterministic per seed.

    Accepted solutions have multiplicativity residual <= 1e-11, satisfy the
    unit constraint when the algebra is unital, and are nonzero; everything
    else (failed or unconverged restarts) is discarded.  The returned list
    is deduped by pairwise image distance and canonically ordered.
    """
    rng = np.random.default_rng(seed)
    fun, jac = _residual_system(algebra)
    n = algebra.dim
    candidates = []
    for _ in range(restarts):
        x0 = rng.standard_normal(n * 4)
        Q = _lm_minimize(fun, jac, x0, max_iter=max_iter).reshape(n, 4)
        if character_residual(algebra, Q) > ACCEPT_RESIDUAL:
            continue
        if algebra.is_unital:
            if np.abs(algebra.unit @ Q - _E1).max() > 1e-9:
                continue
        if np.sqrt((Q * Q).sum(axis=1)).max() < NONZERO_FLOOR:
            continue
        candidates.append(Q)
    candidates.sort(key=lambda Q: np.round(Q, 9).tobytes())
    kept: list[np.ndarray] = []
    for Q in candidates:
        if all(np.linalg.norm(Q - P) > DEDUP_DISTANCE for P in kept):
            kept.append(Q)
    out = []
    for Q in kept:
        Q = Q.copy()
        Q.setflags(write=False)
        out.append(Character(algebra, Q, character_residual(algebra, Q)))
    return out


def j_evaluate(a: AlgebraElement, chars: list[Character]) -> list[Quaternion]:
    """The representation value J(a) sampled at the given characters."""
    return [x.value(a) for x in chars]


def sampled_sup_norm(a: AlgebraElement, chars: list[Character]) -> float:
    """Max |x(a)| over the sampled characters; a lower bound of ||J(a)||_s."""
    if not chars:
        raise EmptyCharacterSet("no characters to evaluate")
    return max(qnorm(q) for q in j_evaluate(a, chars))


@dataclass(frozen=True)
class Prop31Result:
    forward_ok: bool
    spectrum_inclusion_ok: bool


def check_prop31(a: AlgebraElement, chars: list[Character],
                 tol: float = 1e-6) -> Prop31Result:
    """Invertibility transfer and spectrum inclusion at sampled characters.

    forward_ok: an invertible element has nowhere-vanishing character values.
    spectrum_inclusion_ok: every point of the quaternion spectrum of x(a)
    lies in sp(a), for every sampled character.
    """
    if not a.algebra.is_unital:
        raise NotUnital("Proposition checks need a unit")
    values = j_evaluate(a, chars)
    forward_ok = True
    if is_invertible(a) and values:
        forward_ok = min(qnorm(q) for q in values) > 1e-10
    sp = spectrum(a).points
    inclusion = all(
        min(abs(z - w) for w in sp) <= tol
        for q in values for z in qspectrum(q))
    return Prop31Result(forward_ok, inclusion)


def full_spectrum_match(a: AlgebraElement, chars: list[Character],
                        tol: float = 1e-6) -> bool:
    """sp(a) equals the union of quaternion spectra of the character values.

    Only meaningful when chars covers the whole character space, which for
    this package means products of R, C and H components.
    """
    union = [z for q in j_evaluate(a, chars) for z in qspectrum(q)]
    if not union:
        return False
    sp = spectrum(a).points
    fwd = all(min(abs(z - w) for w in sp) <= tol for z in union)
    bwd = all(min(abs(z - w) for z in union) <= tol for w in sp)
    return fwd and bwd


def nonexistence_explanation(algebra: FiniteDimRealAlgebra):
    """Why an empty search result is structural, when that is diagnosable.

    Looks for a nonzero basis element with vanishing spectral radius: such a
    nilpotent rules out any norm with ||a|| <= m*r(a), which is the standing
    hypothesis behind the existence of characters.
    """
    for i in range(algebra.dim):
        e = algebra.basis_element(i)
        r = spectral_radius(e)
        if np.linalg.norm(e.coords) > 0.5 and r <= 1e-10:
            return (f"basis element {algebra.labels[i]} is nilpotent "
                    f"(spectral radius {r:.2e}) but nonzero, so no norm can "
                    f"satisfy ||a|| <= m*r(a) and the character space is empty")
    return None
