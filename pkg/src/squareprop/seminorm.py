"""Structured seminorms: evaluation, square-property and ratio checks, kernels.

Seminorms are first-class records rather than opaque callables so that
their kernels come out as exact linear subspaces; that exactness is what
the quotient construction downstream depends on.  An opaque escape hatch
exists but cannot feed the quotient stages.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .algebra import FiniteDimRealAlgebra, AlgebraElement, left_regular_matrix, unitize
from .spectral import spectral_radius, spectral_radius_batch

RATIO_FLOOR = 1e-12
M_HAT_FLOOR = 1e-12


class SeminormError(Exception):
    pass


class PayloadMismatch(SeminormError):
    pass


class UnsupportedVariant(SeminormError):
    pass


def _nullspace(M: np.ndarray, rtol: float = 1e-10) -> np.ndarray:
    """Rows spanning the right null space of M."""
    if M.size == 0:
        return np.eye(M.shape[1])
    _, s, Vt = np.linalg.svd(M)
    smax = s[0] if s.size else 0.0
    rank = int((s > rtol * max(smax, 1.0)).sum())
    return Vt[rank:]


class SeminormVariant:
    """Base: a seminorm evaluatable on one algebra's elements."""

    def check_payload(self, algebra: FiniteDimRealAlgebra) -> None:
        pass

    def value(self, a: AlgebraElement) -> float:
        raise NotImplementedError

    def values(self, algebra: FiniteDimRealAlgebra, X: np.ndarray) -> np.ndarray:
        return np.array([self.value(algebra.element(row)) for row in X])

    def kernel(self, algebra: FiniteDimRealAlgebra) -> np.ndarray:
        raise UnsupportedVariant(type(self).__name__)


@dataclass(frozen=True)
class CharacterSup(SeminormVariant):
    """p(a) = max |x(a)| over a fixed list of characters."""

    characters: tuple  # Character records or (n, 4) image arrays

    def _images(self, algebra) -> np.ndarray:
        mats = [np.asarray(getattr(ch, "images", ch), dtype=float)
                for ch in self.characters]
        stack = np.stack(mats)
        if stack.shape[1:] != (algebra.dim, 4):
            raise PayloadMismatch(
                f"character images shaped {stack.shape[1:]}, "
                f"need ({algebra.dim}, 4)")
        return stack

    def check_payload(self, algebra):
        if not self.characters:
            raise PayloadMismatch("character_sup needs at least one character")
        self._images(algebra)

    def value(self, a):
        return float(self.values(a.algebra, a.coords[None, :])[0])

    def values(self, algebra, X):
        imgs = self._images(algebra)
        vals = np.einsum("sn,mnq->smq", X, imgs)
        return np.sqrt((vals * vals).sum(axis=2)).max(axis=1)

    def kernel(self, algebra):
        imgs = self._images(algebra)  # (m, n, 4)
        M = np.concatenate([imgs[m].T for m in range(imgs.shape[0])])
        return _nullspace(M)


@dataclass(frozen=True)
class SpectralRadius(SeminormVariant):
    """p(a) = max modulus of the spectrum of a."""

    def value(self, a):
        return spectral_radius(a)

    def values(self, algebra, X):
        return spectral_radius_batch(algebra, X)

    def kernel(self, algebra):
        # Dickson trace criterion: x is in the radical (the zero set of the
        # spectral radius in the seminorm case) iff tr(L_(x a)) = 0 for all a,
        # taken in the unital hull when there is no unit.
        hull = algebra if algebra.is_unital else unitize(algebra)
        pad = hull.dim - algebra.dim
        M = np.zeros((algebra.dim, hull.dim))
        for i in range(algebra.dim):
            xi = np.concatenate([np.zeros(pad), np.eye(algebra.dim)[i]])
            for j in range(hull.dim):
                prod = hull.mul_coords(xi, np.eye(hull.dim)[j])
                M[i, j] = np.trace(
                    np.einsum("i,ijk->kj", prod, hull.table))
        return _nullspace(M.T)


@dataclass(frozen=True)
class CoordinateMax(SeminormVariant):
    """p(a) = max_i weight_i |coord_i|; weights default to 1."""

    weights: Optional[tuple] = None

    def _w(self, algebra):
        if self.weights is None:
            return np.ones(algebra.dim)
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (algebra.dim,):
            raise PayloadMismatch(f"{w.size} weights for dim {algebra.dim}")
        if (w < 0).any():
            raise PayloadMismatch("weights must be nonnegative")
        return w

    def check_payload(self, algebra):
        self._w(algebra)

    def value(self, a):
        return float((self._w(a.algebra) * np.abs(a.coords)).max())

    def values(self, algebra, X):
        return (self._w(algebra) * np.abs(X)).max(axis=1)

    def kernel(self, algebra):
        w = self._w(algebra)
        return np.eye(algebra.dim)[w == 0.0]


@dataclass(frozen=True)
class CoordinateSum(SeminormVariant):
    """l1-style p(a) = sum_i weight_i |coord_i|; lacks the square property
    on most algebras, which makes it the standard hypothesis-rejection case."""

    weights: Optional[tuple] = None

    _w = CoordinateMax._w
    check_payload = CoordinateMax.check_payload
    kernel = CoordinateMax.kernel

    def value(self, a):
        return float((self._w(a.algebra) * np.abs(a.coords)).sum())

    def values(self, algebra, X):
        return (self._w(algebra) * np.abs(X)).sum(axis=1)


@dataclass(frozen=True)
class OperatorNorm(SeminormVariant):
    """p(a) = largest singular value of the left regular matrix."""

    def value(self, a):
        return float(np.linalg.norm(left_regular_matrix(a), 2))

    def values(self, algebra, X):
        L = algebra.left_matrices_batch(X)
        return np.linalg.svd(L, compute_uv=False)[:, 0]

    def kernel(self, algebra):
        n = algebra.dim
        M = algebra.table.reshape(n, n * n).T  # rows (j,k), columns i
        return _nullspace(M)


@dataclass(frozen=True)
class ComponentSup(SeminormVariant):
    """Max-abs over a subset of coordinates; kernel = the excluded ones."""

    subset: tuple

    def _idx(self, algebra):
        idx = np.asarray(self.subset, dtype=int)
        if idx.size == 0 or idx.min() < 0 or idx.max() >= algebra.dim:
            raise PayloadMismatch(
                f"subset {self.subset} invalid for dim {algebra.dim}")
        return idx

    def check_payload(self, algebra):
        self._idx(algebra)

    def value(self, a):
        return float(np.abs(a.coords[self._idx(a.algebra)]).max())

    def values(self, algebra, X):
        return np.abs(X[:, self._idx(algebra)]).max(axis=1)

    def kernel(self, algebra):
        keep = np.ones(algebra.dim, dtype=bool)
        keep[self._idx(algebra)] = False
        return np.eye(algebra.dim)[keep]


@dataclass(frozen=True)
class OpaqueSeminorm(SeminormVariant):
    """Escape hatch for a bare callable; kernel stages are unavailable."""

    fn: Callable[[AlgebraElement], float]

    def value(self, a):
        return float(self.fn(a))


def evaluate(p: SeminormVariant, a: AlgebraElement) -> float:
    p.check_payload(a.algebra)
    return p.value(a)


def kernel(p: SeminormVariant, algebra: FiniteDimRealAlgebra) -> np.ndarray:
    """Basis (rows) of Ker(p) as an exact linear subspace."""
    return p.kernel(algebra)


def _sample(algebra, count, rng):
    return rng.standard_normal((count, algebra.dim))


def _square_probes(algebra) -> np.ndarray:
    """Deterministic probes: scaled basis vectors and pairwise sums."""
    n = algebra.dim
    eye = np.eye(n)
    rows = [eye]
    pair_sums = [eye[i] + eye[j] for i in range(n) for j in range(i + 1, n)]
    pair_diffs = [eye[i] - eye[j] for i in range(n) for j in range(i + 1, n)]
    if pair_sums:
        rows += [np.array(pair_sums), np.array(pair_diffs)]
    base = np.concatenate(rows)
    return np.concatenate([base * s for s in (1.0, 2.0, 8.0)])


@dataclass(frozen=True)
class SquareCheck:
    residual: float
    witness: np.ndarray  # coordinates of the maximizing sample


def square_property_details(p: SeminormVariant, algebra: FiniteDimRealAlgebra,
                            samples: int = 2000, seed: int = 0) -> SquareCheck:
    """Max of |p(a^2) - p(a)^2| / (1 + p(a)^2) over probes and random samples."""
    p.check_payload(algebra)
    rng = np.random.default_rng(seed)
    X = np.concatenate([_square_probes(algebra), _sample(algebra, samples, rng)])
    pa = p.values(algebra, X)
    pa2 = p.values(algebra, algebra.mul_coords_batch(X, X))
    res = np.abs(pa2 - pa ** 2) / (1.0 + pa ** 2)
    i = int(np.argmax(res))
    return SquareCheck(float(res[i]), X[i])


def check_square_property(p, algebra, samples: int = 2000, seed: int = 0) -> float:
    return square_property_details(p, algebra, samples, seed).residual


def _ratio_scan(p, algebra, samples, seed):
    """All (ratio, a, b) candidates: deterministic basis sweep plus random
    pairs normalized to p = 1 where possible."""
    p.check_payload(algebra)
    rng = np.random.default_rng(seed)
    eye = np.eye(algebra.dim)
    A = np.repeat(eye, algebra.dim, axis=0)
    B = np.tile(eye, (algebra.dim, 1))
    Xa = _sample(algebra, samples, rng)
    Xb = _sample(algebra, samples, rng)
    A = np.concatenate([A, Xa])
    B = np.concatenate([B, Xb])
    va = p.values(algebra, A)
    vb = p.values(algebra, B)
    scale = 1.0 + max(va.max(), vb.max(), 1.0)
    ok = va * vb > RATIO_FLOOR * scale ** 2
    # normalize the random block to p = 1 so ratio statistics are scale-free
    A, B, va, vb = A[ok], B[ok], va[ok], vb[ok]
    A = A / va[:, None]
    B = B / vb[:, None]
    vab = p.values(algebra, algebra.mul_coords_batch(A, B))
    return vab, A, B


def check_submultiplicative(p, algebra, samples: int = 2000, seed: int = 0) -> float:
    """Max of p(ab) / (p(a) p(b)) over basis pairs and random samples."""
    ratios, _, _ = _ratio_scan(p, algebra, samples, seed)
    return float(ratios.max()) if ratios.size else 0.0


@dataclass(frozen=True)
class MEstimate:
    m_hat: float
    pair: tuple  # (coords a, coords b) achieving the max ratio


def estimate_m(p, algebra, samples: int = 2000, seed: int = 0) -> MEstimate:
    """Sampled working constant for p(ab) <= m p(a) p(b); a lower bound of
    the true m, floored at 1e-12."""
    ratios, A, B = _ratio_scan(p, algebra, samples, seed)
    if ratios.size == 0:
        return MEstimate(M_HAT_FLOOR, (np.zeros(algebra.dim),) * 2)
    i = int(np.argmax(ratios))
    return MEstimate(max(M_HAT_FLOOR, float(ratios[i])), (A[i], B[i]))
