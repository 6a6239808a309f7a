"""Effective resistance through the reduced Laplacian and a Lyapunov solve.

Pipeline for a connected digraph on ``N`` nodes:

    L̄ = Q L Qᵀ,   L̄ Σ + Σ L̄ᵀ = I,   X = 2 Qᵀ Σ Q,   r[k, j] = x[k,k] + x[j,j] - 2 x[k,j]

``Q`` is any (N-1)×N matrix with orthonormal rows orthogonal to the ones
vector; the default is the Helmert basis.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.linalg

from .errors import (
    DimensionMismatchError,
    InvalidSizeError,
    MalformedInputError,
    NodeIndexError,
    NotConnectedError,
    SingularSystemError,
)
from .graph import DiGraph, is_connected, laplacian

DEFAULT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class ProjectionBasis:
    q: np.ndarray

    @property
    def n(self) -> int:
        return self.q.shape[1]

    def deviations(self) -> dict[str, float]:
        """Max-norm violation of each defining property."""
        n = self.n
        ones = np.ones(n)
        centering = np.eye(n) - np.ones((n, n)) / n
        return {
            "q_ones": float(np.max(np.abs(self.q @ ones))),
            "q_qt": float(np.max(np.abs(self.q @ self.q.T - np.eye(n - 1)))),
            "qt_q": float(np.max(np.abs(self.q.T @ self.q - centering))),
        }

    def is_valid(self, tol: float = 1e-12) -> bool:
        return all(v <= tol for v in self.deviations().values())


def build_q(n: int) -> ProjectionBasis:
    """Helmert basis: row ``i`` is ``(1, ..., 1, -i, 0, ..., 0) / sqrt(i (i+1))`` with ``i`` ones."""
    if n < 2:
        raise InvalidSizeError(f"projection basis needs n >= 2, got {n}")
    q = np.zeros((n - 1, n))
    for i in range(1, n):
        q[i - 1, :i] = 1.0
        q[i - 1, i] = -i
        q[i - 1] /= np.sqrt(i * (i + 1))
    return ProjectionBasis(q)


def random_projection_basis(n: int, rng: np.random.Generator) -> ProjectionBasis:
    """A random orthonormal basis of the complement of the ones vector."""
    if n < 2:
        raise InvalidSizeError(f"projection basis needs n >= 2, got {n}")
    m = rng.standard_normal((n, n - 1))
    m -= m.mean(axis=0)
    basis, _ = np.linalg.qr(m)
    return ProjectionBasis(basis.T.copy())


def reduced_laplacian(l: np.ndarray, q: ProjectionBasis) -> np.ndarray:
    l = np.asarray(l, dtype=float)
    if l.ndim != 2 or l.shape != (q.n, q.n):
        raise DimensionMismatchError(f"Laplacian shape {l.shape} does not match basis for n={q.n}")
    return q.q @ l @ q.q.T


def lyapunov_residual(lbar: np.ndarray, sigma: np.ndarray) -> float:
    return float(np.max(np.abs(lbar @ sigma + sigma @ lbar.T - np.eye(lbar.shape[0]))))


def solve_sigma(lbar: np.ndarray, tol: float = DEFAULT_TOL, method: str = "kron") -> np.ndarray:
    """Solve ``L̄ Σ + Σ L̄ᵀ = I`` and return the symmetrized solution.

    ``method="kron"`` vectorizes to ``(L̄⊗I + I⊗L̄) vec Σ = vec I`` and uses a
    dense pivoted LU.  ``method="schur"`` uses Bartels-Stewart from SciPy.
    Raises SingularSystemError when the solve is singular or the residual
    exceeds ``tol``.
    """
    lbar = np.asarray(lbar, dtype=float)
    if lbar.ndim != 2 or lbar.shape[0] != lbar.shape[1]:
        raise DimensionMismatchError(f"reduced Laplacian must be square, got shape {lbar.shape}")
    m = lbar.shape[0]
    if m == 0:
        return np.zeros((0, 0))
    eye = np.eye(m)
    if method == "kron":
        kmat = np.kron(lbar, eye) + np.kron(eye, lbar)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
            lu, piv = scipy.linalg.lu_factor(kmat, check_finite=True)
        pivots = np.abs(np.diag(lu))
        scale = max(float(np.max(np.abs(kmat))), 1.0)
        if not np.all(np.isfinite(pivots)) or pivots.min() <= kmat.shape[0] * np.finfo(float).eps * scale:
            raise SingularSystemError("Lyapunov system is singular (is the graph connected?)")
        # row-major vec: vec(L̄Σ) = (L̄⊗I) vec Σ and vec(ΣL̄ᵀ) = (I⊗L̄) vec Σ
        sigma = scipy.linalg.lu_solve((lu, piv), eye.ravel()).reshape(m, m)
    elif method == "schur":
        sigma = scipy.linalg.solve_continuous_lyapunov(lbar, eye)
    else:
        raise ValueError(f"unknown method {method!r}")
    sigma = (sigma + sigma.T) / 2
    residual = lyapunov_residual(lbar, sigma)
    if not np.isfinite(residual) or residual > tol:
        raise SingularSystemError(f"Lyapunov residual {residual:.3e} exceeds tolerance {tol:.1e}")
    return sigma


def x_matrix(sigma: np.ndarray, q: ProjectionBasis) -> np.ndarray:
    sigma = np.asarray(sigma, dtype=float)
    if sigma.shape != (q.n - 1, q.n - 1):
        raise DimensionMismatchError(f"Sigma shape {sigma.shape} does not match basis for n={q.n}")
    return 2.0 * q.q.T @ sigma @ q.q


def resistance(x: np.ndarray, k: int, j: int) -> float:
    """``x[k,k] + x[j,j] - 2 x[k,j]`` with 1-based ``k`` and ``j``."""
    n = x.shape[0]
    for v in (k, j):
        if not isinstance(v, (int, np.integer)) or not 1 <= v <= n:
            raise NodeIndexError(f"node {v!r} outside 1..{n}")
    if k == j:
        return 0.0
    return float(x[k - 1, k - 1] + x[j - 1, j - 1] - 2.0 * x[k - 1, j - 1])


def resistances_from_x(x: np.ndarray) -> np.ndarray:
    d = np.diag(x)
    r = d[:, None] + d[None, :] - 2.0 * x
    np.fill_diagonal(r, 0.0)
    return r


def pipeline(g: DiGraph, q: ProjectionBasis | None = None, tol: float = DEFAULT_TOL,
             method: str = "kron") -> dict[str, np.ndarray]:
    """Run every stage and return the intermediates (``L``, ``Lbar``, ``Sigma``, ``X``, ``R``)."""
    if not is_connected(g):
        raise NotConnectedError("graph has no globally reachable node")
    l = laplacian(g)
    if g.n == 1:
        zero = np.zeros((1, 1))
        return {"L": l, "Lbar": np.zeros((0, 0)), "Sigma": np.zeros((0, 0)), "X": zero, "R": zero}
    q = q or build_q(g.n)
    lbar = reduced_laplacian(l, q)
    sigma = solve_sigma(lbar, tol=tol, method=method)
    x = x_matrix(sigma, q)
    return {"L": l, "Lbar": lbar, "Sigma": sigma, "X": x, "R": resistances_from_x(x)}


def graph_x_matrix(g: DiGraph, q: ProjectionBasis | None = None, tol: float = DEFAULT_TOL,
                   method: str = "kron") -> np.ndarray:
    return pipeline(g, q=q, tol=tol, method=method)["X"]


def resistance_matrix(g: DiGraph, q: ProjectionBasis | None = None, tol: float = DEFAULT_TOL,
                      method: str = "kron") -> np.ndarray:
    """All pairwise effective resistances from a single Lyapunov solve."""
    return pipeline(g, q=q, tol=tol, method=method)["R"]


def x_from_resistances(r: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Invert the resistance map:
    ``x[k,j] = (Σ_i r[k,i] + Σ_i r[j,i]) / 2N - (Σ_{i<l} r[i,l]) / N² - r[k,j] / 2``."""
    r = np.asarray(r, dtype=float)
    if r.ndim != 2 or r.shape[0] != r.shape[1]:
        raise MalformedInputError(f"resistance matrix must be square, got shape {r.shape}")
    if np.max(np.abs(r - r.T), initial=0.0) > tol:
        raise MalformedInputError("resistance matrix is not symmetric")
    if np.max(np.abs(np.diag(r)), initial=0.0) > tol:
        raise MalformedInputError("resistance matrix has a nonzero diagonal")
    n = r.shape[0]
    rows = r.sum(axis=1)
    upper = np.triu(r, k=1).sum()
    return (rows[:, None] + rows[None, :]) / (2 * n) - upper / n**2 - r / 2


def x_path_entry(n_nodes: int, k: int, j: int) -> Fraction:
    """Exact ``X`` entry for the unit directed path labelled from its root (node 1)."""
    for v in (k, j):
        if not 1 <= v <= n_nodes:
            raise NodeIndexError(f"node {v} outside 1..{n_nodes}")
    n = n_nodes
    num = 2 * n * n + 3 * n + 1 + 3 * k * k + 3 * j * j - 3 * (n + 1) * k - 3 * (n + 1) * j
    return Fraction(num, 3 * n) - abs(k - j)
