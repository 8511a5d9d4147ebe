"""Discrete orthogonal polynomial bases and dense least squares.

Polynomial columns of a plain Vandermonde matrix become numerically
dependent long before the degrees used here; orthogonalizing the power
basis against the sample set (an Arnoldi iteration on multiplication
by z) yields a Hessenberg recurrence that evaluates the same span
stably at arbitrary points.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import qr, solve_triangular

from .errors import RankError

_BREAKDOWN = 1e-14


@dataclass(frozen=True, eq=False)
class OrthoBasis:
    """Polynomials of degree 0..degree, orthonormal on sample_points.

    ``recurrence`` is the (degree+1) x degree upper-Hessenberg table H of
    the Arnoldi iteration: column k holds the coefficients that turn
    z*q_k into q_{k+1},

        q_{k+1}(z) = (z*q_k(z) - sum_i H[i,k]*q_i(z)) / H[k+1,k].

    Orthonormality is with respect to the uniform discrete inner product
    (1/m)*sum over the m sample points.  ``center`` and ``scale`` are an
    affine change of variable applied to z before the recurrence.
    """

    degree: int
    recurrence: np.ndarray
    sample_points: np.ndarray
    center: complex = 0.0 + 0.0j
    scale: float = 1.0
    columns: np.ndarray | None = None

    def eval_columns(self, z) -> np.ndarray:
        """Basis values at z: shape (len(z), degree+1)."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        w = (z - self.center) / self.scale
        cols = np.empty((z.size, self.degree + 1), dtype=complex)
        cols[:, 0] = 1.0
        for k in range(self.degree):
            v = w * cols[:, k] - cols[:, :k + 1] @ self.recurrence[:k + 1, k]
            cols[:, k + 1] = v / self.recurrence[k + 1, k]
        return cols

    def eval_combo(self, coeffs, z):
        """Evaluate sum coeffs[k]*q_k at z (scalar or array)."""
        z_arr = np.atleast_1d(np.asarray(z, dtype=complex))
        vals = self.eval_columns(z_arr) @ np.asarray(coeffs)
        return vals[0] if np.ndim(z) == 0 else vals

    def monomial_coeffs(self, coeffs) -> np.ndarray:
        """Monomial coefficients (ascending, in z) of sum coeffs[k]*q_k."""
        n = self.degree + 1
        # mono[k] holds the monomial expansion of q_k in the shifted
        # variable w; convert to z at the end.
        mono = np.zeros((n, n), dtype=complex)
        mono[0, 0] = 1.0
        for k in range(self.degree):
            v = np.zeros(n, dtype=complex)
            v[1:k + 2] = mono[k, :k + 1]
            for i in range(k + 1):
                v -= self.recurrence[i, k] * mono[i]
            mono[k + 1] = v / self.recurrence[k + 1, k]
        combo_w = np.asarray(coeffs, dtype=complex) @ mono
        # w = (z - center)/scale: substitute via binomial expansion.
        out = np.zeros(n, dtype=complex)
        shift = -self.center / self.scale
        inv = 1.0 / self.scale
        pascal_row = np.array([1.0 + 0.0j])
        for j in range(n):
            # (z*inv + shift)^j contributes combo_w[j] * binom weights.
            powers = shift ** np.arange(j, -1, -1) * inv ** np.arange(j + 1)
            out[:j + 1] += combo_w[j] * pascal_row * powers
            pascal_row = np.append(pascal_row, 0) + np.append(0, pascal_row)
        return out


def build_ortho_basis(sample_points, degree: int,
                      center: complex = 0.0, scale: float = 1.0,
                      force_real_recurrence: bool = False) -> OrthoBasis:
    """Orthonormalize 1, z, ..., z^degree on the sample set.

    Modified Gram-Schmidt with one full reorthogonalization pass; raises
    RankError if a new column's norm falls below 1e-14 times its
    pre-orthogonalization norm (the sample set cannot resolve that
    degree).  Requires more samples than degree.

    For a sample set closed under conjugation the recurrence table is
    real in exact arithmetic; ``force_real_recurrence`` discards the
    roundoff-level imaginary parts so that evaluation commutes with
    conjugation exactly.
    """
    pts = np.asarray(sample_points, dtype=complex).ravel()
    m = pts.size
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    if m <= degree:
        raise RankError(f"{m} samples cannot determine degree {degree}",
                        effective_rank=m)
    w = (pts - center) / scale
    weight = 1.0 / m
    Q = np.empty((m, degree + 1), dtype=complex)
    Q[:, 0] = 1.0
    H = np.zeros((degree + 1, degree), dtype=complex)
    for k in range(degree):
        v = w * Q[:, k]
        norm_in = np.sqrt(weight * np.vdot(v, v).real)
        for _ in range(2):  # MGS + one reorthogonalization
            for i in range(k + 1):
                hik = weight * np.vdot(Q[:, i], v)
                if force_real_recurrence:
                    hik = hik.real
                H[i, k] += hik
                v = v - hik * Q[:, i]
        norm_out = np.sqrt(weight * np.vdot(v, v).real)
        if norm_out < _BREAKDOWN * norm_in:
            raise RankError(
                f"orthogonalization broke down at degree {k + 1}",
                effective_rank=k + 1)
        H[k + 1, k] = norm_out
        Q[:, k + 1] = v / norm_out
    return OrthoBasis(degree=degree, recurrence=H, sample_points=pts,
                      center=complex(center), scale=float(scale), columns=Q)


@dataclass(frozen=True, eq=False)
class LsSolution:
    """Least-squares solution with diagnostics."""

    coeffs: np.ndarray
    residual_norm: float
    column_norms: np.ndarray
    rank: int


def ls_solve(columns: np.ndarray, rhs: np.ndarray,
             rcond: float = 1e-13) -> LsSolution:
    """Minimize ||columns @ x - rhs||_2 by Householder QR.

    Columns are equilibrated to unit norm before factorization (the
    inverse scaling is folded back into the coefficients); a diagonal
    entry of R below ``rcond`` times the largest flags rank deficiency
    and raises RankError with the effective rank.
    """
    A = np.asarray(columns, dtype=float)
    b = np.asarray(rhs, dtype=float).ravel()
    if A.ndim != 2 or A.shape[0] != b.size:
        raise ValueError("shape mismatch between columns and rhs")
    m, n = A.shape
    if m < n:
        raise ValueError(f"underdetermined system ({m} rows, {n} columns)")
    col_norms = np.linalg.norm(A, axis=0)
    if np.any(col_norms == 0.0):
        raise RankError("zero column in least-squares matrix",
                        effective_rank=int(np.count_nonzero(col_norms)))
    Q, R = qr(A / col_norms, mode="economic")
    diag = np.abs(np.diag(R))
    rank = int(np.count_nonzero(diag > rcond * diag.max()))
    if rank < n:
        raise RankError(f"numerical rank {rank} < {n} columns",
                        effective_rank=rank)
    y = solve_triangular(R, Q.T @ b)
    x = y / col_norms
    residual = float(np.linalg.norm(A @ x - b))
    return LsSolution(coeffs=x, residual_norm=residual,
                      column_norms=col_norms, rank=rank)
