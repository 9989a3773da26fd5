"""Symmetric-matrix functions: powers, square roots, and a d >> n fast path.

All matrix powers go through a full symmetric eigendecomposition.  The
dimension is moderate in every intended use (after shrinkage or prescreening),
so determinism and accuracy win over iterative schemes.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    DegenerateData,
    DimensionMismatch,
    LambdaOutOfRange,
    NotPositiveDefinite,
)

# Relative eigenvalue threshold below which a matrix is treated as singular.
EIG_TOL = 1e-12

# Maximum relative asymmetry accepted by ``symmetrize``.
SYM_TOL = 1e-10


def symmetrize(m, tol: float = SYM_TOL) -> np.ndarray:
    """Return (M + M^T)/2 after checking that M is square and nearly symmetric.

    Asymmetry beyond ``tol`` (relative to the largest entry) is rejected:
    silently symmetrizing a genuinely asymmetric matrix hides caller bugs.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    scale = max(1.0, np.abs(m).max())
    asym = np.abs(m - m.T).max()
    if asym > tol * scale:
        raise DimensionMismatch(
            f"matrix is not symmetric (max asymmetry {asym:.3g})"
        )
    return (m + m.T) / 2.0


def spectral_decomposition(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a symmetric matrix.

    Returns (eigenvalues, eigenvectors) with eigenvalues sorted in descending
    order and eigenvectors as orthonormal columns.
    """
    m = symmetrize(m)
    values, vectors = np.linalg.eigh(m)
    return values[::-1], vectors[:, ::-1]


def sym_power(m, p: float, tol: float = EIG_TOL) -> np.ndarray:
    """Compute M^p for symmetric M via Q diag(w)^p Q^T.

    Negative powers require all eigenvalues to exceed ``tol`` times the largest
    eigenvalue; otherwise NotPositiveDefinite is raised rather than silently
    regularizing.  For positive non-integer powers, slightly negative
    eigenvalues (roundoff) are clamped to the threshold.
    """
    values, vectors = spectral_decomposition(m)
    cutoff = tol * max(values[0], 0.0)
    if p < 0 and values[-1] <= cutoff:
        raise NotPositiveDefinite(
            f"eigenvalue {values[-1]:.3g} below threshold {cutoff:.3g} "
            f"with negative power {p}"
        )
    w = values
    if p > 0 and p != int(p):
        if values[-1] < -SYM_TOL * max(values[0], 1.0):
            raise NotPositiveDefinite(
                f"eigenvalue {values[-1]:.3g} is negative; fractional power undefined"
            )
        w = np.maximum(values, cutoff)
    result = (vectors * w**p) @ vectors.T
    return (result + result.T) / 2.0


def is_positive_definite(m, tol: float = EIG_TOL) -> bool:
    """True if every eigenvalue exceeds ``tol`` times the largest one."""
    values, _ = spectral_decomposition(m)
    return bool(values[-1] > tol * max(values[0], 0.0))


class ShrinkageInverseSqrt:
    """Implicit R_shrink^{-1/2} for R_shrink = lam*I + (1-lam)*R_emp.

    R_emp is the empirical correlation matrix of column-standardized data Z
    (n x d, unit sample SD with denominator n-1).  Because R_emp has rank at
    most min(n, d), the operator is built from the SVD of Z in O(n^2 d + n^3)
    time and applied in O(n d), never forming the d x d matrix.

    Writing Z/sqrt(n-1) = U S W^T, the eigenvalues of R_shrink are
    lam + (1-lam) s_i^2 on span(W) and lam on its orthogonal complement, so

        R_shrink^{-1/2} v = lam^{-1/2} v + W ((lam + (1-lam) s^2)^{-1/2}
                                             - lam^{-1/2}) W^T v.
    """

    def __init__(self, data_std, lam: float):
        if not 0.0 < lam <= 1.0:
            raise LambdaOutOfRange(f"lambda must be in (0, 1], got {lam}")
        z = np.asarray(data_std, dtype=float)
        if z.ndim != 2:
            raise DimensionMismatch(f"expected an n x d matrix, got shape {z.shape}")
        n, d = z.shape
        variances = z.var(axis=0)
        if np.any(variances <= 0.0):
            j = int(np.argmin(variances))
            raise DegenerateData(f"column {j} has zero variance")
        self.lam = float(lam)
        self.dim = d
        _, s, wt = np.linalg.svd(z / np.sqrt(n - 1), full_matrices=False)
        self._w = wt.T
        self._eigs = lam + (1.0 - lam) * s**2

    def apply(self, v) -> np.ndarray:
        """Apply R_shrink^{-1/2} to a length-d vector or d x k matrix."""
        v = np.asarray(v, dtype=float)
        if v.shape[0] != self.dim:
            raise DimensionMismatch(
                f"operator has dimension {self.dim}, input has {v.shape[0]}"
            )
        base = self.lam**-0.5
        coeff = self._eigs**-0.5 - base
        proj = self._w.T @ v
        if proj.ndim == 1:
            return base * v + self._w @ (coeff * proj)
        return base * v + self._w @ (coeff[:, None] * proj)


def shrinkage_inverse_sqrt(data_std, lam: float) -> ShrinkageInverseSqrt:
    """Build the implicit R_shrink^{-1/2} operator for standardized data."""
    return ShrinkageInverseSqrt(data_std, lam)
