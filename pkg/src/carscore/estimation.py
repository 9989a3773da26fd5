"""Datasets and correlation-model estimation (empirical and shrinkage).

A CorrelationModel is the package's central summary of a regression problem:
the predictor correlation matrix P, the marginal response correlations P_XY,
and the first/second moments needed to move between standardized and raw
scales.  Downstream scoring, selection and fitting all start from here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import linalg
from .errors import DegenerateData, DimensionMismatch, LambdaOutOfRange


def _as_matrix(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2:
        raise DimensionMismatch(f"predictor matrix must be 2-D, got shape {x.shape}")
    return x


def default_names(d: int) -> list[str]:
    return [f"X{j + 1}" for j in range(d)]


@dataclass
class Dataset:
    """An n x d predictor matrix with a length-n response.

    Rejects missing values and zero-variance columns up front; silently
    carrying them forward would bias every correlation downstream.
    """

    x: np.ndarray
    y: np.ndarray
    names: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.x = _as_matrix(self.x)
        self.y = np.asarray(self.y, dtype=float).ravel()
        n, d = self.x.shape
        if not self.names:
            self.names = default_names(d)
        if len(self.names) != d:
            raise DimensionMismatch(f"{len(self.names)} names for {d} columns")
        if self.y.shape[0] != n:
            raise DimensionMismatch(
                f"response has length {self.y.shape[0]}, predictors have {n} rows"
            )
        if n < 3:
            raise DegenerateData(f"need at least 3 observations, got {n}")
        if not np.all(np.isfinite(self.x)) or not np.all(np.isfinite(self.y)):
            raise DegenerateData("data contains missing or non-finite values")
        variances = self.x.var(axis=0)
        if np.any(variances <= 0.0):
            j = int(np.argmin(variances))
            raise DegenerateData(f"column '{self.names[j]}' has zero variance")
        if self.y.var() <= 0.0:
            raise DegenerateData("response has zero variance")

    @property
    def n(self) -> int:
        return self.x.shape[0]

    @property
    def d(self) -> int:
        return self.x.shape[1]


@dataclass
class Moments:
    """Column means/SDs retained for back-transformation of standardized fits."""

    means: np.ndarray
    sds: np.ndarray
    y_mean: float
    y_sd: float


def standardize(data: Dataset) -> tuple[np.ndarray, np.ndarray, Moments]:
    """Center and scale predictors and response to mean 0, sample SD 1.

    SDs use the unbiased denominator n-1 throughout the package.
    """
    means = data.x.mean(axis=0)
    sds = data.x.std(axis=0, ddof=1)
    if np.any(sds <= 0.0):
        j = int(np.argmin(sds))
        raise DegenerateData(f"column '{data.names[j]}' has zero variance")
    y_mean = float(data.y.mean())
    y_sd = float(data.y.std(ddof=1))
    if y_sd <= 0.0:
        raise DegenerateData("response has zero variance")
    z = (data.x - means) / sds
    y_std = (data.y - y_mean) / y_sd
    return z, y_std, Moments(means=means, sds=sds, y_mean=y_mean, y_sd=y_sd)


@dataclass
class CorrelationModel:
    """Estimated (or population) correlation structure of predictors + response.

    ``lam`` is the shrinkage intensity toward the identity correlation matrix;
    0 means a plain empirical estimate.  ``n`` is None for population models
    built from known parameters rather than data.
    """

    p: np.ndarray
    p_xy: np.ndarray
    means: np.ndarray
    sds: np.ndarray
    y_mean: float
    y_sd: float
    lam: float = 0.0
    n: int | None = None
    names: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.p = linalg.symmetrize(self.p)
        self.p_xy = np.asarray(self.p_xy, dtype=float).ravel()
        self.means = np.asarray(self.means, dtype=float).ravel()
        self.sds = np.asarray(self.sds, dtype=float).ravel()
        d = self.p.shape[0]
        if not (self.p_xy.shape[0] == self.means.shape[0] == self.sds.shape[0] == d):
            raise DimensionMismatch("inconsistent dimensions in correlation model")
        if not self.names:
            self.names = default_names(d)
        if len(self.names) != d:
            raise DimensionMismatch(f"{len(self.names)} names for {d} variables")
        if np.any(self.sds <= 0.0) or self.y_sd <= 0.0:
            raise DegenerateData("standard deviations must be positive")

    @property
    def d(self) -> int:
        return self.p.shape[0]

    @property
    def is_empirical(self) -> bool:
        return self.lam == 0.0

    @cached_property
    def p_sqrt(self) -> np.ndarray:
        return linalg.sym_power(self.p, 0.5)

    @cached_property
    def p_inv_sqrt(self) -> np.ndarray:
        return linalg.sym_power(self.p, -0.5)


def _empirical_correlations(z: np.ndarray, y_std: np.ndarray):
    n = z.shape[0]
    p = z.T @ z / (n - 1)
    np.fill_diagonal(p, 1.0)
    p = np.clip((p + p.T) / 2.0, -1.0, 1.0)
    np.fill_diagonal(p, 1.0)
    p_xy = np.clip(z.T @ y_std / (n - 1), -1.0, 1.0)
    return p, p_xy


def estimate_empirical(data: Dataset) -> CorrelationModel:
    """Sample correlation model; the large-sample (n >> d) workhorse."""
    z, y_std, moments = standardize(data)
    p, p_xy = _empirical_correlations(z, y_std)
    return CorrelationModel(
        p=p,
        p_xy=p_xy,
        means=moments.means,
        sds=moments.sds,
        y_mean=moments.y_mean,
        y_sd=moments.y_sd,
        lam=0.0,
        n=data.n,
        names=list(data.names),
    )


def shrinkage_intensity(z: np.ndarray) -> float:
    """Data-driven shrinkage weight toward the identity correlation target.

    Standard James-Stein-type estimate: the summed small-sample variances of
    the off-diagonal correlation entries divided by their summed squares,
    clamped to [0, 1].  ``z`` must be column-standardized (SD denominator n-1).
    """
    n, d = z.shape
    if d < 2:
        return 1.0
    w_bar = z.T @ z / n
    sq_sum = (z**2).T @ (z**2)
    var_r = n / (n - 1.0) ** 3 * (sq_sum - n * w_bar**2)
    r = w_bar * (n / (n - 1.0))
    off = ~np.eye(d, dtype=bool)
    denominator = float((r[off] ** 2).sum())
    if denominator <= 0.0:
        return 1.0
    return float(np.clip(var_r[off].sum() / denominator, 0.0, 1.0))


def estimate_shrinkage(data: Dataset, lam: float | None = None) -> CorrelationModel:
    """Shrinkage correlation model lam*I + (1-lam)*R_emp for small n, large d.

    ``lam`` is estimated from the data unless given explicitly.  Only P is
    shrunk; the marginal correlations P_XY stay empirical, which keeps the
    CAR-score null distribution of the empirical estimator intact.
    """
    z, y_std, moments = standardize(data)
    p_emp, p_xy = _empirical_correlations(z, y_std)
    if lam is None:
        lam = shrinkage_intensity(z)
    elif not 0.0 <= lam <= 1.0:
        raise LambdaOutOfRange(f"lambda must be in [0, 1], got {lam}")
    p = (1.0 - lam) * p_emp + lam * np.eye(data.d)
    return CorrelationModel(
        p=p,
        p_xy=p_xy,
        means=moments.means,
        sds=moments.sds,
        y_mean=moments.y_mean,
        y_sd=moments.y_sd,
        lam=float(lam),
        n=data.n,
        names=list(data.names),
    )


def population_model(
    p,
    b,
    sigma: float,
    a: float = 0.0,
    means=None,
    sds=None,
    names: list[str] | None = None,
) -> CorrelationModel:
    """Exact CorrelationModel from known correlation P, coefficients b, noise SD.

    Bypasses estimation entirely; used for population analyses and as the
    ground truth of simulation scenarios.  Predictors default to zero mean and
    unit variance.
    """
    p = linalg.symmetrize(p)
    b = np.asarray(b, dtype=float).ravel()
    d = p.shape[0]
    if b.shape[0] != d:
        raise DimensionMismatch(f"{b.shape[0]} coefficients for {d} variables")
    if sigma <= 0.0:
        raise DegenerateData(f"noise SD must be positive, got {sigma}")
    means = np.zeros(d) if means is None else np.asarray(means, dtype=float).ravel()
    sds = np.ones(d) if sds is None else np.asarray(sds, dtype=float).ravel()
    v_sqrt = sds
    sigma_full = p * np.outer(v_sqrt, v_sqrt)
    var_y = float(b @ sigma_full @ b + sigma**2)
    y_sd = float(np.sqrt(var_y))
    b_std = v_sqrt * b / y_sd
    p_xy = p @ b_std
    return CorrelationModel(
        p=p,
        p_xy=p_xy,
        means=means,
        sds=sds,
        y_mean=float(a + b @ means),
        y_sd=y_sd,
        lam=0.0,
        n=None,
        names=names or default_names(d),
    )
