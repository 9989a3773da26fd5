"""CAR scores, Mahalanobis decorrelation, and competitor importance measures.

The CAR score of a predictor is its marginal correlation with the response
adjusted by the inverse square root of the predictor correlation matrix:
omega = P^{-1/2} P_XY.  Squared CAR scores decompose the proportion of
explained variance and define the ranking used everywhere else in the package.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    EmptyGroup,
    IndexOutOfRange,
    InvalidParameters,
    PerfectFit,
)
from .estimation import CorrelationModel

PERFECT_FIT_TOL = 1e-12


def car_scores(cm: CorrelationModel) -> np.ndarray:
    """omega = P^{-1/2} P_XY; equals the marginal correlations when P = I."""
    if np.array_equal(cm.p, np.eye(cm.d)):
        return cm.p_xy.copy()
    return cm.p_inv_sqrt @ cm.p_xy


def ranking_order(importance: np.ndarray) -> np.ndarray:
    """Indices sorted by decreasing importance, ties broken by variable index."""
    return np.lexsort((np.arange(len(importance)), -importance))


def decorrelate(cm: CorrelationModel, x) -> np.ndarray:
    """Mahalanobis-decorrelated standardized predictors P^{-1/2} V^{-1/2} (x - mu).

    Accepts a single length-d row or an m x d matrix of rows.  Over the
    population the output has identity covariance, and it is the decorrelation
    closest to the plain standardized predictors.
    """
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    rows = x[None, :] if single else x
    if rows.ndim != 2 or rows.shape[1] != cm.d:
        raise DimensionMismatch(f"expected rows of length {cm.d}, got shape {x.shape}")
    if not np.all(np.isfinite(rows)):
        raise DimensionMismatch("rows must be finite")
    z = (rows - cm.means) / cm.sds
    delta = z @ cm.p_inv_sqrt
    return delta[0] if single else delta


def predict_std(omega, delta) -> float:
    """Standardized best-predictor value omega^T delta(x)."""
    omega = np.asarray(omega, dtype=float).ravel()
    delta = np.asarray(delta, dtype=float).ravel()
    if omega.shape != delta.shape:
        raise DimensionMismatch(
            f"omega has length {omega.shape[0]}, delta has {delta.shape[0]}"
        )
    return float(omega @ delta)


def grouped_score(omega, group) -> float:
    """Grouped CAR score: sqrt of the summed squared scores over a variable set."""
    omega = np.asarray(omega, dtype=float).ravel()
    indices = np.asarray(list(group), dtype=int)
    if indices.size == 0:
        raise EmptyGroup("group must contain at least one variable")
    if np.any(indices < 0) or np.any(indices >= omega.shape[0]):
        raise IndexOutOfRange(
            f"group indices must lie in [0, {omega.shape[0] - 1}]"
        )
    return float(np.sqrt(np.sum(omega[indices] ** 2)))


@dataclass
class CompetitorMeasures:
    """The classical importance measures computed alongside CAR scores."""

    marginal: np.ndarray       # rho_j
    b_std: np.ndarray          # P^{-1} P_XY
    t_scores: np.ndarray       # tau_j, for the supplied degrees of freedom
    partial: np.ndarray        # rho~_j (independent of the d.f. used for tau)
    hoffman_pratt: np.ndarray  # (b_std)_j * rho_j
    genizi: np.ndarray         # sum_k ((P^{1/2})_jk omega_k)^2
    dof: float


def competitor_measures(cm: CorrelationModel, dof: float | None = None) -> CompetitorMeasures:
    """Marginal/standardized/partial measures for comparison with CAR scores.

    ``dof`` defaults to n - d - 1 when the model knows its sample size; the
    partial correlations do not depend on it, the t-scores scale with sqrt(dof).
    """
    if dof is None:
        if cm.n is None or cm.n - cm.d - 1 <= 0:
            raise InvalidParameters(
                "degrees of freedom not derivable from the model; pass dof explicitly"
            )
        dof = cm.n - cm.d - 1
    if dof <= 0:
        raise InvalidParameters(f"degrees of freedom must be positive, got {dof}")

    p_inv = np.linalg.inv(cm.p)
    b_std = p_inv @ cm.p_xy
    omega = car_scores(cm)
    omega_sq_sum = float(omega @ omega)
    if omega_sq_sum >= 1.0 - PERFECT_FIT_TOL:
        raise PerfectFit("explained variance is 1; t-scores are undefined")
    tau = (
        np.diag(p_inv) ** -0.5
        * b_std
        * (1.0 - omega_sq_sum) ** -0.5
        * np.sqrt(dof)
    )
    partial = tau / np.sqrt(tau**2 + dof)
    genizi = ((cm.p_sqrt * omega[None, :]) ** 2).sum(axis=1)
    return CompetitorMeasures(
        marginal=cm.p_xy.copy(),
        b_std=b_std,
        t_scores=tau,
        partial=partial,
        hoffman_pratt=b_std * cm.p_xy,
        genizi=genizi,
        dof=float(dof),
    )


@dataclass
class CarAnalysis:
    """Per-variable CAR scores with the derived ranking.

    ``importance`` is exactly omega**2 and sums to ``r_squared``.  ``ranking``
    lists variable indices by decreasing importance (ties by index), so any
    prefix of it is a candidate model.  ``lam`` and ``n`` are carried from the
    correlation model; exact p-values exist only for lam == 0.
    """

    omega: np.ndarray
    importance: np.ndarray
    ranking: np.ndarray
    r_squared: float
    names: list[str]
    lam: float
    n: int | None
    competitors: CompetitorMeasures | None = None

    @property
    def d(self) -> int:
        return self.omega.shape[0]


def analyze(
    cm: CorrelationModel,
    with_competitors: bool = False,
    dof: float | None = None,
) -> CarAnalysis:
    """Compute CAR scores and the induced variable ranking for a model."""
    omega = car_scores(cm)
    importance = omega**2
    competitors = competitor_measures(cm, dof) if with_competitors else None
    return CarAnalysis(
        omega=omega,
        importance=importance,
        ranking=ranking_order(importance),
        r_squared=float(importance.sum()),
        names=list(cm.names),
        lam=cm.lam,
        n=cm.n,
        competitors=competitors,
    )
