"""Exact null distributions and p-values for empirical correlation statistics.

Under normality the empirical CAR scores share the null distribution of
empirical marginal correlations regardless of the predictor correlation
matrix: the squared score is Beta(1/2, (kappa-1)/2) with kappa = n - 1 and a
symmetric random sign.  Partial correlations use kappa = n - d, and grouped
squared scores of size s are Beta(s/2, (n-s-1)/2).

These nulls hold for plain empirical estimates only; anything computed from a
shrunk correlation matrix is refused.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special, stats

from .errors import InvalidParameters, NullUnavailable, OutOfSupport
from .scores import CarAnalysis

KINDS = ("car", "marginal", "partial", "grouped", "multiple_r2")


@dataclass(frozen=True)
class NullSpec:
    """Null distribution of one statistic kind.

    Signed kinds (car, marginal, partial) describe the statistic itself on
    [-1, 1]; squared kinds (grouped, multiple_r2) describe a sum of squares on
    [0, 1] with density Beta(a, b).
    """

    kind: str
    a: float
    b: float

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidParameters(f"unknown statistic kind '{self.kind}'")
        if self.a <= 0.0 or self.b <= 0.0:
            raise InvalidParameters(
                f"sample size too small for kind '{self.kind}' "
                f"(Beta parameters {self.a}, {self.b})"
            )

    @property
    def signed(self) -> bool:
        return self.kind in ("car", "marginal", "partial")

    @classmethod
    def car(cls, n: int) -> "NullSpec":
        kappa = n - 1
        return cls("car", 0.5, (kappa - 1) / 2.0)

    @classmethod
    def marginal(cls, n: int) -> "NullSpec":
        kappa = n - 1
        return cls("marginal", 0.5, (kappa - 1) / 2.0)

    @classmethod
    def partial(cls, n: int, d: int) -> "NullSpec":
        kappa = n - d
        return cls("partial", 0.5, (kappa - 1) / 2.0)

    @classmethod
    def grouped(cls, n: int, set_size: int) -> "NullSpec":
        if set_size < 1:
            raise InvalidParameters(f"set size must be positive, got {set_size}")
        return cls("grouped", set_size / 2.0, (n - set_size - 1) / 2.0)

    @classmethod
    def multiple_r2(cls, n: int, d: int) -> "NullSpec":
        return cls("multiple_r2", d / 2.0, (n - d - 1) / 2.0)


def null_density(spec: NullSpec, value: float) -> float:
    """Density of the null statistic at ``value``.

    For signed kinds this is |w| * Beta(w^2; 1/2, b) rewritten in a form that
    stays finite at w = 0.
    """
    if spec.signed:
        if not -1.0 <= value <= 1.0:
            raise OutOfSupport(f"signed statistic must lie in [-1, 1], got {value}")
        w_sq = value * value
        if w_sq >= 1.0:
            return float(np.exp(-special.betaln(spec.a, spec.b))) if spec.b == 1.0 else (
                0.0 if spec.b > 1.0 else np.inf
            )
        # |w| * (w^2)^{a-1} (1-w^2)^{b-1} / B(a, b) with a = 1/2
        return float(
            np.exp(-special.betaln(spec.a, spec.b) + (spec.b - 1.0) * np.log1p(-w_sq))
        )
    if not 0.0 <= value <= 1.0:
        raise OutOfSupport(f"squared statistic must lie in [0, 1], got {value}")
    return float(stats.beta.pdf(value, spec.a, spec.b))


def null_cdf(spec: NullSpec, value: float) -> float:
    """Cumulative distribution of the null statistic."""
    if spec.signed:
        w = float(np.clip(value, -1.0, 1.0))
        half_mass = stats.beta.cdf(w * w, spec.a, spec.b) / 2.0
        return float(0.5 + half_mass if w >= 0 else 0.5 - half_mass)
    return float(stats.beta.cdf(np.clip(value, 0.0, 1.0), spec.a, spec.b))


def p_value(spec: NullSpec, observed: float) -> float:
    """Two-sided p-value for signed statistics, upper-tail for squared ones."""
    if not np.isfinite(observed):
        raise InvalidParameters(f"observed statistic must be finite, got {observed}")
    if spec.signed:
        w_sq = min(observed * observed, 1.0)
        return float(stats.beta.sf(w_sq, spec.a, spec.b))
    return float(stats.beta.sf(np.clip(observed, 0.0, 1.0), spec.a, spec.b))


def quantile(spec: NullSpec, p: float) -> float:
    """Inverse of ``p_value``: the non-negative observation with p-value ``p``."""
    if not 0.0 < p <= 1.0:
        raise InvalidParameters(f"p must be in (0, 1], got {p}")
    x = stats.beta.isf(p, spec.a, spec.b)
    return float(np.sqrt(x)) if spec.signed else float(x)


def car_p_values(analysis: CarAnalysis) -> np.ndarray:
    """Per-variable p-values for estimated CAR scores under the empirical null.

    Raises NullUnavailable for shrinkage-derived analyses: the Beta null is a
    property of the plain empirical estimator only.
    """
    if analysis.lam > 0.0:
        raise NullUnavailable(
            "exact CAR-score null distributions require empirical estimates "
            f"(shrinkage intensity was {analysis.lam:.4g})"
        )
    if analysis.n is None:
        raise InvalidParameters("sample size unknown; p-values need n")
    spec = NullSpec.car(analysis.n)
    return np.array([p_value(spec, w) for w in analysis.omega])
