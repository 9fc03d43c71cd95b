"""Distribution fitting and model comparison.

Maximum-likelihood normal and lognormal fits (population 1/n variance), a
Hill tail-index estimator for heavy-tail diagnostics, and an AIC ranking of
candidate families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DegenerateError, DomainError, PositivityError, SizeError

_FAMILY_ORDER = {"normal": 0, "lognormal": 1}


@dataclass(frozen=True)
class FitResult:
    family: str
    params: dict[str, float]
    log_likelihood: float | None
    n: int


class ModelScore(NamedTuple):
    family: str
    aic: float


def fit_normal(samples) -> FitResult:
    """MLE normal fit: mean and population (1/n) standard deviation."""
    x = np.asarray(samples, dtype=np.float64)
    n = x.size
    if n < 2:
        raise SizeError(f"need at least 2 samples, got {n}")
    mu = float(x.mean())
    sigma = float(np.sqrt(np.mean((x - mu) ** 2)))
    if sigma == 0.0:
        raise DegenerateError("all samples equal; normal fit is degenerate")
    log_likelihood = -0.5 * n * math.log(2.0 * math.pi) - n * math.log(sigma) - 0.5 * n
    return FitResult(family="normal", params={"mu": mu, "sigma": sigma},
                     log_likelihood=log_likelihood, n=n)


def fit_lognormal(samples) -> FitResult:
    """Normal fit on logs; log-likelihood carries the -sum(log x) Jacobian."""
    x = np.asarray(samples, dtype=np.float64)
    if np.any(x <= 0.0):
        raise PositivityError("lognormal fit requires strictly positive samples")
    logs = np.log(x)
    base = fit_normal(logs)
    return FitResult(
        family="lognormal",
        params={"mu_log": base.params["mu"], "sigma_log": base.params["sigma"]},
        log_likelihood=base.log_likelihood - float(logs.sum()),
        n=base.n,
    )


def tail_index_hill(samples, k: int) -> float:
    """Hill estimator on absolute values using the top k order statistics:
    alpha_hat = k / sum(log(x_(n-i+1) / x_(n-k)))."""
    x = np.abs(np.asarray(samples, dtype=np.float64))
    n = x.size
    if not 2 <= k < n:
        raise DomainError(f"k must satisfy 2 <= k < n, got k={k}, n={n}")
    x = np.sort(x)
    threshold = x[n - k - 1]
    if threshold <= 0.0:
        raise DegenerateError("threshold order statistic is 0; tail undefined")
    log_excess = np.log(x[n - k:] / threshold)
    total = float(log_excess.sum())
    if total <= 0.0:
        raise DegenerateError("top order statistics all equal the threshold")
    return k / total


def compare_models(samples, candidates) -> list[ModelScore]:
    """Rank candidate families {normal, lognormal} by AIC = 2k - 2 log L
    (k = 2 parameters each), ascending.

    Lognormal is only admissible on positive data and is silently dropped
    otherwise; ties keep the fixed family order (normal before lognormal)
    and, for identical entries, input order.
    """
    names = list(candidates)
    if not names:
        raise SizeError("candidates must be nonempty")
    unknown = [c for c in names if c not in _FAMILY_ORDER]
    if unknown:
        raise DomainError(f"unknown candidate families: {unknown}")
    x = np.asarray(samples, dtype=np.float64)
    positive = bool(np.all(x > 0.0))
    scores: list[ModelScore] = []
    for name in names:
        if name == "lognormal" and not positive:
            continue
        fit = fit_normal(x) if name == "normal" else fit_lognormal(x)
        scores.append(ModelScore(family=name, aic=4.0 - 2.0 * fit.log_likelihood))
    if not scores:
        raise PositivityError("no admissible candidate for nonpositive data")
    scores.sort(key=lambda s: (s.aic, _FAMILY_ORDER[s.family]))
    return scores
