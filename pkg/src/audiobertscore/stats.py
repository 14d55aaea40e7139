"""Correlation statistics between objective scores and subjective ratings.

Pearson's linear correlation (LCC) and Spearman's rank correlation
(SRCC). SRCC is computed as the Pearson correlation of fractional ranks,
which stays correct under ties; the 1 - 6*sum(d^2)/... shortcut does not
and is only used by tests as a tie-free cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConstantVector


@dataclass(frozen=True)
class PairedSamples:
    """Per-sample objective scores paired with subjective scores."""

    objective: np.ndarray
    subjective: np.ndarray

    def __post_init__(self):
        obj = np.asarray(self.objective, dtype=np.float64)
        subj = np.asarray(self.subjective, dtype=np.float64)
        if obj.ndim != 1 or subj.ndim != 1:
            raise ValueError("sample vectors must be 1-D")
        if obj.shape[0] != subj.shape[0]:
            raise ValueError(
                "length mismatch: %d objective vs %d subjective"
                % (obj.shape[0], subj.shape[0])
            )
        if obj.shape[0] < 3:
            raise ValueError("need at least 3 paired samples, got %d" % obj.shape[0])
        if not (np.isfinite(obj).all() and np.isfinite(subj).all()):
            raise ValueError("sample vectors contain NaN or Inf")
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "subjective", subj)

    @property
    def n(self) -> int:
        return self.objective.shape[0]


@dataclass(frozen=True)
class CorrelationReport:
    lcc: float
    srcc: float
    n: int


def pearson_lcc(samples: PairedSamples) -> float:
    """Sample Pearson correlation in float64."""
    x = samples.objective
    y = samples.subjective
    xd = x - x.mean()
    yd = y - y.mean()
    sxx = float(xd @ xd)
    syy = float(yd @ yd)
    if sxx == 0.0:
        raise ConstantVector("objective vector has zero variance")
    if syy == 0.0:
        raise ConstantVector("subjective vector has zero variance")
    return float(xd @ yd) / math.sqrt(sxx * syy)


def fractional_ranks(values) -> np.ndarray:
    """Ranks 1..n with ties averaged over the positions they cover.

    The rank sum is exactly n*(n+1)/2: tied groups get the mean of
    consecutive integers, which is representable as k or k + 0.5.
    """
    v = np.asarray(values, dtype=np.float64)
    if v.ndim != 1 or v.shape[0] == 0:
        raise ValueError("ranks need a non-empty 1-D vector")
    if not np.isfinite(v).all():
        raise ValueError("ranks need finite values")
    order = np.argsort(v, kind="stable")
    ranks = np.empty(v.shape[0], dtype=np.float64)
    i = 0
    n = v.shape[0]
    while i < n:
        j = i
        while j + 1 < n and v[order[j + 1]] == v[order[i]]:
            j += 1
        # positions i..j (0-based) share the average of ranks i+1..j+1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def spearman_srcc(samples: PairedSamples) -> float:
    """Pearson correlation of the fractional ranks of both vectors."""
    return pearson_lcc(
        PairedSamples(
            fractional_ranks(samples.objective),
            fractional_ranks(samples.subjective),
        )
    )


def correlation_report(samples: PairedSamples) -> CorrelationReport:
    return CorrelationReport(
        lcc=pearson_lcc(samples), srcc=spearman_srcc(samples), n=samples.n
    )
