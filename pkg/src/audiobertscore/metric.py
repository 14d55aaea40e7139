"""Similarity matrices between frame-embedding sequences and the scores
computed on them.

A synthesized clip and a reference clip each become an (L, D) embedding
sequence. Their cosine-similarity matrix is scored three ways:

* max: precision is the mean of per-row maxima, recall the mean of
  per-column maxima, F1 their harmonic mean. Maxima are signed.
* pnorm: the per-row maximum is replaced by a power mean with exponent
  p >= 1, so diffuse similarity counts too; p=1 is the plain mean and
  p -> inf recovers the max. Negative entries go through a sign policy
  (absolute value by default) so the power mean stays a norm.
* interpolated: an affine blend lam * max + (1 - lam) * pnorm per
  component. lam may lie outside [0, 1]; extrapolated scores can leave
  [0, 1] and can make F1 undefined, which raises instead of yielding NaN.

All reductions run in float64. Large exponents are safe: the power mean
factors out the row maximum and evaluates exp(p * log(x / xmax)), so
x^p never underflows to zero wholesale.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import (
    DegenerateHarmonicMean,
    DimensionMismatch,
    NegativeSimilarity,
    ZeroNormFrame,
)

# Cosine values may exceed |1| by round-off; anything past this is a bug.
SIMILARITY_TOLERANCE = 1e-9


class ScoringMode(enum.Enum):
    MAX = "max"
    PNORM = "pnorm"
    INTERPOLATED = "interp"


class NegativeSimPolicy(enum.Enum):
    """How p-norm scoring treats negative similarities."""

    ERROR = "error"
    ABSOLUTE_VALUE = "abs"
    CLAMP_TO_ZERO = "clamp"


class ZeroVectorPolicy(enum.Enum):
    """How cosine similarity treats zero-norm frames."""

    ERROR = "error"
    ZERO_SIMILARITY = "zero"


@dataclass(frozen=True)
class EmbeddingSequence:
    """One clip's frame embeddings: L rows (time frames) by D columns."""

    frames: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.frames, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError("frames must be 2-D (L, D), got shape %r" % (arr.shape,))
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("frames must be non-empty, got shape %r" % (arr.shape,))
        if not np.isfinite(arr).all():
            raise ValueError("frames contain NaN or Inf")
        object.__setattr__(self, "frames", arr)

    @property
    def n_frames(self) -> int:
        return self.frames.shape[0]

    @property
    def dim(self) -> int:
        return self.frames.shape[1]


@dataclass(frozen=True)
class SimilarityMatrix:
    """Cosine similarities, one row per generated frame, one column per
    reference frame."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.values, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(
                "similarity matrix must be non-empty 2-D, got shape %r" % (arr.shape,)
            )
        if not np.isfinite(arr).all():
            raise ValueError("similarity matrix contains NaN or Inf")
        if np.abs(arr).max() > 1.0 + SIMILARITY_TOLERANCE:
            raise ValueError(
                "similarity entries must lie in [-1, 1] (tolerance %g)"
                % SIMILARITY_TOLERANCE
            )
        object.__setattr__(self, "values", arr)

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape


@dataclass(frozen=True)
class ScoringConfig:
    """Scoring mode plus its hyperparameters.

    p is required (and must be >= 1) for PNORM and INTERPOLATED; lam is
    required for INTERPOLATED and may take any sign.
    """

    mode: ScoringMode
    p: float | None = None
    lam: float | None = None
    negative_sim_policy: NegativeSimPolicy = NegativeSimPolicy.ABSOLUTE_VALUE

    def __post_init__(self):
        if self.mode in (ScoringMode.PNORM, ScoringMode.INTERPOLATED):
            if self.p is None:
                raise ValueError("p is required for %s scoring" % self.mode.value)
            if not self.p >= 1.0:
                raise ValueError("p must be >= 1, got %r" % (self.p,))
        if self.mode is ScoringMode.INTERPOLATED and self.lam is None:
            raise ValueError("lambda is required for interpolated scoring")


@dataclass(frozen=True)
class ScoreTriple:
    precision: float
    recall: float
    f1: float


def cosine_similarity_matrix(
    gen: EmbeddingSequence,
    ref: EmbeddingSequence,
    zero_vector_policy: ZeroVectorPolicy = ZeroVectorPolicy.ERROR,
) -> SimilarityMatrix:
    """Cosine similarity between every gen frame and every ref frame.

    Rows are normalized in float64 and the matrix is a single BLAS
    product. Zero-norm frames either raise ZeroNormFrame or, under
    ZERO_SIMILARITY, contribute a row/column of zeros.
    """
    if gen.dim != ref.dim:
        raise DimensionMismatch(
            "embedding dimensions differ: gen D=%d, ref D=%d" % (gen.dim, ref.dim)
        )
    gen_unit = _normalized_rows(gen.frames, zero_vector_policy)
    ref_unit = _normalized_rows(ref.frames, zero_vector_policy)
    return SimilarityMatrix(gen_unit @ ref_unit.T)


def _normalized_rows(frames: np.ndarray, policy: ZeroVectorPolicy) -> np.ndarray:
    norms = np.linalg.norm(frames, axis=1)
    zero = norms == 0.0
    if zero.any():
        if policy is ZeroVectorPolicy.ERROR:
            raise ZeroNormFrame(
                "frame %d has zero norm" % int(np.flatnonzero(zero)[0])
            )
        norms = norms.copy()
        norms[zero] = 1.0
    return frames / norms[:, None]


def max_precision_recall(m: SimilarityMatrix) -> tuple[float, float]:
    """(mean of per-row maxima, mean of per-column maxima), signed."""
    return kernels.max_pr(m.values)


def pnorm_precision_recall(
    m: SimilarityMatrix,
    p: float,
    policy: NegativeSimPolicy = NegativeSimPolicy.ABSOLUTE_VALUE,
) -> tuple[float, float]:
    """Power-mean precision/recall at exponent p under the sign policy."""
    if not p >= 1.0:
        raise ValueError("p must be >= 1, got %r" % (p,))
    clamp = policy is NegativeSimPolicy.CLAMP_TO_ZERO
    if policy is NegativeSimPolicy.ERROR and (m.values < 0.0).any():
        i, j = (int(v) for v in np.argwhere(m.values < 0.0)[0])
        raise NegativeSimilarity(
            "similarity [%d][%d] = %r is negative" % (i, j, float(m.values[i, j]))
        )
    return kernels.pnorm_pr(m.values, float(p), clamp)


def interpolate_precision_recall(
    max_pr: tuple[float, float], pnorm_pr: tuple[float, float], lam: float
) -> tuple[float, float]:
    """Affine blend lam * max + (1 - lam) * pnorm, per component.

    At lam=1.0 and lam=0.0 this reproduces the endpoint bit patterns
    exactly (1.0 * x + 0.0 * y == x for finite x, y).
    """
    return (
        lam * max_pr[0] + (1.0 - lam) * pnorm_pr[0],
        lam * max_pr[1] + (1.0 - lam) * pnorm_pr[1],
    )


def triple_from_precision_recall(precision: float, recall: float) -> ScoreTriple:
    """Attach the F1 harmonic mean; raises when precision + recall <= 0."""
    if not precision + recall > 0.0:
        raise DegenerateHarmonicMean(precision, recall)
    f1 = 2.0 * precision * recall / (precision + recall)
    return ScoreTriple(precision, recall, f1)


def score_max(m: SimilarityMatrix) -> ScoreTriple:
    """Max-based precision/recall/F1 (BERTScore-style best-match averages)."""
    precision, recall = max_precision_recall(m)
    return triple_from_precision_recall(precision, recall)


def score_pnorm(
    m: SimilarityMatrix,
    p: float,
    policy: NegativeSimPolicy = NegativeSimPolicy.ABSOLUTE_VALUE,
) -> ScoreTriple:
    """Power-mean precision/recall/F1 at exponent p."""
    precision, recall = pnorm_precision_recall(m, p, policy)
    return triple_from_precision_recall(precision, recall)


def score_interpolated(
    m: SimilarityMatrix,
    lam: float,
    p: float,
    policy: NegativeSimPolicy = NegativeSimPolicy.ABSOLUTE_VALUE,
) -> ScoreTriple:
    """Blend of max and p-norm scores; F1 comes from the blended pair."""
    precision, recall = interpolate_precision_recall(
        max_precision_recall(m), pnorm_precision_recall(m, p, policy), lam
    )
    return triple_from_precision_recall(precision, recall)


def score(
    gen: EmbeddingSequence,
    ref: EmbeddingSequence,
    cfg: ScoringConfig,
    zero_vector_policy: ZeroVectorPolicy = ZeroVectorPolicy.ERROR,
) -> ScoreTriple:
    """End-to-end: cosine similarity matrix, then the configured scoring."""
    m = cosine_similarity_matrix(gen, ref, zero_vector_policy)
    if cfg.mode is ScoringMode.MAX:
        return score_max(m)
    if cfg.mode is ScoringMode.PNORM:
        return score_pnorm(m, cfg.p, cfg.negative_sim_policy)
    return score_interpolated(m, cfg.lam, cfg.p, cfg.negative_sim_policy)
