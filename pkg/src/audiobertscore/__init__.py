"""Embedding-similarity scoring for synthesized audio.

Compares a synthesized clip against a reference clip through the cosine
similarities of their frame-embedding sequences, scored by max-based,
power-mean (p-norm), and affinely interpolated precision/recall/F1, and
evaluates scoring variants by Pearson/Spearman correlation against
subjective ratings.
"""

from ._backend import HAVE_COMPILED, backend_name
from .errors import (
    AudioBertScoreError,
    BadMagic,
    BadShape,
    ConstantVector,
    DegenerateHarmonicMean,
    DimensionMismatch,
    DuplicateId,
    FortranOrderUnsupported,
    IoFailure,
    MissingFile,
    NegativeSimilarity,
    NotRiff,
    ParseError,
    ShapeNot2D,
    TooShort,
    TruncatedPayload,
    UnsupportedChannelCount,
    UnsupportedCodec,
    UnsupportedDtype,
    ZeroNormFrame,
)
from .metric import (
    EmbeddingSequence,
    NegativeSimPolicy,
    ScoreTriple,
    ScoringConfig,
    ScoringMode,
    SimilarityMatrix,
    ZeroVectorPolicy,
    cosine_similarity_matrix,
    score,
    score_interpolated,
    score_max,
    score_pnorm,
)
from .stats import (
    CorrelationReport,
    PairedSamples,
    correlation_report,
    fractional_ranks,
    pearson_lcc,
    spearman_srcc,
)

__version__ = "0.1.0"

__all__ = [
    "AudioBertScoreError",
    "BadMagic",
    "BadShape",
    "ConstantVector",
    "CorrelationReport",
    "DegenerateHarmonicMean",
    "DimensionMismatch",
    "DuplicateId",
    "EmbeddingSequence",
    "FortranOrderUnsupported",
    "HAVE_COMPILED",
    "IoFailure",
    "MissingFile",
    "NegativeSimPolicy",
    "NegativeSimilarity",
    "NotRiff",
    "PairedSamples",
    "ParseError",
    "ScoreTriple",
    "ScoringConfig",
    "ScoringMode",
    "ShapeNot2D",
    "SimilarityMatrix",
    "TooShort",
    "TruncatedPayload",
    "UnsupportedChannelCount",
    "UnsupportedCodec",
    "UnsupportedDtype",
    "ZeroNormFrame",
    "ZeroVectorPolicy",
    "backend_name",
    "correlation_report",
    "cosine_similarity_matrix",
    "fractional_ranks",
    "pearson_lcc",
    "score",
    "score_interpolated",
    "score_max",
    "score_pnorm",
    "spearman_srcc",
    "__version__",
]
