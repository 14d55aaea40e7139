"""Exception types raised across the package.

Everything inherits from AudioBertScoreError so callers can catch the
package's failures with a single except clause. Plain misuse of
constructors (empty matrices, bad config values) raises ValueError.
"""


class AudioBertScoreError(Exception):
    """Base class for all errors raised by this package."""


# -- scoring ---------------------------------------------------------------


class DimensionMismatch(AudioBertScoreError):
    """The two embedding sequences have different feature dimensions."""


class ZeroNormFrame(AudioBertScoreError):
    """A frame embedding has zero Euclidean norm and the policy forbids it."""


class NegativeSimilarity(AudioBertScoreError):
    """A similarity entry is negative and the policy forbids it."""


class DegenerateHarmonicMean(AudioBertScoreError):
    """precision + recall <= 0, so the F1 harmonic mean is undefined."""

    def __init__(self, precision: float, recall: float):
        self.precision = precision
        self.recall = recall
        super().__init__(
            "harmonic mean undefined: precision (%r) + recall (%r) <= 0"
            % (precision, recall)
        )


# -- correlation -----------------------------------------------------------


class ConstantVector(AudioBertScoreError):
    """A sample vector has zero variance, so correlation is undefined."""


# -- embedding files -------------------------------------------------------


class BadMagic(AudioBertScoreError):
    """Not an NPY v1.0 container (magic, version, or header malformed)."""


class UnsupportedDtype(AudioBertScoreError):
    """Embedding file descr is not <f4 or <f8."""


class FortranOrderUnsupported(AudioBertScoreError):
    """Embedding file declares fortran_order=True."""


class ShapeNot2D(AudioBertScoreError):
    """Embedding file shape is not a 2-D (L, D) with positive extents."""


class TruncatedPayload(AudioBertScoreError):
    """Embedding file payload is shorter than the header's shape implies."""


class IoFailure(AudioBertScoreError):
    """An underlying read or write failed."""


# -- manifests -------------------------------------------------------------


class ParseError(AudioBertScoreError):
    """A manifest line could not be parsed; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__("line %d: %s" % (line, message))


class DuplicateId(AudioBertScoreError):
    """Two manifest entries share an id."""


class MissingFile(AudioBertScoreError):
    """A file referenced by a manifest entry does not exist."""


# -- waveform decoding and encoding ----------------------------------------


class TooShort(AudioBertScoreError):
    """The waveform is shorter than one analysis frame."""


class BadShape(AudioBertScoreError):
    """A spectrogram matrix has the wrong number of frequency bins."""


class NotRiff(AudioBertScoreError):
    """The file is not a RIFF/WAVE container."""


class UnsupportedCodec(AudioBertScoreError):
    """The WAV file is not 16-bit integer PCM."""


class UnsupportedChannelCount(AudioBertScoreError):
    """The WAV file is not mono."""
