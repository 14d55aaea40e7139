class ExtractError(Exception):
    """Base class for extractor failures."""


class ModelLoadError(ExtractError):
    """The requested model could not be constructed or its weights loaded."""


class LayerInvalid(ExtractError):
    """The layer selector is not valid for the requested model family."""


class AudioDecodeError(ExtractError):
    """An input audio file could not be decoded to mono PCM."""
