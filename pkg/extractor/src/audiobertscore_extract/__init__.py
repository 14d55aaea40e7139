"""Per-layer frame-embedding export for audio models.

Feeds the scoring package through its file interfaces: float32 NPY
matrices in a <model>/layer<k>/ directory layout plus metadata sidecars.
"""

from .errors import AudioDecodeError, ExtractError, LayerInvalid, ModelLoadError
from .extract import ExtractorSpec, ExtractResult, extract
from .models import REGISTRY, load_model

__version__ = "0.1.0"

__all__ = [
    "AudioDecodeError",
    "ExtractError",
    "ExtractResult",
    "ExtractorSpec",
    "LayerInvalid",
    "ModelLoadError",
    "REGISTRY",
    "extract",
    "load_model",
    "__version__",
]
