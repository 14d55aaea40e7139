"""Model registry and adapters.

Two built-in models run offline and deterministically, standing in for
pretrained extractors during development and tests:

* ``melproj``: transformer-style, 13 layers; log-mel frames through a
  fixed orthonormal projection derived from (model_id, layer).
* ``melpool``: conv-style with BYOL-A-like selectors ``local`` (frame
  features), ``global`` (causally pooled context), ``local+global``
  (feature-dimension concatenation).

Pretrained adapters (``ast``, and stubs for ``atst-frame`` / ``byola``)
import their heavyweight dependencies lazily and raise ModelLoadError
with guidance when weights or packages are unavailable. No weights are
vendored here.
"""

from __future__ import annotations

import hashlib

import numpy as np

from .errors import LayerInvalid, ModelLoadError
from .features import log_mel

TRANSFORMER_LAYERS = tuple(str(k) for k in range(1, 14))
CONV_TAGS = ("local", "global", "local+global")


def _seeded_rng(*parts: str) -> np.random.Generator:
    digest = hashlib.sha256("/".join(parts).encode("utf-8")).digest()
    return np.random.default_rng(int.from_bytes(digest[:8], "little"))


def _orthonormal(seed_parts: tuple[str, ...], rows: int, cols: int) -> np.ndarray:
    q, _ = np.linalg.qr(_seeded_rng(*seed_parts).normal(size=(rows, max(rows, cols))))
    return q[:, :cols]


class MelProjectionModel:
    """Deterministic 13-layer stand-in: log-mel through per-layer fixed
    orthonormal projections."""

    model_id = "melproj"
    dim = 64

    def __init__(self, device: str = "cpu"):
        del device  # pure NumPy

    def valid_layers(self):
        return TRANSFORMER_LAYERS

    def extract(self, samples: np.ndarray, sample_rate: int, layer: str) -> np.ndarray:
        if layer not in TRANSFORMER_LAYERS:
            raise LayerInvalid(
                "%s: layer %r not in 1..13" % (self.model_id, layer)
            )
        features = log_mel(samples, sample_rate)
        projection = _orthonormal((self.model_id, "layer", layer), 64, self.dim)
        return (features @ projection).astype(np.float32)


class MelPoolModel:
    """Deterministic conv-style stand-in with local/global selectors."""

    model_id = "melpool"
    dim_local = 48
    dim_global = 32

    def __init__(self, device: str = "cpu"):
        del device

    def valid_layers(self):
        return CONV_TAGS

    def extract(self, samples: np.ndarray, sample_rate: int, layer: str) -> np.ndarray:
        if layer not in CONV_TAGS:
            raise LayerInvalid(
                "%s: layer %r not in {local, global, local+global}"
                % (self.model_id, layer)
            )
        features = log_mel(samples, sample_rate)
        parts = []
        if layer in ("local", "local+global"):
            parts.append(features @ _orthonormal((self.model_id, "local"), 64, self.dim_local))
        if layer in ("global", "local+global"):
            # causal running mean: every frame summarizes the clip so far
            pooled = np.cumsum(features, axis=0) / np.arange(1, len(features) + 1)[:, None]
            parts.append(pooled @ _orthonormal((self.model_id, "global"), 64, self.dim_global))
        return np.concatenate(parts, axis=1).astype(np.float32)


class AstAdapter:
    """Audio spectrogram transformer via the transformers library.

    Layer k selects hidden_states[k - 1] (k=1 is the patch-embedding
    output, k=13 the final block). Weights download on first use.
    """

    checkpoint = "MIT/ast-finetuned-audioset-10-10-0.4593"
    model_id = "ast"

    def __init__(self, device: str = "cpu"):
        try:
            import torch
            from transformers import ASTFeatureExtractor, ASTModel
        except ImportError as exc:
            raise ModelLoadError(
                "ast requires the 'models' extra (pip install "
                "audiobertscore-extract[models]): %s" % exc
            ) from exc
        try:
            self._frontend = ASTFeatureExtractor.from_pretrained(self.checkpoint)
            self._model = ASTModel.from_pretrained(self.checkpoint).to(device).eval()
        except Exception as exc:  # weights unavailable, offline, ...
            raise ModelLoadError("cannot load %s: %s" % (self.checkpoint, exc)) from exc
        self._torch = torch
        self._device = device

    def valid_layers(self):
        return TRANSFORMER_LAYERS

    def extract(self, samples: np.ndarray, sample_rate: int, layer: str) -> np.ndarray:
        if layer not in TRANSFORMER_LAYERS:
            raise LayerInvalid("%s: layer %r not in 1..13" % (self.model_id, layer))
        inputs = self._frontend(
            samples, sampling_rate=sample_rate, return_tensors="pt"
        ).to(self._device)
        with self._torch.no_grad():
            outputs = self._model(**inputs, output_hidden_states=True)
        hidden = outputs.hidden_states[int(layer) - 1][0]
        return hidden.cpu().numpy().astype(np.float32)


def _unavailable(model_id: str, package: str, url_hint: str):
    class _Stub:
        def __init__(self, device: str = "cpu"):
            raise ModelLoadError(
                "%s requires the %r package and its released checkpoint "
                "(%s); install it and retry" % (model_id, package, url_hint)
            )

    _Stub.model_id = model_id
    return _Stub


REGISTRY = {
    "melproj": MelProjectionModel,
    "melpool": MelPoolModel,
    "ast": AstAdapter,
    "atst-frame": _unavailable("atst-frame", "audiossl", "the audiossl release"),
    "byola": _unavailable("byola", "byol_a", "the byol-a v2 release"),
}


def load_model(model_id: str, device: str = "cpu"):
    try:
        factory = REGISTRY[model_id]
    except KeyError:
        raise ModelLoadError(
            "unknown model %r (available: %s)" % (model_id, ", ".join(sorted(REGISTRY)))
        ) from None
    return factory(device=device)
