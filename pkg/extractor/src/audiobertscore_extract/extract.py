"""Batch export of per-layer frame embeddings into the NPY interchange
layout: <output_dir>/<model_id>/layer<k>/<clip_id>.npy plus a
metadata.jsonl sidecar with one line per exported clip.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ExtractError, LayerInvalid
from .features import read_wav_mono, resolve_clip_id
from .models import load_model

log = logging.getLogger("audiobertscore_extract")


@dataclass(frozen=True)
class ExtractorSpec:
    model_id: str
    layer: str  # "1".."13" or local / global / local+global
    output_dir: Path
    device: str = "cpu"


@dataclass
class ExtractResult:
    layer_dir: Path
    written: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def extract(spec: ExtractorSpec, wav_paths) -> ExtractResult:
    """Export one NPY per input WAV. Per-file failures are logged and
    skipped; the result records them so callers can exit nonzero."""
    model = load_model(spec.model_id, spec.device)
    if spec.layer not in model.valid_layers():
        raise LayerInvalid(
            "%s: layer %r not valid (choose from %s)"
            % (spec.model_id, spec.layer, ", ".join(model.valid_layers()))
        )

    layer_dir = Path(spec.output_dir) / spec.model_id / ("layer%s" % spec.layer)
    layer_dir.mkdir(parents=True, exist_ok=True)
    result = ExtractResult(layer_dir=layer_dir)
    metadata = []

    for wav_path in wav_paths:
        clip_id = resolve_clip_id(wav_path)
        try:
            samples, rate = read_wav_mono(wav_path)
            embedding = model.extract(samples, rate, spec.layer)
            if embedding.ndim != 2 or embedding.shape[0] < 1 or embedding.shape[1] < 1:
                raise ExtractError(
                    "model produced shape %r, need 2-D (L, D)" % (embedding.shape,)
                )
            out_path = layer_dir / ("%s.npy" % clip_id)
            np.save(out_path, np.ascontiguousarray(embedding, dtype=np.float32))
            metadata.append(
                {
                    "clip_id": clip_id,
                    "model_id": spec.model_id,
                    "layer": spec.layer,
                    "L": int(embedding.shape[0]),
                    "D": int(embedding.shape[1]),
                    "path": out_path.name,
                }
            )
            result.written.append(out_path)
        except ExtractError as exc:
            log.error("skipping %s: %s", wav_path, exc)
            result.failures.append((str(wav_path), str(exc)))

    metadata.sort(key=lambda item: item["clip_id"])
    sidecar = layer_dir / "metadata.jsonl"
    sidecar.write_text(
        "".join(json.dumps(line, sort_keys=True) + "\n" for line in metadata),
        encoding="utf-8",
    )
    return result
