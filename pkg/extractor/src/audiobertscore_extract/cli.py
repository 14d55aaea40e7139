"""Extraction command line.

    audiobertscore-extract --model melproj --layer 7 --out emb/ a.wav b.wav

Writes <out>/<model>/layer<k>/<clip>.npy (float32, shape (L, D)) plus a
metadata.jsonl sidecar. Exit codes: 0 all clips exported, 1 some clips
failed (logged and skipped), 2 model/layer/usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .errors import ExtractError
from .extract import ExtractorSpec, extract
from .models import REGISTRY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="audiobertscore-extract",
        description="Export per-layer frame embeddings to NPY files.",
    )
    parser.add_argument(
        "--model", required=True,
        help="model id (available: %s)" % ", ".join(sorted(REGISTRY)),
    )
    parser.add_argument(
        "--layer", required=True,
        help="layer number (1..13) or local|global|local+global",
    )
    parser.add_argument("--out", required=True, help="output root directory")
    parser.add_argument("--device", default="cpu")
    parser.add_argument("wavs", nargs="+", help="mono 16 kHz PCM16 WAV files")
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    spec = ExtractorSpec(
        model_id=args.model,
        layer=args.layer,
        output_dir=Path(args.out),
        device=args.device,
    )
    try:
        result = extract(spec, args.wavs)
    except ExtractError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    print(
        json.dumps(
            {
                "layer_dir": str(result.layer_dir),
                "written": len(result.written),
                "failed": len(result.failures),
            },
            sort_keys=True,
        )
    )
    return 0 if result.ok else 1


def main_entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    main_entry()
