"""Command-line surface: score one pair, evaluate a manifest, sweep grids.

Exit codes: 0 success, 2 input or configuration errors, 3 degenerate
scores (F1 undefined for the requested pair). All outputs are
deterministic: entries may be scored in parallel (--jobs) but results are
keyed and sorted before anything is written.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .data_io import (
    DEFAULT_MIN_REF_REL,
    ManifestEntry,
    load_manifest,
    read_embedding,
    write_report_csv,
)
from .encoder import encode, read_wav
from .errors import AudioBertScoreError, DegenerateHarmonicMean
from .metric import (
    EmbeddingSequence,
    NegativeSimPolicy,
    ScoreTriple,
    ScoringConfig,
    ScoringMode,
    cosine_similarity_matrix,
    interpolate_precision_recall,
    max_precision_recall,
    pnorm_precision_recall,
    score,
    triple_from_precision_recall,
)
from .stats import PairedSamples, pearson_lcc, spearman_srcc

LAYER_PLACEHOLDER = "{layer}"

DEFAULT_P_VALUES = (1.0, 2.0, 5.0, 10.0, 50.0, 100.0, 106.0, 1000.0)
DEFAULT_LAMBDA_VALUES = (-5.0, -4.0, -3.5, -3.0, -2.0, -1.0, 0.0, 0.25, 0.5, 0.75, 1.0)

_MODES = {m.value: m for m in ScoringMode}
_POLICIES = {p.value: p for p in NegativeSimPolicy}

_SWEEP_FIELDS = (
    "layer",
    "p",
    "lambda",
    "n",
    "excluded",
    "lcc_precision",
    "srcc_precision",
    "lcc_recall",
    "srcc_recall",
    "lcc_f1",
    "srcc_f1",
    "reason",
)


@dataclass(frozen=True)
class SweepGrid:
    """Hyperparameter grid for the sweep command."""

    p_values: tuple[float, ...] = DEFAULT_P_VALUES
    lambda_values: tuple[float, ...] = DEFAULT_LAMBDA_VALUES
    layers: tuple[str, ...] | None = None

    def __post_init__(self):
        if not self.p_values or not self.lambda_values:
            raise ValueError("p_values and lambda_values must be non-empty")
        if any(not p >= 1.0 for p in self.p_values):
            raise ValueError("all p values must be >= 1")
        if self.layers is not None and not self.layers:
            raise ValueError("layers, when given, must be non-empty")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="audiobertscore",
        description="Embedding-similarity scoring for synthesized audio.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_score = sub.add_parser("score", help="score one synthesized/reference pair")
    p_score.add_argument("gen_input", help="synthesized clip (WAV or NPY embedding)")
    p_score.add_argument("ref_input", help="reference clip (WAV or NPY embedding)")
    p_score.add_argument(
        "--input-kind", choices=("npy", "wav"), default="npy",
        help="npy: embedding matrices; wav: encode with the built-in log-mel features",
    )
    p_score.add_argument(
        "--normalize", action="store_true",
        help="standardize each embedding dimension across frames (wav inputs "
        "only; raw log-mel vectors are dominated by the silence floor)",
    )
    _add_scoring_flags(p_score)
    p_score.set_defaults(func=cmd_score)

    p_eval = sub.add_parser(
        "evaluate", help="score a manifest and correlate with subjective ratings"
    )
    p_eval.add_argument("manifest", help="JSON Lines manifest")
    _add_scoring_flags(p_eval)
    _add_manifest_flags(p_eval)
    p_eval.add_argument("--out", help="per-entry CSV output path")
    p_eval.set_defaults(func=cmd_evaluate)

    p_sweep = sub.add_parser(
        "sweep", help="evaluate a whole (layer, p, lambda) grid into one CSV"
    )
    p_sweep.add_argument("manifest", help="JSON Lines manifest")
    p_sweep.add_argument(
        "--p", dest="p_list", default=None,
        help="comma-separated p exponents (default %s)"
        % ",".join("%g" % p for p in DEFAULT_P_VALUES),
    )
    p_sweep.add_argument(
        "--lambda", dest="lambda_list", default=None,
        help="comma-separated lambda blend weights (default %s)"
        % ",".join("%g" % v for v in DEFAULT_LAMBDA_VALUES),
    )
    p_sweep.add_argument(
        "--layers", default=None,
        help="comma-separated layer tags substituted for %s in embedding paths"
        % LAYER_PLACEHOLDER,
    )
    p_sweep.add_argument(
        "--neg-policy", choices=sorted(_POLICIES), default="abs",
        help="treatment of negative similarities in the p-norm",
    )
    _add_manifest_flags(p_sweep)
    p_sweep.add_argument("--out", required=True, help="CSV output path")
    p_sweep.set_defaults(func=cmd_sweep)

    return parser


def _add_scoring_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--mode", choices=sorted(_MODES), default="max", help="scoring variant"
    )
    parser.add_argument("--p", type=float, default=None, help="p-norm exponent (>= 1)")
    parser.add_argument(
        "--lambda", dest="lam", type=float, default=None,
        help="blend weight: lambda*max + (1-lambda)*pnorm; any sign",
    )
    parser.add_argument(
        "--neg-policy", choices=sorted(_POLICIES), default="abs",
        help="treatment of negative similarities in the p-norm",
    )


def _add_manifest_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--target", choices=("ovl", "rel"), default="ovl",
        help="subjective axis to correlate against",
    )
    parser.add_argument(
        "--min-ref-rel", type=float, default=DEFAULT_MIN_REF_REL,
        help="drop entries whose reference relevance rating falls below this",
    )
    parser.add_argument(
        "--no-ref-filter", action="store_true", help="disable the reference filter"
    )
    parser.add_argument(
        "--jobs", type=int, default=1, help="parallel workers for entry scoring"
    )


def _scoring_config(args) -> ScoringConfig:
    return ScoringConfig(
        mode=_MODES[args.mode],
        p=args.p,
        lam=args.lam,
        negative_sim_policy=_POLICIES[args.neg_policy],
    )


def _load_input(path: str, kind: str, normalize: bool = False) -> EmbeddingSequence:
    if kind == "wav":
        return encode(read_wav(path), normalize=normalize)
    return read_embedding(path)


def cmd_score(args) -> int:
    cfg = _scoring_config(args)
    gen = _load_input(args.gen_input, args.input_kind, args.normalize)
    ref = _load_input(args.ref_input, args.input_kind, args.normalize)
    triple = score(gen, ref, cfg)
    print(
        json.dumps(
            {"precision": triple.precision, "recall": triple.recall, "f1": triple.f1},
            sort_keys=True,
        )
    )
    return 0


def _map_entries(entries, fn, jobs: int) -> list:
    """Apply fn to every entry, optionally in parallel, preserving order."""
    if jobs <= 1:
        return [fn(entry) for entry in entries]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, entries))


def _load_scored_manifest(args):
    manifest = load_manifest(
        args.manifest,
        min_ref_rel=args.min_ref_rel,
        filter_enabled=not args.no_ref_filter,
        require_files=getattr(args, "layers", None) is None,
    )
    if not manifest.entries:
        raise ValueError("no manifest entries survive the reference filter")
    unrated = [e.id for e in manifest.entries if e.subjective(args.target) is None]
    if unrated:
        raise ValueError(
            "%d entries lack the %r rating (first: %r)"
            % (len(unrated), args.target, unrated[0])
        )
    return manifest


def _correlations(survivors, target: str) -> dict:
    out = {}
    subjective = [entry.subjective(target) for entry, _ in survivors]
    for component in ("precision", "recall", "f1"):
        objective = [getattr(triple, component) for _, triple in survivors]
        samples = PairedSamples(objective, subjective)
        out["lcc_%s" % component] = pearson_lcc(samples)
        out["srcc_%s" % component] = spearman_srcc(samples)
    return out


def cmd_evaluate(args) -> int:
    cfg = _scoring_config(args)
    manifest = _load_scored_manifest(args)

    def scorer(entry: ManifestEntry):
        gen = read_embedding(entry.gen_embedding)
        ref = read_embedding(entry.ref_embedding)
        try:
            return entry, score(gen, ref, cfg)
        except DegenerateHarmonicMean:
            return entry, None

    results = _map_entries(manifest.entries, scorer, args.jobs)
    survivors = [(entry, triple) for entry, triple in results if triple is not None]
    excluded = len(results) - len(survivors)
    if len(survivors) < 3:
        raise ValueError(
            "only %d entries have defined scores; need at least 3" % len(survivors)
        )

    if args.out:
        rows = [
            {
                "id": entry.id,
                "system": entry.system,
                "precision": triple.precision,
                "recall": triple.recall,
                "f1": triple.f1,
                "subjective": entry.subjective(args.target),
            }
            for entry, triple in survivors
        ]
        write_report_csv(
            args.out,
            ("id", "system", "precision", "recall", "f1", "subjective"),
            rows,
            key_fields=("id",),
        )

    summary = {
        "n": len(survivors),
        "excluded": excluded,
        "dropped": manifest.dropped,
        "target": args.target,
    }
    summary.update(_correlations(survivors, args.target))
    print(json.dumps(summary, sort_keys=True))
    return 0


def _parse_float_list(text: str | None, default: tuple[float, ...]) -> tuple[float, ...]:
    if text is None:
        return default
    try:
        return tuple(float(item) for item in text.split(","))
    except ValueError as exc:
        raise ValueError("bad numeric list %r: %s" % (text, exc)) from exc


def _resolve_layer_entries(
    entries, layer: str
) -> tuple[list[ManifestEntry], str | None]:
    """Substitute the layer tag into embedding path templates.

    Returns (entries, failure_reason). A missing resolved file fails the
    whole layer; the sweep records the reason instead of aborting.
    """
    if not layer:
        return list(entries), None
    resolved = []
    for entry in entries:
        gen_t, ref_t = str(entry.gen_embedding), str(entry.ref_embedding)
        if LAYER_PLACEHOLDER not in gen_t and LAYER_PLACEHOLDER not in ref_t:
            raise ValueError(
                "--layers given but entry %r has no %s placeholder in its "
                "embedding paths" % (entry.id, LAYER_PLACEHOLDER)
            )
        resolved.append(
            dataclasses.replace(
                entry,
                gen_embedding=Path(gen_t.replace(LAYER_PLACEHOLDER, layer)),
                ref_embedding=Path(ref_t.replace(LAYER_PLACEHOLDER, layer)),
            )
        )
    for entry in resolved:
        for file_path in (entry.gen_embedding, entry.ref_embedding):
            if not file_path.is_file():
                return [], "missing file: %s" % file_path
    return resolved, None


def cmd_sweep(args) -> int:
    grid = SweepGrid(
        p_values=_parse_float_list(args.p_list, DEFAULT_P_VALUES),
        lambda_values=_parse_float_list(args.lambda_list, DEFAULT_LAMBDA_VALUES),
        layers=tuple(args.layers.split(",")) if args.layers else None,
    )
    policy = _POLICIES[args.neg_policy]
    manifest = _load_scored_manifest(args)

    def components(entry: ManifestEntry):
        gen = read_embedding(entry.gen_embedding)
        ref = read_embedding(entry.ref_embedding)
        m = cosine_similarity_matrix(gen, ref)
        return (
            entry,
            max_precision_recall(m),
            {p: pnorm_precision_recall(m, p, policy) for p in grid.p_values},
        )

    rows = []
    failed_cells = 0
    for layer in grid.layers or ("",):
        entries, reason = _resolve_layer_entries(manifest.entries, layer)
        scored = None
        if reason is None:
            try:
                scored = _map_entries(entries, components, args.jobs)
            except AudioBertScoreError as exc:
                reason = str(exc)
        for p in grid.p_values:
            for lam in grid.lambda_values:
                row = {"layer": layer, "p": p, "lambda": lam}
                if reason is not None:
                    row["reason"] = reason
                    failed_cells += 1
                    rows.append(row)
                    continue
                survivors = []
                for entry, max_pr, pnorm_by_p in scored:
                    pr = interpolate_precision_recall(max_pr, pnorm_by_p[p], lam)
                    try:
                        survivors.append((entry, triple_from_precision_recall(*pr)))
                    except DegenerateHarmonicMean:
                        pass
                row["n"] = len(survivors)
                row["excluded"] = len(scored) - len(survivors)
                try:
                    if len(survivors) < 3:
                        raise ValueError(
                            "only %d entries have defined scores; need at least 3"
                            % len(survivors)
                        )
                    row.update(_correlations(survivors, args.target))
                except (AudioBertScoreError, ValueError) as exc:
                    row["reason"] = str(exc)
                    failed_cells += 1
                rows.append(row)

    write_report_csv(args.out, _SWEEP_FIELDS, rows, key_fields=("layer", "p", "lambda"))
    print(json.dumps({"cells": len(rows), "failed": failed_cells}, sort_keys=True))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DegenerateHarmonicMean as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    except (AudioBertScoreError, ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


def main_entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    main_entry()
