"""File interchange: embedding matrices, evaluation manifests, CSV reports.

Embedding files are NPY version 1.0 containers, parsed and emitted at byte
level so the format is pinned independently of any array library:

    offset 0   6 bytes   magic \\x93NUMPY
    offset 6   2 bytes   version, must be (1, 0)
    offset 8   2 bytes   little-endian uint16 header length H
    offset 10  H bytes   ASCII dict literal {'descr': '<f4'|'<f8',
                         'fortran_order': False, 'shape': (L, D), }
                         space-padded, newline-terminated, 10 + H a
                         multiple of 64
    offset 10+H          row-major little-endian float payload

Values widen to float64 on read; <f8 round-trips bit-exactly.

Manifests are UTF-8 JSON Lines, one entry per line, with keys id, system,
gen_embedding, ref_embedding and optional ovl, rel, ref_rel (each a MOS in
[1, 5]). ref_rel is the subjective relevance of the entry's reference
clip; filtering drops every entry whose reference falls below the
threshold, which removes all systems sharing that reference. With the
filter enabled, entries lacking ref_rel are dropped too. Relative paths
resolve against the manifest's directory.

Reports are RFC-4180-style CSV: header first, CRLF line endings, minimal
quoting, floats at 6 significant digits, rows sorted by key so repeated
runs are byte-identical.
"""

from __future__ import annotations

import ast
import csv
import json
import struct
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    BadMagic,
    DuplicateId,
    FortranOrderUnsupported,
    IoFailure,
    MissingFile,
    ParseError,
    ShapeNot2D,
    TruncatedPayload,
    UnsupportedDtype,
)
from .metric import EmbeddingSequence

_MAGIC = b"\x93NUMPY"
_SUPPORTED_DESCRS = {"<f4": np.dtype("<f4"), "<f8": np.dtype("<f8")}
_HEADER_ALIGN = 64

DEFAULT_MIN_REF_REL = 3.5


# -- embedding files --------------------------------------------------------


def read_embedding(path) -> EmbeddingSequence:
    """Decode one NPY v1.0 file into a float64 embedding sequence."""
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise IoFailure("cannot read %s: %s" % (path, exc)) from exc

    if len(data) < 10 or data[:6] != _MAGIC:
        raise BadMagic("magic: %s does not start with \\x93NUMPY" % path)
    version = (data[6], data[7])
    if version != (1, 0):
        raise BadMagic("version: expected (1, 0), got %r" % (version,))
    (header_len,) = struct.unpack_from("<H", data, 8)
    if len(data) < 10 + header_len:
        raise BadMagic("header: declared %d bytes, file has %d" % (header_len, len(data) - 10))

    try:
        header = ast.literal_eval(data[10 : 10 + header_len].decode("ascii").strip())
    except (ValueError, SyntaxError, UnicodeDecodeError) as exc:
        raise BadMagic("header: not a literal dict (%s)" % exc) from exc
    if not isinstance(header, dict):
        raise BadMagic("header: expected a dict, got %s" % type(header).__name__)

    descr = header.get("descr")
    if descr not in _SUPPORTED_DESCRS:
        raise UnsupportedDtype("descr: %r not in {'<f4', '<f8'}" % (descr,))
    if header.get("fortran_order") is not False:
        raise FortranOrderUnsupported(
            "fortran_order: %r (only C order is supported)" % (header.get("fortran_order"),)
        )
    shape = header.get("shape")
    if (
        not isinstance(shape, tuple)
        or len(shape) != 2
        or not all(isinstance(s, int) and s >= 1 for s in shape)
    ):
        raise ShapeNot2D("shape: %r is not a positive (L, D) pair" % (shape,))

    dtype = _SUPPORTED_DESCRS[descr]
    expected = shape[0] * shape[1] * dtype.itemsize
    payload = data[10 + header_len :]
    if len(payload) < expected:
        raise TruncatedPayload(
            "payload: expected %d bytes for shape %r, found %d"
            % (expected, shape, len(payload))
        )
    matrix = (
        np.frombuffer(payload[:expected], dtype=dtype)
        .astype(np.float64)
        .reshape(shape)
    )
    return EmbeddingSequence(matrix)


def write_embedding(path, seq: EmbeddingSequence, dtype: str = "<f8") -> None:
    """Emit an NPY v1.0 file that read_embedding inverts (bit-exactly
    for <f8, up to float32 quantization for <f4)."""
    if dtype not in _SUPPORTED_DESCRS:
        raise ValueError("dtype must be '<f4' or '<f8', got %r" % (dtype,))
    header = "{'descr': '%s', 'fortran_order': False, 'shape': (%d, %d), }" % (
        dtype,
        seq.n_frames,
        seq.dim,
    )
    # pad with spaces, end with newline, payload 64-byte aligned
    total = 10 + len(header) + 1
    padding = (-total) % _HEADER_ALIGN
    header_bytes = header.encode("ascii") + b" " * padding + b"\n"
    payload = np.ascontiguousarray(seq.frames).astype(_SUPPORTED_DESCRS[dtype]).tobytes()
    blob = _MAGIC + bytes((1, 0)) + struct.pack("<H", len(header_bytes)) + header_bytes + payload
    try:
        Path(path).write_bytes(blob)
    except OSError as exc:
        raise IoFailure("cannot write %s: %s" % (path, exc)) from exc


# -- manifests ---------------------------------------------------------------


@dataclass(frozen=True)
class ManifestEntry:
    id: str
    system: str
    gen_embedding: Path
    ref_embedding: Path
    ovl: float | None = None
    rel: float | None = None
    ref_rel: float | None = None

    def subjective(self, target: str) -> float | None:
        if target not in ("ovl", "rel"):
            raise ValueError("target must be 'ovl' or 'rel', got %r" % (target,))
        return self.ovl if target == "ovl" else self.rel


@dataclass(frozen=True)
class EvalManifest:
    entries: tuple[ManifestEntry, ...]
    min_ref_rel: float
    filtered: bool
    dropped: int


_REQUIRED_KEYS = ("id", "system", "gen_embedding", "ref_embedding")
_SCORE_KEYS = ("ovl", "rel", "ref_rel")


def _parse_entry(line_no: int, record: dict, base: Path) -> ManifestEntry:
    for key in _REQUIRED_KEYS:
        value = record.get(key)
        if not isinstance(value, str) or not value:
            raise ParseError(line_no, "missing or non-string %r field" % key)
    scores = {}
    for key in _SCORE_KEYS:
        if key not in record or record[key] is None:
            scores[key] = None
            continue
        value = record[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ParseError(line_no, "%r must be a number, got %r" % (key, value))
        if not 1.0 <= float(value) <= 5.0:
            raise ParseError(line_no, "%r must lie in [1, 5], got %r" % (key, value))
        scores[key] = float(value)
    return ManifestEntry(
        id=record["id"],
        system=record["system"],
        gen_embedding=base / record["gen_embedding"],
        ref_embedding=base / record["ref_embedding"],
        **scores,
    )


def load_manifest(
    path,
    min_ref_rel: float = DEFAULT_MIN_REF_REL,
    filter_enabled: bool = True,
    require_files: bool = True,
) -> EvalManifest:
    """Read a JSON Lines manifest, optionally applying the reference
    relevance filter. Order is preserved among surviving entries."""
    manifest_path = Path(path)
    try:
        text = manifest_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure("cannot read %s: %s" % (path, exc)) from exc

    base = manifest_path.parent
    entries: list[ManifestEntry] = []
    seen: set[str] = set()
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(line_no, "invalid JSON (%s)" % exc) from exc
        if not isinstance(record, dict):
            raise ParseError(line_no, "expected a JSON object")
        entry = _parse_entry(line_no, record, base)
        if entry.id in seen:
            raise DuplicateId("duplicate id %r at line %d" % (entry.id, line_no))
        seen.add(entry.id)
        entries.append(entry)

    dropped = 0
    if filter_enabled:
        kept = []
        for entry in entries:
            if entry.ref_rel is None or entry.ref_rel < min_ref_rel:
                dropped += 1
            else:
                kept.append(entry)
        entries = kept

    if require_files:
        for entry in entries:
            for file_path in (entry.gen_embedding, entry.ref_embedding):
                if not file_path.is_file():
                    raise MissingFile("%s (entry %r)" % (file_path, entry.id))

    return EvalManifest(
        entries=tuple(entries),
        min_ref_rel=min_ref_rel,
        filtered=filter_enabled,
        dropped=dropped,
    )


# -- CSV reports -------------------------------------------------------------


def format_cell(value) -> str:
    """One CSV cell: floats at 6 significant digits, None empty."""
    if value is None:
        return ""
    if isinstance(value, float):
        return "%.6g" % value
    return str(value)


def write_report_csv(
    path,
    fieldnames: Sequence[str],
    rows: Iterable[Mapping],
    key_fields: Sequence[str] | None = None,
) -> None:
    """Write rows as CSV, sorted by key_fields (default: all fields, in
    header order) so output is deterministic."""
    keys = tuple(key_fields) if key_fields is not None else tuple(fieldnames)
    ordered = sorted(rows, key=lambda row: tuple(row[k] for k in keys))
    try:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(fieldnames)
            for row in ordered:
                writer.writerow([format_cell(row.get(name)) for name in fieldnames])
    except OSError as exc:
        raise IoFailure("cannot write %s: %s" % (path, exc)) from exc
