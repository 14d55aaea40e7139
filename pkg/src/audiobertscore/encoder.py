"""Deterministic log-mel frame encoder and WAV decoding.

This is the dependency-free stand-in for a neural feature extractor: it
turns a mono waveform into an (L, D) log-mel embedding sequence so the
whole pipeline runs end-to-end from WAV files. Frames are Hann-windowed
(periodic window), hop-strided, zero-padded to the FFT size; the mel
filterbank uses the HTK scale mel = 2595 * log10(1 + f / 700) with
triangles peaking at equal mel spacing between fmin and fmax.

Externally produced embeddings (from actual pretrained models) enter the
pipeline through NPY files instead; nothing here is trained.
"""

from __future__ import annotations

import struct
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    BadShape,
    NotRiff,
    TooShort,
    UnsupportedChannelCount,
    UnsupportedCodec,
)
from .metric import EmbeddingSequence

EXPECTED_SAMPLE_RATE = 16000


@dataclass(frozen=True)
class Waveform:
    """Mono audio samples, nominally in [-1, 1]."""

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=np.float64)
        if arr.ndim != 1 or arr.shape[0] == 0:
            raise ValueError("samples must be a non-empty 1-D sequence")
        if not np.isfinite(arr).all():
            raise ValueError("samples contain NaN or Inf")
        if self.sample_rate < 1:
            raise ValueError("sample_rate must be positive")
        object.__setattr__(self, "samples", arr)

    @property
    def duration(self) -> float:
        return self.samples.shape[0] / self.sample_rate


@dataclass(frozen=True)
class EncoderConfig:
    """Analysis parameters. Defaults assume 16 kHz input: 25 ms frames,
    10 ms hop, 64 mel bins up to Nyquist."""

    frame_length: int = 400
    hop: int = 160
    fft_size: int = 512
    mel_bins: int = 64
    fmin: float = 0.0
    fmax: float = 8000.0
    log_floor: float = 1e-6
    sample_rate: int = 16000

    def __post_init__(self):
        if self.frame_length > self.fft_size:
            raise ValueError("frame_length must not exceed fft_size")
        if self.frame_length < 1 or self.hop < 1 or self.mel_bins < 1:
            raise ValueError("frame_length, hop, and mel_bins must be positive")
        if not 0.0 <= self.fmin < self.fmax:
            raise ValueError("need 0 <= fmin < fmax")
        if self.log_floor <= 0.0:
            raise ValueError("log_floor must be positive")
        if self.sample_rate < 1:
            raise ValueError("sample_rate must be positive")

    @property
    def n_bins(self) -> int:
        return self.fft_size // 2 + 1


def frame_count(n_samples: int, cfg: EncoderConfig) -> int:
    """L = 1 + floor((T - frame_length) / hop); requires T >= frame_length."""
    if n_samples < cfg.frame_length:
        raise TooShort(
            "waveform has %d samples, need at least %d" % (n_samples, cfg.frame_length)
        )
    return 1 + (n_samples - cfg.frame_length) // cfg.hop


def stft_power(w: Waveform, cfg: EncoderConfig | None = None) -> np.ndarray:
    """Magnitude-squared spectra, one row per frame, fft_size/2 + 1 bins."""
    cfg = cfg or EncoderConfig()
    n_frames = frame_count(w.samples.shape[0], cfg)
    window = 0.5 - 0.5 * np.cos(
        2.0 * np.pi * np.arange(cfg.frame_length) / cfg.frame_length
    )
    starts = cfg.hop * np.arange(n_frames)
    frames = w.samples[starts[:, None] + np.arange(cfg.frame_length)] * window
    spectrum = np.fft.rfft(frames, n=cfg.fft_size, axis=1)
    return spectrum.real**2 + spectrum.imag**2


def mel_filterbank(cfg: EncoderConfig) -> np.ndarray:
    """(mel_bins, fft_size/2 + 1) triangular weights on the HTK mel scale."""
    mel_points = np.linspace(_hz_to_mel(cfg.fmin), _hz_to_mel(cfg.fmax), cfg.mel_bins + 2)
    hz_points = _mel_to_hz(mel_points)
    bin_freqs = np.arange(cfg.n_bins) * (cfg.sample_rate / cfg.fft_size)
    bank = np.zeros((cfg.mel_bins, cfg.n_bins))
    for k in range(cfg.mel_bins):
        lo, center, hi = hz_points[k], hz_points[k + 1], hz_points[k + 2]
        rising = (bin_freqs - lo) / max(center - lo, np.finfo(float).tiny)
        falling = (hi - bin_freqs) / max(hi - center, np.finfo(float).tiny)
        bank[k] = np.clip(np.minimum(rising, falling), 0.0, None)
    return bank


def _hz_to_mel(f):
    return 2595.0 * np.log10(1.0 + np.asarray(f, dtype=np.float64) / 700.0)


def _mel_to_hz(m):
    return 700.0 * (10.0 ** (np.asarray(m, dtype=np.float64) / 2595.0) - 1.0)


def mel_project(power: np.ndarray, cfg: EncoderConfig | None = None) -> np.ndarray:
    """Apply the filterbank and take log(x + log_floor), elementwise."""
    cfg = cfg or EncoderConfig()
    power = np.asarray(power, dtype=np.float64)
    if power.ndim != 2 or power.shape[1] != cfg.n_bins:
        raise BadShape(
            "power matrix must be (frames, %d), got %r" % (cfg.n_bins, power.shape)
        )
    return np.log(power @ mel_filterbank(cfg).T + cfg.log_floor)


def encode(
    w: Waveform, cfg: EncoderConfig | None = None, normalize: bool = False
) -> EmbeddingSequence:
    """Waveform -> log-mel embedding sequence with D = mel_bins.

    normalize=True standardizes each embedding dimension to zero mean and
    unit variance across frames (constant dimensions are left centered).
    """
    cfg = cfg or EncoderConfig()
    if w.sample_rate != cfg.sample_rate:
        warnings.warn(
            "waveform sample rate %d differs from encoder's %d; frequencies "
            "will be misinterpreted" % (w.sample_rate, cfg.sample_rate),
            stacklevel=2,
        )
    features = mel_project(stft_power(w, cfg), cfg)
    if normalize:
        mean = features.mean(axis=0)
        std = features.std(axis=0)
        # negligible-variance dimensions are centered but not rescaled,
        # otherwise round-off in the mean gets amplified by 1/std
        constant = std <= 1e-9 * np.maximum(1.0, np.abs(mean))
        std[constant] = 1.0
        features = (features - mean) / std
    return EmbeddingSequence(features)


# -- WAV decoding ------------------------------------------------------------


def read_wav(path) -> Waveform:
    """Decode a RIFF/WAVE file with 16-bit mono integer PCM.

    Sample values are scaled by 1/32768 into [-1, 1). A sample rate other
    than 16000 produces a warning, not an error.
    """
    data = Path(path).read_bytes()
    if len(data) < 12 or data[:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise NotRiff("%s lacks a RIFF/WAVE header" % path)

    fmt = None
    payload = None
    offset = 12
    while offset + 8 <= len(data):
        chunk_id = data[offset : offset + 4]
        (chunk_size,) = struct.unpack_from("<I", data, offset + 4)
        body = data[offset + 8 : offset + 8 + chunk_size]
        if chunk_id == b"fmt " and fmt is None:
            if len(body) < 16:
                raise NotRiff("fmt chunk truncated (%d bytes)" % len(body))
            fmt = struct.unpack_from("<HHIIHH", body, 0)
        elif chunk_id == b"data" and payload is None:
            payload = body
        offset += 8 + chunk_size + (chunk_size & 1)  # chunks are word-aligned

    if fmt is None or payload is None:
        raise NotRiff("%s is missing its fmt or data chunk" % path)
    audio_format, channels, sample_rate, _byte_rate, _block_align, bits = fmt
    if audio_format != 1:
        raise UnsupportedCodec("format tag %d (only PCM=1 is supported)" % audio_format)
    if channels != 1:
        raise UnsupportedChannelCount("%d channels (only mono is supported)" % channels)
    if bits != 16:
        raise UnsupportedCodec("%d-bit samples (only 16-bit is supported)" % bits)

    samples = np.frombuffer(payload[: len(payload) - len(payload) % 2], dtype="<i2")
    if sample_rate != EXPECTED_SAMPLE_RATE:
        warnings.warn(
            "%s has sample rate %d, expected %d"
            % (path, sample_rate, EXPECTED_SAMPLE_RATE),
            stacklevel=2,
        )
    return Waveform(samples.astype(np.float64) / 32768.0, sample_rate)
