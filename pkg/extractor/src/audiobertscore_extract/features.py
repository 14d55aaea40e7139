"""Audio decoding and the log-mel frontend used by the built-in models.

Self-contained on purpose: the extractor talks to the scoring package
only through files (NPY matrices plus the layer directory layout), so it
carries its own WAV reader and mel analysis.
"""

from __future__ import annotations

import wave
from pathlib import Path

import numpy as np

from .errors import AudioDecodeError

FRAME_LENGTH = 400
HOP = 160
FFT_SIZE = 512
N_MELS = 64
LOG_FLOOR = 1e-6


def read_wav_mono(path) -> tuple[np.ndarray, int]:
    """Decode a mono 16-bit PCM WAV into float64 samples in [-1, 1)."""
    try:
        with wave.open(str(path), "rb") as handle:
            channels = handle.getnchannels()
            width = handle.getsampwidth()
            rate = handle.getframerate()
            frames = handle.readframes(handle.getnframes())
    except (wave.Error, EOFError, OSError) as exc:
        raise AudioDecodeError("%s: %s" % (path, exc)) from exc
    if channels != 1:
        raise AudioDecodeError("%s: %d channels, expected mono" % (path, channels))
    if width != 2:
        raise AudioDecodeError("%s: %d-byte samples, expected 16-bit" % (path, width))
    samples = np.frombuffer(frames, dtype="<i2").astype(np.float64) / 32768.0
    if samples.size == 0:
        raise AudioDecodeError("%s: no audio frames" % (path,))
    return samples, rate


def log_mel(samples: np.ndarray, sample_rate: int) -> np.ndarray:
    """(L, 64) log-mel features; 25 ms frames, 10 ms hop at 16 kHz."""
    if samples.size < FRAME_LENGTH:
        raise AudioDecodeError(
            "clip too short: %d samples, need %d" % (samples.size, FRAME_LENGTH)
        )
    n_frames = 1 + (samples.size - FRAME_LENGTH) // HOP
    window = np.hanning(FRAME_LENGTH + 1)[:-1]
    idx = HOP * np.arange(n_frames)[:, None] + np.arange(FRAME_LENGTH)
    spectrum = np.fft.rfft(samples[idx] * window, n=FFT_SIZE, axis=1)
    power = np.abs(spectrum) ** 2
    return np.log(power @ _mel_bank(sample_rate).T + LOG_FLOOR)


def _mel_bank(sample_rate: int) -> np.ndarray:
    hz_to_mel = lambda f: 2595.0 * np.log10(1.0 + f / 700.0)
    mel_to_hz = lambda m: 700.0 * (10.0 ** (m / 2595.0) - 1.0)
    edges = mel_to_hz(np.linspace(0.0, hz_to_mel(sample_rate / 2.0), N_MELS + 2))
    freqs = np.arange(FFT_SIZE // 2 + 1) * sample_rate / FFT_SIZE
    lower, center, upper = edges[:-2, None], edges[1:-1, None], edges[2:, None]
    rising = (freqs - lower) / np.maximum(center - lower, 1e-12)
    falling = (upper - freqs) / np.maximum(upper - center, 1e-12)
    return np.clip(np.minimum(rising, falling), 0.0, None)


def resolve_clip_id(path) -> str:
    return Path(path).stem
