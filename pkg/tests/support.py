"""Byte-level fixture authors and backend discovery, independent of the
package's own writers."""

import struct


def pcm16_wav_bytes(samples, sample_rate=16000, channels=1, bits=16, fmt_tag=1):
    """Author a canonical 44-byte-header WAV independently of the package."""
    payload = b"".join(struct.pack("<h", s) for s in samples)
    block_align = channels * bits // 8
    header = (
        b"RIFF"
        + struct.pack("<I", 36 + len(payload))
        + b"WAVE"
        + b"fmt "
        + struct.pack(
            "<IHHIIHH",
            16,
            fmt_tag,
            channels,
            sample_rate,
            sample_rate * block_align,
            block_align,
            bits,
        )
        + b"data"
        + struct.pack("<I", len(payload))
    )
    return header + payload


def npy_bytes(descr, shape, values, fortran_order="False"):
    """Author an NPY v1.0 file by hand from the format rules."""
    header = "{'descr': '%s', 'fortran_order': %s, 'shape': %r, }" % (
        descr,
        fortran_order,
        tuple(shape),
    )
    pad = (-(10 + len(header) + 1)) % 64
    header_bytes = header.encode("ascii") + b" " * pad + b"\n"
    fmt = {"<f4": "<f", "<f8": "<d"}[descr]
    payload = b"".join(struct.pack(fmt, v) for v in values)
    return (
        b"\x93NUMPY"
        + bytes((1, 0))
        + struct.pack("<H", len(header_bytes))
        + header_bytes
        + payload
    )


def all_kernel_backends():
    from audiobertscore import _kernels_py

    backends = [_kernels_py]
    try:
        from audiobertscore import _kernels

        backends.append(_kernels)
    except ImportError:
        pass
    return backends
