"""RIFF/WAV decoding, writing, and per-trial segmentation.

The reader handles uncompressed PCM (8/16/24/32-bit) and 32-bit IEEE
float, mixes multi-channel content down to mono by averaging, and scales
integer samples to [-1, 1] by the type's maximum magnitude. Anything
compressed is rejected rather than half-decoded.
"""

from __future__ import annotations

import struct
import wave

import numpy as np

from ..errors import BoundaryOutOfRange, ParseError, UnsupportedFormat
from ..align import resample_linear
from .keys import TrialKey
from .records import AudioRecord

#: Sample rate of segmented per-trial chunks.
SEGMENT_RATE_HZ = 16000

_FORMAT_PCM = 1
_FORMAT_IEEE_FLOAT = 3
_FORMAT_EXTENSIBLE = 0xFFFE


def _read_exact(data: bytes, offset: int, size: int, what: str) -> bytes:
    if offset + size > len(data):
        raise ParseError(f"truncated WAV container while reading {what}")
    return data[offset : offset + size]


def _parse_chunks(data: bytes) -> dict[str, bytes]:
    riff, _, wave_id = struct.unpack("<4sI4s", _read_exact(data, 0, 12, "RIFF header"))
    if riff != b"RIFF" or wave_id != b"WAVE":
        raise ParseError("not a RIFF/WAVE container")
    chunks: dict[str, bytes] = {}
    offset = 12
    while offset + 8 <= len(data):
        cid, size = struct.unpack("<4sI", data[offset : offset + 8])
        body = _read_exact(data, offset + 8, size, f"chunk {cid!r}")
        chunks.setdefault(cid.decode("latin-1"), body)
        offset += 8 + size + (size % 2)  # chunks are word-aligned
    return chunks


def _decode_samples(body: bytes, fmt: int, bits: int, n_channels: int) -> np.ndarray:
    if fmt == _FORMAT_IEEE_FLOAT:
        if bits != 32:
            raise UnsupportedFormat(f"IEEE float WAV must be 32-bit, got {bits}")
        samples = np.frombuffer(body[: len(body) - len(body) % 4], "<f4").astype(float)
    elif fmt == _FORMAT_PCM:
        if bits == 8:
            raw = np.frombuffer(body, np.uint8).astype(float)
            samples = (raw - 128.0) / 128.0
        elif bits == 16:
            samples = np.frombuffer(body[: len(body) - len(body) % 2], "<i2") / 32768.0
        elif bits == 24:
            usable = len(body) - len(body) % 3
            triplets = np.frombuffer(body[:usable], np.uint8).reshape(-1, 3)
            value = (
                triplets[:, 0].astype(np.int32)
                | (triplets[:, 1].astype(np.int32) << 8)
                | (triplets[:, 2].astype(np.int32) << 16)
            )
            value = np.where(value >= 1 << 23, value - (1 << 24), value)
            samples = value / float(1 << 23)
        elif bits == 32:
            samples = np.frombuffer(body[: len(body) - len(body) % 4], "<i4") / float(
                1 << 31
            )
        else:
            raise UnsupportedFormat(f"unsupported PCM bit depth {bits}")
    else:
        raise UnsupportedFormat(f"compressed WAV format tag 0x{fmt:04X}")

    frames = samples.size // n_channels
    if n_channels > 1:
        return samples[: frames * n_channels].reshape(frames, n_channels).mean(axis=1)
    return np.asarray(samples, float)


def load_audio(data: bytes) -> AudioRecord:
    """Decode a WAV container into a mono AudioRecord.

    Raises:
        UnsupportedFormat: compressed codecs or exotic bit depths.
        ParseError: truncated or malformed container.
    """
    chunks = _parse_chunks(data)
    if "fmt " not in chunks or "data" not in chunks:
        raise ParseError("WAV container lacks fmt/data chunks")
    fmt_body = chunks["fmt "]
    if len(fmt_body) < 16:
        raise ParseError("truncated fmt chunk")
    fmt, n_channels, sample_rate, _, _, bits = struct.unpack(
        "<HHIIHH", fmt_body[:16]
    )
    if fmt == _FORMAT_EXTENSIBLE:
        # actual format code is the leading word of the SubFormat GUID
        if len(fmt_body) < 26:
            raise ParseError("truncated extensible fmt chunk")
        fmt = struct.unpack("<H", fmt_body[24:26])[0]
    if n_channels < 1:
        raise ParseError("WAV declares zero channels")
    samples = _decode_samples(chunks["data"], fmt, bits, n_channels)
    return AudioRecord(sample_rate=float(sample_rate), samples=samples)


def write_wav(path, samples: np.ndarray, sample_rate: int = SEGMENT_RATE_HZ) -> None:
    """Write mono float samples in [-1, 1] as 16-bit PCM."""
    pcm = np.clip(np.rint(np.asarray(samples, float) * 32767.0), -32768, 32767)
    with wave.open(str(path), "wb") as out:
        out.setnchannels(1)
        out.setsampwidth(2)
        out.setframerate(sample_rate)
        out.writeframes(pcm.astype("<i2").tobytes())


def segment_raw_audio(
    raw: AudioRecord,
    boundaries: list[tuple[TrialKey, float, float]],
) -> list[tuple[TrialKey, AudioRecord]]:
    """Cut a raw session recording into per-trial 16 kHz mono chunks.

    Each chunk covers [start_s, end_s) of the raw stream, resampled by
    linear interpolation onto the 16 kHz output grid.

    Raises:
        BoundaryOutOfRange: interval inverted or outside the recording.
    """
    duration = raw.duration_s
    times = np.arange(raw.samples.size) / raw.sample_rate
    chunks: list[tuple[TrialKey, AudioRecord]] = []
    for key, start_s, end_s in boundaries:
        if not (0.0 <= start_s < end_s <= duration + 1e-9):
            raise BoundaryOutOfRange(
                f"{key}: [{start_s}, {end_s}) outside 0..{duration:.6f} s"
            )
        n_out = int(np.floor((end_s - start_s) * SEGMENT_RATE_HZ + 1e-9))
        grid = start_s + np.arange(n_out) / SEGMENT_RATE_HZ
        chunk = resample_linear(times, raw.samples, grid)
        chunks.append((key, AudioRecord(sample_rate=float(SEGMENT_RATE_HZ), samples=chunk)))
    return chunks
