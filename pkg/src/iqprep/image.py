"""Image containers, deterministic synthetic images, and binary PNM (P6) I/O.

Conventions used throughout the package:

* An ``RgbImage8`` stores 8-bit samples in planar layout: one ``(height,
  width)`` uint8 array per channel. Planar storage keeps per-channel
  processing and per-channel operation counting straightforward.
* A *plane* is a 2-D C-contiguous ``float64`` array. Sample values keep the
  0..255 range of the source image (no rescaling to [0, 1]), so 8-bit
  samples stay integer-exact in doubles.
* The only on-disk format is binary PNM (P6) with maxval 255; it is
  trivially bit-exact and needs no external decoder.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

__all__ = [
    "RgbImage8",
    "PnmParseError",
    "load_pnm",
    "write_pnm",
    "synth_image",
    "to_planes",
]


@dataclass(frozen=True)
class RgbImage8:
    """8-bit three-channel raster in planar R/G/B layout.

    Each channel is a ``(height, width)`` uint8 array. Instances are
    immutable and safe to share read-only across threads.
    """

    height: int
    width: int
    red: np.ndarray
    green: np.ndarray
    blue: np.ndarray

    def __post_init__(self) -> None:
        if self.height < 1 or self.width < 1:
            raise ValueError(
                f"image dimensions must be >= 1, got {self.height}x{self.width}"
            )
        for name, chan in (("red", self.red), ("green", self.green), ("blue", self.blue)):
            if chan.dtype != np.uint8:
                raise ValueError(f"{name} channel must be uint8, got {chan.dtype}")
            if chan.shape != (self.height, self.width):
                raise ValueError(
                    f"{name} channel shape {chan.shape} does not match "
                    f"image dimensions {(self.height, self.width)}"
                )

    @property
    def channels(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (self.red, self.green, self.blue)


class PnmParseError(ValueError):
    """Raised for malformed PNM input; the message names the byte offset."""

    def __init__(self, offset: int, message: str):
        self.offset = offset
        super().__init__(f"byte {offset}: {message}")


def _next_token(data: bytes, pos: int) -> tuple[bytes, int, int]:
    """Return the next header token, skipping whitespace and '#' comments.

    Returns ``(token, start_offset, end_pos)``.
    """
    n = len(data)
    while pos < n:
        c = data[pos : pos + 1]
        if c.isspace():
            pos += 1
        elif c == b"#":
            while pos < n and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
        else:
            break
    if pos >= n:
        raise PnmParseError(pos, "unexpected end of header")
    start = pos
    while pos < n and not data[pos : pos + 1].isspace():
        pos += 1
    return data[start:pos], start, pos


def _header_int(data: bytes, pos: int, what: str) -> tuple[int, int, int]:
    token, start, end = _next_token(data, pos)
    if not token.isdigit():
        raise PnmParseError(start, f"expected {what}, got {token!r}")
    return int(token), start, end


def load_pnm(path: str | os.PathLike) -> RgbImage8:
    """Read a binary P6 PNM file with maxval 255.

    Parameters
    ----------
    path : path-like
      File to read.

    Returns
    -------
    RgbImage8
      Image with samples de-interleaved into planar layout.

    Raises
    ------
    PnmParseError
      On a malformed header, a maxval other than 255, or a truncated
      pixel payload; the message names the offending byte offset.
    """
    with open(path, "rb") as fh:
        data = fh.read()

    if data[:2] != b"P6":
        raise PnmParseError(0, f"not a binary PNM (P6) file, magic is {data[:2]!r}")
    width, wstart, pos = _header_int(data, 2, "width")
    height, hstart, pos = _header_int(data, pos, "height")
    maxval, mstart, pos = _header_int(data, pos, "maxval")
    if width < 1 or height < 1:
        raise PnmParseError(wstart, f"invalid dimensions {width}x{height}")
    if maxval != 255:
        raise PnmParseError(mstart, f"unsupported maxval {maxval}, only 255 is supported")
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise PnmParseError(pos, "missing whitespace after maxval")
    pos += 1  # exactly one whitespace byte separates header and payload

    need = height * width * 3
    have = len(data) - pos
    if have < need:
        raise PnmParseError(
            len(data),
            f"truncated pixel payload: expected {need} bytes from byte {pos}, found {have}",
        )
    samples = np.frombuffer(data, dtype=np.uint8, count=need, offset=pos)
    interleaved = samples.reshape(height, width, 3)
    return RgbImage8(
        height=height,
        width=width,
        red=interleaved[:, :, 0].copy(),
        green=interleaved[:, :, 1].copy(),
        blue=interleaved[:, :, 2].copy(),
    )


def write_pnm(image: RgbImage8, path: str | os.PathLike) -> None:
    """Write ``image`` as binary P6 with maxval 255.

    The header is exactly ``P6\\n{width} {height}\\n255\\n`` followed by the
    interleaved RGB payload, so ``load_pnm`` inverts it byte for byte.
    """
    header = f"P6\n{image.width} {image.height}\n255\n".encode("ascii")
    payload = np.stack(image.channels, axis=-1).tobytes()
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(payload)


# SplitMix64 constants (Steele, Lea & Flood; the public-domain reference
# generator). Chosen because it is tiny, has a closed-form i-th output, and
# is exactly reproducible from integer ops alone on any platform.
_SM64_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_SM64_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_SM64_MIX2 = np.uint64(0x94D049BB133111EB)
_U64_MASK = (1 << 64) - 1


def _splitmix64(seed: int, count: int) -> np.ndarray:
    """The first ``count`` SplitMix64 outputs for ``seed``, as uint64."""
    with np.errstate(over="ignore"):
        state = np.uint64(seed & _U64_MASK) + _SM64_GAMMA * np.arange(
            1, count + 1, dtype=np.uint64
        )
        z = (state ^ (state >> np.uint64(30))) * _SM64_MIX1
        z = (z ^ (z >> np.uint64(27))) * _SM64_MIX2
        return z ^ (z >> np.uint64(31))


def synth_image(height: int, width: int, seed: int) -> RgbImage8:
    """Deterministic pseudo-random test image.

    The sample stream is SplitMix64 seeded with ``seed``; each 8-bit sample
    is the top byte of one 64-bit output. Samples fill the red channel in
    row-major order, then green, then blue, so the result is a pure
    function of ``(height, width, seed)`` with identical bytes on every
    platform.

    Parameters
    ----------
    height, width : int
      Image dimensions, both >= 1.
    seed : int
      Any Python integer; reduced modulo 2**64.

    Returns
    -------
    RgbImage8
    """
    if height < 1 or width < 1:
        raise ValueError(f"image dimensions must be >= 1, got {height}x{width}")
    words = _splitmix64(seed, 3 * height * width)
    samples = (words >> np.uint64(56)).astype(np.uint8)
    planes = samples.reshape(3, height, width)
    return RgbImage8(
        height=height,
        width=width,
        red=planes[0],
        green=planes[1],
        blue=planes[2],
    )


def to_planes(image: RgbImage8) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Convert the three 8-bit channels to float64 planes, values preserved.

    Integers up to 255 are exact in doubles, so rounding the planes back
    recovers the original samples bit for bit.
    """
    return (
        image.red.astype(np.float64),
        image.green.astype(np.float64),
        image.blue.astype(np.float64),
    )
