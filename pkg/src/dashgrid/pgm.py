"""PGM (P2 ASCII / P5 binary) codec.

Grayscale images are numpy uint8 arrays of shape (height, width). Binary
masks are written as P5 with foreground = 255, background = 0, and the
save -> load -> binarize(128) round trip is bit-exact.

Parse errors report the byte offset at which decoding failed.
"""
from __future__ import annotations

import numpy as np

from .errors import FormatError

_WS = frozenset(b" \t\n\r\x0b\x0c")
_HASH = ord("#")


def _skip_separators(data: bytes, pos: int) -> int:
    """Advance past whitespace and '#' comments (comments run to end of line)."""
    n = len(data)
    while pos < n:
        c = data[pos]
        if c == _HASH:
            while pos < n and data[pos] not in (0x0A, 0x0D):
                pos += 1
        elif c in _WS:
            pos += 1
        else:
            break
    return pos


def _read_token(data: bytes, pos: int, what: str) -> tuple[bytes, int]:
    pos = _skip_separators(data, pos)
    if pos >= len(data):
        raise FormatError(f"truncated stream: expected {what} at byte offset {pos}")
    start = pos
    while pos < len(data) and data[pos] not in _WS and data[pos] != _HASH:
        pos += 1
    return data[start:pos], pos


def _read_int(data: bytes, pos: int, what: str) -> tuple[int, int]:
    token, end = _read_token(data, pos, what)
    try:
        value = int(token)
    except ValueError:
        raise FormatError(
            f"malformed {what} {token!r} at byte offset {end - len(token)}"
        ) from None
    return value, end


def load_pgm(data: bytes) -> np.ndarray:
    """Decode P2 or P5 bytes into a (height, width) uint8 array.

    P2 and P5 encodings of the same image load identically. Raises
    FormatError (naming the byte offset) for malformed headers, truncated
    pixel data, or maxval > 255.
    """
    if len(data) < 2 or data[:1] != b"P":
        raise FormatError("not a PGM stream: bad magic at byte offset 0")
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise FormatError(f"unsupported PGM magic {magic!r} at byte offset 0")

    pos = 2
    width, pos = _read_int(data, pos, "width")
    height, pos = _read_int(data, pos, "height")
    maxval, pos = _read_int(data, pos, "maxval")
    if width < 1 or height < 1:
        raise FormatError(f"invalid dimensions {width}x{height} in header (byte offset {pos})")
    if maxval > 255:
        raise FormatError(f"maxval {maxval} exceeds 255 (byte offset {pos})")
    if maxval < 1:
        raise FormatError(f"invalid maxval {maxval} (byte offset {pos})")

    count = width * height
    if magic == b"P5":
        # exactly one separator byte between maxval and the raster
        if pos >= len(data) or data[pos] not in _WS:
            raise FormatError(f"missing raster separator at byte offset {pos}")
        pos += 1
        raster = data[pos : pos + count]
        if len(raster) < count:
            raise FormatError(
                f"truncated pixel data at byte offset {pos + len(raster)}: "
                f"expected {count} bytes, found {len(raster)}"
            )
        pixels = np.frombuffer(raster, dtype=np.uint8, count=count)
    else:
        values = np.empty(count, dtype=np.uint8)
        for i in range(count):
            value, pos = _read_int(data, pos, f"pixel {i}")
            if not 0 <= value <= maxval:
                raise FormatError(
                    f"pixel value {value} out of range 0..{maxval} (byte offset {pos})"
                )
            values[i] = value
        pixels = values
    return pixels.reshape(height, width).copy()


def save_pgm(mask: np.ndarray) -> bytes:
    """Encode a boolean mask as P5 bytes, foreground = 255."""
    mask = np.asarray(mask, dtype=bool)
    height, width = mask.shape
    header = f"P5\n{width} {height}\n255\n".encode("ascii")
    return header + (mask.astype(np.uint8) * 255).tobytes()


def save_pgm_gray(image: np.ndarray) -> bytes:
    """Encode a uint8 grayscale image as P5 bytes."""
    image = np.asarray(image, dtype=np.uint8)
    height, width = image.shape
    header = f"P5\n{width} {height}\n255\n".encode("ascii")
    return header + image.tobytes()
