"""Minimal PNG reader for 8-bit grayscale images.

Covers exactly what the pipeline needs as an alternative input format:
color type 0 (grayscale), bit depth 8, no interlacing. Everything else is
rejected with a FormatError. Decoded pixels are identical to what the PGM
path would produce for the same image.
"""
from __future__ import annotations

import struct
import zlib

import numpy as np

from .errors import FormatError

SIGNATURE = b"\x89PNG\r\n\x1a\n"


def _paeth(a: int, b: int, c: int) -> int:
    p = a + b - c
    pa, pb, pc = abs(p - a), abs(p - b), abs(p - c)
    if pa <= pb and pa <= pc:
        return a
    if pb <= pc:
        return b
    return c


def load_png(data: bytes) -> np.ndarray:
    """Decode PNG bytes into a (height, width) uint8 array."""
    if not data.startswith(SIGNATURE):
        raise FormatError("not a PNG stream: bad signature at byte offset 0")

    pos = len(SIGNATURE)
    width = height = None
    idat = bytearray()
    seen_end = False
    while pos < len(data):
        if pos + 8 > len(data):
            raise FormatError(f"truncated chunk header at byte offset {pos}")
        length, ctype = struct.unpack(">I4s", data[pos : pos + 8])
        body_start = pos + 8
        body_end = body_start + length
        if body_end + 4 > len(data):
            raise FormatError(f"truncated chunk {ctype!r} at byte offset {pos}")
        body = data[body_start:body_end]
        (crc,) = struct.unpack(">I", data[body_end : body_end + 4])
        if zlib.crc32(ctype + body) & 0xFFFFFFFF != crc:
            raise FormatError(f"bad CRC for chunk {ctype!r} at byte offset {pos}")
        pos = body_end + 4

        if ctype == b"IHDR":
            width, height, depth, color, comp, filt, interlace = struct.unpack(
                ">IIBBBBB", body
            )
            if depth != 8 or color != 0:
                raise FormatError(
                    f"unsupported PNG: bit depth {depth}, color type {color} "
                    "(only 8-bit grayscale is supported)"
                )
            if comp != 0 or filt != 0:
                raise FormatError("unsupported PNG compression/filter method")
            if interlace != 0:
                raise FormatError("interlaced PNG is not supported")
        elif ctype == b"IDAT":
            idat.extend(body)
        elif ctype == b"IEND":
            seen_end = True
            break

    if width is None:
        raise FormatError("missing IHDR chunk")
    if not seen_end:
        raise FormatError("missing IEND chunk")
    if width < 1 or height < 1:
        raise FormatError(f"invalid dimensions {width}x{height}")

    try:
        raw = zlib.decompress(bytes(idat))
    except zlib.error as exc:
        raise FormatError(f"corrupt IDAT stream: {exc}") from None

    stride = width + 1
    if len(raw) != stride * height:
        raise FormatError(
            f"decompressed size {len(raw)} does not match {stride * height} "
            f"for {width}x{height}"
        )

    out = np.empty((height, width), dtype=np.uint8)
    prev = bytearray(width)
    for y in range(height):
        ftype = raw[y * stride]
        line = bytearray(raw[y * stride + 1 : (y + 1) * stride])
        if ftype == 0:
            pass
        elif ftype == 1:  # Sub
            for x in range(1, width):
                line[x] = (line[x] + line[x - 1]) & 0xFF
        elif ftype == 2:  # Up
            for x in range(width):
                line[x] = (line[x] + prev[x]) & 0xFF
        elif ftype == 3:  # Average
            for x in range(width):
                left = line[x - 1] if x else 0
                line[x] = (line[x] + (left + prev[x]) // 2) & 0xFF
        elif ftype == 4:  # Paeth
            for x in range(width):
                left = line[x - 1] if x else 0
                upleft = prev[x - 1] if x else 0
                line[x] = (line[x] + _paeth(left, prev[x], upleft)) & 0xFF
        else:
            raise FormatError(f"unknown filter type {ftype} on scanline {y}")
        out[y] = np.frombuffer(bytes(line), dtype=np.uint8)
        prev = line
    return out
