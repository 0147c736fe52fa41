"""Netpbm bitmap (PBM) reading and writing, plain P1 and raw P4.

PBM is binary by definition, which is exactly the image domain of the
simulator. PBM's convention is 1 = black; by default that maps straight to
pixel value 1, with an inversion flag for white-on-black sources.
"""

import numpy as np

from .edges import BinaryImage

MAX_DIMENSION = 1 << 20  # reject absurd headers before allocating


class PBMError(ValueError):
    """Malformed PBM content."""


def _tokens(data: bytes):
    """Yield whitespace-separated header/raster tokens, skipping # comments."""
    i = 0
    n = len(data)
    while i < n:
        c = data[i : i + 1]
        if c == b"#":
            while i < n and data[i : i + 1] not in (b"\n", b"\r"):
                i += 1
        elif c.isspace():
            i += 1
        else:
            start = i
            while i < n and not data[i : i + 1].isspace() and data[i : i + 1] != b"#":
                i += 1
            yield start, data[start:i]


def _read_header(data: bytes):
    tok = _tokens(data)
    try:
        _, magic = next(tok)
        _, w_tok = next(tok)
        pos_h, h_tok = next(tok)
    except StopIteration:
        raise PBMError("truncated PBM header") from None
    if magic not in (b"P1", b"P4"):
        raise PBMError(f"not a PBM file (magic {magic!r})")
    try:
        width, height = int(w_tok), int(h_tok)
    except ValueError:
        raise PBMError(f"non-numeric PBM dimensions {w_tok!r} x {h_tok!r}") from None
    if not (0 < width <= MAX_DIMENSION and 0 < height <= MAX_DIMENSION):
        raise PBMError(f"PBM dimensions {width}x{height} out of range")
    return magic, width, height, pos_h + len(h_tok), tok


def read_pbm(path) -> np.ndarray:
    """Parse a P1 or P4 file into a (height, width) uint8 array of {0, 1}."""
    with open(path, "rb") as fh:
        data = fh.read()
    magic, width, height, header_end, tok = _read_header(data)

    if magic == b"P1":
        bits = []
        for _, t in tok:
            for ch in t:  # P1 allows unseparated digits, e.g. "0110"
                if ch == 0x30:
                    bits.append(0)
                elif ch == 0x31:
                    bits.append(1)
                else:
                    raise PBMError(f"non-binary token {t!r} in P1 raster")
        if len(bits) != width * height:
            raise PBMError(
                f"P1 raster has {len(bits)} bits, expected {width * height}"
            )
        return np.array(bits, dtype=np.uint8).reshape(height, width)

    # P4: single whitespace byte after the header, then packed rows.
    if not data[header_end : header_end + 1].isspace():
        raise PBMError("P4 header not terminated by whitespace")
    raster = data[header_end + 1 :]
    row_bytes = (width + 7) // 8
    if len(raster) < row_bytes * height:
        raise PBMError(
            f"P4 raster has {len(raster)} bytes, expected {row_bytes * height}"
        )
    rows = np.frombuffer(raster[: row_bytes * height], dtype=np.uint8)
    bits = np.unpackbits(rows.reshape(height, row_bytes), axis=1)
    return bits[:, :width].copy()


def write_pbm(path, pixels: np.ndarray, raw: bool = False) -> None:
    """Write a binary array as PBM; plain P1 unless ``raw``."""
    pixels = np.asarray(pixels, dtype=np.uint8)
    if pixels.ndim != 2:
        raise ValueError(f"pixels must be 2-D, got shape {pixels.shape}")
    height, width = pixels.shape
    if raw:
        packed = np.packbits(pixels, axis=1)
        with open(path, "wb") as fh:
            fh.write(f"P4\n{width} {height}\n".encode("ascii"))
            fh.write(packed.tobytes())
    else:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(f"P1\n{width} {height}\n")
            for row in pixels:
                fh.write(" ".join(str(int(v)) for v in row) + "\n")


def load_image(path, invert: bool = False) -> BinaryImage:
    """Load a PBM file as a BinaryImage; PBM black (1) maps to pixel 1
    unless ``invert``."""
    bits = read_pbm(path)
    if invert:
        bits = (1 - bits).astype(np.uint8)
    return BinaryImage(bits)


def save_image(path, image, raw: bool = False, invert: bool = False) -> None:
    """Write a BinaryImage (or bare array) back out as PBM."""
    pixels = np.asarray(getattr(image, "pixels", image), dtype=np.uint8)
    if invert:
        pixels = (1 - pixels).astype(np.uint8)
    write_pbm(path, pixels, raw=raw)
