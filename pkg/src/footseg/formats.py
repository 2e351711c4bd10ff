"""File formats: mask/label PNG and PGM images, DFLD float grids.

PNG masks are 8-bit single-channel with foreground stored as 255; label maps
are 16-bit single-channel. PGM follows the binary P5 convention (16-bit
samples big-endian). DFLD is a little-endian float32 container with a
16-byte header: magic "DFLD", u32 width, u32 height, u32 planes.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np
from PIL import Image

from .raster import LabelMap, as_mask

DFLD_MAGIC = b"DFLD"


def _is_pgm(path) -> bool:
    return Path(path).suffix.lower() in (".pgm", ".pnm")


def write_mask(path, mask) -> None:
    mask = as_mask(mask)
    data = (mask * 255).astype(np.uint8)
    if _is_pgm(path):
        _write_pgm(path, data, maxval=255)
    else:
        Image.fromarray(data, mode="L").save(path)


def read_mask(path) -> np.ndarray:
    if _is_pgm(path):
        data = _read_pgm(path)
    else:
        data = np.asarray(Image.open(path).convert("L"))
    return (data > 127).astype(np.uint8)


def write_labels(path, labels: LabelMap) -> None:
    if labels.component_count > 0xFFFF:
        raise ValueError("label maps are stored as 16-bit; too many instances")
    data = labels.labels.astype(np.uint16)
    if _is_pgm(path):
        _write_pgm(path, data, maxval=65535)
    else:
        Image.fromarray(data).save(path)


def read_labels(path) -> LabelMap:
    if _is_pgm(path):
        data = _read_pgm(path)
    else:
        data = np.asarray(Image.open(path))
    labels = data.astype(np.int32)
    count = int(labels.max()) if labels.size else 0
    return LabelMap(labels=labels, component_count=count)


def write_image(path, image) -> None:
    """Write a float image in [0,1], shape (H,W) or (C,H,W) with C in {1,3}."""
    arr = np.asarray(image, dtype=np.float64)
    if arr.ndim == 3:
        arr = np.moveaxis(arr, 0, -1)
        if arr.shape[-1] == 1:
            arr = arr[..., 0]
    data = np.clip(np.rint(arr * 255.0), 0, 255).astype(np.uint8)
    Image.fromarray(data).save(path)


def read_image(path) -> np.ndarray:
    """Read an image as float32 (C,H,W) in [0,1]."""
    img = Image.open(path)
    arr = np.asarray(img, dtype=np.float32) / 255.0
    if arr.ndim == 2:
        arr = arr[None]
    else:
        arr = np.moveaxis(arr, -1, 0)
    return arr


def _write_pgm(path, data: np.ndarray, maxval: int) -> None:
    h, w = data.shape
    payload = data.astype(">u2" if maxval > 255 else "u1").tobytes()
    with open(path, "wb") as fh:
        fh.write(f"P5\n{w} {h}\n{maxval}\n".encode("ascii"))
        fh.write(payload)


def _read_pgm(path) -> np.ndarray:
    with open(path, "rb") as fh:
        raw = fh.read()
    if not raw.startswith(b"P5"):
        raise ValueError(f"{path}: not a binary PGM file")
    # Header: magic, width, height, maxval; '#' comments allowed between tokens.
    tokens, pos = [], 2
    while len(tokens) < 3:
        while pos < len(raw) and raw[pos : pos + 1].isspace():
            pos += 1
        if raw[pos : pos + 1] == b"#":
            while pos < len(raw) and raw[pos] != 0x0A:
                pos += 1
            continue
        start = pos
        while pos < len(raw) and not raw[pos : pos + 1].isspace():
            pos += 1
        tokens.append(int(raw[start:pos]))
    pos += 1  # single whitespace after maxval
    w, h, maxval = tokens
    dtype = ">u2" if maxval > 255 else "u1"
    data = np.frombuffer(raw, dtype=dtype, count=h * w, offset=pos)
    return data.reshape(h, w).astype(np.uint16 if maxval > 255 else np.uint8)


def write_dfld(path, planes) -> None:
    """Write one or more float grids: (H,W) or (P,H,W), float32 little-endian."""
    arr = np.asarray(planes, dtype=np.float32)
    if arr.ndim == 2:
        arr = arr[None]
    if arr.ndim != 3:
        raise ValueError(f"expected (H,W) or (P,H,W), got shape {arr.shape}")
    p, h, w = arr.shape
    with open(path, "wb") as fh:
        fh.write(DFLD_MAGIC)
        fh.write(struct.pack("<III", w, h, p))
        fh.write(arr.astype("<f4").tobytes())


def read_dfld(path) -> np.ndarray:
    """Read a DFLD file as a float32 (P,H,W) array."""
    with open(path, "rb") as fh:
        header = fh.read(16)
        if len(header) != 16 or header[:4] != DFLD_MAGIC:
            raise ValueError(f"{path}: missing DFLD header")
        w, h, p = struct.unpack("<III", header[4:])
        data = np.frombuffer(fh.read(4 * p * h * w), dtype="<f4")
    if data.size != p * h * w:
        raise ValueError(f"{path}: truncated DFLD payload")
    return data.reshape(p, h, w).astype(np.float32)
