"""Binary tensor files, label lists, and grayscale image export.

Tensor file layout (little-endian throughout):

    bytes 0-3   magic "NTF1"
    bytes 4-7   uint32 number of dimensions
    then        ndims x uint64 extents
    then        float64 payload, row-major (last index fastest)

Round trips are bit-exact; non-finite payloads are rejected on both
sides.
"""

import struct
from pathlib import Path

import numpy as np

from ._validation import as_tensor, check_finite

MAGIC = b"NTF1"


def write_tensor(path, x):
    x = as_tensor(x)
    check_finite(x, "tensor payload")
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(struct.pack("<I", x.ndim))
        f.write(struct.pack(f"<{x.ndim}Q", *x.shape))
        f.write(x.astype("<f8", copy=False).tobytes(order="C"))


def read_tensor(path):
    with open(path, "rb") as f:
        magic = f.read(4)
        if magic != MAGIC:
            raise ValueError(f"{path}: not a tensor file (bad magic {magic!r})")
        (ndim,) = struct.unpack("<I", f.read(4))
        shape = struct.unpack(f"<{ndim}Q", f.read(8 * ndim))
        count = int(np.prod(shape, dtype=np.int64)) if ndim else 1
        payload = f.read()
    if len(payload) != 8 * count:
        raise ValueError(
            f"{path}: payload holds {len(payload) // 8} values, header wants {count}"
        )
    x = np.frombuffer(payload, dtype="<f8").astype(np.float64).reshape(shape)
    check_finite(x, f"{path} payload")
    return x


def write_labels(path, labels):
    Path(path).write_text("".join(f"{int(l)}\n" for l in labels), encoding="utf-8")


def read_labels(path):
    text = Path(path).read_text(encoding="utf-8")
    return np.array([int(line) for line in text.split()], dtype=np.int64)


def write_pgm(path, image):
    """Write a 2-d array as binary PGM, min-max scaled to 0..255."""
    image = np.asarray(image, dtype=np.float64)
    if image.ndim != 2:
        raise ValueError("PGM export needs a 2-d array")
    lo, hi = image.min(), image.max()
    scaled = np.zeros_like(image) if hi == lo else (image - lo) / (hi - lo)
    data = np.round(scaled * 255).astype(np.uint8)
    h, w = image.shape
    with open(path, "wb") as f:
        f.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        f.write(data.tobytes(order="C"))


def read_pgm(path):
    """Read back a binary PGM written by :func:`write_pgm` (for tests)."""
    raw = Path(path).read_bytes()
    header, rest = raw.split(b"\n255\n", 1)
    magic, dims = header.split(b"\n")
    if magic != b"P5":
        raise ValueError("not a binary PGM")
    w, h = (int(v) for v in dims.split())
    return np.frombuffer(rest, dtype=np.uint8, count=w * h).reshape(h, w)
