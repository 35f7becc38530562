"""OOS1 binary volume format for 3D octonion fields.

Layout, little-endian throughout::

    offset  size  field
    0       4     magic b"OOS1"
    4       4     u32 version (= 1)
    8       12    u32 n1, n2, n3
    20      24    f64 x0_1, x0_2, x0_3   (first sample centers)
    44      24    f64 dx1, dx2, dx3
    68      ...   f64 payload, shape (8, n1, n2, n3), C order

The header is 68 bytes; the payload holds ``8 * n1 * n2 * n3`` doubles.
"""
import struct

import numpy as np

from .grid import Grid, OctField

MAGIC = b"OOS1"
VERSION = 1
_HEADER = struct.Struct("<4sI3I3d3d")
HEADER_SIZE = _HEADER.size


class FormatError(ValueError):
    """The bytes are not a valid OOS1 file."""


def encode(f):
    g = f.grid
    if g.ndim != 3:
        raise ValueError("OOS1 stores 3D fields only")
    head = _HEADER.pack(MAGIC, VERSION, *g.n, *g.x0, *g.dx)
    return head + np.ascontiguousarray(f.comp, dtype="<f8").tobytes()


def decode(data):
    if len(data) < HEADER_SIZE:
        raise FormatError(f"file too short for an OOS1 header ({len(data)} bytes)")
    magic, version, n1, n2, n3, a1, a2, a3, d1, d2, d3 = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}, expected {MAGIC!r}")
    if version != VERSION:
        raise FormatError(f"unsupported OOS1 version {version}")
    n = (n1, n2, n3)
    expected = HEADER_SIZE + 8 * 8 * n1 * n2 * n3
    if len(data) != expected:
        raise FormatError(f"payload size mismatch: {len(data)} bytes, expected {expected}")
    try:
        grid = Grid(n, (d1, d2, d3))
    except ValueError as exc:
        raise FormatError(f"invalid grid in header: {exc}") from None
    x0 = np.array([a1, a2, a3])
    if not np.allclose(x0, grid.x0, rtol=1e-9, atol=1e-12 * max(grid.dx)):
        raise FormatError(f"x0 {tuple(x0)} is not the centered origin {grid.x0} for this grid")
    comp = np.frombuffer(data, dtype="<f8", offset=HEADER_SIZE).reshape((8,) + n)
    try:
        return OctField(grid, comp)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def write(path, f):
    with open(path, "wb") as fh:
        fh.write(encode(f))


def read(path):
    with open(path, "rb") as fh:
        return decode(fh.read())
