import struct

import numpy as np
import pytest

from octolct import oos1, signals
from octolct.grid import Grid, OctField

from conftest import random_field


def test_header_layout(grid16):
    f = signals.gaussian(grid16)
    data = oos1.encode(f)
    assert oos1.HEADER_SIZE == 68
    assert len(data) == 68 + 8 * 8 * 16 ** 3
    assert data[:4] == b"OOS1"
    assert struct.unpack_from("<I", data, 4) == (1,)
    assert struct.unpack_from("<3I", data, 8) == (16, 16, 16)
    assert struct.unpack_from("<3d", data, 20) == grid16.x0
    assert struct.unpack_from("<3d", data, 44) == grid16.dx
    payload = np.frombuffer(data, "<f8", offset=68)
    assert np.array_equal(payload, f.comp.ravel())


def test_roundtrip_bit_exact(tmp_path):
    g = Grid.centered((8, 12, 6), (3.0, 4.5, 2.0))
    f = random_field(g, 2)
    path = tmp_path / "f.oos1"
    oos1.write(path, f)
    back = oos1.read(path)
    assert back.grid == g and back.grid.x0 == g.x0
    assert np.array_equal(back.comp, f.comp)
    assert oos1.encode(back) == path.read_bytes()


def test_default_gen_size(grid32):
    assert len(oos1.encode(signals.gaussian(grid32))) == 68 + 8 * 8 * 32 ** 3


@pytest.mark.parametrize("mutate,match", [
    (lambda d: b"OOS2" + d[4:], "magic"),
    (lambda d: d[:4] + struct.pack("<I", 2) + d[8:], "version"),
    (lambda d: d[:-8], "size"),
    (lambda d: d[:30], "short"),
    (lambda d: d[:10], "short"),
    (lambda d: d[:8] + struct.pack("<3I", 7, 8, 8) + d[20:], "size|grid"),
    (lambda d: d[:20] + struct.pack("<3d", 0.0, 0.0, 0.0) + d[44:], "x0"),
    (lambda d: d[:44] + struct.pack("<3d", -1.0, 1.0, 1.0) + d[68:], "grid"),
])
def test_malformed(mutate, match):
    g = Grid.centered((8, 8, 8), 2.0)
    data = oos1.encode(signals.gaussian(g))
    with pytest.raises(oos1.FormatError, match=match):
        oos1.decode(mutate(data))


def test_nonfinite_payload_rejected():
    g = Grid.centered((4, 4, 4), 1.0)
    data = bytearray(oos1.encode(OctField.zeros(g)))
    data[68:76] = struct.pack("<d", float("nan"))
    with pytest.raises(oos1.FormatError):
        oos1.decode(bytes(data))


def test_only_3d():
    with pytest.raises(ValueError):
        oos1.encode(OctField.zeros(Grid.centered((4, 4), 1.0)))
