import math

import numpy as np
import pytest

from octolct import algebra
from octolct.grid import (LOG, Grid, OctField, QuatField, VoxelMask, ball_mask, even_odd_axis3,
                          full_mask, local_pair_split, lp_norm, mask_measure, parity8, power,
                          quat_compose_field, quat_split_field, reflect, weighted_sq_norm)

from conftest import random_field


def test_grid_is_centered_half_sample():
    g = Grid.centered((32, 32, 32), 8.0)
    assert g.dx == (0.5, 0.5, 0.5)
    assert g.x0 == (-7.75, -7.75, -7.75)
    for k in range(3):
        x = g.axis(k)
        assert np.array_equal(x, -x[::-1])
        assert np.all(x != 0)
        assert x[0] == g.x0[k]
    assert g.volume == 16.0 ** 3


def test_odd_n_rejected():
    with pytest.raises(ValueError, match="axis 2"):
        Grid((4, 5, 4), 1.0)


def test_reciprocal_roundtrip():
    g = Grid.centered((16, 20, 24), (6.0, 7.0, 8.0))
    w = g.reciprocal(2 * math.pi * 1.7)
    back = w.reciprocal(2 * math.pi * 1.7)
    assert back.same_as(g)


def test_fields_are_immutable(grid16):
    f = OctField.zeros(grid16)
    with pytest.raises(ValueError):
        f.comp[0, 0, 0, 0] = 1.0
    with pytest.raises(AttributeError):
        f.grid = None
    with pytest.raises(ValueError, match="finite"):
        OctField(grid16, np.full((8,) + grid16.shape, np.nan))


def test_lp_norm_examples():
    g = Grid.centered((8, 8, 8), 2.0)
    assert lp_norm(OctField.zeros(g), 2) == 0.0
    assert lp_norm(OctField.zeros(g), math.inf) == 0.0
    one = OctField.from_scalar(g, np.ones(g.shape))
    assert lp_norm(one, 2) == pytest.approx(math.sqrt(g.volume), rel=1e-14)
    with pytest.raises(ValueError):
        lp_norm(one, 0.5)


def test_lp_norm_gaussian():
    g = Grid.centered((64, 64, 64), 8.0)
    X, Y, Z = g.mesh()
    f = OctField.from_scalar(g, np.exp(-(X ** 2 + Y ** 2 + Z ** 2) / 2), unit=5)
    assert lp_norm(f, 2) == pytest.approx(math.pi ** 0.75, rel=1e-6)
    assert lp_norm(f, math.inf) == pytest.approx(math.exp(-3 * 0.125 ** 2 / 2), rel=1e-14)


def test_weighted_norm_reductions(grid16):
    f = random_field(grid16, 0)
    assert weighted_sq_norm(f, power(0)) == pytest.approx(lp_norm(f, 2) ** 2, rel=1e-14)
    assert weighted_sq_norm(OctField.zeros(grid16), power(1.5)) == 0.0
    assert weighted_sq_norm(OctField.zeros(grid16), LOG) == 0.0


def test_weighted_norm_alpha2_refinement():
    vals = []
    for n in (32, 64):
        g = Grid.centered((n, n, n), 8.0)
        X, Y, Z = g.mesh()
        f = OctField.from_scalar(g, np.exp(-(X ** 2 + Y ** 2 + Z ** 2) / 2))
        vals.append(weighted_sq_norm(f, power(2)))
    assert vals[0] == pytest.approx(vals[1], rel=1e-6)
    assert vals[1] == pytest.approx(1.5 * math.pi ** 1.5, rel=1e-10)


def test_weighted_norm_scale_matches_coordinate_change():
    g = Grid.centered((32, 32, 32), 8.0)
    X, Y, Z = g.mesh()
    f = OctField.from_scalar(g, np.exp(-(X ** 2 + Y ** 2 + Z ** 2) / 2))
    # |x / 2|^alpha == 2^-alpha |x|^alpha
    a = weighted_sq_norm(f, power(0.5), scale=(2, 2, 2))
    b = weighted_sq_norm(f, power(0.5))
    assert a == pytest.approx(b * 2 ** -0.5, rel=1e-12)


def test_reflect(grid16):
    X, _, _ = grid16.mesh()
    f = OctField.from_scalar(grid16, X)
    assert reflect(f, ("+", "+", "+")).allclose(f, atol=0)
    assert reflect(f, ("-", "+", "+")).allclose(-f, atol=0)
    g = random_field(grid16, 3)
    for s in [("-", "+", "-"), (1, -1, 1)]:
        assert np.array_equal(reflect(reflect(g, s), s).comp, g.comp)
        assert lp_norm(reflect(g, s), 2) == lp_norm(g, 2)
        assert lp_norm(reflect(g, s), 3) == pytest.approx(lp_norm(g, 3), rel=1e-15)


def test_coordinate_symmetry(grid16):
    for x in grid16.axes():
        assert np.array_equal(np.sort(x), np.sort(-x))


def test_parity8_examples(grid16):
    X, Y, Z = grid16.mesh()
    f = OctField.from_scalar(grid16, X)
    parts = parity8(f)
    assert list(parts) == ["eee", "eeo", "eoe", "eoo", "oee", "oeo", "ooe", "ooo"]
    assert parts["oee"].allclose(f, atol=0)
    assert all(not np.any(p.comp) for k, p in parts.items() if k != "oee")
    c = OctField.from_scalar(grid16, np.full(grid16.shape, 2.0), unit=3)
    parts = parity8(c)
    assert parts["eee"].allclose(c, atol=0)
    assert all(not np.any(p.comp) for k, p in parts.items() if k != "eee")


def test_parity8_orthogonal_and_complete(grid16):
    f = random_field(grid16, 5)
    parts = parity8(f)
    total = sum(parts.values(), OctField.zeros(grid16))
    assert total.allclose(f, rtol=0, atol=1e-14)
    keys = list(parts)
    e2 = lp_norm(f, 2) ** 2
    for i, a in enumerate(keys):
        for b in keys[i + 1:]:
            inner = float(np.sum(parts[a].comp * parts[b].comp)) * grid16.cell_volume
            assert abs(inner) <= 1e-12 * e2
    # declared parities
    for label, p in parts.items():
        signs = tuple("-" for _ in label)
        sgn = (-1) ** label.count("o")
        assert reflect(p, signs).allclose(sgn * p, atol=1e-15)


def test_even_odd_axis3(grid16):
    X, Y, Z = grid16.mesh()
    even = OctField.from_scalar(grid16, np.exp(-Z ** 2) * X)
    fe, fo = even_odd_axis3(even)
    assert fe.allclose(even, atol=0) and not np.any(fo.comp)
    odd = OctField.from_scalar(grid16, Z)
    fe, fo = even_odd_axis3(odd)
    assert fo.allclose(odd, atol=0) and not np.any(fe.comp)
    f = random_field(grid16, 2)
    fe, fo = even_odd_axis3(f)
    assert lp_norm(fe, 2) ** 2 + lp_norm(fo, 2) ** 2 == pytest.approx(lp_norm(f, 2) ** 2, rel=1e-12)


def test_quat_split_field(grid16, rng):
    phi = rng.standard_normal(grid16.shape)
    f = OctField.from_scalar(grid16, phi, unit=4)
    g, h = quat_split_field(f)
    assert not np.any(g.comp) and np.array_equal(h.comp[0], phi) and not np.any(h.comp[1:])
    real = OctField.from_scalar(grid16, phi)
    assert not np.any(quat_split_field(real)[1].comp)
    f = random_field(grid16, 4)
    g, h = quat_split_field(f)
    assert np.array_equal(quat_compose_field(g, h).comp, f.comp)
    assert lp_norm(g, 2) ** 2 + lp_norm(h, 2) ** 2 == pytest.approx(lp_norm(f, 2) ** 2, rel=1e-14)


def test_local_pair_split_examples(grid16):
    X, Y, Z = grid16.mesh()
    phi = np.exp(-(X ** 2 + 2 * Y ** 2 + Z ** 2)) * (1 + X)
    f = OctField.from_scalar(grid16, phi)
    fm, fn = local_pair_split(f)
    assert np.allclose(fm.comp[0], phi, atol=0) and not np.any(fm.comp[1:]) and not np.any(fn.comp)
    f = OctField.from_scalar(grid16, phi, unit=4)
    fm, fn = local_pair_split(f)
    assert not np.any(fm.comp) and np.allclose(fn.comp[0], phi, atol=0) and not np.any(fn.comp[1:])


def test_local_pair_split_norms(grid16):
    for seed in range(5):
        f = random_field(grid16, seed)
        fm, fn = local_pair_split(f)
        assert isinstance(fm, QuatField)
        total = lp_norm(fm, 2) ** 2 + lp_norm(fn, 2) ** 2
        assert total == pytest.approx(lp_norm(f, 2) ** 2, rel=1e-12)


def test_left_right_constant_products_differ(grid16):
    f = random_field(grid16, 1)
    o = algebra.Octonion(0.3, 1, -2, 0.5, 1, 0, 2, -1)
    right = f.rmul_const(o)
    left = f.lmul_const(o)
    assert not right.allclose(left, atol=1e-6)
    i = (3, 4, 5)
    assert np.allclose(right.at(i), (algebra.Octonion(f.at(i)) * o).s, atol=1e-14)
    assert np.allclose(left.at(i), (o * algebra.Octonion(f.at(i))).s, atol=1e-14)


def test_mask_measure():
    g = Grid.centered((64, 64, 64), 4.0)
    assert mask_measure(VoxelMask(g, np.zeros(g.shape))) == 0.0
    assert mask_measure(full_mask(g)) == pytest.approx(g.volume, rel=1e-14)
    r = 2.0
    assert mask_measure(ball_mask(g, r)) == pytest.approx(4 / 3 * math.pi * r ** 3, rel=0.02)
    with pytest.raises(ValueError):
        VoxelMask(g, np.zeros((2, 2, 2)))
