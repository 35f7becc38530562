"""Sampled hypercomplex fields on uniform centered grids.

Every grid here is a *half-sample* grid: ``x_i = (i - (n-1)/2) * dx`` with
even ``n``, so coordinates are symmetric about the origin and never hit
it.  That makes ``|x|**alpha`` and ``log|x|`` finite at every sample and
gives exact parity pairing ``i <-> n-1-i``.

Fields are component-first: an octonion field on an ``(n1, n2, n3)`` grid
has ``comp.shape == (8, n1, n2, n3)``.  They are immutable; every
operation returns a new field.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import algebra, quadrature


@dataclass(frozen=True)
class Grid:
    """Uniform centered half-sample grid in any number of dimensions."""

    n: tuple
    dx: tuple

    def __post_init__(self):
        n = tuple(int(v) for v in np.atleast_1d(self.n))
        dx = tuple(float(v) for v in np.atleast_1d(self.dx))
        if len(dx) == 1 and len(n) > 1:
            dx = dx * len(n)
        if len(n) != len(dx):
            raise ValueError(f"n and dx disagree in dimension: {n} vs {dx}")
        for k, (nk, hk) in enumerate(zip(n, dx)):
            if nk <= 0 or nk % 2:
                raise ValueError(f"axis {k + 1}: n must be a positive even integer, got {nk}")
            if not (hk > 0 and math.isfinite(hk)):
                raise ValueError(f"axis {k + 1}: dx must be positive and finite, got {hk}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "dx", dx)

    @classmethod
    def centered(cls, n, halfwidth):
        """Grid of ``n`` cells covering ``[-halfwidth, halfwidth]`` on each axis."""
        n = tuple(int(v) for v in np.atleast_1d(n))
        hw = np.broadcast_to(np.asarray(halfwidth, dtype=float), (len(n),))
        return cls(n, tuple(2.0 * h / k for h, k in zip(hw, n)))

    @property
    def ndim(self):
        return len(self.n)

    @property
    def shape(self):
        return self.n

    @property
    def x0(self):
        return tuple(-(k / 2 - 0.5) * h for k, h in zip(self.n, self.dx))

    @property
    def halfwidth(self):
        return tuple(k * h / 2 for k, h in zip(self.n, self.dx))

    @property
    def cell_volume(self):
        return math.prod(self.dx)

    @property
    def volume(self):
        return math.prod(k * h for k, h in zip(self.n, self.dx))

    def axis(self, k):
        return (np.arange(self.n[k]) - (self.n[k] - 1) / 2) * self.dx[k]

    def axes(self):
        return [self.axis(k) for k in range(self.ndim)]

    def mesh(self):
        return np.meshgrid(*self.axes(), indexing="ij")

    def radius(self, scale=None):
        """``|x / scale|`` at every sample (``scale`` per axis, default 1)."""
        scale = np.ones(self.ndim) if scale is None else np.broadcast_to(np.abs(scale), (self.ndim,))
        r2 = np.zeros(self.n)
        for k, x in enumerate(self.axes()):
            shape = [1] * self.ndim
            shape[k] = self.n[k]
            r2 = r2 + ((x / scale[k]) ** 2).reshape(shape)
        return np.sqrt(r2)

    def reciprocal(self, scale=1.0):
        """Grid with ``dw_k = scale_k / (n_k dx_k)`` and the same sample counts.

        ``scale = 1`` is the discrete Fourier grid of the ``exp(-2 pi i x w)``
        convention; ``scale = 2 pi |b|`` is the natural grid of an LCT axis.
        """
        scale = np.broadcast_to(np.asarray(scale, dtype=float), (self.ndim,))
        return Grid(self.n, tuple(s / (k * h) for s, k, h in zip(scale, self.n, self.dx)))

    def sub(self, axes):
        axes = list(axes)
        return Grid(tuple(self.n[k] for k in axes), tuple(self.dx[k] for k in axes))

    def same_as(self, other):
        return self.n == other.n and np.allclose(self.dx, other.dx, rtol=1e-12, atol=0)


Grid3D = Grid


# ---------------------------------------------------------------------------
# fields

class _Field:
    size = 0

    __slots__ = ("grid", "comp")

    def __init__(self, grid, comp):
        comp = np.array(comp, dtype=np.float64, copy=True)
        if comp.shape != (self.size,) + grid.shape:
            raise ValueError(f"{type(self).__name__} on grid {grid.shape} needs shape "
                             f"{(self.size,) + grid.shape}, got {comp.shape}")
        if not np.all(np.isfinite(comp)):
            raise ValueError(f"{type(self).__name__} values must be finite")
        comp.flags.writeable = False
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "comp", comp)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def zeros(cls, grid):
        return cls(grid, np.zeros((cls.size,) + grid.shape))

    @classmethod
    def from_scalar(cls, grid, values, unit=0):
        """Field ``values * e_unit`` from a real volume."""
        comp = np.zeros((cls.size,) + grid.shape)
        comp[unit] = values
        return cls(grid, comp)

    def _like(self, comp):
        return type(self)(self.grid, comp)

    def _check(self, other):
        if type(other) is not type(self) or not self.grid.same_as(other.grid):
            raise ValueError("fields must have the same type and grid")
        return other

    def __add__(self, other):
        return self._like(self.comp + self._check(other).comp)

    def __sub__(self, other):
        return self._like(self.comp - self._check(other).comp)

    def __neg__(self):
        return self._like(-self.comp)

    def __mul__(self, scalar):
        return self._like(self.comp * float(scalar))

    __rmul__ = __mul__

    def rmul_const(self, o):
        """``f(x) * o`` for a constant hypercomplex ``o`` (right product)."""
        o = np.asarray(getattr(o, "s", o), dtype=float)
        return self._like(algebra.mul(self.comp, o.reshape((-1,) + (1,) * self.grid.ndim)))

    def lmul_const(self, o):
        """``o * f(x)`` (left product)."""
        o = np.asarray(getattr(o, "s", o), dtype=float)
        return self._like(algebra.mul(o.reshape((-1,) + (1,) * self.grid.ndim), self.comp))

    def abs2(self):
        """Pointwise squared hypercomplex modulus."""
        return algebra.sq_norm(self.comp)

    def at(self, index):
        return self.comp[(slice(None),) + tuple(index)].copy()

    def allclose(self, other, rtol=1e-12, atol=0.0):
        return bool(np.allclose(self.comp, self._check(other).comp, rtol=rtol, atol=atol))


class OctField(_Field):
    """Octonion-valued samples, ``comp[k]`` holds the coefficient of ``e_k``."""

    size = 8
    __slots__ = ()


class QuatField(_Field):
    """Quaternion-valued samples over ``1, e1, e2, e3``."""

    size = 4
    __slots__ = ()


OctField3D = OctField
QuatField2D = QuatField


def relative_error(f, g):
    """``||f - g||_2 / ||g||_2`` on the common grid (0 when both vanish)."""
    num = quadrature.symmetric_sum(algebra.sq_norm(f.comp - g.comp))
    den = quadrature.symmetric_sum(g.abs2())
    if den == 0.0:
        return math.sqrt(num)
    return math.sqrt(num / den)


# ---------------------------------------------------------------------------
# norms

@dataclass(frozen=True)
class Weight:
    """Radial weight ``|x|**alpha`` (kind ``power``) or ``log|x|`` (kind ``log``)."""

    kind: str = "power"
    alpha: float = 0.0

    def __post_init__(self):
        if self.kind not in ("power", "log"):
            raise ValueError(f"unknown weight kind {self.kind!r}")
        if not math.isfinite(self.alpha):
            raise ValueError("weight exponent must be finite")


def power(alpha):
    return Weight("power", float(alpha))


LOG = Weight("log")


def lp_norm(f, p):
    """``(sum |f|**p dV)**(1/p)``, or the sample maximum for ``p = inf``."""
    p = float(p)
    if not p >= 1.0:
        raise ValueError(f"p must be >= 1, got {p}")
    a2 = f.abs2()
    if math.isinf(p):
        return float(np.sqrt(a2.max())) if a2.size else 0.0
    if p == 2.0:
        return math.sqrt(quadrature.symmetric_sum(a2) * f.grid.cell_volume)
    return (quadrature.symmetric_sum(a2 ** (p / 2)) * f.grid.cell_volume) ** (1.0 / p)


def weighted_sq_norm(f, weight=Weight(), scale=None, corrected=True):
    """``int W(|x / scale|) |f(x)|**2 dx`` on the half-sample grid.

    Plain midpoint sums are used for smooth weights (``alpha`` a
    non-negative even integer, in particular ``alpha = 0`` which is
    bit-identical to ``lp_norm(f, 2)**2``); singular weights get the
    lattice-zeta end correction from :mod:`octolct.quadrature`.
    """
    g = f.grid
    scale = np.ones(g.ndim) if scale is None else np.broadcast_to(np.abs(np.asarray(scale, float)), (g.ndim,))
    spacing = tuple(h / s for h, s in zip(g.dx, scale))
    total = quadrature.singular_sum(f.abs2(), spacing, alpha=weight.alpha,
                                    log=weight.kind == "log", corrected=corrected)
    return float(total) * g.cell_volume


# ---------------------------------------------------------------------------
# reflections and parity

def reflect(f, signs):
    """Field ``x -> f(s1 x1, s2 x2, ...)``: negated axes are reversed."""
    signs = tuple(signs)
    if len(signs) != f.grid.ndim:
        raise ValueError(f"need {f.grid.ndim} signs, got {len(signs)}")
    axes = [k + 1 for k, s in enumerate(signs) if _sign(s) < 0]
    return f._like(np.flip(f.comp, axis=axes) if axes else f.comp)


def _sign(s):
    if s in ("+", 1, 1.0):
        return 1
    if s in ("-", -1, -1.0):
        return -1
    raise ValueError(f"reflection sign must be +/-1, got {s!r}")


def _split_axis(comp, axis):
    flipped = np.flip(comp, axis=axis)
    return 0.5 * (comp + flipped), 0.5 * (comp - flipped)


PARITY_LABELS = tuple("".join(t) for t in itertools.product("eo", repeat=3))


def parity8(f):
    """The eight parity projections ``{'eee': f_eee, ..., 'ooo': f_ooo}``.

    Letters run over axes 1, 2, 3; ``e`` is even and ``o`` odd in that
    coordinate.  The projections sum to ``f`` and are L2-orthogonal.
    """
    if f.grid.ndim != 3:
        raise ValueError("parity8 needs a 3D field")
    parts = {"": f.comp}
    for axis in (1, 2, 3):
        nxt = {}
        for label, comp in parts.items():
            e, o = _split_axis(comp, axis)
            nxt[label + "e"] = e
            nxt[label + "o"] = o
        parts = nxt
    return {label: f._like(parts[label]) for label in PARITY_LABELS}


def even_odd_axis3(f):
    """``(f_e, f_o)``, the even and odd parts in ``x3``."""
    e, o = _split_axis(f.comp, 3)
    return f._like(e), f._like(o)


def quat_split_field(f):
    """``f = g + h e4`` -> ``(g, h)`` quaternion fields."""
    return QuatField(f.grid, f.comp[:4]), QuatField(f.grid, f.comp[4:])


def quat_compose_field(g, h):
    if not g.grid.same_as(h.grid):
        raise ValueError("g and h must share a grid")
    return OctField(g.grid, np.concatenate([g.comp, h.comp]))


_E2 = algebra.Quaternion.basis(2)


def local_pair_split(f):
    """The quaternion pair ``(f_m, f_n)`` used for the local uncertainty bound.

    ``f_m = g_e + h_o(x1, -x2, x3) e2`` and ``f_n = h_e - g_o(x1, -x2, x3) e2``,
    where ``f = g + h e4`` and ``e``/``o`` is the split in ``x3``.
    ``||f_m||**2 + ||f_n||**2 == ||f||**2``.
    """
    g, h = quat_split_field(f)
    g_e, g_o = even_odd_axis3(g)
    h_e, h_o = even_odd_axis3(h)
    flip = ("+", "-", "+")
    f_m = g_e + reflect(h_o, flip).rmul_const(_E2)
    f_n = h_e - reflect(g_o, flip).rmul_const(_E2)
    return f_m, f_n


# ---------------------------------------------------------------------------
# masks

@dataclass(frozen=True, eq=False)
class VoxelMask:
    grid: Grid
    flags: np.ndarray

    def __post_init__(self):
        flags = np.array(self.flags, dtype=bool, copy=True)
        if flags.shape != self.grid.shape:
            raise ValueError(f"mask shape {flags.shape} does not match grid {self.grid.shape}")
        flags.flags.writeable = False
        object.__setattr__(self, "flags", flags)

    @property
    def count(self):
        return int(np.count_nonzero(self.flags))


def mask_measure(mask):
    return mask.count * mask.grid.cell_volume


def ball_mask(grid, r):
    """Voxels whose centers satisfy ``|x| <= r``."""
    return VoxelMask(grid, grid.radius() <= r)


def full_mask(grid):
    return VoxelMask(grid, np.ones(grid.shape, dtype=bool))
