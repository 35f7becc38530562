"""The octonion offset linear canonical transform (O-OLCT) and relatives.

A 3D transform is a chain of 1D axis transforms.  Axis ``k`` integrates
``f(x) * K_k(x_k, w_k)`` over ``x_k``, where the kernel is
``amp * (cos(theta) + mu_k sin(theta))`` and ``theta`` is a quadratic
polynomial in ``(x, w)``.  The forward O-OLCT uses units
``mu_1, mu_2, mu_4 = e1, e2, e4`` on axes 1, 2, 3, applied in that order
and always associated from the left: ``((f K1) K2) K3``.  The inverse
applies conjugate kernels in the reverse order, since right products by
different imaginary units do not commute.

Three evaluation paths compute the same discrete sums:

``direct``
    octonion quadrature, one axis at a time (:func:`kernels.right_contract`).
``fft``
    chirp, discrete Fourier step, chirp.  Right multiplication by
    ``exp(mu_k t)`` rotates four component pairs like complex numbers,
    so each axis is four complex FFTs.
``closed_form``
    expand ``f = sum_m f_m e_m`` and each kernel into cos/sin parts; every
    term is a real separable integral carrying the unit
    ``((e_m mu_1^t1) mu_2^t2) mu_4^t3``.

All default output grids are *reciprocal* grids, ``dw_k = 2 pi |b_k| /
(n_k dx_k)``.  On that grid the discrete transform is exactly unitary
(under the ``unitary`` phase convention) and the FFT path needs no
resampling.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import algebra, kernels
from .grid import Grid, OctField, QuatField, even_odd_axis3, quat_split_field, weighted_sq_norm

UNITARY = "unitary"
LITERAL = "literal"
CONVENTIONS = (UNITARY, LITERAL)
PATHS = ("direct", "fft", "closed_form")
AXIS_UNITS = (1, 2, 4)

DET_TOL = 1e-12


class InvalidParams(ValueError):
    """Raised for a parameter matrix that is not a valid OLCT (b = 0, det != 1)."""


@dataclass(frozen=True)
class OLCTParams:
    """One axis ``[a b | tau; c d | eta]`` with ``ad - bc = 1`` and ``b != 0``."""

    a: float
    b: float
    c: float
    d: float
    tau: float = 0.0
    eta: float = 0.0
    det_tol: float = field(default=DET_TOL, compare=False, repr=False)

    def __post_init__(self):
        vals = [float(v) for v in (self.a, self.b, self.c, self.d, self.tau, self.eta)]
        if not all(math.isfinite(v) for v in vals):
            raise InvalidParams("parameters must be finite")
        for name, v in zip("a b c d tau eta".split(), vals):
            object.__setattr__(self, name, v)
        if self.b == 0.0:
            raise InvalidParams("b must be nonzero")
        det = self.a * self.d - self.b * self.c
        if abs(det - 1.0) > self.det_tol:
            raise InvalidParams(f"ad - bc must equal 1, got {det!r}")

    @classmethod
    def from_sequence(cls, values, det_tol=DET_TOL):
        values = [float(v) for v in values]
        if len(values) == 4:
            values += [0.0, 0.0]
        if len(values) != 6:
            raise InvalidParams(f"expected 6 values a,b,c,d,tau,eta, got {len(values)}")
        return cls(*values, det_tol=det_tol)

    @classmethod
    def fourier(cls):
        """``(0, 1, -1, 0, 0, 0)``: the Fourier transform up to a constant phase."""
        return cls(0.0, 1.0, -1.0, 0.0)

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d, self.tau, self.eta)


@dataclass(frozen=True)
class OLCTParamsTriple:
    """Parameters for axes 1, 2, 3 (units ``mu_1, mu_2, mu_4``)."""

    A1: OLCTParams
    A2: OLCTParams
    A3: OLCTParams

    def __post_init__(self):
        for k, A in enumerate(self.axes, start=1):
            if not isinstance(A, OLCTParams):
                raise InvalidParams(f"axis {k}: expected OLCTParams, got {type(A).__name__}")

    @classmethod
    def build(cls, *seqs, det_tol=DET_TOL):
        """From three sequences; errors name the offending axis."""
        out = []
        for k, seq in enumerate(seqs, start=1):
            try:
                out.append(OLCTParams.from_sequence(seq, det_tol=det_tol))
            except InvalidParams as exc:
                raise InvalidParams(f"axis {k} (A{k}): {exc}") from None
        return cls(*out)

    @classmethod
    def fourier(cls):
        A = OLCTParams.fourier()
        return cls(A, A, A)

    @property
    def axes(self):
        return (self.A1, self.A2, self.A3)

    @property
    def b(self):
        return tuple(A.b for A in self.axes)


@dataclass(frozen=True)
class TransformOptions:
    phase_convention: str = UNITARY
    path: str = "direct"
    output_grid: Optional[Grid] = None

    def __post_init__(self):
        if self.phase_convention not in CONVENTIONS:
            raise ValueError(f"phase_convention must be one of {CONVENTIONS}")
        if self.path not in PATHS:
            raise ValueError(f"path must be one of {PATHS}")


DEFAULT_OPTIONS = TransformOptions()


# ---------------------------------------------------------------------------
# kernels

def _constant_phase(A, convention):
    if convention == UNITARY:
        return -math.copysign(math.pi / 4, A.b)
    if convention == LITERAL:
        return -math.pi / (4 * A.b)
    raise ValueError(f"unknown phase convention {convention!r}")


def phase_coefficients(A, convention=UNITARY):
    """``(p2, p1, cxw, q2, q1, q0)`` with phase ``p2 x^2 + p1 x + cxw x w + q2 w^2 + q1 w + q0``."""
    a, b, d, tau, eta = A.a, A.b, A.d, A.tau, A.eta
    return (a / (2 * b), tau / b, -1.0 / b, d / (2 * b),
            eta - d * tau / b, d * tau * tau / (2 * b) + _constant_phase(A, convention))


def kernel_phase(A, x, w, convention=UNITARY):
    """Kernel phase ``(1/2b)[a x^2 - 2x(w - tau) - 2w(d tau - b eta) + d(w^2 + tau^2)] + kappa``.

    ``kappa = -pi/(4b)`` under ``literal`` (the ``-pi/2`` inside the
    bracket) and ``-sgn(b) pi/4`` under ``unitary``.
    """
    p2, p1, cxw, q2, q1, q0 = phase_coefficients(A, convention)
    return p2 * x * x + p1 * x + cxw * x * w + q2 * w * w + q1 * w + q0


def kernel_amplitude(A):
    return 1.0 / math.sqrt(2 * math.pi * abs(A.b))


def kernel_eval(A, unit, x, w, convention=UNITARY):
    """``K^{mu}_A(x, w)`` as an :class:`Octonion`, ``mu = e_unit``."""
    return kernel_amplitude(A) * algebra.unit_exp(unit, kernel_phase(A, x, w, convention))


@dataclass(frozen=True)
class AxisKernel:
    """``amp * exp(e_unit * theta(x, w))`` with polynomial phase coefficients."""

    unit: int
    amp: float
    coeffs: tuple

    @classmethod
    def olct(cls, A, unit, convention=UNITARY):
        return cls(unit, kernel_amplitude(A), phase_coefficients(A, convention))

    @classmethod
    def oft(cls, unit, sign=-1.0):
        """``exp(sign * e_unit * 2 pi x w)``."""
        return cls(unit, 1.0, (0.0, 0.0, sign * 2 * math.pi, 0.0, 0.0, 0.0))

    def conjugate(self):
        """Same variables, conjugated values."""
        return AxisKernel(self.unit, self.amp, tuple(-c for c in self.coeffs))

    def inverse(self):
        """Conjugate kernel integrated over ``w``: phase ``-theta(x, w)`` seen as a function of ``(w, x)``."""
        p2, p1, cxw, q2, q1, q0 = self.coeffs
        return AxisKernel(self.unit, self.amp, (-q2, -q1, -cxw, -p2, -p1, -q0))

    def phase(self, x, w):
        p2, p1, cxw, q2, q1, q0 = self.coeffs
        x = np.asarray(x, dtype=float)
        w = np.asarray(w, dtype=float)
        return p2 * x * x + p1 * x + cxw * x * w + q2 * w * w + q1 * w + q0

    def trig_matrices(self, x, w, weight):
        """``amp * weight * (cos, sin)`` of the phase, shape ``(len(w), len(x))``."""
        theta = self.phase(x[None, :], w[:, None])
        s = self.amp * weight
        return s * np.cos(theta), s * np.sin(theta)

    def octonion_matrix(self, x, w, weight):
        c, s = self.trig_matrices(x, w, weight)
        out = np.zeros((8,) + c.shape)
        out[0] = c
        out[self.unit] = s
        return out

    def natural_spacing(self, n, h):
        """Output spacing on which the cross term is an exact DFT."""
        return 2 * math.pi / (n * h * abs(self.coeffs[2]))


# ---------------------------------------------------------------------------
# building blocks on component-first arrays

def _axis_blocks(shape, axis):
    P = math.prod(shape[:axis])
    Q = math.prod(shape[axis + 1:])
    return P, Q


def _direct_axis(comp, axis, kern, x, w, h):
    """Octonion quadrature along spatial ``axis`` of a ``(8, ...)`` array."""
    spatial = comp.shape[1:]
    P, Q = _axis_blocks(spatial, axis)
    f4 = comp.reshape(8, P, spatial[axis], Q)
    index, sign = algebra.table()
    out = kernels.right_contract(f4, kern.octonion_matrix(x, w, h), index, sign)
    new_shape = spatial[:axis] + (len(w),) + spatial[axis + 1:]
    return out.reshape((8,) + new_shape)


def _real_contract(vol, M, axis):
    """``sum_i M[j, i] vol[..., i, ...]`` along ``axis``."""
    return np.moveaxis(np.tensordot(M, vol, axes=([1], [axis])), 0, axis)


def _to_complex(comp, unit):
    pairs = algebra.unit_pairs(unit)
    return np.stack([comp[p] + 1j * s * comp[q] for p, q, s in pairs]), pairs


def _from_complex(z, pairs):
    comp = np.empty((8,) + z.shape[1:])
    for r, (p, q, s) in enumerate(pairs):
        comp[p] = z[r].real
        comp[q] = s * z[r].imag
    return comp


def _shape_along(n_total, axis, values):
    shape = [1] * n_total
    shape[axis] = len(values)
    return np.reshape(values, shape)


def chirp(comp, axis, unit, theta):
    """Right-multiply samples along ``axis`` by ``exp(e_unit * theta)`` (theta per sample)."""
    z, pairs = _to_complex(comp, unit)
    z = z * np.exp(1j * _shape_along(z.ndim, axis + 1, theta))
    return _from_complex(z, pairs)


def _oft_step(z, axis, h):
    """``h sum_i z_i exp(-2 pi i (i-c)(j-c)/n)`` along complex axis ``axis``."""
    n = z.shape[axis]
    c = (n - 1) / 2
    k = np.arange(n)
    twist = np.exp(2j * math.pi * c * k / n)
    tw = _shape_along(z.ndim, axis, twist)
    out = np.fft.fft(z * tw, axis=axis) * tw
    return out * (h * np.exp(-2j * math.pi * c * c / n))


def _fft_axis(comp, axis, kern, x, h):
    """Chirp, discrete Fourier step, chirp, on the kernel's natural output grid."""
    p2, p1, cxw, q2, q1, q0 = kern.coeffs
    n = len(x)
    dw = kern.natural_spacing(n, h)
    w = (np.arange(n) - (n - 1) / 2) * dw
    z, pairs = _to_complex(comp, kern.unit)
    z = z * np.exp(1j * _shape_along(z.ndim, axis + 1, p2 * x * x + p1 * x))
    z = _oft_step(z, axis + 1, h)
    if cxw > 0:
        # exp(+i 2 pi nu x) on a symmetric grid is the transform at -nu
        z = np.flip(z, axis=axis + 1)
    post = q2 * w * w + q1 * w + q0
    z = z * (kern.amp * np.exp(1j * _shape_along(z.ndim, axis + 1, post)))
    return _from_complex(z, pairs), w


def _match_samples(natural, requested, axis_label):
    """Indices of ``natural`` equal to ``requested`` (nearest sample, must coincide)."""
    step = natural[1] - natural[0] if len(natural) > 1 else 1.0
    idx = np.rint((requested - natural[0]) / step).astype(int)
    ok = (idx >= 0) & (idx < len(natural))
    idx = np.clip(idx, 0, len(natural) - 1)
    if not ok.all() or np.max(np.abs(natural[idx] - requested)) > 1e-9 * abs(step):
        raise ValueError(f"axis {axis_label}: fft path only produces samples on its natural grid "
                         f"(spacing {step!r}); use path='direct' for other output grids")
    return idx


# ---------------------------------------------------------------------------
# generic chains

def _natural_grid(grid, steps):
    n = list(grid.n)
    dx = list(grid.dx)
    for axis, kern in steps:
        dx[axis] = kern.natural_spacing(grid.n[axis], grid.dx[axis])
    return Grid(tuple(n), tuple(dx))


def _run_chain(field, steps, path, out_grid=None):
    """Apply ``[(axis, AxisKernel), ...]`` in order; returns a field of the same type."""
    grid = field.grid
    if out_grid is None:
        out_grid = _natural_grid(grid, steps)
    elif out_grid.ndim != grid.ndim:
        raise ValueError("output grid dimension does not match the input")
    comp = field.comp
    if comp.shape[0] == 4:
        comp = np.concatenate([comp, np.zeros_like(comp)])
    if path == "direct":
        cur = comp
        for axis, kern in steps:
            cur = _direct_axis(cur, axis, kern, grid.axis(axis), out_grid.axis(axis), grid.dx[axis])
    elif path == "fft":
        cur = comp
        for axis, kern in steps:
            cur, natural = _fft_axis(cur, axis, kern, grid.axis(axis), grid.dx[axis])
            want = out_grid.axis(axis)
            if len(want) != len(natural) or not np.allclose(want, natural, rtol=1e-12, atol=0):
                idx = _match_samples(natural, want, axis + 1)
                cur = np.take(cur, idx, axis=axis + 1)
    elif path == "closed_form":
        cur = sum(_closed_form_terms(comp, grid, steps, out_grid).values())
    else:
        raise ValueError(f"unknown path {path!r}")
    if field.size == 4:
        cur = cur[:4]
    return type(field)(out_grid, cur)


def _closed_form_terms(comp, grid, steps, out_grid):
    """Octonion-valued pieces of the transform keyed by trig pattern (``'c'``/``'s'`` per step)."""
    index, sign = algebra.table()
    mats = []
    for axis, kern in steps:
        mats.append(kern.trig_matrices(grid.axis(axis), out_grid.axis(axis), grid.dx[axis]))
    terms = {}
    for m in range(8):
        vol = comp[m]
        if not vol.any():
            continue
        # (label, volume, basis index, sign)
        work = [("", vol, m, 1.0)]
        for (axis, kern), (C, S) in zip(steps, mats):
            nxt = []
            for label, v, e, sg in work:
                nxt.append((label + "c", _real_contract(v, C, axis), e, sg))
                nxt.append((label + "s", _real_contract(v, S, axis), int(index[e, kern.unit]),
                            sg * float(sign[e, kern.unit])))
            work = nxt
        for label, v, e, sg in work:
            acc = terms.setdefault(label, np.zeros((8,) + out_grid.shape))
            acc[e] += sg * v
    if not terms:
        terms[""] = np.zeros((8,) + out_grid.shape)
    return terms


def _forward_steps(P, convention):
    return [(k, AxisKernel.olct(A, u, convention)) for k, (A, u) in enumerate(zip(P.axes, AXIS_UNITS))]


def _inverse_steps(P, convention):
    return [(k, AxisKernel.olct(A, u, convention).inverse())
            for k, (A, u) in reversed(list(enumerate(zip(P.axes, AXIS_UNITS))))]


def output_grid(grid, P):
    """Default (reciprocal) output grid of the 3D transform on ``grid``."""
    return grid.reciprocal(tuple(2 * math.pi * abs(b) for b in P.b))


def _require_3d(f, P):
    if not isinstance(f, OctField) or f.grid.ndim != 3:
        raise ValueError("expected a 3D octonion field")
    if not isinstance(P, OLCTParamsTriple):
        raise InvalidParams("expected OLCTParamsTriple")


# ---------------------------------------------------------------------------
# 1D transforms

def _require_1d(f):
    if not isinstance(f, OctField) or f.grid.ndim != 1:
        raise ValueError("expected a 1D octonion signal")


def oolct1d(f, A, opts=DEFAULT_OPTIONS, unit=4):
    """``int f(x) K^{mu}_A(x, w) dx`` for a 1D octonion signal."""
    _require_1d(f)
    steps = [(0, AxisKernel.olct(A, unit, opts.phase_convention))]
    return _run_chain(f, steps, opts.path, opts.output_grid)


def oolct1d_inverse(F, A, opts=DEFAULT_OPTIONS, unit=4):
    """``int F(w) conj(K^{mu}_A(x, w)) dw``."""
    _require_1d(F)
    steps = [(0, AxisKernel.olct(A, unit, opts.phase_convention).inverse())]
    return _run_chain(F, steps, opts.path, opts.output_grid)


def oolct1d_via_oft(f, A, opts=DEFAULT_OPTIONS, unit=4):
    """The 1D transform as chirp, O-FT, chirp.

    ``O f(w) = amp * [O-FT of f(x) exp(mu (a x^2/2b + tau x/b))](w / 2 pi b)
    * exp(mu (d w^2/2b + (eta - d tau/b) w + d tau^2/2b + kappa))``.
    The O-FT is taken at the signed frequency ``w / (2 pi b)``; for
    ``b < 0`` that reverses the symmetric frequency grid.
    """
    _require_1d(f)
    p2, p1, cxw, q2, q1, q0 = phase_coefficients(A, opts.phase_convention)
    g = f.grid
    x = g.axis(0)
    pre = OctField(g, chirp(f.comp, 0, unit, p2 * x * x + p1 * x))
    F = oft1d(pre, unit=unit, path="fft")
    comp = F.comp
    if A.b < 0:
        comp = np.flip(comp, axis=1)
    w_grid = g.reciprocal(2 * math.pi * abs(A.b))
    w = w_grid.axis(0)
    comp = kernel_amplitude(A) * chirp(comp, 0, unit, q2 * w * w + q1 * w + q0)
    out = OctField(w_grid, comp)
    if opts.output_grid is not None and not opts.output_grid.same_as(w_grid):
        idx = _match_samples(w, opts.output_grid.axis(0), 1)
        out = OctField(opts.output_grid, comp[:, idx])
    return out


def oft1d(f, unit=4, path="fft"):
    """``int f(x) exp(-mu 2 pi x w) dx`` on the grid ``dw = 1/(n dx)``."""
    _require_1d(f)
    return _run_chain(f, [(0, AxisKernel.oft(unit))], path)


def oft1d_inverse(F, unit=4, path="fft"):
    _require_1d(F)
    return _run_chain(F, [(0, AxisKernel.oft(unit, +1.0))], path)


def oft3d(f, path="fft"):
    """``int ((f e^{-mu1 2pi x1 w1}) e^{-mu2 2pi x2 w2}) e^{-mu4 2pi x3 w3} dx``."""
    if f.grid.ndim != 3:
        raise ValueError("expected a 3D field")
    steps = [(k, AxisKernel.oft(u)) for k, u in enumerate(AXIS_UNITS)]
    return _run_chain(f, steps, path)


def oft3d_inverse(F, path="fft"):
    """Positive exponentials applied in reverse axis order (axis 3 first)."""
    if F.grid.ndim != 3:
        raise ValueError("expected a 3D field")
    steps = [(k, AxisKernel.oft(u, +1.0)) for k, u in reversed(list(enumerate(AXIS_UNITS)))]
    return _run_chain(F, steps, path)


# ---------------------------------------------------------------------------
# 3D O-OLCT

def oolct3d(f, P, opts=DEFAULT_OPTIONS):
    """``int ((f(x) K1) K2) K3 dx`` sampled on ``opts.output_grid`` (default reciprocal)."""
    _require_3d(f, P)
    return _run_chain(f, _forward_steps(P, opts.phase_convention), opts.path, opts.output_grid)


def oolct3d_inverse(F, P, opts=DEFAULT_OPTIONS):
    """``int ((F(w) conj K3) conj K2) conj K1 dw``; the default output grid recovers the input grid."""
    _require_3d(F, P)
    return _run_chain(F, _inverse_steps(P, opts.phase_convention), opts.path, opts.output_grid)


def closed_form_terms(f, P, opts=DEFAULT_OPTIONS):
    """The eight pieces ``Phi_0 .. Phi_7`` of the transform, as octonion fields.

    ``Phi_t`` collects every product of per-axis cosine/sine integrals
    with trig pattern ``t = t1 + 2 t2 + 4 t3`` (``t_k = 1`` for sine on
    axis ``k``).  For real ``f`` the piece ``Phi_t`` is a real volume
    times the unit ``e_t``.  Their sum is the transform.
    """
    _require_3d(f, P)
    out_grid = opts.output_grid or output_grid(f.grid, P)
    terms = _closed_form_terms(f.comp, f.grid, _forward_steps(P, opts.phase_convention), out_grid)
    phis = []
    for t in range(8):
        label = "".join("s" if (t >> k) & 1 else "c" for k in range(3))
        comp = terms.get(label, np.zeros((8,) + out_grid.shape))
        phis.append(OctField(out_grid, comp))
    return phis


def oolct3d_closed_form(f, P, opts=DEFAULT_OPTIONS):
    return _run_chain(f, _forward_steps(P, opts.phase_convention), "closed_form",
                      opts.output_grid)


def literal_points(f, P, points, convention=UNITARY):
    """Brute-force ``sum_x ((f(x) K1) K2) K3 dV`` at the given ``(m, 3)`` output points.

    Independent of the axis-by-axis machinery: every octonion product is
    formed pointwise over the full grid.  Slow; for spot checks.
    """
    _require_3d(f, P)
    points = np.atleast_2d(np.asarray(points, dtype=float))
    g = f.grid
    ks = []
    for k, (A, u) in enumerate(zip(P.axes, AXIS_UNITS)):
        kern = AxisKernel.olct(A, u, convention)
        x = g.axis(k)
        mats = np.stack([kern.octonion_matrix(x, np.array([w]), g.dx[k])[:, 0, :] for w in points[:, k]])
        ks.append(mats)
    index, sign = algebra.table()
    return kernels.literal_points(f.comp, ks[0], ks[1], ks[2], index, sign)


# ---------------------------------------------------------------------------
# QOLCT, norm split, energy

def qolct2d(f, A1, A2, opts=DEFAULT_OPTIONS):
    """``int f(x) K^{e1}_{A1}(x1, w1) K^{e2}_{A2}(x2, w2) dx`` for a 2D quaternion field."""
    if not isinstance(f, QuatField) or f.grid.ndim != 2:
        raise ValueError("expected a 2D quaternion field")
    conv = opts.phase_convention
    steps = [(0, AxisKernel.olct(A1, 1, conv)), (1, AxisKernel.olct(A2, 2, conv))]
    path = "direct" if opts.path == "closed_form" else opts.path
    return _run_chain(f, steps, path, opts.output_grid)


@dataclass(frozen=True)
class NormSplit:
    """Squared norms of the four quaternion integrals and their comparison."""

    g_e: float
    h_o: float
    h_e: float
    g_o: float
    prefactor: float
    split_sum: float
    transform_sq_norm: float

    @property
    def terms(self):
        return (self.g_e, self.h_o, self.h_e, self.g_o)

    @property
    def ratio(self):
        return self.split_sum / self.transform_sq_norm if self.transform_sq_norm else math.nan


def _quat_axis3_trig(q, P, opts, conjugate, trig, out_grid):
    """``int q(x) K1 K2 trig(xi_3) dx`` with ``K`` or ``conj K`` on axes 1, 2; no axis-3 amplitude."""
    conv = opts.phase_convention
    k1 = AxisKernel.olct(P.A1, 1, conv)
    k2 = AxisKernel.olct(P.A2, 2, conv)
    if conjugate:
        k1, k2 = k1.conjugate(), k2.conjugate()
    g = q.grid
    comp = np.concatenate([q.comp, np.zeros_like(q.comp)])
    comp = _direct_axis(comp, 0, k1, g.axis(0), out_grid.axis(0), g.dx[0])
    comp = _direct_axis(comp, 1, k2, g.axis(1), out_grid.axis(1), g.dx[1])
    k3 = AxisKernel.olct(P.A3, 4, conv)
    C, S = k3.trig_matrices(g.axis(2), out_grid.axis(2), g.dx[2])
    M = (C if trig == "cos" else S) / k3.amp
    comp = _real_contract(comp[:4], M, 3)
    return QuatField(out_grid, comp)


def norm_split(f, P, opts=DEFAULT_OPTIONS):
    """The four quaternion norms from ``f = g + h e4`` split by parity in ``x3``.

    ``T_ge = int g_e K1 K2 cos(xi_3)``, ``T_ho = int h_o conj(K1) conj(K2) sin(xi_3)``,
    ``T_he = int h_e conj(K1) conj(K2) cos(xi_3)``, ``T_go = int g_o K1 K2 sin(xi_3)``.
    ``split_sum = sum ||T||^2 / (2 pi |b3|)`` is compared with ``||O f||^2``.
    """
    _require_3d(f, P)
    out_grid = opts.output_grid or output_grid(f.grid, P)
    g, h = quat_split_field(f)
    g_e, g_o = even_odd_axis3(g)
    h_e, h_o = even_odd_axis3(h)
    spec = [(g_e, False, "cos"), (h_o, True, "sin"), (h_e, True, "cos"), (g_o, False, "sin")]
    norms = [weighted_sq_norm(_quat_axis3_trig(q, P, opts, conj, trig, out_grid)) for q, conj, trig in spec]
    pref = 1.0 / (2 * math.pi * abs(P.A3.b))
    total = energy(oolct3d(f, P, TransformOptions(opts.phase_convention, opts.path, out_grid)))
    return NormSplit(*norms, prefactor=pref, split_sum=pref * sum(norms), transform_sq_norm=total)


def energy(F):
    """``||F||_2^2`` (the same code path as the ``alpha = 0`` weighted norm)."""
    return weighted_sq_norm(F)


def energy_ratio(f, P, opts=DEFAULT_OPTIONS):
    """``||O f||^2 / ||f||^2``; equal to 1 under the unitary convention."""
    _require_3d(f, P)
    den = energy(f)
    if den == 0.0:
        raise ValueError("energy_ratio needs a nonzero signal")
    return energy(oolct3d(f, P, opts)) / den


def claimed_energy_constant(P):
    """The constant ``1/(2 pi |b3|)`` claimed for the energy identity (reported, not assumed)."""
    return 1.0 / (2 * math.pi * abs(P.A3.b))
