"""Both sides of the uncertainty inequalities for the O-OLCT, with reports.

Each ``*_check`` evaluates the left- and right-hand sides on the sampled
signal and its transform and returns an :class:`InequalityReport`.
A report records the numbers; whether the inequality "holds" is data,
not an assertion.  Singular weights (``|w/b|**-alpha``, ``log|x|``) are
integrated with the corrected midpoint rule of :mod:`octolct.quadrature`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import special

from . import transform as tr
from .quadrature import symmetric_sum
from .grid import LOG, VoxelMask, lp_norm, mask_measure, power, weighted_sq_norm

HOLDS_RTOL = 1e-12


@dataclass(frozen=True)
class InequalityReport:
    """One evaluated inequality.

    ``direction`` is ``"le"`` (lhs <= rhs), ``"ge"`` (lhs >= rhs) or
    ``"eq"`` (an identity; slack is ``-|lhs - rhs|``).
    """

    name: str
    lhs: float
    rhs: float
    constant: float
    params: tr.OLCTParamsTriple
    convention: str
    direction: str = "le"
    alpha: Optional[float] = None
    p: Optional[float] = None
    q: Optional[float] = None
    E_measure: Optional[float] = None
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("lhs", "rhs", "constant"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"report {self.name}: {name} is not finite")

    @property
    def slack(self):
        if self.direction == "le":
            return self.rhs - self.lhs
        if self.direction == "ge":
            return self.lhs - self.rhs
        return 0.0 - abs(self.lhs - self.rhs)

    @property
    def holds(self):
        return self.slack >= -HOLDS_RTOL * max(abs(self.lhs), abs(self.rhs))


def _transform(f, P, opts):
    if not np.any(f.comp):
        raise ValueError("the signal must be nonzero")
    return tr.oolct3d(f, P, opts)


# ---------------------------------------------------------------------------
# energy

def energy_check(f, P, opts=tr.DEFAULT_OPTIONS):
    """``||O f||^2`` against ``||f||^2``; the claimed ``1/(2 pi |b3|)`` is the reported constant."""
    F = _transform(f, P, opts)
    lhs = tr.energy(F)
    rhs = tr.energy(f)
    return InequalityReport("energy", lhs, rhs, tr.claimed_energy_constant(P), P, opts.phase_convention,
                            direction="eq", extras={"claimed_rhs": tr.claimed_energy_constant(P) * rhs})


# ---------------------------------------------------------------------------
# Pitt

def pitt_constant(alpha):
    """``(4 pi^2 / 2^alpha) [Gamma((2 - alpha)/4) / Gamma((2 + alpha)/4)]^2`` for ``0 <= alpha < 2``."""
    alpha = float(alpha)
    if not 0.0 <= alpha < 2.0:
        raise ValueError(f"Pitt exponent must lie in [0, 2), got {alpha}")
    ratio = math.gamma((2 - alpha) / 4) / math.gamma((2 + alpha) / 4)
    return 4 * math.pi ** 2 / 2 ** alpha * ratio * ratio


def pitt_check(f, P, alpha, opts=tr.DEFAULT_OPTIONS):
    """``int |w/b|^-alpha |O f|^2 dw <= C_alpha / (8 pi^3 |b3|) int |x|^alpha |f|^2 dx``.

    ``|w/b|`` is the norm of ``(w1/b1, w2/b2, w3/b3)``.
    """
    C = pitt_constant(alpha)
    F = _transform(f, P, opts)
    lhs = weighted_sq_norm(F, power(-alpha), scale=P.b)
    rhs = C / (8 * math.pi ** 3 * abs(P.A3.b)) * weighted_sq_norm(f, power(alpha))
    return InequalityReport("pitt", lhs, rhs, C, P, opts.phase_convention, alpha=float(alpha))


# ---------------------------------------------------------------------------
# logarithmic

def log_constant():
    """``ln 2 + psi(1/2)``."""
    return math.log(2.0) + float(special.digamma(0.5))


def log_check(f, P, opts=tr.DEFAULT_OPTIONS):
    """``2 pi |b3| int ln|w/b| |O f|^2 dw + int ln|x| |f|^2 dx >= D ||f||^2`` (integrals over R^3)."""
    D = log_constant()
    F = _transform(f, P, opts)
    b3 = abs(P.A3.b)
    w_part = weighted_sq_norm(F, LOG, scale=P.b)
    x_part = weighted_sq_norm(f, LOG)
    lhs = 2 * math.pi * b3 * w_part + x_part
    rhs = D * tr.energy(f)
    return InequalityReport("log", lhs, rhs, D, P, opts.phase_convention, direction="ge",
                            extras={"w_part": w_part, "x_part": x_part})


# ---------------------------------------------------------------------------
# Hausdorff-Young

def conjugate_exponent(p):
    p = float(p)
    return math.inf if p == 1.0 else p / (p - 1.0)


def hy_constants(P, p):
    """Main constant and the 2D quaternion constant, for ``1 <= p <= 2``."""
    p = float(p)
    if not 1.0 <= p <= 2.0:
        raise ValueError(f"Hausdorff-Young exponent must lie in [1, 2], got {p}")
    inv_q = 1.0 - 1.0 / p
    b1, b2, b3 = (abs(b) for b in P.b)
    main = (2 * math.pi) ** (inv_q / 2 - 1 / p) * (b1 * b2) ** (inv_q - 0.5) * b3 ** (-inv_q / 2)
    quat = (2 * math.pi) ** (inv_q - 1 / p) * (b1 * b2) ** (inv_q - 0.5)
    return main, quat


def hy_check(f, P, p, opts=tr.DEFAULT_OPTIONS):
    """``||O f||_q <= (2pi)^{1/2q - 1/p} |b1 b2|^{1/q - 1/2} |b3|^{-1/2q} ||f||_p``."""
    main, quat = hy_constants(P, p)
    q = conjugate_exponent(p)
    F = _transform(f, P, opts)
    if p == 2.0:
        lhs = math.sqrt(tr.energy(F))
        norm_p = math.sqrt(tr.energy(f))
    else:
        lhs = lp_norm(F, q)
        norm_p = lp_norm(f, p)
    return InequalityReport("hausdorff_young", lhs, main * norm_p, main, P, opts.phase_convention,
                            p=float(p), q=q, extras={"quaternion_constant": quat})


# ---------------------------------------------------------------------------
# local

def local_constant(alpha):
    """``M_alpha`` for ``0 < alpha < 1`` and ``alpha > 1``."""
    alpha = float(alpha)
    if not alpha > 0.0 or alpha == 1.0 or not math.isfinite(alpha):
        raise ValueError(f"local exponent must be positive and != 1, got {alpha}")
    if alpha < 1.0:
        return (1 + alpha ** 2) / alpha ** (2 * alpha) * (2 - 2 * alpha) ** (alpha - 2)
    return (math.pi / (alpha * math.gamma(0.5)) * math.gamma(1 / alpha) * math.gamma(1 - 1 / alpha)
            * (alpha - 1) ** alpha / (1 - 1 / alpha))


def dilated_mask(E, b, grid):
    """``bE = {(b1 w1, b2 w2, b3 w3): w in E}`` on ``grid``.

    Each voxel of ``grid`` is pulled back to ``v / b`` and kept when the
    nearest voxel of ``E`` there is set.
    """
    flags = np.ones(grid.shape, dtype=bool)
    for k in range(3):
        w = grid.axis(k) / b[k]
        idx = np.rint((w - E.grid.x0[k]) / E.grid.dx[k]).astype(int)
        inside = (idx >= 0) & (idx < E.grid.n[k])
        shape = [1, 1, 1]
        shape[k] = grid.n[k]
        flags &= inside.reshape(shape)
    out = np.zeros(grid.shape, dtype=bool)
    sel = np.nonzero(flags)
    if sel[0].size:
        ix = [np.rint((grid.axis(k)[sel[k]] / b[k] - E.grid.x0[k]) / E.grid.dx[k]).astype(int) for k in range(3)]
        out[sel] = E.flags[tuple(ix)]
    return VoxelMask(grid, out)


def local_check(f, P, alpha, E, opts=tr.DEFAULT_OPTIONS):
    """``int_{bE} |O f|^2 dw`` against the local bound (branch by ``alpha``).

    ``alpha < 1``: ``M |E|^alpha || |x|^alpha f ||^2 / (2 pi |b3|)``.
    ``alpha > 1``: ``M |b1 b2|^{alpha - 1/alpha} |E|^alpha ||f||^{2 - 2 alpha}
    || |x|^alpha f ||^{2/alpha} / (2 pi |b3|)``.
    """
    M = local_constant(alpha)
    if not isinstance(E, VoxelMask) or E.count == 0:
        raise ValueError("local_check needs a nonempty mask")
    F = _transform(f, P, opts)
    bE = dilated_mask(E, P.b, F.grid)
    # same summation tree for every mask, so the sum is monotone in E
    lhs = symmetric_sum(np.where(bE.flags, F.abs2(), 0.0)) * F.grid.cell_volume
    meas = mask_measure(E)
    moment = weighted_sq_norm(f, power(2 * alpha))
    pref = 1.0 / (2 * math.pi * abs(P.A3.b))
    if alpha < 1.0:
        name = "local_1"
        rhs = pref * M * meas ** alpha * moment
    else:
        name = "local_2"
        b1, b2 = abs(P.A1.b), abs(P.A2.b)
        norm = math.sqrt(tr.energy(f))
        rhs = (pref * M * (b1 * b2) ** (alpha - 1 / alpha) * meas ** alpha
               * norm ** (2 - 2 * alpha) * math.sqrt(moment) ** (2 / alpha))
    return InequalityReport(name, lhs, rhs, M, P, opts.phase_convention, alpha=float(alpha),
                            E_measure=meas, extras={"dilated_measure": mask_measure(bE)})
