"""Midpoint sums with a local correction for radial singular weights.

On a half-sample grid the plain midpoint sum of ``W(|x|) g(x)`` with
``W = |x|**a`` or ``W = log|x|`` converges only like ``h**(3 + a)``: the
smooth part of the integrand is integrated spectrally, but the kink of
the weight at the origin is not.  The error has an asymptotic expansion

    sum_k W(|S k|) G(k) - int W(|S k|) G(k) dk
        ~  sum_beta  G_beta * Z_beta(a)

where ``G_beta`` are the Taylor coefficients of ``G`` at the origin (odd
ones cancel on the symmetric lattice) and ``Z_beta`` is the analytically
continued lattice sum ``sum_{k in (Z+1/2)^D} |S k|**a * k**beta``.  We
evaluate ``Z_beta`` through its Mellin representation

    Z_beta(a) = 1/Gamma(-a/2) * int_0^inf t**(-a/2 - 1)
                 [Theta_beta(t) - Theta_beta_continuum(t)] dt

with one-dimensional half-integer theta sums, fit the Taylor coefficients
up to total degree 6 from the 8x8x8 block of samples around the origin,
and subtract.  The remaining error is ``O(h**(11 + a))``.
"""
import math
from functools import lru_cache

import numpy as np
from scipy import integrate, special

_POISSON_TERMS = np.arange(1, 9)
_DIRECT_TERMS = np.arange(0, 64) + 0.5
_SWITCH = 2.0


def _continuum(j, tau):
    return math.gamma((j + 1) / 2) / tau ** ((j + 1) / 2)


def _poisson_poly(j, a):
    """``F_j(nu) / F_j(0)`` for ``F_j`` the Fourier transform of ``x**j exp(-tau x**2)``.

    ``a = pi**2 nu**2 / tau``; these are the Gaussian moments
    ``E[Y**j] / E[X**j]`` with ``Y`` shifted by ``-i pi nu / tau``.
    """
    total = np.zeros_like(a)
    for m in range(j // 2 + 1):
        total = total + math.comb(j, 2 * m) * _double_factorial(2 * m - 1) * (-2.0 * a) ** (j // 2 - m)
    return total / _double_factorial(j - 1)


def _double_factorial(n):
    return math.prod(range(n, 0, -2)) if n > 0 else 1


def _theta_eps(j, tau):
    """Relative deviation of ``sum_m (m+1/2)**j exp(-tau (m+1/2)**2)`` from its integral."""
    if tau < _SWITCH:
        a = math.pi ** 2 * _POISSON_TERMS ** 2 / tau
        sgn = np.where(_POISSON_TERMS % 2 == 1, -1.0, 1.0)
        return float(2.0 * np.sum(sgn * np.exp(-a) * _poisson_poly(j, a)))
    m = _DIRECT_TERMS
    direct = 2.0 * float(np.sum(m ** j * np.exp(-tau * m * m)))
    return direct / _continuum(j, tau) - 1.0


def _bracket(t, orders, spacing):
    cont = 1.0
    logsum = 0.0
    for j, s in zip(orders, spacing):
        tau = t * s * s
        cont *= _continuum(j, tau)
        eps = _theta_eps(j, tau)
        if eps <= -1.0:
            logsum = -math.inf
        else:
            logsum += math.log1p(eps)
    return cont * math.expm1(logsum)


@lru_cache(maxsize=4096)
def _mellin(alpha, orders, spacing):
    """``int_0^inf t**(-alpha/2 - 1) [Theta - continuum] dt``."""
    D = len(spacing)
    s_min, s_max = min(spacing), max(spacing)
    t_lo = math.pi ** 2 / (80.0 * s_max ** 2)
    t_hi = 320.0 / s_min ** 2
    J = sum(orders)

    def integrand(u):
        t = math.exp(u)
        return t ** (-alpha / 2) * _bracket(t, orders, spacing)

    # split where each axis changes summation regime
    breaks = sorted({math.log(_SWITCH / s ** 2) for s in spacing})
    edges = [math.log(t_lo)] + [b for b in breaks if math.log(t_lo) < b < math.log(t_hi)] + [math.log(t_hi)]
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, _ = integrate.quad(integrand, lo, hi, limit=400, epsabs=0.0, epsrel=1e-12)
        total += val
    # beyond t_hi the lattice sum is negligible against the continuum
    C = 1.0
    for j, s in zip(orders, spacing):
        C *= math.gamma((j + 1) / 2) / s ** (j + 1)
    e = (alpha + D + J) / 2
    total -= C * t_hi ** (-e) / e
    return total


def lattice_zeta(alpha, spacing, orders=None, log=False):
    """Regularized ``sum_{k in (Z+1/2)^D} W(|S k|) prod_d k_d**orders_d``.

    ``W`` is ``|y|**alpha`` or, with ``log=True``, ``log|y|`` (alpha ignored).
    """
    spacing = tuple(float(s) for s in spacing)
    orders = tuple(int(o) for o in (orders or (0,) * len(spacing)))
    if log:
        return -0.5 * _mellin(0.0, orders, spacing)
    alpha = float(alpha)
    r = special.rgamma(-alpha / 2)
    if r == 0.0:
        return 0.0
    return float(r) * _mellin(alpha, orders, spacing)


TAYLOR_DEGREE = 6


@lru_cache(maxsize=None)
def _vandermonde_inverse(m):
    k2 = (np.arange(m) + 0.5) ** 2
    return np.linalg.inv(np.vander(k2, m, increasing=True))


def _even_taylor(g, m):
    """Coefficients of ``g`` in ``prod_d k_d**(2 e_d)``, ``e_d < m``, from the central (2m)^D block."""
    D = g.ndim
    block = g[tuple(slice(n // 2 - m, n // 2 + m) for n in g.shape)]
    inner = list(range(m - 1, -1, -1))
    outer = list(range(m, 2 * m))
    # fold sign flips so index e holds |k| = e + 1/2
    for ax in range(D):
        block = np.take(block, inner, axis=ax) + np.take(block, outer, axis=ax)
    coef = block / 2 ** D
    vinv = _vandermonde_inverse(m)
    for ax in range(D):
        coef = np.moveaxis(np.tensordot(vinv, coef, axes=([1], [ax])), 0, ax)
    return coef


def symmetric_sum(g):
    """Sum of ``g`` that is bitwise invariant under reversing any axis.

    Each axis is folded as ``g[:m] + g[::-1][:m]`` before the final
    (pairwise) ``np.sum``; addition is commutative in floating point, so
    a reflected array folds to the same bits.
    """
    g = np.asarray(g, dtype=np.float64)
    for ax, n in enumerate(g.shape):
        m = n // 2
        lo = np.take(g, np.arange(m), axis=ax)
        hi = np.take(g, np.arange(n - 1, n - 1 - m, -1), axis=ax)
        mid = [np.take(g, [m], axis=ax)] if n % 2 else []
        g = np.concatenate([lo + hi] + mid, axis=ax)
    return float(np.sum(g))


def singular_sum(g, spacing, alpha=0.0, log=False, corrected=True, degree=TAYLOR_DEGREE):
    """Approximate ``int W(|S k|) G(k) dk`` from samples on the half-integer lattice.

    ``g`` holds ``G`` on a centered grid (index ``i`` <-> ``k = i - (n-1)/2``),
    ``spacing`` is the diagonal of ``S``.  The caller multiplies by the
    cell volume.  With ``corrected=False`` this is the plain midpoint sum.
    """
    g = np.asarray(g, dtype=np.float64)
    spacing = tuple(float(s) for s in spacing)
    y2 = np.zeros(g.shape)
    for ax, (n, s) in enumerate(zip(g.shape, spacing)):
        y = (np.arange(n) - (n - 1) / 2) * s
        shape = [1] * g.ndim
        shape[ax] = n
        y2 = y2 + (y * y).reshape(shape)
    if log:
        w = 0.5 * np.log(y2)
    elif alpha == 0.0:
        return symmetric_sum(g)
    else:
        w = y2 ** (alpha / 2)
    raw = symmetric_sum(w * g)
    m = degree // 2 + 1
    if not corrected or min(g.shape) < 2 * m:
        return raw
    if not log and alpha == 2.0 * round(alpha / 2.0) and alpha >= 0:
        return raw
    coef = _even_taylor(g, m)
    corr = 0.0
    for e in np.ndindex(coef.shape):
        if 2 * sum(e) > degree:
            continue
        orders = tuple(2 * x for x in e)
        corr += coef[e] * lattice_zeta(alpha, spacing, orders, log=log)
    return float(raw - corr)
