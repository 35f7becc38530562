"""Hot numeric kernels with a numba path and a pure-numpy fallback.

The numba path is used when numba imports cleanly and the environment
variable ``OCTOLCT_NUMBA`` is not set to ``0``/``false``/``off``.  Both
paths compute the same sums; they are not bitwise identical, so a single
process should stick to one of them (the choice is made once, at import).

All kernels take the multiplication table explicitly as ``(index, sign)``
arrays, where ``e_a * e_b = sign[a, b] * e_{index[a, b]}``.
"""
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None


def _flag_enabled():
    raw = os.environ.get("OCTOLCT_NUMBA", "1").strip().lower()
    return raw not in ("0", "false", "off", "no")


USE_NUMBA = numba is not None and _flag_enabled()

if numba is not None:
    # the system TBB is often too old for numba; prefer layers that always load
    numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]


def backend():
    return "numba" if USE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# pure numpy implementations

def mul_numpy(a, b, index, sign):
    """Elementwise product of two component-first arrays ``(k, M)``."""
    k = a.shape[0]
    out = np.zeros((k,) + a.shape[1:], dtype=np.float64)
    for p in range(k):
        for q in range(k):
            out[index[p, q]] += sign[p, q] * (a[p] * b[q])
    return out


def right_contract_numpy(f, kern, index, sign):
    """Quadrature of ``f(x_i) * K(x_i, w_j)`` over ``i``.

    f    : (k, P, n_in, Q)   field, contraction axis in the middle
    kern : (k, n_out, n_in)  kernel samples, already weighted
    out  : (k, P, n_out, Q)
    """
    k, P, n_in, Q = f.shape
    n_out = kern.shape[1]
    out = np.zeros((k, P, n_out, Q), dtype=np.float64)
    for q in range(k):
        kq = kern[q]
        if not kq.any():
            continue
        # g[p] = sum_i f[p, :, i, :] * kq[j, i]
        g = np.einsum("apiq,ji->apjq", f, kq, optimize=True)
        for p in range(k):
            out[index[p, q]] += sign[p, q] * g[p]
    return out


def literal_points_numpy(f, k1, k2, k3, index, sign):
    """Brute-force ((f K1) K2) K3 summed over the whole grid, per output point.

    f  : (8, n1, n2, n3)
    k1 : (m, 8, n1)  axis-1 kernel at each requested output point
    k2 : (m, 8, n2)
    k3 : (m, 8, n3)
    returns (m, 8) unweighted sums
    """
    m = k1.shape[0]
    out = np.empty((m, 8))
    for t in range(m):
        a = mul_numpy(f, k1[t][:, :, None, None], index, sign)
        a = mul_numpy(a, k2[t][:, None, :, None], index, sign)
        a = mul_numpy(a, k3[t][:, None, None, :], index, sign)
        out[t] = a.reshape(8, -1).sum(axis=1)
    return out


# ---------------------------------------------------------------------------
# numba implementations

if numba is not None:

    @numba.njit(cache=True)
    def _mul_nb(a, b, index, sign):
        k, m = a.shape
        out = np.zeros((k, m))
        for t in range(m):
            for p in range(k):
                ap = a[p, t]
                if ap == 0.0:
                    continue
                for q in range(k):
                    out[index[p, q], t] += sign[p, q] * ap * b[q, t]
        return out

    @numba.njit(cache=True, parallel=True)
    def _right_contract_nb(f, kern, nz, index, sign):
        # f: (P, Q, n_in, k), kern: (nz, n_out, n_in) -> (P, Q, n_out, k)
        # only the kernel components listed in nz are nonzero
        P, Q, n_in, k = f.shape
        n_out = kern.shape[1]
        out = np.zeros((P, Q, n_out, k))
        for blk in numba.prange(P * Q):
            pp = blk // Q
            qq = blk % Q
            slab = f[pp, qq]
            for t in range(nz.shape[0]):
                q = nz[t]
                g = np.dot(kern[t], slab)
                for j in range(n_out):
                    for p in range(k):
                        out[pp, qq, j, index[p, q]] += sign[p, q] * g[j, p]
        return out

    @numba.njit(cache=True)
    def _literal_points_nb(f, k1, k2, k3, index, sign):
        m = k1.shape[0]
        n1, n2, n3 = f.shape[1], f.shape[2], f.shape[3]
        out = np.zeros((m, 8))
        a = np.zeros(8)
        b = np.zeros(8)
        c = np.zeros(8)
        for t in range(m):
            for i1 in range(n1):
                for i2 in range(n2):
                    for i3 in range(n3):
                        a[:] = 0.0
                        for p in range(8):
                            fp = f[p, i1, i2, i3]
                            for q in range(8):
                                a[index[p, q]] += sign[p, q] * fp * k1[t, q, i1]
                        b[:] = 0.0
                        for p in range(8):
                            for q in range(8):
                                b[index[p, q]] += sign[p, q] * a[p] * k2[t, q, i2]
                        c[:] = 0.0
                        for p in range(8):
                            for q in range(8):
                                c[index[p, q]] += sign[p, q] * b[p] * k3[t, q, i3]
                        for r in range(8):
                            out[t, r] += c[r]
        return out


# ---------------------------------------------------------------------------
# dispatch

def mul(a, b, index, sign):
    a, b = np.broadcast_arrays(np.asarray(a, dtype=np.float64),
                               np.asarray(b, dtype=np.float64))
    if not USE_NUMBA:
        return mul_numpy(a, b, index, sign)
    shape = a.shape
    flat_a = np.ascontiguousarray(a.reshape(shape[0], -1))
    flat_b = np.ascontiguousarray(b.reshape(shape[0], -1))
    return _mul_nb(flat_a, flat_b, index, sign).reshape(shape)


def right_contract(f, kern, index, sign):
    f = np.ascontiguousarray(f, dtype=np.float64)
    kern = np.ascontiguousarray(kern, dtype=np.float64)
    if USE_NUMBA:
        nz = np.array([q for q in range(kern.shape[0]) if kern[q].any()], dtype=np.int64)
        f_t = np.ascontiguousarray(f.transpose(1, 3, 2, 0))
        out = _right_contract_nb(f_t, np.ascontiguousarray(kern[nz]), nz, index, sign)
        return np.ascontiguousarray(out.transpose(3, 0, 2, 1))
    return right_contract_numpy(f, kern, index, sign)


def literal_points(f, k1, k2, k3, index, sign):
    args = [np.ascontiguousarray(x, dtype=np.float64) for x in (f, k1, k2, k3)]
    if USE_NUMBA:
        return _literal_points_nb(*args, index, sign)
    return literal_points_numpy(*args, index, sign)
