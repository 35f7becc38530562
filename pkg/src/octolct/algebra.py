"""Octonion and quaternion arithmetic.

Octonions are stored as 8 real components over ``1, e1, ..., e7`` and
quaternions as 4 components over ``1, e1, e2, e3``.  Array functions here
work on *component-first* arrays, ``(8, ...)`` or ``(4, ...)``, so whole
sampled fields can be multiplied pointwise without reshaping.

The basis product table is compiled in below (rows are the left factor).
It is checked against the recursive Cayley-Dickson doubling
``(p, q)(r, s) = (pr - conj(s) q, s p + q conj(r))`` in the test suite.
"""
import contextlib
import math

import numpy as np

from . import kernels

_TABLE = """
      1    e1   e2   e3   e4   e5   e6   e7
1     1    e1   e2   e3   e4   e5   e6   e7
e1    e1   -1   e3  -e2   e5  -e4  -e7   e6
e2    e2  -e3   -1   e1   e6   e7  -e4  -e5
e3    e3   e2  -e1   -1   e7  -e6   e5  -e4
e4    e4  -e5  -e6  -e7   -1   e1   e2   e3
e5    e5   e4  -e7   e6  -e1   -1  -e3   e2
e6    e6   e7   e4  -e5  -e2   e3   -1  -e1
e7    e7  -e6   e5   e4  -e3  -e2   e1   -1
"""


def _parse_table(text):
    rows = [line.split() for line in text.strip().splitlines()[1:]]
    index = np.zeros((8, 8), dtype=np.int64)
    sign = np.zeros((8, 8), dtype=np.float64)
    for a, row in enumerate(rows):
        for b, tok in enumerate(row[1:]):
            s = -1.0 if tok.startswith("-") else 1.0
            tok = tok.lstrip("-")
            index[a, b] = 0 if tok == "1" else int(tok[1:])
            sign[a, b] = s
    return index, sign


MUL_INDEX, MUL_SIGN = _parse_table(_TABLE)


def table():
    """Current ``(index, sign)`` basis product table."""
    return MUL_INDEX, MUL_SIGN


@contextlib.contextmanager
def corrupted_table():
    """Flip one table entry for the duration of the block (self-test hook)."""
    global MUL_INDEX, MUL_SIGN
    saved = MUL_INDEX, MUL_SIGN
    sign = MUL_SIGN.copy()
    sign[3, 5] = -sign[3, 5]
    MUL_SIGN = sign
    try:
        yield
    finally:
        MUL_INDEX, MUL_SIGN = saved


# ---------------------------------------------------------------------------
# array-level operations

def mul(a, b):
    """Pointwise product ``a * b`` of component-first arrays.

    Works for octonions (leading axis 8) and quaternions (leading axis 4);
    the quaternion table is the upper-left 4x4 block of the octonion one.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    k = a.shape[0]
    if b.shape[0] != k or k not in (4, 8):
        raise ValueError(f"component axes must both be 4 or 8, got {a.shape[0]}, {b.shape[0]}")
    index, sign = MUL_INDEX[:k, :k], MUL_SIGN[:k, :k]
    return kernels.mul(a, b, np.ascontiguousarray(index), np.ascontiguousarray(sign))


def conj(a):
    a = np.array(a, dtype=np.float64, copy=True)
    a[1:] = -a[1:]
    return a


def sq_norm(a):
    """Squared norm ``sum_i s_i**2`` over the leading component axis."""
    a = np.asarray(a, dtype=np.float64)
    return np.einsum("i...,i...->...", a, a)


def norm(a):
    return np.sqrt(sq_norm(a))


def cayley_dickson_mul(a, b):
    """Reference product by recursive doubling; slow, used only to check the table."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    n = a.shape[0]
    if n == 1:
        return a * b
    h = n // 2
    p, q = a[:h], a[h:]
    r, s = b[:h], b[h:]
    return np.concatenate([
        cayley_dickson_mul(p, r) - cayley_dickson_mul(conj(s), q),
        cayley_dickson_mul(s, p) + cayley_dickson_mul(q, conj(r)),
    ])


def right_mul_matrix(o):
    """8x8 real matrix ``R`` with ``R @ x == x * o`` for every octonion ``x``."""
    o = np.asarray(o, dtype=np.float64)
    R = np.zeros((8, 8))
    for p in range(8):
        for q in range(8):
            R[MUL_INDEX[p, q], p] += MUL_SIGN[p, q] * o[q]
    return R


def unit_pairs(k):
    """Pairs ``(p, q, s)`` with ``e_p * e_k = s * e_q``.

    Right multiplication by ``e_k`` squares to -1, so these four pairs
    turn R^8 into C^4: ``z = x_p + i s x_q`` evolves as ``z * exp(i t)``
    under ``x -> x * (cos t + e_k sin t)``.
    """
    if not 1 <= k <= 7:
        raise ValueError(f"imaginary unit index must be in 1..7, got {k}")
    seen = set()
    pairs = []
    for p in range(8):
        if p in seen:
            continue
        q = int(MUL_INDEX[p, k])
        s = float(MUL_SIGN[p, k])
        seen.update((p, q))
        pairs.append((p, q, s))
    return pairs


# ---------------------------------------------------------------------------
# scalar value types

class _Hyper:
    size = 0

    __slots__ = ("s",)

    def __init__(self, *components):
        if len(components) == 1 and np.ndim(components[0]) == 1:
            components = tuple(components[0])
        if len(components) > self.size:
            raise ValueError(f"{type(self).__name__} takes at most {self.size} components")
        s = np.zeros(self.size)
        s[:len(components)] = components
        self.s = s

    @classmethod
    def basis(cls, k):
        s = np.zeros(cls.size)
        s[k] = 1.0
        return cls(s)

    @classmethod
    def random(cls, rng):
        return cls(rng.standard_normal(cls.size))

    def __repr__(self):
        terms = ", ".join(f"{v:.6g}" for v in self.s)
        return f"{type(self).__name__}({terms})"

    def __eq__(self, other):
        if isinstance(other, (int, float)):
            other = type(self)(float(other))
        return type(other) is type(self) and np.array_equal(self.s, other.s)

    def __hash__(self):
        return hash(self.s.tobytes())

    def __add__(self, other):
        return type(self)(self.s + _coerce(self, other).s)

    __radd__ = __add__

    def __sub__(self, other):
        return type(self)(self.s - _coerce(self, other).s)

    def __rsub__(self, other):
        return type(self)(_coerce(self, other).s - self.s)

    def __neg__(self):
        return type(self)(-self.s)

    def __mul__(self, other):
        if isinstance(other, (int, float, np.floating)):
            return type(self)(self.s * float(other))
        return type(self)(mul(self.s, _coerce(self, other).s))

    def __rmul__(self, other):
        if isinstance(other, (int, float, np.floating)):
            return type(self)(self.s * float(other))
        return NotImplemented

    def __truediv__(self, other):
        return type(self)(self.s / float(other))

    def conj(self):
        return type(self)(conj(self.s))

    def norm(self):
        return math.sqrt(float(np.dot(self.s, self.s)))

    @property
    def real(self):
        return float(self.s[0])

    def allclose(self, other, atol=1e-12):
        return bool(np.allclose(self.s, _coerce(self, other).s, rtol=0, atol=atol))


def _coerce(like, other):
    if isinstance(other, type(like)):
        return other
    if isinstance(other, (int, float, np.floating)):
        return type(like)(float(other))
    raise TypeError(f"cannot combine {type(like).__name__} with {type(other).__name__}")


class Octonion(_Hyper):
    """Octonion ``s0 + s1 e1 + ... + s7 e7``."""

    size = 8
    __slots__ = ()


class Quaternion(_Hyper):
    """Quaternion ``s0 + s1 e1 + s2 e2 + s3 e3``."""

    size = 4
    __slots__ = ()

    def as_octonion(self):
        return Octonion(np.concatenate([self.s, np.zeros(4)]))


def oct_mul(o1, o2):
    return o1 * o2


def oct_conj(o):
    return o.conj()


def oct_norm(o):
    return o.norm()


def quat_pair_compose(a, b):
    """``a + b e4`` for quaternions ``a`` and ``b``."""
    return Octonion(np.concatenate([a.s, b.s]))


def quat_pair_split(o):
    return Quaternion(o.s[:4]), Quaternion(o.s[4:])


E4 = Octonion.basis(4)


def pair_identities(a, b):
    """Both sides of the six ``e4`` exchange identities for quaternions a, b.

    Returns a list of ``(lhs, rhs)`` octonion pairs, in order:
    ``e4 a = conj(a) e4``, ``e4 (a e4) = -conj(a)``, ``(a e4) e4 = -a``,
    ``a (b e4) = (b a) e4``, ``(a e4) b = (a conj(b)) e4``,
    ``(a e4)(b e4) = -conj(b) a``.
    """
    A, B = a.as_octonion(), b.as_octonion()
    Ac, Bc = a.conj().as_octonion(), b.conj().as_octonion()
    ae4 = A * E4
    be4 = B * E4
    return [
        (E4 * A, Ac * E4),
        (E4 * ae4, -Ac),
        (ae4 * E4, -A),
        (A * be4, (B * A) * E4),
        (ae4 * B, (A * Bc) * E4),
        (ae4 * be4, -(Bc * A)),
    ]


def unit_exp(k, theta):
    """``cos(theta) + e_k sin(theta)``."""
    if not 1 <= k <= 7:
        raise ValueError(f"imaginary unit index must be in 1..7, got {k}")
    s = np.zeros(8)
    s[0] = math.cos(theta)
    s[k] = math.sin(theta)
    return Octonion(s)


def associator(a, b, c):
    return (a * b) * c - a * (b * c)
