"""Complete elliptic integrals, Jacobi elliptic functions and the Jacobi zeta function.

Everything here is evaluated from scratch in double precision:

* ``K(m)`` and ``E(m)`` by the arithmetic-geometric mean,
* ``sn, cn, dn`` for real argument by the descending AGM recursion with
  backward recovery of the amplitude (ascending Landen steps for m > 0.9999),
* complex arguments by the addition theorem, switching to the ``iK'``-shifted
  representation in the half strip nearest to the poles,
* the incomplete second-kind integral inside ``Z(x, m)`` by Carlson's
  symmetric integrals R_F and R_D.

Functions take ``m`` either as a float or as a :class:`ModulusParameter`.
Passing ``extended=True`` runs the same algorithms in x87 80-bit
``numpy.longdouble`` arithmetic and returns longdouble values; the transform
modules use this for sums whose normalizers amplify rounding error.  A
40-digit backend on mpmath's software floats (``HIGH``) serves the few cubic
formulas whose amplification exceeds even that.
"""
from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import mpmath
import numpy as np

from .errors import DomainError, PoleError

POLE_GUARD = 1e-9
NEAR_ONE = 0.9999

_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class ModulusParameter:
    """The parameter m = k**2 in [0, 1] with its derived moduli.

    The complement 1 - m is stored alongside m so that parameters within
    rounding distance of 1 (the output of an ascending transform, say) keep
    full relative precision in k'.
    """

    m: float
    complement: float = None

    def __post_init__(self):
        m = float(self.m)
        if not math.isfinite(m) or m < 0.0 or m > 1.0:
            raise DomainError(f"modulus parameter must lie in [0, 1], got {self.m!r}")
        mc = 1.0 - m if self.complement is None else float(self.complement)
        if not math.isfinite(mc) or mc < 0.0 or mc > 1.0 or abs(m + mc - 1.0) > 4 * _EPS:
            raise DomainError(f"complement {self.complement!r} inconsistent with m = {m!r}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "complement", mc)

    @classmethod
    def from_complement(cls, mc: float) -> "ModulusParameter":
        return cls(1.0 - float(mc), float(mc))

    @property
    def k(self) -> float:
        return math.sqrt(self.m)

    @property
    def k_prime(self) -> float:
        return math.sqrt(self.complement)

    @property
    def m_complement(self) -> float:
        return self.complement

    def __float__(self) -> float:
        return self.m


MLike = Union[float, ModulusParameter]


def as_m(m: MLike) -> float:
    """Validate and unwrap a modulus parameter."""
    if isinstance(m, ModulusParameter):
        return m.m
    return ModulusParameter(m).m


def as_pair(m: MLike) -> tuple[float, float]:
    """(m, 1 - m), taking the stored complement when one is available."""
    if isinstance(m, ModulusParameter):
        return m.m, m.complement
    mp = ModulusParameter(m)
    return mp.m, mp.complement


class EllipticTriple(NamedTuple):
    sn: float
    cn: float
    dn: float


class ComplexTriple(NamedTuple):
    sn: complex
    cn: complex
    dn: complex


@dataclass(frozen=True)
class ComplexPoint:
    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise DomainError(f"complex point must be finite, got ({self.re}, {self.im})")

    def __complex__(self) -> complex:
        return complex(self.re, self.im)


class MinorKind(str, enum.Enum):
    cs = "cs"
    ds = "ds"
    ns = "ns"
    sc = "sc"
    dc = "dc"
    nc = "nc"
    cd = "cd"
    sd = "sd"
    nd = "nd"

    @property
    def parts(self) -> tuple[str, str]:
        """(numerator, denominator) letters; 'n' stands for the constant 1."""
        return self.value[0], self.value[1]


# ---------------------------------------------------------------------------
# arithmetic backends


class _Backend:
    def __init__(self, num, eps, sin, cos, asin, sqrt, tanh, cosh, sinh, exp, rint, atan):
        self.num = num
        self.eps = eps
        self.sin, self.cos, self.asin, self.sqrt = sin, cos, asin, sqrt
        self.tanh, self.cosh, self.sinh, self.exp = tanh, cosh, sinh, exp
        self.rint = rint
        self.pi = 4 * atan(num(1))
        self.zero, self.one = num(0), num(1)

    def cplx(self, re, im):
        return complex(re, im) if self.num is float else re + 1j * im


DOUBLE = _Backend(float, _EPS, math.sin, math.cos, math.asin, math.sqrt, math.tanh,
                  math.cosh, math.sinh, math.exp, lambda v: float(round(v)), math.atan)
EXTENDED = _Backend(np.longdouble, float(np.finfo(np.longdouble).eps), np.sin, np.cos,
                    np.arcsin, np.sqrt, np.tanh, np.cosh, np.sinh, np.exp, np.rint, np.arctan)


_HIGH_CTX = mpmath.MPContext()
_HIGH_CTX.dps = 40
# 40-digit software floats for the handful of formulas whose normalizers grow
# like m**(-3p/2), beyond what the 80-bit type can absorb
HIGH = _Backend(_HIGH_CTX.mpf, float(_HIGH_CTX.eps), _HIGH_CTX.sin, _HIGH_CTX.cos, _HIGH_CTX.asin,
                _HIGH_CTX.sqrt, _HIGH_CTX.tanh, _HIGH_CTX.cosh, _HIGH_CTX.sinh, _HIGH_CTX.exp,
                _HIGH_CTX.nint, _HIGH_CTX.atan)


def backend(extended: bool) -> _Backend:
    return EXTENDED if extended else DOUBLE


def lift_pair(m: float, mc: float, b: _Backend):
    """(m, 1 - m) in backend precision, summing to exactly 1.

    The smaller member is converted as is and the larger one is formed as its
    complement, so the pair stays consistent when m is within rounding of 0
    or 1.
    """
    if m <= mc:
        me = b.num(m)
        return me, b.one - me
    mce = b.num(mc)
    return b.one - mce, mce


# ---------------------------------------------------------------------------
# complete integrals


@functools.lru_cache(maxsize=1024)
def _agm_sequence(m, mc, b: _Backend):
    """Rows (a_n, b_n, c_n) of the AGM started from (1, k', k); cached, the lattice code reuses m."""
    a, bb, c = b.one, b.sqrt(mc), b.sqrt(m)
    rows = [(a, bb, c)]
    for _ in range(40):
        if abs(c) <= b.eps * a:
            break
        a, bb, c = (a + bb) / 2, b.sqrt(a * bb), (a - bb) / 2
        rows.append((a, bb, c))
    return tuple(rows)


def _K(m, mc, b: _Backend):
    if m == 0:
        return b.pi / 2
    return b.pi / (2 * _agm_sequence(m, mc, b)[-1][0])


def _E(m, mc, b: _Backend):
    if mc == 0:
        return b.one
    if m == 0:
        return b.pi / 2
    rows = _agm_sequence(m, mc, b)
    total = b.zero
    weight = b.num(0.5)
    for _, _, c in rows:
        total += weight * c * c
        weight *= 2
    return b.pi / (2 * rows[-1][0]) * (1 - total)


def complete_K(m: MLike, *, extended: bool = False):
    """Complete elliptic integral of the first kind, K(m)."""
    m, mc = as_pair(m)
    if mc == 0.0:
        raise DomainError("K(m) diverges logarithmically at m = 1")
    b = backend(extended)
    return _K(*lift_pair(m, mc, b), b)


def complete_E(m: MLike, *, extended: bool = False):
    """Complete elliptic integral of the second kind, E(m)."""
    m, mc = as_pair(m)
    b = backend(extended)
    return _E(*lift_pair(m, mc, b), b)


# ---------------------------------------------------------------------------
# real argument


def _sncndn_agm(u, m, mc, b: _Backend):
    rows = _agm_sequence(m, mc, b)
    phi = (2 ** (len(rows) - 1)) * rows[-1][0] * u
    for a, _, c in reversed(rows[1:]):
        phi = (phi + b.asin(c / a * b.sin(phi))) / 2
    sn, cn = b.sin(phi), b.cos(phi)
    # cn/cos(phi1 - phi0) is 0/0 at u = K; this sum of squares has no cancellation
    dn = b.sqrt(cn * cn + mc * sn * sn)
    return sn, cn, dn


def _sncndn_near_one(u, m1, b: _Backend):
    """Ascending Landen steps from m = 1 - m1 towards m = 1, tanh/sech at the bottom."""
    steps = []
    w = u
    while m1 * b.exp(min(2 * abs(w), b.num(700))) > b.eps / 10:
        k = b.sqrt(1 - m1)
        kp2 = m1 / (1 + k) ** 2  # complementary modulus of the next parameter
        steps.append(kp2)
        w = w / (1 + kp2)
        m1 = kp2 * kp2
    t, ch, sh = b.tanh(w), b.cosh(w), b.sinh(w)
    sech = 1 / ch
    corr = m1 / 4 * (sh * ch - w) * sech
    corr_d = m1 / 4 * (sh * ch + w) * sech
    sn = t + corr * sech
    cn = sech - corr * t
    dn = sech + corr_d * t
    for kp2 in reversed(steps):
        mm = 1 - kp2 * kp2
        sn, cn, dn = (
            (1 + kp2) * sn * cn / dn,
            (1 + kp2) / mm * (dn * dn - kp2) / dn,
            (1 - kp2) / mm * (dn * dn + kp2) / dn,
        )
    return sn, cn, dn


def _jacobi(x, m, mc, b: _Backend):
    if m == 0:
        return b.sin(x), b.cos(x), b.one
    if mc == 0:
        sech = 1 / b.cosh(x)
        return b.tanh(x), sech, sech
    K = _K(m, mc, b)
    # reduce to [-K, K]: sn, cn have period 4K; sn(2K - u) = sn u, cn(2K - u) = -cn u
    r = x - 4 * K * b.rint(x / (4 * K))
    sign_c = 1
    if r > K:
        r = 2 * K - r
        sign_c = -1
    elif r < -K:
        r = -2 * K - r
        sign_c = -1
    if m > NEAR_ONE:
        sn, cn, dn = _sncndn_near_one(r, mc, b)
    else:
        sn, cn, dn = _sncndn_agm(r, m, mc, b)
    return sn, sign_c * cn, dn


def jacobi_real(x, m: MLike, *, extended: bool = False) -> EllipticTriple:
    """sn, cn, dn of a real argument."""
    m, mc = as_pair(m)
    if not math.isfinite(x):
        raise DomainError(f"argument must be finite, got {x!r}")
    b = backend(extended)
    return EllipticTriple(*_jacobi(b.num(x), *lift_pair(m, mc, b), b))


def _pick(triple, letter):
    if letter == "n":
        return 1.0
    return {"s": triple[0], "c": triple[1], "d": triple[2]}[letter]


def jacobi_minor(kind: Union[MinorKind, str], x, m: MLike, *, extended: bool = False):
    """Ratio functions cs, ds, ns, sc, dc, nc, cd, sd, nd."""
    kind = MinorKind(kind)
    num, den = kind.parts
    t = jacobi_real(x, m, extended=extended)
    d = _pick(t, den)
    if abs(d) <= POLE_GUARD:
        raise PoleError(f"{kind.value}({float(x)}, {float(m)}): {den}n vanishes")
    return _pick(t, num) / d


# ---------------------------------------------------------------------------
# complex argument


def _homogeneous(x, y, m, mc, b: _Backend):
    """(S, C, D, Q) with sn = S/Q, cn = C/Q, dn = D/Q at x + iy."""
    if y == 0:
        s, c, d = _jacobi(x, m, mc, b)
        z = b.zero
        return b.cplx(s, z), b.cplx(c, z), b.cplx(d, z), b.cplx(b.one, z)
    if m == 0:
        s, c, d = _jacobi(x, m, mc, b)
        ch, sh = b.cosh(y), b.sinh(y)
        return b.cplx(s * ch, c * sh), b.cplx(c * ch, -s * sh), b.cplx(b.one, b.zero), b.cplx(b.one, b.zero)
    flip = 1
    shift = 0
    if mc > 0:
        Kp = _K(mc, m, b)
        n = b.rint(y / (2 * Kp))
        y = y - 2 * Kp * n
        if int(n) % 2:
            flip = -1  # cn, dn change sign under z -> z + 2iK'
        if y > Kp / 2:
            shift, y = 1, y - Kp
        elif y < -Kp / 2:
            shift, y = -1, y + Kp
    s, c, d = _jacobi(x, m, mc, b)
    s1, c1, d1 = _jacobi(y, mc, m, b)
    Q = b.cplx(c1 * c1 + m * s * s * s1 * s1, b.zero)
    S = b.cplx(s * d1, c * d * s1 * c1)
    C = b.cplx(c * c1, -s * d * s1 * d1)
    D = b.cplx(d * c1 * d1, -m * s * c * s1)
    if shift:
        # z = w +/- iK': sn = 1/(k sn w), cn = -/+ i dn w/(k sn w), dn = -/+ i cn w/sn w
        k = b.sqrt(m)
        j = -1j * shift
        S, C, D, Q = Q, j * D, j * k * C, k * S
    return S, flip * C, flip * D, Q


def _split(z, b: _Backend):
    if isinstance(z, ComplexPoint):
        re, im = z.re, z.im
    else:
        z = complex(z) if b.num is float else z
        re, im = z.real, z.imag
    if not (math.isfinite(re) and math.isfinite(im)):
        raise DomainError(f"complex argument must be finite, got {z!r}")
    return b.num(re), b.num(im)


def jacobi_complex(z, m: MLike, *, extended: bool = False) -> ComplexTriple:
    """sn, cn, dn at a complex argument (real parameter m)."""
    m, mc = as_pair(m)
    b = backend(extended)
    x, y = _split(z, b)
    S, C, D, Q = _homogeneous(x, y, *lift_pair(m, mc, b), b)
    scale = max(abs(S), abs(C), abs(D), abs(Q))
    if abs(Q) <= POLE_GUARD * scale:
        raise PoleError(f"jacobi_complex({complex(z)}, {m}): too close to a lattice pole")
    return ComplexTriple(S / Q, C / Q, D / Q)


def jacobi_complex_minor(kind: Union[MinorKind, str], z, m: MLike, *, extended: bool = False):
    """Ratio function at a complex argument, finite even where sn, cn, dn all have poles."""
    kind = MinorKind(kind)
    m, mc = as_pair(m)
    b = backend(extended)
    x, y = _split(z, b)
    S, C, D, Q = _homogeneous(x, y, *lift_pair(m, mc, b), b)
    parts = {"s": S, "c": C, "d": D, "n": Q}
    num, den = parts[kind.parts[0]], parts[kind.parts[1]]
    scale = max(abs(S), abs(C), abs(D), abs(Q))
    if abs(den) <= POLE_GUARD * scale:
        raise PoleError(f"{kind.value}({complex(z)}, {m}): denominator vanishes")
    return num / den


# ---------------------------------------------------------------------------
# Carlson integrals and the zeta function


def _carlson_rf(x, y, z, b: _Backend = DOUBLE):
    a0 = (x + y + z) / 3
    q = (3 * b.eps) ** (-1.0 / 6.0) * max(abs(a0 - x), abs(a0 - y), abs(a0 - z))
    xn, yn, zn, a = x, y, z, a0
    f = b.one
    while q / f >= abs(a):
        sx, sy, sz = b.sqrt(xn), b.sqrt(yn), b.sqrt(zn)
        lam = sx * sy + sy * sz + sz * sx
        xn, yn, zn, a = (xn + lam) / 4, (yn + lam) / 4, (zn + lam) / 4, (a + lam) / 4
        f *= 4
    X = (a0 - x) / (f * a)
    Y = (a0 - y) / (f * a)
    Z = -(X + Y)
    e2 = X * Y - Z * Z
    e3 = X * Y * Z
    return (1 - e2 / 10 + e3 / 14 + e2 * e2 / 24 - 3 * e2 * e3 / 44) / b.sqrt(a)


def _carlson_rd(x, y, z, b: _Backend = DOUBLE):
    a0 = (x + y + 3 * z) / 5
    q = (b.eps / 4) ** (-1.0 / 6.0) * max(abs(a0 - x), abs(a0 - y), abs(a0 - z))
    xn, yn, zn, a = x, y, z, a0
    f = b.one
    acc = b.zero
    while q / f >= abs(a):
        sx, sy, sz = b.sqrt(xn), b.sqrt(yn), b.sqrt(zn)
        lam = sx * sy + sy * sz + sz * sx
        acc += 1 / (f * sz * (zn + lam))
        xn, yn, zn, a = (xn + lam) / 4, (yn + lam) / 4, (zn + lam) / 4, (a + lam) / 4
        f *= 4
    X = (a0 - x) / (f * a)
    Y = (a0 - y) / (f * a)
    Z = -(X + Y) / 3
    e2 = X * Y - 6 * Z * Z
    e3 = (3 * X * Y - 8 * Z * Z) * Z
    e4 = 3 * (X * Y - Z * Z) * Z * Z
    e5 = X * Y * Z ** 3
    series = (1 - 3 * e2 / 14 + e3 / 6 + 9 * e2 * e2 / 88 - 3 * e4 / 22
              - 9 * e2 * e3 / 52 + 3 * e5 / 26)
    return series / (f * a * b.sqrt(a)) + 3 * acc


def _zeta(x, m, mc, b: _Backend, K=None, E=None):
    if m == 0:
        return b.zero
    K = _K(m, mc, b) if K is None else K
    E = _E(m, mc, b) if E is None else E
    u = x - 2 * K * b.rint(x / (2 * K))
    sn, cn, dn = _jacobi(u, m, mc, b)
    c2, d2 = cn * cn, dn * dn
    e_inc = sn * _carlson_rf(c2, d2, b.one, b) - m / 3 * sn ** 3 * _carlson_rd(c2, d2, b.one, b)
    return e_inc - E / K * u


def jacobi_zeta(x, m: MLike, *, extended: bool = False):
    """Jacobi zeta function Z(x, m) = E(am x, m) - (E(m)/K(m)) x."""
    m, mc = as_pair(m)
    if mc == 0.0:
        raise DomainError("Z(x, m) needs K(m) finite; m = 1 is excluded")
    b = backend(extended)
    return _zeta(b.num(x), *lift_pair(m, mc, b), b)
