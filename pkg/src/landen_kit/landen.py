"""Generalized Landen transformations with real shifts 2K/p and 4K/p.

For an order p >= 2 and parameter m, functions at the smaller parameter
``m_tilde`` are expressed through p shifted copies at parameter m::

    dn(x, mt) = alpha  * sum_j dn(x_j, m)                     any p
    cn(x, mt) = alpha1 * sum_j cn(xt_j, m)                     odd p
    sn(x, mt) = alpha1 * sum_j sn(xt_j, m)                     odd p
    cn(x, mt) = alpha2 * sum_j (-1)**(j-1) dn(x_j, m)          even p
    sn(x, mt) = alpha2 * sum_j (-1)**(j-1) Z(x_j, m)           even p

with ``x_j = alpha*x + 2(j-1)K/p`` and ``xt_j = alpha*x + 4(j-1)K/p``.

The normalizers alpha1 and alpha2 grow like m**(-p/2) for small m, so the sums
cancel heavily; constants and terms are evaluated in 80-bit extended precision
and rounded to float only at the end.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

from .core import (
    lift_pair,
    EXTENDED,
    HIGH,
    POLE_GUARD,
    MLike,
    ModulusParameter,
    _E,
    _jacobi,
    _K,
    _zeta,
    as_m,
    as_pair,
    complete_K,
    jacobi_minor,
    jacobi_real,
)
from .errors import DomainError, ParityError, PoleError, UnsupportedOrder
from .report import ResidualReport


def check_order(p) -> int:
    if isinstance(p, bool) or int(p) != p or p < 2:
        raise DomainError(f"order p must be an integer >= 2, got {p!r}")
    return int(p)


def _finite_K(m: MLike) -> float:
    if as_pair(m)[1] <= 0.0:
        raise DomainError("transforms need K(m) finite; m = 1 is only reachable as a limit")
    return complete_K(m)


class LatticeKind(str, enum.Enum):
    real_2K = "real_2K"
    real_4K = "real_4K"


@dataclass(frozen=True)
class ShiftLattice:
    kind: LatticeKind
    p: int
    m: float
    points: tuple

    def at(self, u: float, j: int) -> float:
        """Point j (1-based, any integer) of the lattice translated by u; indices are not wrapped."""
        step = self.points[1] if self.p > 1 else 0.0
        return u + (j - 1) * step


def shift_lattice(kind, p: int, m: MLike) -> ShiftLattice:
    kind = LatticeKind(kind)
    p = check_order(p)
    m = as_m(m)
    K = _finite_K(m)
    step = (2.0 if kind is LatticeKind.real_2K else 4.0) * K / p
    return ShiftLattice(kind, p, m, tuple(j * step for j in range(p)))


@dataclass(frozen=True)
class TransformData:
    """Constants of the order-p Landen transformation at parameter m.

    ``alpha1`` exists only for odd p; ``alpha2`` and ``A0`` only for even p.
    At m = 0 the parity constants are infinite (their defining sums vanish).
    """

    p: int
    m: float
    K: float
    alpha: float
    m_tilde: float
    alpha1: Optional[float] = None
    alpha2: Optional[float] = None
    A0: Optional[float] = None
    ext: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def odd(self) -> bool:
        return self.p % 2 == 1

    def x_j(self, x: float, j: int) -> float:
        return self.alpha * x + 2.0 * (j - 1) * self.K / self.p

    def xt_j(self, x: float, j: int) -> float:
        return self.alpha * x + 4.0 * (j - 1) * self.K / self.p

    # extended-precision lattice, used by the evaluators
    def _lat(self, x, j, step):
        e = self.ext
        return e["alpha"] * e["b"].num(x) + step * (j - 1) * e["K"] / self.p

    def terms(self, x) -> list:
        """Extended (sn, cn, dn) at x_1..x_p."""
        e = self.ext
        return [_jacobi(self._lat(x, j, 2), e["m"], e["mc"], e["b"]) for j in range(1, self.p + 1)]

    def terms_tilde(self, x) -> list:
        """Extended (sn, cn, dn) at xt_1..xt_p."""
        e = self.ext
        return [_jacobi(self._lat(x, j, 4), e["m"], e["mc"], e["b"]) for j in range(1, self.p + 1)]

    def zetas(self, x) -> list:
        """Extended Z(x_j, m) for j = 1..p."""
        e = self.ext
        if "E" not in e:
            e["E"] = _E(e["m"], e["mc"], e["b"])
        return [_zeta(self._lat(x, j, 2), e["m"], e["mc"], e["b"], e["K"], e["E"]) for j in range(1, self.p + 1)]

    def m_tilde_ext(self):
        """Extended-precision m_tilde from the best-conditioned expression.

        The dn relation loses digits by cancellation once m_tilde drops below
        about 1e-3 relative to its size; the product expressions (m α²/α₁² for
        odd p, m^p α⁴ A₀⁴ for even p) keep full relative precision.
        """
        e = self.ext
        if self.m == 0.0:
            return e["b"].zero
        if self.m_tilde > 1e-3:
            return e["m_tilde"]
        return e["m_tilde_rel"]

    @property
    def modulus_tilde(self) -> ModulusParameter:
        """m_tilde as a parameter, with full relative precision even when tiny."""
        return ModulusParameter(float(self.m_tilde_ext()))


_PRECISION = {"extended": EXTENDED, "high": HIGH}
# the cn/sn sums lose about log10|alpha1| (or |alpha2|) digits; past this the products take over
SUM_FORM_MAX_NORM = 1e6


def make_transform_data(p: int, m: MLike, *, precision: str = "extended") -> TransformData:
    """Constants of the order-p transformation; m may carry an exact complement.

    ``precision="high"`` carries 40 significant digits instead of the 80-bit
    default, for formulas whose normalizers are raised to the third power.
    """
    p = check_order(p)
    m, mc = as_pair(m)
    if mc == 0.0:
        raise DomainError("transforms need K(m) finite; m = 1 is only reachable as a limit")
    b = _PRECISION[precision]
    me, mce = lift_pair(m, mc, b)
    K = _K(me, mce, b)
    ext = {"m": me, "mc": mce, "K": K, "b": b}
    odd = p % 2 == 1
    if m == 0.0:
        a0 = None if odd else p / 2.0 ** (p - 1)
        ext.update(alpha=b.one / p, alpha1=b.num(math.inf), alpha2=b.num(math.inf), A0=b.num(a0 or 0))
        return TransformData(p, 0.0, float(K), 1.0 / p, 0.0,
                             alpha1=math.inf if odd else None,
                             alpha2=None if odd else math.inf, A0=a0, ext=ext)
    vals = [_jacobi(2 * j * K / p, me, mce, b) for j in range(p)]
    dns = [v[2] for v in vals]
    alpha = 1 / sum(dns)
    m_tilde = (me - 2) * alpha ** 2 + 2 * alpha ** 3 * sum(d ** 3 for d in dns)
    ext["m_tilde"] = m_tilde
    # cancellation can leave a tiny negative residue for small m and large p
    m_tilde = min(max(float(m_tilde), 0.0), 1.0)
    ext["alpha"] = alpha
    if odd:
        cns = sum(_jacobi(4 * j * K / p, me, mce, b)[1] for j in range(p))
        ext["alpha1"] = 1 / cns
        ext["m_tilde_rel"] = me * alpha ** 2 * cns ** 2
        return TransformData(p, m, float(K), float(alpha), m_tilde, alpha1=float(1 / cns), ext=ext)
    alt = sum((-1) ** j * d for j, d in enumerate(dns))
    A0 = math.prod(v[0] for v in vals[1:])
    # the alternating sum is O(m^(p/2)) and can underflow to zero for tiny m
    alpha2 = 1 / alt if alt != 0 else b.num(math.inf)
    ext.update(alpha2=alpha2, A0=A0, m_tilde_rel=me ** p * alpha ** 4 * A0 ** 4)
    return TransformData(p, m, float(K), float(alpha), m_tilde, alpha2=float(alpha2), A0=float(A0), ext=ext)


# ---------------------------------------------------------------------------
# closed forms and the alternative m_tilde expressions


@dataclass(frozen=True)
class ClosedFormAux:
    q: float
    t: float


def closed_form_aux(m: MLike) -> ClosedFormAux:
    """q = dn(2K/3, m) and t = (1 - m)**(1/4) = dn(K/2, m)."""
    m = as_m(m)
    K = _finite_K(m)
    return ClosedFormAux(jacobi_real(2.0 * K / 3.0, m).dn, (1.0 - m) ** 0.25)


def m_tilde_closed_form(p: int, m: MLike) -> float:
    m = as_m(m)
    if p not in (2, 3, 4):
        raise UnsupportedOrder(f"closed form for m_tilde known only for p in {{2, 3, 4}}, got {p}")
    _finite_K(m)
    if p == 2:
        kp = math.sqrt(as_pair(m)[1])
        return ((1.0 - kp) / (1.0 + kp)) ** 2
    if p == 3:
        q = closed_form_aux(m).q
        return m * (1.0 - q) ** 2 / ((1.0 + q) ** 2 * (1.0 + 2.0 * q) ** 2)
    t = (1.0 - m) ** 0.25
    return ((1.0 - t) / (1.0 + t)) ** 4


def m_tilde_variants(p: int, m: MLike) -> dict:
    """Every available expression for the transformed parameter.

    Keys: ``m_tilde`` (the dn relation), and ``m_tilde_1``/``m_tilde_3`` for odd p
    or ``m_tilde_2``/``m_tilde_4`` for even p.
    """
    d = make_transform_data(p, m)
    m = d.m
    out = {"m_tilde": d.m_tilde}
    if m == 0.0:
        out.update({"m_tilde_1": 0.0, "m_tilde_3": 0.0} if d.odd else {"m_tilde_2": 0.0, "m_tilde_4": 0.0})
        return out
    e = d.ext
    b = e["b"]
    K, me, mce = e["K"], e["m"], e["mc"]
    if d.odd:
        cn3 = sum(_jacobi(4 * j * K / p, me, mce, b)[1] ** 3 for j in range(p))
        a1 = e["alpha1"]
        out["m_tilde_1"] = float(me / a1 ** 2 / ((1 - 2 * me) + 2 * me * a1 * cn3))
        out["m_tilde_3"] = float(me * e["alpha"] ** 2 / a1 ** 2)
    else:
        dn3 = sum((-1) ** j * _jacobi(2 * j * K / p, me, mce, b)[2] ** 3 for j in range(p))
        a2 = e["alpha2"]
        out["m_tilde_2"] = float(1 / a2 ** 2 / ((me - 2) + 2 * a2 * dn3))
        out["m_tilde_4"] = float(me ** p * e["alpha"] ** 4 * e["A0"] ** 4)
    return out


# ---------------------------------------------------------------------------
# the transforms


def landen_sum(kind: str, p: int, m: MLike, x: float, data: Optional[TransformData] = None,
               *, force_sum: bool = False) -> float:
    """Right-hand side of the parity-appropriate Landen formula for dn, cn or sn at (x, m_tilde).

    When the cn/sn normalizer exceeds ``SUM_FORM_MAX_NORM`` the value comes from
    the equivalent product form instead; ``force_sum=True`` disables that.
    """
    d = data or make_transform_data(p, m)
    e = d.ext
    if kind == "dn":
        return float(e["alpha"] * sum(t[2] for t in d.terms(x)))
    if kind not in ("cn", "sn"):
        raise ValueError(f"kind must be dn, cn or sn, got {kind!r}")
    if d.m == 0.0:
        # trigonometric limit: the formulas reduce to cn = cos, sn = sin at mt = 0
        return math.cos(x) if kind == "cn" else math.sin(x)
    if not force_sum and abs(d.alpha1 if d.odd else d.alpha2) > SUM_FORM_MAX_NORM:
        # the alternating and 4K/p sums cancel to O(m^(p/2)); the products do not
        if d.odd:
            return landen_product(kind, p, m, x, d)
        if kind == "sn":
            return landen_sn_even_product(p, m, x, d)
        # cn = cd * dn with cd(x) = sn(x + K_tilde) and K_tilde = K/(p alpha)
        shift = float(e["K"] / (d.p * e["alpha"]))
        return landen_sn_even_product(p, m, x + shift, d) * landen_sum("dn", p, m, x, d)
    if d.odd:
        col = 1 if kind == "cn" else 0
        return float(e["alpha1"] * sum(t[col] for t in d.terms_tilde(x)))
    if kind == "cn":
        return float(e["alpha2"] * sum((-1) ** j * t[2] for j, t in enumerate(d.terms(x))))
    return float(e["alpha2"] * sum((-1) ** j * z for j, z in enumerate(d.zetas(x))))


def landen_product(kind: str, p: int, m: MLike, x: float, data: Optional[TransformData] = None) -> float:
    """Odd-p product forms: each of dn, cn, sn at m_tilde as a product of p shifted factors."""
    d = data or make_transform_data(p, m)
    if not d.odd:
        raise ParityError("product forms of the dn/cn/sn transforms need odd p")
    p, e = d.p, d.ext
    b = e["b"]
    K, me, mce = e["K"], e["m"], e["mc"]
    if kind == "dn":
        num = math.prod(t[2] for t in d.terms(x))
        den = math.prod(_jacobi(2 * n * K / p, me, mce, b)[2] for n in range(1, p))
    elif kind == "cn":
        num = math.prod(t[1] for t in d.terms_tilde(x))
        den = math.prod(_jacobi(4 * n * K / p, me, mce, b)[1] for n in range(1, p))
    elif kind == "sn":
        num = math.prod(t[0] for t in d.terms_tilde(x))
        den = e["alpha"] * math.prod(_jacobi(4 * n * K / p, me, mce, b)[0] for n in range(1, p))
    else:
        raise ValueError(f"kind must be dn, cn or sn, got {kind!r}")
    if abs(den) <= POLE_GUARD:
        raise PoleError(f"product form denominator vanishes (p={p}, m={d.m})")
    return float(num / den)


def landen_sn_even_product(p: int, m: MLike, x: float, data: Optional[TransformData] = None) -> float:
    """sn(x, m_tilde) = prod_j sn(x_j, m) / (A0 * alpha) for even p."""
    d = data or make_transform_data(p, m)
    if d.odd:
        raise ParityError("the sn product form needs even p")
    if d.m == 0.0:
        return math.sin(x)
    num = math.prod(t[0] for t in d.terms(x))
    return float(num / (d.ext["A0"] * d.ext["alpha"]))


def identity_81_sides(p: int, m: MLike) -> tuple[float, float]:
    """Both sides of m^(p/2) alpha alpha2 prod sn(2jK/p) = prod ns^2(2nK/p) (even p)."""
    d = make_transform_data(p, m)
    if d.odd:
        raise ParityError("identity needs even p")
    p, m, K = d.p, d.m, d.K
    lhs = m ** (p / 2) * d.alpha * d.alpha2 * d.A0
    rhs = math.prod(jacobi_minor("ns", 2.0 * n * K / p, m) ** 2 for n in range(1, p // 2))
    return lhs, rhs


def trig_limit_sides(p: int, x: float) -> list[tuple[str, float, float]]:
    """Multiple-angle products that the transforms collapse to at m = mt = 0."""
    out = []
    if p % 2 == 0:
        rhs = 2.0 ** (p - 1) * math.prod(math.sin(x + (j - 1) * math.pi / p) for j in range(1, p + 1))
        out.append(("sin_even", math.sin(p * x), rhs))
    else:
        rhs_c = 2.0 ** (p - 1) * math.prod(math.cos(x + 2 * (j - 1) * math.pi / p) for j in range(1, p + 1))
        rhs_s = (-4.0) ** ((p - 1) // 2) * math.prod(math.sin(x + 2 * (j - 1) * math.pi / p) for j in range(1, p + 1))
        out.append(("cos_odd", math.cos(p * x), rhs_c))
        out.append(("sin_odd", math.sin(p * x), rhs_s))
    return out


# ---------------------------------------------------------------------------
# verification records


def verify_period_relation(p: int, m: MLike, tol: Optional[float] = None) -> ResidualReport:
    """K(m_tilde) * p * alpha against K(m)."""
    d = make_transform_data(p, m)
    lhs = complete_K(d.m_tilde) * d.p * d.alpha
    rhs = d.K
    tol = tol if tol is not None else 1e-10 * d.K
    return ResidualReport.from_pairs("period_relation", {"p": d.p, "m": d.m}, [(lhs, rhs)], tol)


def verify_m_tilde_equivalence(p: int, m: MLike, tol: float = 1e-10) -> ResidualReport:
    v = m_tilde_variants(p, m)
    keys = list(v)
    pairs = [(v[a], v[b]) for i, a in enumerate(keys) for b in keys[i + 1:]]
    rep = ResidualReport.from_pairs("m_tilde_equivalence", {"p": p, "m": as_m(m)}, pairs, tol)
    rep.extra.update(v)
    return rep
