"""Generalized Gauss transformations: shifts along the imaginary period.

The constants are those of the real-shift transformation at the complementary
parameter 1 - m, so ``make_gauss_data(p, m)`` reuses ``make_transform_data``
with (m, 1 - m) swapped.  The transformed parameter m_tilde is larger than m
and is stored through its complement, which can be far below double epsilon
relative to 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .core import (
    EXTENDED,
    POLE_GUARD,
    MLike,
    ModulusParameter,
    _homogeneous,
    as_pair,
    jacobi_minor,
    jacobi_real,
)
from .errors import DomainError, ParityError, PoleError
from .landen import TransformData, check_order, make_transform_data
from .report import ResidualReport

_PARTS = {"dc": ("d", "c"), "nc": ("n", "c"), "sc": ("s", "c")}


@dataclass(frozen=True)
class GaussData:
    """beta, beta1 (odd p), beta2 and B0 (even p), and the ascended parameter."""

    p: int
    m: float
    Kp: float
    beta: float
    m_tilde: ModulusParameter
    beta1: Optional[float] = None
    beta2: Optional[float] = None
    B0: Optional[float] = None
    complement: Optional[TransformData] = None

    @property
    def odd(self) -> bool:
        return self.p % 2 == 1


def make_gauss_data(p: int, m: MLike) -> GaussData:
    p = check_order(p)
    m, mc = as_pair(m)
    if m == 0.0:
        raise DomainError("Gauss transforms need K'(m) finite; m = 0 is excluded")
    d = make_transform_data(p, ModulusParameter(mc, m))
    e = d.ext
    if mc == 0.0:
        mt = ModulusParameter(1.0, 0.0)
    elif p % 2:
        mt = ModulusParameter.from_complement(float(e["m"] * e["alpha"] ** 2 / e["alpha1"] ** 2))
    else:
        mt = ModulusParameter.from_complement(float(e["alpha"] ** 2 / e["alpha2"] ** 2))
    return GaussData(p, m, d.K, d.alpha, mt, beta1=d.alpha1, beta2=d.alpha2, B0=d.A0, complement=d)


def gauss_m_tilde(p: int, m: MLike) -> ModulusParameter:
    return make_gauss_data(p, m).m_tilde


def _terms(kind: str, g: GaussData, x: float, step: int) -> list:
    """kind(beta*x + step*i*(j-1)*K'/p, m) for j = 1..p, in extended precision."""
    d = g.complement.ext
    # the complement's (m, mc) is (1 - m, m), its K is K'(m)
    m_e, mc_e, beta, Kp = d["mc"], d["m"], d["alpha"], d["K"]
    xe = beta * EXTENDED.num(x)
    out = []
    for j in range(g.p):
        S, C, D, Q = _homogeneous(xe, step * j * Kp / g.p, m_e, mc_e, EXTENDED)
        parts = {"s": S, "c": C, "d": D, "n": Q}
        num, den = (parts[c] for c in _PARTS[kind])
        if abs(den) <= POLE_GUARD * max(abs(S), abs(C), abs(D), abs(Q)):
            raise PoleError(f"{kind} term {j + 1} of the Gauss sum sits on a pole (x={x})")
        out.append(num / den)
    return out


def _as_complex(v) -> complex:
    return complex(float(v.real), float(v.imag))


def gauss_sum(kind: str, p: int, m: MLike, x: float, data: Optional[GaussData] = None) -> complex:
    """Complex value of the Gauss right-hand side for dc, nc or sc at (x, m_tilde).

    dc uses the beta-normalized sum on the 2iK'/p lattice for any p.  For odd p
    nc and sc are beta1-normalized sums on the 4iK'/p lattice; for even p nc is
    the alternating dc sum and sc is the product form divided by beta*B0.  The
    imaginary part of the result vanishes up to rounding.
    """
    g = data or make_gauss_data(p, m)
    if kind not in _PARTS:
        raise ValueError(f"kind must be dc, nc or sc, got {kind!r}")
    e = g.complement.ext
    if kind == "dc":
        return _as_complex(e["alpha"] * sum(_terms("dc", g, x, 2)))
    if g.odd:
        return _as_complex(e["alpha1"] * sum(_terms(kind, g, x, 4)))
    if kind == "nc":
        return _as_complex(e["alpha2"] * sum((-1) ** j * t for j, t in enumerate(_terms("dc", g, x, 2))))
    prod = math.prod(_terms("sc", g, x, 2))
    return _as_complex((-1j) ** (g.p - 1) * prod / (e["alpha"] * e["A0"]))


# ---------------------------------------------------------------------------
# classical quadratic forms


def classical_gauss(u: float, m: MLike) -> tuple[float, ModulusParameter, tuple[float, float, float]]:
    """((1+k)u, 4k/(1+k)^2, (dn, cn, sn) right-hand sides) of the quadratic Gauss formulas."""
    m, mc = as_pair(m)
    k = math.sqrt(m)
    s, c, dn = jacobi_real(u, ModulusParameter(m, mc))
    den = 1.0 + k * s * s
    mt = ModulusParameter.from_complement(((1.0 - k) / (1.0 + k)) ** 2)
    return (1.0 + k) * u, mt, ((1.0 - k * s * s) / den, c * dn / den, (1.0 + k) * s / den)


def classical_landen(u: float, m: MLike) -> tuple[float, ModulusParameter, tuple[float, float, float]]:
    """((1+k')u, ((1-k')/(1+k'))^2, (dn, cn, sn) right-hand sides) of the quadratic Landen formulas."""
    m, mc = as_pair(m)
    kp = math.sqrt(mc)
    s, c, dn = jacobi_real(u, ModulusParameter(m, mc))
    # 1 - k' = m/(1 + k') keeps precision for small m
    mt = ModulusParameter((m / (1.0 + kp) ** 2) ** 2)
    return (1.0 + kp) * u, mt, ((1.0 - (1.0 - kp) * s * s) / dn, (1.0 - (1.0 + kp) * s * s) / dn, (1.0 + kp) * s * c / dn)


# ---------------------------------------------------------------------------
# verification


def verify_gauss_sum(kind: str, p: int, m: MLike, xs, tol: float = 1e-9, imag_tol: float = 1e-10) -> ResidualReport:
    """Gauss formula against the direct minor function at m_tilde; imaginary residue goes in extra."""
    g = make_gauss_data(p, m)
    rep = ResidualReport(f"gauss_{kind}", {"p": g.p, "m": g.m, "kind": kind}, tol=tol)
    worst_imag = 0.0
    for x in xs:
        try:
            v = gauss_sum(kind, p, m, x, g)
            target = jacobi_minor(kind, x, g.m_tilde)
        except PoleError:
            rep.skipped += 1
            continue
        worst_imag = max(worst_imag, abs(v.imag))
        rep.add(x, v.real, target)
    rep.extra["max_imag"] = worst_imag
    if worst_imag >= imag_tol:
        rep.error = f"imaginary residue {worst_imag:.3g} exceeds {imag_tol:g}"
    return rep


def verify_sc_product_readings(p: int, m: MLike, xs, tol: float = 1e-9) -> ResidualReport:
    """Compare the even-p sc product against sc(x, m_tilde) and against sc(beta*x, m_tilde).

    The report passes on the x reading; the beta*x residual is kept in extra.
    """
    g = make_gauss_data(p, m)
    if g.odd:
        raise ParityError("the sc product form needs even p")
    rep = ResidualReport("gauss_sc_product", {"p": g.p, "m": g.m}, tol=tol)
    worst_scaled = 0.0
    for x in xs:
        try:
            v = gauss_sum("sc", p, m, x, g).real
            at_x = jacobi_minor("sc", x, g.m_tilde)
            at_bx = jacobi_minor("sc", g.beta * x, g.m_tilde)
        except PoleError:
            rep.skipped += 1
            continue
        rep.add(x, v, at_x)
        worst_scaled = max(worst_scaled, abs(v - at_bx) / max(1.0, abs(v), abs(at_bx)))
    rep.extra["beta_x_reading_residual"] = worst_scaled
    return rep


def verify_gauss_landen_inverse(p: int, m: MLike, tol: float = 1e-10) -> ResidualReport:
    """m_G(m_L(m)) and m_L(m_G(m)) against m."""
    p = check_order(p)
    mp = ModulusParameter(*as_pair(m))
    rep = ResidualReport("gauss_landen_inverse", {"p": p, "m": mp.m}, tol=tol)
    landen_then_gauss = make_gauss_data(p, make_transform_data(p, mp).modulus_tilde).m_tilde.m
    gauss_then_landen = make_transform_data(p, make_gauss_data(p, mp).m_tilde).m_tilde
    rep.add("gauss(landen(m))", landen_then_gauss, mp.m)
    rep.add("landen(gauss(m))", gauss_then_landen, mp.m)
    rep.extra.update(gauss_of_landen=landen_then_gauss, landen_of_gauss=gauss_then_landen)
    return rep
