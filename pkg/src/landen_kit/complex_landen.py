"""Landen formulas with shifts in units of (K + iK')/p.

They follow from the real-shift formulas at parameter 1/m through

    dn(kx, 1/m) = cn(x, m),  cn(kx, 1/m) = dn(x, m),  sn(kx, 1/m) = k sn(x, m),

with K(1/m) = k(K + iK').  The transformed parameter is complex in general,
so each formula is checked by consistency rather than by a direct evaluation
at m_tilde: the duality route gives m_tilde independently, and the three
functions built from the sums must satisfy sn^2 + cn^2 = 1,
dn^2 + m_tilde sn^2 = 1 and cn' = -sn dn, which pins them down as the
Jacobi functions at m_tilde.

Two readings are available.  ``reading="validated"`` uses the argument scales
and normalizers that pass those checks; ``reading="printed"`` uses the scales
as they are usually quoted (delta1 x in the cn sum, delta2 in the odd-p dn and
sn sums, m_tilde = delta1^2/delta^2 for odd p), kept for comparison.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import EXTENDED, POLE_GUARD, MLike, _homogeneous, _K, as_pair, jacobi_complex, lift_pair
from .errors import DomainError, PoleError
from .landen import check_order
from .report import ResidualReport

READINGS = ("validated", "printed")


@dataclass(frozen=True)
class ComplexShiftData:
    """delta-type constants on the lattice 2(j-1)(K + iK')/p and the complex m_tilde.

    ``delta1`` is defined for odd p and ``delta2``, ``D0`` for even p; the
    opposite-parity sums either vanish or carry no transform.  ``m_tilde_dual``
    comes from the dn-cubic relation at parameter 1/m.
    """

    p: int
    m: float
    K: float
    Kp: float
    delta: complex
    m_tilde: complex
    m_tilde_dual: complex
    m_tilde_printed: complex
    delta1: Optional[complex] = None
    delta2: Optional[complex] = None
    D0: Optional[complex] = None
    # extended-precision copies used by the evaluators
    ext: dict = None

    @property
    def odd(self) -> bool:
        return self.p % 2 == 1

    def lattice(self, j: int, step: int) -> complex:
        return step * j * (self.K + 1j * self.Kp) / self.p


def _c(v) -> complex:
    return complex(float(np.real(v)), float(np.imag(v)))


def _triple(z, me, mce):
    """(sn, cn, dn) at a complex extended-precision argument; PoleError near poles."""
    S, C, D, Q = _homogeneous(np.real(z), np.imag(z), me, mce, EXTENDED)
    if abs(Q) <= POLE_GUARD * max(abs(S), abs(C), abs(D), abs(Q)):
        raise PoleError(f"complex-shift term at {_c(z)} sits on a pole")
    return S / Q, C / Q, D / Q


def make_complex_shift_data(p: int, m: MLike) -> ComplexShiftData:
    p = check_order(p)
    m, mc = as_pair(m)
    if m == 0.0 or mc == 0.0:
        raise DomainError("complex shifts need both K(m) and K'(m) finite, so 0 < m < 1")
    b = EXTENDED
    me, mce = lift_pair(m, mc, b)
    K, Kp = _K(me, mce, b), _K(mce, me, b)
    w = K + 1j * Kp

    def lat(j, step):
        return step * j * w / p

    t2 = [_triple(lat(j, 2), me, mce) for j in range(p)]
    delta = 1 / sum(t[1] for t in t2)
    ext = {"m": me, "mc": mce, "k": b.sqrt(me), "w": w, "delta": delta}
    # dn-cubic relation of the real transform at 1/m, pulled back through the duality
    mu_t = (1 / me - 2) * delta ** 2 + 2 * delta ** 3 * sum(t[1] ** 3 for t in t2)
    dual = 1 / mu_t
    d1 = d2 = D0 = None
    if p % 2:
        s4 = sum(_triple(lat(j, 4), me, mce)[2] for j in range(p))
        alt = sum((-1) ** j * t[1] for j, t in enumerate(t2))
        ext["delta1"] = d1 = 1 / s4
        ext["delta2"] = 1 / alt
        mt = me * d1 ** 2 / delta ** 2
        printed = d1 ** 2 / delta ** 2
    else:
        alt = sum((-1) ** j * t[1] for j, t in enumerate(t2))
        ext["delta2"] = d2 = 1 / alt
        ext["D0"] = D0 = math.prod(t[0] for t in t2[1:])
        s4 = sum(_triple(lat(j, 4), me, mce)[2] for j in range(p))
        ext["delta1"] = 1 / s4 if abs(s4) > POLE_GUARD else None
        mt = printed = d2 ** 2 / delta ** 2
    return ComplexShiftData(
        p, m, float(K), float(Kp), _c(delta), _c(mt), _c(dual), _c(printed),
        delta1=None if d1 is None else _c(d1),
        delta2=None if d2 is None else _c(d2),
        D0=None if D0 is None else _c(D0),
        ext=ext,
    )


def _scales(d: ComplexShiftData, reading: str) -> dict:
    """Argument scale and normalizer per kind."""
    e = d.ext
    if reading not in READINGS:
        raise ValueError(f"reading must be one of {READINGS}, got {reading!r}")
    k, delta, d1, d2 = e["k"], e["delta"], e.get("delta1"), e["delta2"]
    if d.odd:
        if reading == "validated":
            return {"cn": (d1, delta), "dn": (d1, d1), "sn": (d1, delta)}
        return {"cn": (d1, delta), "dn": (d2, d2), "sn": (d2, d1)}
    even_scale = d2 / k
    cn_scale = even_scale if reading == "validated" else d1
    if cn_scale is None:
        raise PoleError("the printed cn scale delta1 is undefined: its defining sum vanishes for this p")
    return {"cn": (cn_scale, delta), "dn": (even_scale, d2), "sn": (even_scale, None)}


def complex_landen_sum(kind: str, p: int, m: MLike, x, data: Optional[ComplexShiftData] = None,
                       reading: str = "validated") -> complex:
    """Complex-shift transform of dn, cn or sn at (x, m_tilde); x may itself be complex."""
    d = data or make_complex_shift_data(p, m)
    if kind not in ("cn", "dn", "sn"):
        raise ValueError(f"kind must be dn, cn or sn, got {kind!r}")
    e = d.ext
    me, mce, w, p = e["m"], e["mc"], e["w"], d.p
    scale, norm = _scales(d, reading)[kind]
    xe = EXTENDED.num(complex(x).real) + 1j * EXTENDED.num(complex(x).imag)
    u = scale * xe
    if kind == "cn":
        return _c(norm * sum(_triple(u + 2 * j * w / p, me, mce)[1] for j in range(p)))
    if d.odd:
        col = 2 if kind == "dn" else 0
        return _c(norm * sum(_triple(u + 4 * j * w / p, me, mce)[col] for j in range(p)))
    terms = [_triple(u + 2 * j * w / p, me, mce) for j in range(p)]
    if kind == "dn":
        return _c(norm * sum((-1) ** j * t[1] for j, t in enumerate(terms)))
    return _c(e["k"] * math.prod(t[0] for t in terms) / (e["delta2"] * e["D0"]))


def complex_landen_derivative_cn(p: int, m: MLike, x, data: Optional[ComplexShiftData] = None,
                                 reading: str = "validated") -> complex:
    """d/dx of the cn sum, differentiated term by term."""
    d = data or make_complex_shift_data(p, m)
    e = d.ext
    scale, norm = _scales(d, reading)["cn"]
    xe = EXTENDED.num(complex(x).real) + 1j * EXTENDED.num(complex(x).imag)
    tot = 0
    for j in range(d.p):
        s, _, dn = _triple(scale * xe + 2 * j * e["w"] / d.p, e["m"], e["mc"])
        tot = tot - s * dn
    return _c(norm * scale * tot)


# ---------------------------------------------------------------------------
# classical p = 2 complex formulas


def classical_complex(u, m: MLike) -> tuple[complex, complex, tuple[complex, complex, complex]]:
    """((k + ik')u, ((k - ik')/(k + ik'))^2, (dn, cn, sn) right-hand sides)."""
    m, mc = as_pair(m)
    k, kp = math.sqrt(m), math.sqrt(mc)
    s, c, dn = jacobi_complex(u, m)
    lam = k + 1j * kp
    mt = ((k - 1j * kp) / lam) ** 2
    return lam * u, mt, (
        (1 - k * (k - 1j * kp) * s * s) / c,
        (1 - k * (k + 1j * kp) * s * s) / c,
        lam * s * dn / c,
    )


# ---------------------------------------------------------------------------
# verification


def verify_p2_reductions(m: MLike, us, tol: float = 1e-10) -> ResidualReport:
    """The p = 2 complex-shift sums at x = (k + ik')u against the classical closed forms."""
    d = make_complex_shift_data(2, m)
    rep = ResidualReport("complex_p2_reduction", {"m": d.m}, tol=tol)
    _, mt, _ = classical_complex(0.0, m)
    rep.add("m_tilde", d.m_tilde, mt)
    for u in us:
        try:
            x, _, rhs = classical_complex(u, m)
            for kind, r in zip(("dn", "cn", "sn"), rhs):
                rep.add((u, kind), complex_landen_sum(kind, 2, m, x, d), r)
        except PoleError:
            rep.skipped += 1
    return rep


def consistency_residuals(d: ComplexShiftData, x, reading: str = "validated") -> dict:
    """Pythagorean and derivative residuals of the three functions at x."""
    sn = complex_landen_sum("sn", d.p, d.m, x, d, reading)
    cn = complex_landen_sum("cn", d.p, d.m, x, d, reading)
    dn = complex_landen_sum("dn", d.p, d.m, x, d, reading)
    mt = d.m_tilde if reading == "validated" else d.m_tilde_printed
    dcn = complex_landen_derivative_cn(d.p, d.m, x, d, reading)
    scale = max(1.0, abs(sn) ** 2, abs(cn) ** 2, abs(dn) ** 2, abs(mt * sn * sn))
    return {
        "sn2+cn2": abs(sn * sn + cn * cn - 1) / scale,
        "dn2+msn2": abs(dn * dn + mt * sn * sn - 1) / scale,
        "cn'+sn*dn": abs(dcn + sn * dn) / max(1.0, abs(dcn), abs(sn * dn)),
    }


def verify_duality(p: int, m: MLike, xs, tol: float = 1e-9, reading: str = "validated") -> ResidualReport:
    """Duality-route m_tilde against the delta ratio, plus consistency of the three functions."""
    d = make_complex_shift_data(p, m)
    rep = ResidualReport(f"complex_duality_{reading}", {"p": d.p, "m": d.m}, tol=tol)
    mt = d.m_tilde if reading == "validated" else d.m_tilde_printed
    rep.add("m_tilde", mt, d.m_tilde_dual)
    try:
        _scales(d, reading)
    except PoleError as exc:
        rep.error = str(exc)
        return rep
    worst = {}
    for x in xs:
        try:
            res = consistency_residuals(d, x, reading)
        except PoleError:
            rep.skipped += 1
            continue
        for name, r in res.items():
            worst[name] = max(worst.get(name, 0.0), r)
            rep.samples.append((x, name))
            rep.max_residual = max(rep.max_residual, r)
    rep.extra.update(worst)
    rep.extra["m_tilde"] = [mt.real, mt.imag]
    rep.extra["m_tilde_dual"] = [d.m_tilde_dual.real, d.m_tilde_dual.imag]
    return rep
