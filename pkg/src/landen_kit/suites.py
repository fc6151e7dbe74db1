"""Seeded verification batteries, one per module, as used by ``landen-kit verify``.

Each suite returns a list of ResidualReport in a fixed order; the random
samples come from ``numpy.random.default_rng(seed)`` so a (suite, seed) pair
always produces the same reports.
"""
from __future__ import annotations

import math
from typing import Callable

import mpmath
import numpy as np

from . import complex_landen as cl
from . import cyclic, gauss, landen, products_zeta as pz, sg_oracle
from .core import (
    ModulusParameter,
    complete_E,
    complete_K,
    jacobi_complex,
    jacobi_minor,
    jacobi_real,
    jacobi_zeta,
)
from .errors import PoleError
from .report import ResidualReport

M_GRID = [round(0.1 * i, 1) for i in range(1, 10)]
P_RANGE = range(2, 8)


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


# ---------------------------------------------------------------------------
# core


def suite_core(seed: int) -> list[ResidualReport]:
    rng = _rng(seed)
    out = []
    pyth = ResidualReport("core_pythagorean", {"samples": 1000}, tol=1e-12)
    for x, m in zip(rng.uniform(-10, 10, 1000), rng.uniform(0.01, 0.99, 1000)):
        s, c, d = jacobi_real(x, m)
        pyth.add((x, m, "sn2+cn2"), s * s + c * c, 1.0)
        pyth.add((x, m, "dn2+msn2"), d * d + m * s * s, 1.0)
    out.append(pyth)

    dbl = ResidualReport("core_double_argument", {"samples": 200}, tol=1e-11)
    for x, m in zip(rng.uniform(-5, 5, 200), rng.uniform(0.01, 0.99, 200)):
        s, c, d = jacobi_real(x, m)
        dbl.add((x, m), 2 * s * c * d / (1 - m * s ** 4), jacobi_real(2 * x, m).sn)
    out.append(dbl)

    lim = ResidualReport("core_limits", {}, tol=1e-13)
    for x in rng.uniform(-10, 10, 50):
        s, c, d = jacobi_real(x, 0.0)
        lim.add((x, 0), s, math.sin(x))
        lim.add((x, 0), c, math.cos(x))
        lim.add((x, 0), d, 1.0)
        s, c, d = jacobi_real(x, 1.0)
        lim.add((x, 1), s, math.tanh(x))
        lim.add((x, 1), c, 1 / math.cosh(x))
        lim.add((x, 1), d, 1 / math.cosh(x))
    out.append(lim)

    leg = ResidualReport("core_legendre", {}, tol=1e-12)
    for m in M_GRID:
        K, E = complete_K(m), complete_E(m)
        Kp, Ep = complete_K(ModulusParameter(1 - m)), complete_E(ModulusParameter(1 - m))
        leg.add(m, E * Kp + Ep * K - K * Kp, math.pi / 2)
    out.append(leg)

    zd = ResidualReport("core_zeta_derivative", {"h": 1e-5}, tol=1e-7)
    h = 1e-5
    for x, m in zip(rng.uniform(-4, 4, 50), rng.uniform(0.05, 0.95, 50)):
        fd = (jacobi_zeta(x + h, m) - jacobi_zeta(x - h, m)) / (2 * h)
        zd.add((x, m), fd, jacobi_real(x, m).dn ** 2 - complete_E(m) / complete_K(m))
    out.append(zd)

    ref = ResidualReport("core_vs_mpmath", {"samples": 200}, tol=1e-12)
    for x, m in zip(rng.uniform(-10, 10, 200), rng.uniform(0.0, 1.0, 200)):
        t = jacobi_real(x, m)
        for name, v in zip(("sn", "cn", "dn"), t):
            ref.add((x, m, name), v, float(mpmath.ellipfun(name, x, m=m)))
    for m in M_GRID:
        ref.add((m, "K"), complete_K(m), float(mpmath.ellipk(m)))
        ref.add((m, "E"), complete_E(m), float(mpmath.ellipe(m)))
        ref.add((m, "Z"), jacobi_zeta(0.7, m),
                float(mpmath.ellipe(mpmath.asin(mpmath.ellipfun("sn", 0.7, m=m)), m)
                      - mpmath.ellipe(m) / mpmath.ellipk(m) * 0.7))
    out.append(ref)

    cref = ResidualReport("core_complex_vs_mpmath", {"samples": 60}, tol=1e-10)
    for x, y, m in zip(rng.uniform(-4, 4, 60), rng.uniform(-4, 4, 60), rng.uniform(0.05, 0.95, 60)):
        try:
            t = jacobi_complex(complex(x, y), m)
        except PoleError:
            cref.skipped += 1
            continue
        for name, v in zip(("sn", "cn", "dn"), t):
            cref.add((x, y, m, name), v, complex(mpmath.ellipfun(name, mpmath.mpc(x, y), m=m)))
    out.append(cref)
    return out


# ---------------------------------------------------------------------------
# landen


def suite_landen(seed: int) -> list[ResidualReport]:
    rng = _rng(seed)
    out = []
    for kind in ("dn", "cn", "sn"):
        for p in P_RANGE:
            rep = ResidualReport(f"landen_{kind}", {"p": p, "m": M_GRID, "x_per_m": 50}, tol=1e-10)
            for m in M_GRID:
                d = landen.make_transform_data(p, m)
                mt = d.modulus_tilde
                for x in rng.uniform(-5, 5, 50):
                    rep.add((m, x), landen.landen_sum(kind, p, m, x, d), getattr(jacobi_real(x, mt), kind))
            out.append(rep)

    eq = ResidualReport("m_tilde_equivalence", {"p": list(P_RANGE), "m": M_GRID}, tol=1e-10)
    per = ResidualReport("period_relation", {"p": list(P_RANGE), "m": M_GRID}, tol=1e-10)
    for p in P_RANGE:
        for m in M_GRID:
            eq.merge(landen.verify_m_tilde_equivalence(p, m))
            d = landen.make_transform_data(p, m)
            per.add((p, m), complete_K(d.modulus_tilde) * p * d.alpha, d.K)
    out += [eq, per]

    closed = ResidualReport("m_tilde_closed_forms", {"p": [2, 3, 4], "m": M_GRID}, tol=1e-11)
    for p in (2, 3, 4):
        for m in M_GRID:
            closed.add((p, m), landen.m_tilde_closed_form(p, m), landen.make_transform_data(p, m).m_tilde)
    out.append(closed)

    sp = ResidualReport("sum_product_equivalence", {"p": [3, 5, 7], "samples": 50}, tol=1e-10)
    for p in (3, 5, 7):
        for m, x in zip(rng.uniform(0.1, 0.9, 50), rng.uniform(-5, 5, 50)):
            d = landen.make_transform_data(p, m)
            for kind in ("dn", "cn", "sn"):
                sp.add((p, m, x, kind), landen.landen_sum(kind, p, m, x, d, force_sum=True),
                       landen.landen_product(kind, p, m, x, d))
    out.append(sp)

    ev = ResidualReport("sn_even_zeta_vs_product", {"p": [2, 4, 6], "samples": 50}, tol=1e-10)
    for p in (2, 4, 6):
        for m, x in zip(rng.uniform(0.1, 0.9, 50), rng.uniform(-5, 5, 50)):
            d = landen.make_transform_data(p, m)
            ev.add((p, m, x), landen.landen_sum("sn", p, m, x, d, force_sum=True),
                   landen.landen_sn_even_product(p, m, x, d))
    out.append(ev)

    i81 = ResidualReport("identity_81", {"p": [2, 4, 6], "m": M_GRID}, tol=1e-9)
    for p in (2, 4, 6):
        for m in M_GRID:
            i81.add((p, m), *landen.identity_81_sides(p, m))
    out.append(i81)

    trig = ResidualReport("trig_limits", {"m": 1e-12}, tol=1e-8)
    for p in P_RANGE:
        d = landen.make_transform_data(p, 1e-12)
        for y in rng.uniform(-3, 3, 10):
            for name, lhs, rhs in landen.trig_limit_sides(p, y):
                trig.add((p, y, name), lhs, rhs)
            trig.add((p, y, "sn"), landen.landen_sum("sn", p, 1e-12, y, d), math.sin(y))
            trig.add((p, y, "cn"), landen.landen_sum("cn", p, 1e-12, y, d), math.cos(y))
            trig.add((p, y, "dn"), landen.landen_sum("dn", p, 1e-12, y, d), 1.0)
    out.append(trig)

    mono = ResidualReport("m_tilde_monotone", {}, tol=0.5)
    grid = [0.05 * i for i in range(1, 20)]
    table = {p: [landen.make_transform_data(p, m).modulus_tilde.m for m in grid] for p in P_RANGE}
    bad = 0
    for p in P_RANGE:
        bad += sum(1 for a, b in zip(table[p], table[p][1:]) if not a < b)
        bad += sum(1 for mt, m in zip(table[p], grid) if not mt < m)
    for p, q in zip(P_RANGE, list(P_RANGE)[1:]):
        bad += sum(1 for a, b in zip(table[p], table[q]) if not b < a)
    mono.add("violations", float(bad), 0.0)
    out.append(mono)
    return out


# ---------------------------------------------------------------------------
# gauss


def _gauss_xs(rng, kind, p, m, n):
    """n points away from poles of the Gauss sum and of its target; poles are resampled."""
    g = gauss.make_gauss_data(p, m)
    xs = []
    while len(xs) < n:
        x = float(rng.uniform(-4, 4))
        try:
            gauss.gauss_sum(kind, p, m, x, g)
            jacobi_minor(kind, x, g.m_tilde)
        except PoleError:
            continue
        xs.append(x)
    return xs


def suite_gauss(seed: int) -> list[ResidualReport]:
    rng = _rng(seed)
    out = []
    for kind in ("dc", "nc", "sc"):
        for p in range(2, 7):
            for m in (0.2, 0.5, 0.8):
                out.append(gauss.verify_gauss_sum(kind, p, m, _gauss_xs(rng, kind, p, m, 30)))
    for p in range(2, 7):
        for m in M_GRID:
            out.append(gauss.verify_gauss_landen_inverse(p, m))
    cls = ResidualReport("classical_p2", {"samples": 200}, tol=1e-11)
    for u, m in zip(rng.uniform(-5, 5, 200), rng.uniform(0.01, 0.99, 200)):
        for name, fn in (("landen", gauss.classical_landen), ("gauss", gauss.classical_gauss)):
            x, mt, rhs = fn(u, m)
            t = jacobi_real(x, mt)
            for k, lhs, r in zip(("dn", "cn", "sn"), (t.dn, t.cn, t.sn), rhs):
                cls.add((name, u, m, k), lhs, r)
    out.append(cls)
    asc = ResidualReport("gauss_ascending", {}, tol=0.5)
    viol = sum(1 for p in range(2, 8) for m in M_GRID if not gauss.gauss_m_tilde(p, m).m > m)
    asc.add("violations", float(viol), 0.0)
    out.append(asc)
    dual = ResidualReport("gauss_complement_constants", {}, tol=1e-14)
    for p in range(2, 7):
        for m in (0.2, 0.5, 0.8):
            g = gauss.make_gauss_data(p, m)
            d = landen.make_transform_data(p, 1 - m)
            dual.add((p, m, "beta"), g.beta, d.alpha)
            dual.add((p, m, "Kp"), g.Kp, d.K)
    out.append(dual)
    return out


# ---------------------------------------------------------------------------
# complex shifts


def suite_complex(seed: int) -> list[ResidualReport]:
    rng = _rng(seed)
    out = []
    red = ResidualReport("complex_p2_reduction", {"samples": 30}, tol=1e-10)
    for m, u in zip(rng.uniform(0.05, 0.95, 30), rng.uniform(-2, 2, 30)):
        red.merge(cl.verify_p2_reductions(m, [u]))
    out.append(red)
    for p in range(2, 8):
        for m in (0.2, 0.5, 0.8):
            out.append(cl.verify_duality(p, m, list(rng.uniform(-1.5, 1.5, 8))))
    return out


# ---------------------------------------------------------------------------
# products and zeta


def suite_products(seed: int) -> list[ResidualReport]:
    rng = _rng(seed)
    out = []
    grid_m = (0.1, 0.3, 0.5, 0.7, 0.9)
    for kind in pz.ProductKind:
        rep = ResidualReport(f"product_{kind.value}", {"p": [2, 3, 4, 5, 6], "m": list(grid_m)}, tol=1e-9)
        for p in range(2, 7):
            for m in grid_m:
                d = landen.make_transform_data(p, m)
                for x in rng.uniform(-4, 4, 20):
                    rep.add((p, m, x), pz.product_transform(kind, p, m, x, d), pz.product_target(kind, x, d.modulus_tilde))
        out.append(rep)
    z = ResidualReport("zeta_transform", {}, tol=1e-9)
    e = ResidualReport("E_transform", {}, tol=1e-9)
    for p in P_RANGE:
        for m in M_GRID:
            d = landen.make_transform_data(p, m)
            for x in rng.uniform(-4, 4, 5):
                z.add((p, m, x), pz.zeta_transform(p, m, x, d), jacobi_zeta(x, d.modulus_tilde))
            e.add((p, m), pz.E_transform(p, m, d), complete_E(d.modulus_tilde))
    out += [z, e]
    xs = list(rng.uniform(-3, 3, 5))
    for p in (3, 5, 7):
        for m in M_GRID:
            out.append(pz.verify_consistency_odd(p, m, xs))
    for which in pz.REMARKABLE:
        for p in (2, 4, 6):
            for m in (0.2, 0.5, 0.8):
                out.append(pz.verify_remarkable_identities(which, p, m, xs))
    chain = ResidualReport("dn_derivative_chain", {"h": 1e-5}, tol=1e-6)
    h = 1e-5
    for p in range(2, 7):
        for m in (0.2, 0.5, 0.8):
            d = landen.make_transform_data(p, m)
            mt = d.modulus_tilde.m
            for x in rng.uniform(-3, 3, 5):
                fd = (landen.landen_sum("dn", p, m, x + h, d) - landen.landen_sum("dn", p, m, x - h, d)) / (2 * h)
                chain.add((p, m, x), fd, -mt * pz.product_transform("sn_cn", p, m, x, d))
    out.append(chain)
    return out


# ---------------------------------------------------------------------------
# cyclic identities


def suite_cyclic(seed: int) -> list[ResidualReport]:
    rng = _rng(seed)
    xs = list(rng.uniform(-3, 3, 8))
    reps = [r for r in cyclic.catalog_sweep(range(2, 7), (0.2, 0.5, 0.8), xs)
            if r.extra.get("applicable", True)]
    rot = ResidualReport("cyclic_rotation", {"start": 2}, tol=1e-12)
    for row in cyclic.CATALOG.values():
        for p in (4, 5):
            if row.applicable(p, 1):
                continue
            for x in xs[:2]:
                try:
                    a = cyclic.evaluate_identity(row.id, p, 1, 0.5, x)
                    b = cyclic.evaluate_identity(row.id, p, 1, 0.5, x, start=2)
                except PoleError:
                    continue
                # the residual, not each side, is what must not depend on where j starts
                rot.add((row.id.value, p, x), a.max_residual, b.max_residual)
    return reps + [rot]


# ---------------------------------------------------------------------------
# sine-Gordon oracle


def suite_sg(seed: int, m_grid=M_GRID) -> list[ResidualReport]:
    out = []
    for form in sg_oracle.FORMS:
        for p in range(1, 8):
            if form in ("eq31", "eq50") and p % 2 == 0:
                continue
            if form in ("eq36", "eq54") and p % 2:
                continue
            for m in m_grid:
                out += sg_oracle.oracle_battery(form, p, m)
    return out


SUITES: dict[str, Callable[[int], list[ResidualReport]]] = {
    "core": suite_core,
    "landen": suite_landen,
    "gauss": suite_gauss,
    "complex": suite_complex,
    "products": suite_products,
    "cyclic": suite_cyclic,
    "sg": suite_sg,
}


def run_suite(name: str, seed: int = 0) -> list[ResidualReport]:
    if name == "all":
        return [r for key in SUITES for r in SUITES[key](seed)]
    return SUITES[name](seed)
