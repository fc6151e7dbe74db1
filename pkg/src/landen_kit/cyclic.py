"""Cyclic identities and the Landen formulas derived from them.

Each identity is a row of ``CATALOG``: a term pattern summed (or multiplied)
over the p lattice points, and a right-hand side built from prefactors at
``a = 2rK/p`` or ``b = 4rK/p`` and either another lattice aggregate or Jacobi
functions at the transformed parameter.

Term patterns are products such as ``dn^2[0]*dn[+1]`` where ``[k]`` means the
lattice point with index ``j + k*r``.  Indices beyond p continue along the
lattice, ``x_{j+p} = x_j + 2K`` (or ``+ 4K`` on the 4K/p lattice), while a
rotated start relabels the same p points.  sn and cn flip
sign over 2K, so reducing the index modulo p instead breaks the identities
with sn or cn on the 2K/p lattice; ``index_mode="wrap"`` is kept to show this.
"""
from __future__ import annotations

import enum
import functools
import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Union

from .core import POLE_GUARD, MLike, ModulusParameter, _jacobi, as_pair, jacobi_real
from .errors import ApplicabilityError, DomainError, PoleError
from .landen import TransformData, check_order, make_transform_data
from .products_zeta import _Z, lattice_sums
from .report import ResidualReport

TOL = 1e-9
READINGS = ("validated", "printed")
INDEX_MODES = ("continue", "wrap")


class IdentityId(str, enum.Enum):
    f1 = "f1"
    f2 = "f2"
    f3 = "f3"
    f4 = "f4"
    f5 = "f5"
    f6 = "f6"
    f7 = "f7"
    f8 = "f8"
    f9 = "f9"
    f10 = "f10"
    f11 = "f11"
    f12 = "f12"
    f13 = "f13"
    f14 = "f14"
    f15 = "f15"
    eq19 = "eq19"
    eq71 = "eq71"
    eq72 = "eq72"
    eq73 = "eq73"
    eq79 = "eq79"
    eq85 = "eq85"
    eq86 = "eq86"


@dataclass(frozen=True)
class CyclicShift:
    r: int
    a: float
    b: float

    @classmethod
    def make(cls, p: int, r: int, m: MLike) -> "CyclicShift":
        p = check_order(p)
        if isinstance(r, bool) or int(r) != r or not 1 <= r < p:
            raise DomainError(f"shift r must be an integer with 1 <= r < p = {p}, got {r!r}")
        K = _data(p, *as_pair(m)).K
        return cls(int(r), 2 * r * K / p, 4 * r * K / p)


@functools.lru_cache(maxsize=256)
def _data(p: int, m: float, mc: float) -> TransformData:
    return make_transform_data(p, ModulusParameter(m, mc))


@functools.lru_cache(maxsize=256)
def _A_d(p: int, m: float, mc: float):
    return lattice_sums(p, m, _data(p, m, mc)).ext["A_d"]


# ---------------------------------------------------------------------------
# term patterns

_FACTOR = re.compile(r"^(sn|cn|dn|Z)(?:\^(\d+))?\[([+-]?\d+)\]$")


def parse_pattern(text: str) -> list[tuple[int, list[tuple[str, int, int]]]]:
    """'dn^2[0]*dn[+1] - dn^2[0]*dn[-1]' -> [(sign, [(fn, power, offset), ...]), ...]."""
    parts = re.split(r"\s+([+-])\s+", text.strip())
    out = []
    for sign, body in zip(["+"] + parts[1::2], parts[0::2]):
        factors = []
        for f in body.split("*"):
            mt = _FACTOR.match(f.strip())
            if mt is None:
                raise ValueError(f"bad factor {f!r} in pattern {text!r}")
            factors.append((mt.group(1), int(mt.group(2) or 1), int(mt.group(3))))
        out.append((-1 if sign == "-" else 1, factors))
    return out


# ---------------------------------------------------------------------------
# evaluation context


class _Ctx:
    """Everything a row needs: lattice aggregates, prefactors and functions at m_tilde."""

    def __init__(self, d: TransformData, pair: tuple, shift: CyclicShift, x: float, start: int, index_mode: str):
        self.d, self.e, self.pair = d, d.ext, pair
        self.p, self.r = d.p, shift.r
        self.m = self.e["m"]
        self.x = x
        self.start, self.index_mode = start, index_mode
        K = self.e["K"]
        self.a = 2 * shift.r * K / d.p
        self.b = 4 * shift.r * K / d.p
        self.alpha = self.e["alpha"]
        self.alpha1 = self.e.get("alpha1")
        self.alpha2 = self.e.get("alpha2")
        self.m_tilde = d.modulus_tilde
        self.arg = x
        self._cache = {}

    # Jacobi functions at parameter m
    def _f(self, u):
        return _jacobi(u, self.m, self.e["mc"], self.e["b"])

    def sn(self, u):
        return self._f(u)[0]

    def dn(self, u):
        return self._f(u)[2]

    def Z(self, u):
        return _Z(self.d, u)

    def _minor(self, num, u):
        s = self._f(u)
        if abs(s[0]) <= POLE_GUARD:
            raise PoleError(f"prefactor argument {float(u):.17g} is a zero of sn")
        return num(s) / s[0]

    def cs(self, u):
        return self._minor(lambda s: s[1], u)

    def ds(self, u):
        return self._minor(lambda s: s[2], u)

    def ns(self, u):
        return self._minor(lambda s: 1, u)

    @property
    def A_d(self):
        return _A_d(self.p, *self.pair)

    # lattice aggregates
    def _point(self, j: int, step: int):
        if self.index_mode == "wrap":
            j = (j - 1) % self.p + 1
        return self.e["alpha"] * self.e["b"].num(self.x) + step * (j - 1) * self.e["K"] / self.p

    def _value(self, fn: str, j: int, step: int):
        key = (fn, j, step)
        if key not in self._cache:
            u = self._point(j, step)
            if fn == "Z":
                self._cache[key] = self.Z(u)
            else:
                self._cache[key] = self._f(u)["scd".index(fn[0])]
        return self._cache[key]

    def lattice(self, pattern: str, agg: str = "sum", step: int = 2):
        terms = parse_pattern(pattern)
        vals = []
        # a rotated start relabels the same p points; only the j + r offsets continue along the lattice
        base = [(j - 1) % self.p + 1 for j in range(self.start, self.start + self.p)]
        for j in base:
            v = 0
            for sign, factors in terms:
                t = sign
                for fn, power, off in factors:
                    t = t * self._value(fn, j + off * self.r, step) ** power
                v = v + t
            vals.append(v)
        if agg == "sum":
            return sum(vals)
        if agg == "alt":
            return sum((-1) ** (j - 1) * v for j, v in zip(base, vals))
        if agg == "prod":
            return math.prod(vals)
        raise ValueError(f"unknown aggregate {agg!r}")

    # functions at (arg, m_tilde); products written like 'cn*sn'
    def tilde(self, expr: str) -> float:
        t = jacobi_real(self.arg, self.m_tilde, extended=True)
        parts = {"sn": t.sn, "cn": t.cn, "dn": t.dn}
        return math.prod(float(parts[f]) for f in expr.split("*"))


# ---------------------------------------------------------------------------
# the catalog


@dataclass(frozen=True)
class Identity:
    id: IdentityId
    lhs: str
    rhs: Callable[[_Ctx], object]
    agg: str = "sum"
    step: int = 2
    scale: Callable[[_Ctx], object] = lambda c: 1
    parity: Optional[str] = None  # "odd" or "even" p
    r_parity: Optional[str] = None  # "odd" r
    no_shift: bool = False  # r plays no role
    printed_arg: Optional[str] = None  # "x/alpha" where the quoted form scales the argument
    printed_rhs: Optional[Callable[[_Ctx], object]] = None

    def applicable(self, p: int, r: int) -> Optional[str]:
        """None if (p, r) is admissible, else the reason."""
        if self.parity == "odd" and p % 2 == 0:
            return f"{self.id.value} needs odd p"
        if self.parity == "even" and p % 2:
            return f"{self.id.value} needs even p"
        if self.r_parity == "odd" and r % 2 == 0:
            return f"{self.id.value} needs odd r"
        return None


def _half(c):
    return range(1, (c.p - 1) // 2 + 1)


def _f4_A(c, printed=False):
    if c.p % 2:
        return c.alpha1 ** 2
    return c.alpha2 ** 2 if printed else c.m * c.alpha2 ** 2


def _f6_A(c):
    return c.alpha * c.alpha1 ** 2 if c.p % 2 else c.m * c.alpha * c.alpha2 ** 2


_DN2_PAIR = "dn^2[0]*dn[1] + dn^2[0]*dn[-1]"

_ROWS = [
    Identity(IdentityId.eq19, _DN2_PAIR,
             lambda c: 2 * (c.ds(c.a) - c.ns(c.a)) * c.lattice("dn[0]")),
    Identity(IdentityId.f1, _DN2_PAIR,
             lambda c: 2 * (c.ds(c.a) * c.ns(c.a) - c.cs(c.a) ** 2) * c.lattice("dn[0]")),
    Identity(IdentityId.f2, _DN2_PAIR,
             lambda c: 2 / c.alpha * (c.ds(c.a) * c.ns(c.a) - c.cs(c.a) ** 2) * c.tilde("dn")),
    Identity(IdentityId.f3, "cn[0]*sn[1] - cn[0]*sn[-1]",
             lambda c: 2 / c.alpha * (c.ns(c.a) - c.ds(c.a)) * c.tilde("dn"),
             scale=lambda c: c.m),
    Identity(IdentityId.f4, "dn^2[0]*dn[1] - dn^2[0]*dn[-1]",
             lambda c: -2 * c.m / _f4_A(c) * c.cs(c.a) * c.tilde("cn*sn"),
             printed_rhs=lambda c: -2 * c.m / _f4_A(c, printed=True) * c.cs(c.a) * c.tilde("cn*sn")),
    Identity(IdentityId.f5, "dn^2[0]*dn^2[1]",
             lambda c: (-2 / c.alpha ** 2 * c.cs(c.a) ** 2 * c.tilde("dn*dn") + 4 * c.A_d * c.cs(c.a) ** 2
                        + c.p * (c.cs(c.a) ** 2 + c.ds(c.a) ** 2
                                 - 2 * c.cs(c.a) * c.ds(c.a) * c.ns(c.a) * c.Z(c.a)))),
    Identity(IdentityId.f6, "dn^3[0]*dn[1] - dn^3[0]*dn[-1]",
             lambda c: -2 * c.m / _f6_A(c) * c.cs(c.a) * c.tilde("cn*sn*dn")),
    Identity(IdentityId.f7, "sn^2[0]*sn[1] + sn^2[0]*sn[-1]",
             lambda c: -2 / c.alpha1 * (c.ds(c.b) * c.cs(c.b) - c.ns(c.b) ** 2) * c.tilde("sn"),
             step=4, scale=lambda c: c.m, parity="odd"),
    Identity(IdentityId.f8, "sn^3[0]*sn^2[1] - sn^3[0]*sn^2[-1]",
             lambda c: 2 / (c.alpha * c.alpha1) * c.ns(c.b) * (2 * c.ds(c.b) * c.cs(c.b) + c.ns(c.b) ** 2)
             * c.tilde("cn*dn"),
             step=4, scale=lambda c: c.m ** 2, parity="odd"),
    Identity(IdentityId.f9, "cn^2[0]*cn[1] + cn^2[0]*cn[-1]",
             lambda c: 2 / c.alpha1 * (c.ns(c.b) * c.cs(c.b) - c.ds(c.b) ** 2) * c.tilde("cn"),
             step=4, scale=lambda c: c.m, parity="odd"),
    Identity(IdentityId.f10, "cn[0]*sn[0]*dn[0]*sn[1]*dn[1] - cn[0]*sn[0]*dn[0]*sn[-1]*dn[-1]",
             lambda c: 2 / (c.alpha * c.alpha1) * c.ds(c.b)
             * (c.ns(c.b) * c.cs(c.b) + c.ns(c.b) ** 2 + c.cs(c.b) ** 2) * c.tilde("sn*dn"),
             step=4, scale=lambda c: c.m, parity="odd"),
    Identity(IdentityId.f11, "sn[0]*cn[1] - sn[0]*cn[-1]",
             lambda c: 2 / c.alpha2 * (c.ns(c.a) + c.ds(c.a)) * c.tilde("cn"),
             agg="alt", scale=lambda c: c.m, parity="even", r_parity="odd", printed_arg="x/alpha"),
    Identity(IdentityId.f12, "sn[0]*dn[0]*cn[1]*dn[1] + sn[0]*dn[0]*cn[-1]*dn[-1]",
             lambda c: -2 / (c.alpha * c.alpha2) * c.cs(c.a) * (c.ds(c.a) - c.ns(c.a)) * c.tilde("sn*dn"),
             agg="alt", scale=lambda c: c.m, parity="even", r_parity="odd", printed_arg="x/alpha"),
    Identity(IdentityId.f13, "dn[0]*dn[1]",
             lambda c: -2 / c.alpha2 * c.cs(c.a) * c.tilde("sn"),
             agg="alt", parity="even", r_parity="odd", printed_arg="x/alpha"),
    Identity(IdentityId.f14, "dn[0]*dn[1]*dn[2]*dn[3]",
             lambda c: 2 / c.alpha2 * (c.cs(c.a) * c.cs(2 * c.a) * c.cs(3 * c.a) + c.cs(c.a) ** 2 * c.cs(2 * c.a))
             * c.tilde("sn"),
             agg="alt", parity="even", r_parity="odd", printed_arg="x/alpha"),
    Identity(IdentityId.f15, "dn^3[0]*dn[1] + dn^3[0]*dn[-1]",
             lambda c: 2 / (c.alpha * c.alpha2) * c.ns(c.a) * c.ds(c.a) * c.tilde("cn*dn"),
             agg="alt", parity="even", r_parity="odd", printed_arg="x/alpha"),
    Identity(IdentityId.eq71, "dn[0]",
             lambda c: math.prod(c.cs(2 * n * c.d.ext["K"] / c.p) ** 2 for n in _half(c)) * c.lattice("dn[0]"),
             agg="prod", parity="odd", no_shift=True),
    Identity(IdentityId.eq72, "sn[0]",
             lambda c: (-1 / c.m) ** ((c.p - 1) // 2)
             * math.prod(c.ns(4 * n * c.d.ext["K"] / c.p) ** 2 for n in _half(c)) * c.lattice("sn[0]", step=4),
             agg="prod", step=4, parity="odd", no_shift=True),
    Identity(IdentityId.eq73, "cn[0]",
             lambda c: (1 / c.m) ** ((c.p - 1) // 2)
             * math.prod(c.ds(4 * n * c.d.ext["K"] / c.p) ** 2 for n in _half(c)) * c.lattice("cn[0]", step=4),
             agg="prod", step=4, parity="odd", no_shift=True),
    Identity(IdentityId.eq79, "sn[0]",
             lambda c: math.prod(c.ns(2 * n * c.d.ext["K"] / c.p) ** 2 for n in range(1, c.p // 2))
             * c.lattice("Z[0]", agg="alt"),
             agg="prod", scale=lambda c: c.m ** (c.p // 2), parity="even", no_shift=True),
    Identity(IdentityId.eq85, "sn[0]*cn[1] + sn[0]*cn[-1]", lambda c: 0.0, parity="odd"),
    Identity(IdentityId.eq86, "dn[0]*dn[1]",
             lambda c: c.p * (c.dn(c.a) - c.cs(c.a) * c.Z(c.a))),
]

CATALOG: dict[IdentityId, Identity] = {row.id: row for row in _ROWS}


# ---------------------------------------------------------------------------
# evaluation


def _sides(row: Identity, c: _Ctx, reading: str) -> tuple[float, float]:
    lhs = row.scale(c) * c.lattice(row.lhs, row.agg, row.step)
    c.arg = c.x / float(c.alpha) if reading == "printed" and row.printed_arg else c.x
    rhs_fn = row.printed_rhs if reading == "printed" and row.printed_rhs else row.rhs
    return float(lhs), float(rhs_fn(c))


def evaluate_identity(id: Union[IdentityId, str], p: int, r: Union[int, CyclicShift], m: MLike, x: float, *,
                      reading: str = "validated", start: int = 1, index_mode: str = "continue",
                      tol: float = TOL) -> ResidualReport:
    """Both sides of one identity at one sample x.

    ``reading="printed"`` switches the rows that have a quoted variant (the x/alpha
    argument of f11-f15, the even-p normalizer of f4).  For rows with a quoted
    argument both readings are evaluated and ``extra["passing_readings"]`` lists
    the ones under ``tol``.  ``start`` rotates the lattice so that j runs over
    start..start+p-1, labels taken mod p.
    """
    row = CATALOG[IdentityId(id)]
    if reading not in READINGS:
        raise ValueError(f"reading must be one of {READINGS}, got {reading!r}")
    if index_mode not in INDEX_MODES:
        raise ValueError(f"index_mode must be one of {INDEX_MODES}, got {index_mode!r}")
    p = check_order(p)
    mm, mc = as_pair(m)
    if not (0.0 < mm < 1.0 and mc > 0.0):
        raise DomainError(f"cyclic identities need 0 < m < 1, got m = {mm!r}")
    shift = r if isinstance(r, CyclicShift) else CyclicShift.make(p, r, ModulusParameter(mm, mc))
    reason = row.applicable(p, shift.r)
    if reason:
        raise ApplicabilityError(reason)
    d = _data(p, mm, mc)
    c = _Ctx(d, (mm, mc), shift, x, start, index_mode)
    params = {"p": p, "r": shift.r, "m": mm, "x": x, "reading": reading}
    if start != 1:
        params["start"] = start
    if index_mode != "continue":
        params["index_mode"] = index_mode
    rep = ResidualReport(row.id.value, params, tol=tol)
    lhs, rhs = _sides(row, c, reading)
    rep.add(x, lhs, rhs)
    rep.extra.update(lhs=lhs, rhs=rhs)
    if row.printed_arg:
        other = "printed" if reading == "validated" else "validated"
        res = {reading: rep.max_residual}
        ol, orhs = _sides(row, c, other)
        res[other] = abs(ol - orhs) / max(1.0, abs(ol), abs(orhs))
        rep.extra["x_reading_residual"] = res["validated"]
        rep.extra["x_over_alpha_reading_residual"] = res["printed"]
        rep.extra["passing_readings"] = [k for k in READINGS if res[k] < tol]
    return rep


def _shifts(row: Identity, p: int) -> list[int]:
    return [1] if row.no_shift else list(range(1, p))


def evaluate_case(id: Union[IdentityId, str], p: int, r: int, m: MLike, xs: Iterable[float], *,
                  reading: str = "validated", tol: float = TOL) -> ResidualReport:
    """One (id, p, r, m) case over several x; poles are counted as skipped, inapplicability as an error."""
    row = CATALOG[IdentityId(id)]
    mm = as_pair(m)[0]
    rep = ResidualReport(row.id.value, {"p": p, "r": r, "m": mm, "reading": reading}, tol=tol)
    reason = row.applicable(p, r)
    if reason:
        rep.error = f"ApplicabilityError: {reason}"
        rep.extra["applicable"] = False
        return rep
    worst = {}
    for x in xs:
        try:
            one = evaluate_identity(row.id, p, r, m, x, reading=reading, tol=tol)
        except PoleError:
            rep.skipped += 1
            continue
        rep.merge(one)
        for k in ("x_reading_residual", "x_over_alpha_reading_residual"):
            if k in one.extra:
                worst[k] = max(worst.get(k, 0.0), one.extra[k])
    rep.extra.update(worst)
    rep.extra["applicable"] = True
    if worst:
        rep.extra["passing_readings"] = [
            name for name, k in (("validated", "x_reading_residual"), ("printed", "x_over_alpha_reading_residual"))
            if worst[k] < tol
        ]
    return rep


def catalog_sweep(p_range: Iterable[int], m_samples: Iterable[MLike], x_samples: Iterable[float], *,
                  ids: Optional[Iterable[Union[IdentityId, str]]] = None, reading: str = "validated",
                  tol: float = TOL, workers: int = 1) -> list[ResidualReport]:
    """Every (id, p, r, m) case over the x samples, in a fixed order.

    Cases that do not apply (wrong parity of p or r) are recorded with an
    ApplicabilityError rather than raised.  With ``workers > 1`` cases run in
    a thread pool; results keep the case order.
    """
    xs = list(x_samples)
    if not xs:
        return []
    ms = list(m_samples)
    chosen = [CATALOG[IdentityId(i)] for i in ids] if ids is not None else _ROWS
    cases = [(row.id, p, r, m) for row in chosen for p in p_range for r in _shifts(row, p) for m in ms]

    def run(case):
        return evaluate_case(*case, xs, reading=reading, tol=tol)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(run, cases))
    return [run(case) for case in cases]


def summarize(reports: Iterable[ResidualReport]) -> dict:
    """Worst residual, counts and overall status per identity, over applicable cases."""
    out: dict = {}
    for rep in reports:
        if rep.extra.get("applicable") is False:
            continue
        s = out.setdefault(rep.id, {"worst_residual": 0.0, "evaluated": 0, "skipped": 0, "errors": 0, "pass": True})
        s["worst_residual"] = max(s["worst_residual"], rep.max_residual)
        s["evaluated"] += rep.evaluated
        s["skipped"] += rep.skipped
        if rep.error:
            s["errors"] += 1
        if rep.status not in ("pass", "skipped-pole"):
            s["pass"] = False
    return out
